"""Finite-dimensional modules over an Artinian local algebra.

A module is a k-vector space together with one action matrix per variable
of the algebra.  Everything here is linear algebra over F_p: Hom and tensor
are kernels and cokernels of explicit matrices, the Matlis dual is the
transpose, and projective covers come from a complement of m*M.

Free modules R^b use the coordinate layout ``c * dim(R) + i`` for the i-th
standard monomial in the c-th summand.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import InputError, InvariantViolation, NotGorenstein, NotLocal
from .exactfield import PrimeField

__all__ = [
    "LocalAlgebra",
    "FinModule",
    "ModuleMap",
    "IsoCertificate",
    "RingInvariants",
    "ring_invariants",
    "residue_field",
    "free_module",
    "direct_sum",
    "submodule",
    "quotient_module",
    "module_from_presentation",
    "hom_module",
    "tensor_module",
    "matlis_dual",
    "double_dual_map",
    "projective_cover",
    "syzygy",
    "strip_free_summands",
    "is_isomorphic",
    "random_module",
]


# ---------------------------------------------------------------------------
# the algebra


@dataclass(frozen=True, eq=False)
class LocalAlgebra:
    """Commutative local k-algebra with a standard-monomial basis.

    ``mult[i, j]`` holds the coordinates of ``b_i * b_j`` and ``gen_coords[v]``
    the coordinates of the image of the v-th variable.  ``basis_exps[0]`` is
    the empty monomial, so ``b_0 = 1`` and m = span(b_1, ..., b_{d-1}).
    """

    field: PrimeField
    variables: tuple
    basis_exps: tuple
    mult: np.ndarray
    gen_coords: np.ndarray
    groebner: object = None

    def __post_init__(self):
        d = len(self.basis_exps)
        if self.mult.shape != (d, d, d):
            raise ValueError("multiplication table has the wrong shape")
        if any(self.basis_exps[0]):
            raise ValueError("basis[0] must be the unit monomial")
        F = self.field
        e = np.eye(d, dtype=np.int64)
        if not np.array_equal(self.mult[0], e):
            raise InvariantViolation("basis[0] does not act as the identity")
        if not np.array_equal(self.mult, self.mult.transpose(1, 0, 2)):
            raise InvariantViolation("multiplication table is not commutative")
        L = self.regular
        for i in range(d):
            for j in range(d):
                lhs = F.matmul(L[i], L[j])
                rhs = np.tensordot(self.mult[i, j], L, axes=1) % F.p
                if not np.array_equal(lhs, rhs):
                    raise InvariantViolation(f"multiplication is not associative at ({i}, {j})")
        for v, X in enumerate(self.var_mats):
            P = X
            for _ in range(d):
                P = F.matmul(P, X)
            if P.any():
                raise NotLocal(
                    f"variable {self.variables[v]} is not nilpotent in the quotient; the ring is not local"
                )
            if X[0].any():
                raise NotLocal(f"variable {self.variables[v]} does not map into the maximal ideal")

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def dim(self) -> int:
        return len(self.basis_exps)

    @property
    def nvars(self) -> int:
        return len(self.variables)

    @cached_property
    def regular(self) -> np.ndarray:
        """``regular[j]`` is the matrix of multiplication by b_j on R."""
        return np.ascontiguousarray(self.mult.transpose(0, 2, 1))

    @cached_property
    def var_mats(self) -> np.ndarray:
        return np.tensordot(self.gen_coords, self.regular, axes=1) % self.p

    @cached_property
    def predecessors(self) -> tuple:
        """For j > 0 a pair (v, j') with b_j = x_v * b_j' as monomials."""
        index = {m: i for i, m in enumerate(self.basis_exps)}
        out = [None]
        for m in self.basis_exps[1:]:
            v = next(k for k, e in enumerate(m) if e)
            prev = list(m)
            prev[v] -= 1
            out.append((v, index[tuple(prev)]))
        return tuple(out)

    def label(self, j: int) -> str:
        parts = []
        for v, e in zip(self.variables, self.basis_exps[j]):
            if e:
                parts.append(v if e == 1 else f"{v}^{e}")
        return "*".join(parts) or "1"

    def element(self, f) -> np.ndarray:
        """Coordinates of f (a Polynomial, a string, or a coordinate vector)."""
        from .polyring import Polynomial, normal_form, parse_poly

        if isinstance(f, str):
            if self.groebner is None:
                raise InputError("this algebra was not built from polynomials")
            f = parse_poly(f, self.variables, self.p, order=self.groebner.ring.order)
        if isinstance(f, Polynomial):
            index = {m: i for i, m in enumerate(self.basis_exps)}
            v = np.zeros(self.dim, dtype=np.int64)
            for m, c in normal_form(f, self.groebner).terms.items():
                v[index[m]] = c
            return v
        v = self.field.array(f)
        if v.shape != (self.dim,):
            raise InputError(f"expected {self.dim} coordinates, got shape {v.shape}")
        return v

    def format_element(self, v) -> str:
        terms = []
        for j, c in enumerate(np.asarray(v)):
            if c:
                lab = self.label(j)
                terms.append(lab if c == 1 and lab != "1" else (f"{c}" if lab == "1" else f"{c}*{lab}"))
        return " + ".join(terms) or "0"

    def __repr__(self):
        rels = ", ".join(str(g) for g in self.groebner) if self.groebner is not None else "?"
        return f"LocalAlgebra(F_{self.p}[{', '.join(self.variables)}]/({rels}), dim={self.dim})"


@dataclass(frozen=True)
class RingInvariants:
    socle_dim: int
    embedding_dim: int
    is_gorenstein: bool
    is_hypersurface: bool


def socle(R: LocalAlgebra) -> np.ndarray:
    """Basis (columns) of {r : r*m = 0}."""
    return R.field.kernel(np.vstack(list(R.var_mats)))


def ring_invariants(R: LocalAlgebra) -> RingInvariants:
    F = R.field
    soc = socle(R).shape[1]
    d = R.dim
    # m^2 = span{x_v * b_j : j >= 1}
    m2 = np.hstack([X[:, 1:] for X in R.var_mats]) if d > 1 else np.zeros((d, 0), dtype=np.int64)
    embdim = (d - 1) - F.rank(m2)
    return RingInvariants(soc, embdim, soc == 1, embdim <= 1)


def gorenstein_form(R: LocalAlgebra) -> tuple[int, np.ndarray]:
    """A socle-detecting coordinate t and the Gram matrix G[i, j] = (b_i b_j)_t.

    Over a Gorenstein ring the pairing (a, b) -> coefficient of b_t in a*b is
    nondegenerate and R-balanced, so G identifies R with its Matlis dual.
    """
    S = socle(R)
    if S.shape[1] != 1:
        raise NotGorenstein(f"socle has dimension {S.shape[1]}, so the ring is not Gorenstein")
    t = int(np.flatnonzero(S[:, 0])[-1])
    G = np.ascontiguousarray(R.mult[:, :, t])
    if not R.field.is_invertible(G):
        raise InvariantViolation("socle pairing is degenerate")
    return t, G


# ---------------------------------------------------------------------------
# modules


class FinModule:
    """Finitely generated R-module given by action matrices of the variables.

    Construction checks that the actions commute and satisfy the defining
    relations: ``x_v * b_j`` must act as its normal form for every variable
    and standard monomial, which covers every Groebner generator (its leading
    monomial is always of that shape).  Nilpotency of the actions follows.
    """

    def __init__(self, algebra: LocalAlgebra, actions: Sequence[np.ndarray], dim: int | None = None, check=True):
        self.algebra = algebra
        F = algebra.field
        acts = [F.array(a) for a in actions]
        if len(acts) != algebra.nvars:
            raise InputError(f"expected {algebra.nvars} action matrices, got {len(acts)}")
        if dim is None:
            dim = acts[0].shape[0] if acts else 0
        for a in acts:
            if a.shape != (dim, dim):
                raise InputError(f"action matrix has shape {a.shape}, expected {(dim, dim)}")
        self.dim = dim
        self.actions = tuple(acts)
        if check:
            self._check()

    def _check(self):
        F = self.algebra.field
        A = self.actions
        for i in range(len(A)):
            for j in range(i + 1, len(A)):
                if not np.array_equal(F.matmul(A[i], A[j]), F.matmul(A[j], A[i])):
                    raise InvariantViolation("action matrices do not commute")
        B = self.basis_actions
        for v, X in enumerate(self.algebra.var_mats):
            for j in range(self.algebra.dim):
                lhs = F.matmul(A[v], B[j])
                rhs = np.tensordot(X[:, j], B, axes=1) % F.p
                if not np.array_equal(lhs, rhs):
                    raise InvariantViolation(
                        f"actions violate the ring relations ({self.algebra.variables[v]} * {self.algebra.label(j)})"
                    )

    @property
    def field(self) -> PrimeField:
        return self.algebra.field

    @cached_property
    def basis_actions(self) -> np.ndarray:
        """Stack of action matrices of every standard monomial b_j."""
        F = self.field
        d = self.algebra.dim
        out = np.zeros((d, self.dim, self.dim), dtype=np.int64)
        out[0] = np.eye(self.dim, dtype=np.int64)
        for j, pr in enumerate(self.algebra.predecessors):
            if pr is not None:
                v, prev = pr
                out[j] = F.matmul(self.actions[v], out[prev])
        return out

    def act(self, r) -> np.ndarray:
        """Matrix of multiplication by the ring element with coordinates r."""
        return np.tensordot(np.asarray(r, dtype=np.int64), self.basis_actions, axes=1) % self.field.p

    def __repr__(self):
        return f"FinModule(dim={self.dim}, over {self.algebra!r})"


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """R-linear map; ``matrix`` has shape (target.dim, source.dim)."""

    source: FinModule
    target: FinModule
    matrix: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError("map matrix has the wrong shape")
        if self.check and not self.is_linear():
            raise InvariantViolation("matrix does not intertwine the module actions")

    def is_linear(self) -> bool:
        F = self.source.field
        return all(
            np.array_equal(F.matmul(At, self.matrix), F.matmul(self.matrix, As))
            for As, At in zip(self.source.actions, self.target.actions)
        )


def residue_field(R: LocalAlgebra) -> FinModule:
    return FinModule(R, [np.zeros((1, 1), dtype=np.int64)] * R.nvars, dim=1)


def free_module(R: LocalAlgebra, rank: int) -> FinModule:
    eye = np.eye(rank, dtype=np.int64)
    return FinModule(R, [np.kron(eye, X) for X in R.var_mats], dim=rank * R.dim, check=False)


def direct_sum(*mods: FinModule) -> FinModule:
    R = mods[0].algebra
    n = sum(M.dim for M in mods)
    acts = []
    for v in range(R.nvars):
        A = np.zeros((n, n), dtype=np.int64)
        o = 0
        for M in mods:
            A[o : o + M.dim, o : o + M.dim] = M.actions[v]
            o += M.dim
        acts.append(A)
    return FinModule(R, acts, dim=n, check=False)


def r_span(M: FinModule, vectors: np.ndarray) -> np.ndarray:
    """Columns spanning the R-submodule generated by the given columns."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.ndim == 1:
        vectors = vectors.reshape(-1, 1)
    if vectors.shape[1] == 0:
        return vectors
    return np.hstack([M.field.matmul(B, vectors) for B in M.basis_actions])


def submodule(M: FinModule, vectors: np.ndarray) -> tuple[FinModule, np.ndarray]:
    """Submodule spanned (over k) by R-stable columns; returns it and its inclusion."""
    F = M.field
    B, piv = F.column_space(vectors)
    incl = B.T.copy()
    acts = [F.matmul(A, incl)[piv] for A in M.actions]
    return FinModule(M.algebra, acts, dim=len(piv), check=False), incl


def quotient_module(M: FinModule, vectors: np.ndarray) -> tuple[FinModule, np.ndarray]:
    """M / (R-stable span of the columns); returns it and the projection matrix."""
    F = M.field
    B, piv = F.column_space(np.asarray(vectors, dtype=np.int64).reshape(M.dim, -1) if M.dim else vectors)
    rest = [c for c in range(M.dim) if c not in set(piv)]
    Q = np.zeros((len(rest), M.dim), dtype=np.int64)
    Q[:, rest] = np.eye(len(rest), dtype=np.int64)
    if piv:
        Q[:, piv] = (-B[:, rest].T) % F.p
    acts = [F.matmul(Q, A)[:, rest] for A in M.actions]
    return FinModule(M.algebra, acts, dim=len(rest), check=False), Q


def module_from_presentation(R: LocalAlgebra, amat, ngens: int | None = None) -> FinModule:
    """Cokernel of R^q -> R^p given by a p x q matrix of ring elements.

    Entries may be polynomial strings, Polynomials, or coordinate vectors.
    A p x 0 matrix can be passed as ``[[]] * p`` or with ``ngens=p``.
    """
    if isinstance(amat, np.ndarray) and amat.ndim == 3:
        coords = R.field.array(amat)
    else:
        rows = [list(r) for r in amat]
        if ngens is None:
            ngens = len(rows)
        if len(rows) != ngens:
            raise InputError("presentation row count does not match the number of generators")
        q = len(rows[0]) if rows else 0
        if any(len(r) != q for r in rows):
            raise InputError("presentation matrix rows have different lengths")
        coords = np.zeros((ngens, q, R.dim), dtype=np.int64)
        for a, row in enumerate(rows):
            for c, entry in enumerate(row):
                coords[a, c] = R.element(entry)
    p, q, _ = coords.shape
    F = free_module(R, p)
    cols = coords.transpose(0, 2, 1).reshape(p * R.dim, q)
    M, _ = quotient_module(F, r_span(F, cols))
    M._check()
    return M


def _hom_equations(M: FinModule, N: FinModule) -> np.ndarray:
    # f (row-major vec) intertwines iff (A_N (x) I - I (x) A_M^T) vec f = 0 for every variable
    Im, In = np.eye(M.dim, dtype=np.int64), np.eye(N.dim, dtype=np.int64)
    return np.vstack([np.kron(An, Im) - np.kron(In, Am.T) for Am, An in zip(M.actions, N.actions)]) % M.field.p


def hom_module(M: FinModule, N: FinModule) -> tuple[FinModule, list[ModuleMap]]:
    """Hom_R(M, N) with R acting through N, plus the maps behind its basis."""
    F = M.field
    if M.algebra is not N.algebra:
        raise ValueError("modules live over different algebras")
    n = M.dim * N.dim
    if n == 0:
        return FinModule(M.algebra, [np.zeros((0, 0), np.int64)] * M.algebra.nvars, dim=0, check=False), []
    K = F.kernel(_hom_equations(M, N)) if M.algebra.nvars else F.eye(n)
    B, piv = F.column_space(K)
    Im = np.eye(M.dim, dtype=np.int64)
    acts = [F.matmul(np.kron(An, Im), B.T)[piv] for An in N.actions]
    H = FinModule(M.algebra, acts, dim=len(piv), check=False)
    maps = [ModuleMap(M, N, b.reshape(N.dim, M.dim), check=False) for b in B]
    return H, maps


def hom_basis(M: FinModule, N: FinModule) -> list[np.ndarray]:
    """Matrices of a k-basis of Hom_R(M, N)."""
    if M.dim * N.dim == 0:
        return []
    K = M.field.kernel(_hom_equations(M, N))
    return [K[:, j].reshape(N.dim, M.dim) for j in range(K.shape[1])]


def tensor_module(M: FinModule, N: FinModule) -> FinModule:
    """M (x)_R N as a quotient of M (x)_k N.

    Relations x*m (x) n - m (x) x*n are imposed for the variables only; the
    relation for a general monomial follows by induction on its degree,
    moving one variable across at a time.
    """
    R = M.algebra
    Im, In = np.eye(M.dim, dtype=np.int64), np.eye(N.dim, dtype=np.int64)
    big = FinModule(R, [np.kron(Am, In) for Am in M.actions], dim=M.dim * N.dim, check=False)
    if big.dim == 0:
        return big
    rel = np.hstack([np.kron(Am, In) - np.kron(Im, An) for Am, An in zip(M.actions, N.actions)]) % R.p
    T, _ = quotient_module(big, rel)
    return T


def matlis_dual(M: FinModule) -> FinModule:
    """Hom_R(M, E(k)), realised as Hom_k(M, k) with transposed actions.

    Over an Artinian local ring E(k) = Hom_k(R, k), and adjunction gives
    Hom_R(M, Hom_k(R, k)) = Hom_k(M, k).
    """
    return FinModule(M.algebra, [A.T.copy() for A in M.actions], dim=M.dim, check=False)


def double_dual_map(M: FinModule) -> ModuleMap:
    """Canonical evaluation M -> M^vv; in dual-basis coordinates it is the identity."""
    return ModuleMap(M, matlis_dual(matlis_dual(M)), np.eye(M.dim, dtype=np.int64))


def projective_cover(M: FinModule) -> tuple[int, ModuleMap]:
    """Minimal free cover R^b -> M, b = dim M/mM.

    The j-th free generator goes to the j-th standard basis vector of M that
    is not a pivot of the echelon basis of mM.
    """
    F = M.field
    R = M.algebra
    if M.dim == 0:
        return 0, ModuleMap(free_module(R, 0), M, np.zeros((0, 0), np.int64), check=False)
    mM = np.hstack(list(M.actions)) if M.actions else np.zeros((M.dim, 0), np.int64)
    _, piv = F.column_space(mM)
    gens = [c for c in range(M.dim) if c not in set(piv)]
    b = len(gens)
    # column (c, i) is b_i * g_c
    pi = M.basis_actions[:, :, gens].transpose(1, 2, 0).reshape(M.dim, b * R.dim)
    return b, ModuleMap(free_module(R, b), M, np.ascontiguousarray(pi), check=False)


def kernel_submodule(f: ModuleMap) -> tuple[FinModule, np.ndarray]:
    F = f.source.field
    M = f.source
    if f.target.dim:
        K, free = F.kernel_with_free(f.matrix)
    else:
        K, free = F.eye(M.dim), list(range(M.dim))
    # K[free] is the identity, so restricted actions are read off those rows
    acts = [F.matmul(A, K)[free] for A in M.actions]
    return FinModule(M.algebra, acts, dim=len(free), check=False), K


def syzygy(M: FinModule) -> FinModule:
    """Kernel of the projective cover, with the restricted action."""
    _, pi = projective_cover(M)
    return kernel_submodule(pi)[0]


def strip_free_summands(M: FinModule) -> tuple[FinModule, int]:
    """Split M = M_red + R^r with M_red having no free summand.

    M has a free summand exactly when some f: M -> R is surjective, i.e. some
    f(e_j) has a nonzero unit coordinate.  Then R*e_j is free, M = R*e_j + ker f,
    and we recurse on ker f.
    """
    R = M.algebra
    rank = 0
    cur = M
    while cur.dim >= R.dim:
        target = free_module(R, 1)
        found = None
        for f in hom_basis(cur, target):
            nz = np.flatnonzero(f[0])
            if nz.size:
                found = f
                break
        if found is None:
            break
        cur = kernel_submodule(ModuleMap(cur, target, found, check=False))[0]
        rank += 1
    return cur, rank


@dataclass(frozen=True, eq=False)
class IsoCertificate:
    source: FinModule
    target: FinModule
    matrix: np.ndarray

    def validate(self) -> bool:
        F = self.source.field
        return (
            self.matrix.shape == (self.target.dim, self.source.dim)
            and F.is_invertible(self.matrix)
            and ModuleMap(self.source, self.target, self.matrix, check=False).is_linear()
        )


def is_isomorphic(M: FinModule, N: FinModule, seed: int = 0, trials: int = 20, rng=None) -> IsoCertificate | None:
    """Search for an isomorphism M -> N among random elements of Hom_R(M, N).

    A returned certificate is a proof; ``None`` only means none was found.
    """
    if M.dim != N.dim:
        return None
    F = M.field
    if M.dim == 0:
        return IsoCertificate(M, N, np.zeros((0, 0), np.int64))
    basis = hom_basis(M, N)
    if not basis:
        return None
    stack = np.stack(basis)
    if rng is None:
        rng = np.random.default_rng(seed)
    for _ in range(trials):
        c = rng.integers(0, F.p, size=len(basis))
        f = np.tensordot(c, stack, axes=1) % F.p
        if F.is_invertible(f):
            return IsoCertificate(M, N, f)
    return None


def random_module(
    R: LocalAlgebra, seed: int, max_gens: int = 3, max_rels: int = 3, zero_prob: float = 0.0
) -> FinModule:
    """Cokernel of a random g x r presentation with entries in m.

    g and r are drawn uniformly from 1..max_gens and 1..max_rels.  With
    ``zero_prob > 0`` each coordinate is independently zeroed, which produces
    modules with more varied structure than the generic ones.
    """
    if max_gens < 1 or max_rels < 1:
        raise ValueError("max_gens and max_rels must be at least 1")
    rng = np.random.default_rng(seed)
    g = int(rng.integers(1, max_gens + 1))
    r = int(rng.integers(1, max_rels + 1))
    coords = rng.integers(0, R.p, size=(g, r, R.dim))
    coords[:, :, 0] = 0
    if zero_prob > 0:
        coords[rng.random(coords.shape) < zero_prob] = 0
    return module_from_presentation(R, coords)
