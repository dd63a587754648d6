"""Minimal and complete (Tate) resolutions and the invariants read off them.

Conventions, fixed once for the whole package:

* chain differentials go down, ``d_n : T_n -> T_{n-1}``;
* for a complete resolution, M = Im(T_0 -> T_{-1}) = coker(T_1 -> T_0);
* the cochain complex Hom(T, N) has Hom(T_i, N) in degree i;
* a differential is stored as an array ``E`` of shape (rank(n-1), rank(n), dim R)
  where ``E[a, c]`` are the coordinates of the ring element in row a, column c.

Negative degrees of a complete resolution are built by dualizing the minimal
resolution of the Matlis dual; over an Artinian Gorenstein ring R is its own
injective hull, so Hom(-, R) and (-)^v agree and the dual of a free module is
free of the same rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .artinalg import (
    FinModule,
    LocalAlgebra,
    ModuleMap,
    free_module,
    gorenstein_form,
    hom_module,
    kernel_submodule,
    matlis_dual,
    projective_cover,
    quotient_module,
    residue_field,
    strip_free_summands,
)
from .errors import InvariantViolation, NotReduced

__all__ = [
    "FreeComplex",
    "Resolution",
    "CompleteResolution",
    "InvariantReport",
    "AcyclicityReport",
    "BalanceReport",
    "minimal_resolution",
    "cosyzygy_extend",
    "complete_resolution",
    "hom_dual_cosyzygy_ranks",
    "check_total_acyclicity",
    "ext_hat",
    "tor_hat",
    "bass_numbers",
    "bass_numbers_ext",
    "tate_bass",
    "tate_bass_ext",
    "tate_betti",
    "balance_check",
    "betti_via_tor",
]


# ---------------------------------------------------------------------------
# complexes of free modules


def _tensor_blocks(E: np.ndarray, acts: np.ndarray, p: int) -> np.ndarray:
    """k-matrix of d (x) N, where ``acts`` stacks the basis actions on N."""
    a, c, _ = E.shape
    n = acts.shape[1]
    if a * c * n == 0:
        return np.zeros((a * n, c * n), dtype=np.int64)
    X = np.tensordot(E, acts, axes=([2], [0])) % p
    return X.transpose(0, 2, 1, 3).reshape(a * n, c * n)


def _hom_blocks(E: np.ndarray, acts: np.ndarray, p: int) -> np.ndarray:
    """k-matrix of Hom(d, N): N^a -> N^c, f -> f o d."""
    a, c, _ = E.shape
    n = acts.shape[1]
    if a * c * n == 0:
        return np.zeros((c * n, a * n), dtype=np.int64)
    X = np.tensordot(E, acts, axes=([2], [0])) % p
    return X.transpose(1, 2, 0, 3).reshape(c * n, a * n)


@dataclass(eq=False)
class FreeComplex:
    """Finite window [lo, hi] of a complex of finitely generated free modules."""

    algebra: LocalAlgebra
    ranks: dict
    diffs: dict

    def __post_init__(self):
        lo, hi = self.lo, self.hi
        d = self.algebra.dim
        for n in range(lo + 1, hi + 1):
            E = self.diffs[n]
            if E.shape != (self.ranks[n - 1], self.ranks[n], d):
                raise ValueError(f"differential {n} has shape {E.shape}")

    @property
    def lo(self) -> int:
        return min(self.ranks)

    @property
    def hi(self) -> int:
        return max(self.ranks)

    def rank(self, n: int) -> int:
        return self.ranks[n]

    def kmatrix(self, n: int, module: FinModule | None = None) -> np.ndarray:
        """k-linear matrix of d_n (x) module (module defaults to R)."""
        acts = self.algebra.regular if module is None else module.basis_actions
        return _tensor_blocks(self.diffs[n], acts, self.algebra.p)

    def is_minimal(self) -> bool:
        """Every differential entry lies in m, i.e. has zero unit coordinate."""
        return all(not E[:, :, 0].any() for E in self.diffs.values())

    def d_squared_zero(self) -> bool:
        F = self.algebra.field
        for n in range(self.lo + 2, self.hi + 1):
            if F.matmul(self.kmatrix(n - 1), self.kmatrix(n)).any():
                return False
        return True

    def tensor_matrices(self, N: FinModule | None = None) -> dict:
        return {n: self.kmatrix(n, N) for n in self.diffs}

    def hom_matrices(self, N: FinModule | None = None) -> dict:
        """``out[i]`` is the coboundary Hom(T_i, N) -> Hom(T_{i+1}, N)."""
        acts = self.algebra.regular if N is None else N.basis_actions
        return {n - 1: _hom_blocks(E, acts, self.algebra.p) for n, E in self.diffs.items()}

    def homology(self, N: FinModule | None = None, degrees=None) -> dict:
        """dim H_n(T (x) N) at the interior degrees (or the requested ones)."""
        n_dim = self.algebra.dim if N is None else N.dim
        mats = self.tensor_matrices(N)
        if degrees is None:
            degrees = range(self.lo + 1, self.hi)
        return _homology(mats, {n: r * n_dim for n, r in self.ranks.items()}, degrees, self.algebra.field, -1)

    def hom_cohomology(self, N: FinModule | None = None, degrees=None) -> dict:
        """dim H^i(Hom(T, N)) at the interior degrees (or the requested ones)."""
        n_dim = self.algebra.dim if N is None else N.dim
        mats = self.hom_matrices(N)
        if degrees is None:
            degrees = range(self.lo + 1, self.hi)
        return _homology(mats, {n: r * n_dim for n, r in self.ranks.items()}, degrees, self.algebra.field, +1)

    def restrict(self, lo: int, hi: int) -> "FreeComplex":
        ranks = {n: self.ranks[n] for n in range(lo, hi + 1)}
        diffs = {n: self.diffs[n] for n in range(lo + 1, hi + 1)}
        return FreeComplex(self.algebra, ranks, diffs)


def _homology(mats: dict, dims: dict, degrees, F, direction: int) -> dict:
    """Homology dimensions of a complex of k-spaces.

    ``direction = -1``: ``mats[n]`` maps degree n to n-1 (chain complex).
    ``direction = +1``: ``mats[i]`` maps degree i to i+1 (cochain complex).
    """
    ranks: dict = {}

    def rk(n):
        if n not in mats:
            raise KeyError(f"degree {n} needs a differential outside the computed window")
        if n not in ranks:
            ranks[n] = F.rank(mats[n])
        return ranks[n]

    out = {}
    for n in degrees:
        outgoing = rk(n)
        incoming = rk(n - direction)
        out[n] = dims[n] - outgoing - incoming
    return out


# ---------------------------------------------------------------------------
# minimal resolutions


@dataclass(eq=False)
class Resolution:
    complex: FreeComplex
    module: FinModule
    augmentation: ModuleMap
    syzygies: list = field(repr=False)

    @property
    def steps(self) -> int:
        return self.complex.hi

    @property
    def betti(self) -> list[int]:
        return [self.complex.ranks[n] for n in range(self.steps + 1)]

    def syzygy_module(self, n: int) -> FinModule:
        return self.syzygies[n]


def _generator_images(incl: np.ndarray, pi: ModuleMap, d: int) -> np.ndarray:
    """Differential entries sending free generator c to incl(pi(e_c))."""
    b = pi.source.dim // d if d else 0
    cols = pi.matrix[:, ::d] if b else np.zeros((pi.target.dim, 0), np.int64)
    V = pi.source.field.matmul(incl, cols)
    rows = V.shape[0] // d
    return np.ascontiguousarray(V.reshape(rows, d, b).transpose(0, 2, 1))


def minimal_resolution(M: FinModule, steps: int) -> Resolution:
    """Minimal free resolution of M through degree ``steps``."""
    if steps < 0:
        raise ValueError("steps must be non-negative")
    R = M.algebra
    d = R.dim
    ranks: dict = {}
    diffs: dict = {}
    syz = [M]
    cur, incl = M, None
    aug = None
    for n in range(steps + 1):
        b, pi = projective_cover(cur)
        ranks[n] = b
        if n == 0:
            aug = pi
        else:
            diffs[n] = _generator_images(incl, pi, d)
            if diffs[n][:, :, 0].any():
                raise InvariantViolation("kernel of a projective cover escaped m*F")
        if n < steps:
            cur, incl = kernel_submodule(pi)
            syz.append(cur)
    return Resolution(FreeComplex(R, ranks, diffs), M, aug, syz)


# ---------------------------------------------------------------------------
# complete resolutions


def _dual_identification(R: LocalAlgebra, rank: int) -> np.ndarray:
    """Inverse of the Gram identification R^b -> (R^b)^v, block diagonal."""
    _, G = gorenstein_form(R)
    return np.kron(np.eye(rank, dtype=np.int64), R.field.inv(G))


def cosyzygy_extend(K: FinModule) -> tuple[int, ModuleMap, FinModule]:
    """One rightward step: a minimal left free approximation K -> R^q and its cokernel.

    The embedding is the dual of the projective cover of K^v; the rank is
    cross-checked against the number of minimal generators of Hom_R(K, R).
    """
    R = K.algebra
    _, red_rank = strip_free_summands(K)
    if red_rank:
        raise NotReduced(f"module has a free summand of rank {red_rank}")
    q, cover = projective_cover(matlis_dual(K))
    Ginv = _dual_identification(R, q)
    emb = R.field.matmul(Ginv, cover.matrix.T)
    target = free_module(R, q)
    iota = ModuleMap(K, target, emb)
    hom_gens = projective_cover(hom_module(K, free_module(R, 1))[0])[0]
    if hom_gens != q:
        raise InvariantViolation(f"Matlis route gives rank {q}, Hom(-,R) route gives {hom_gens}")
    if R.field.rank(emb) != K.dim:
        raise InvariantViolation("left approximation is not injective")
    coker, _ = quotient_module(target, emb)
    return q, iota, coker


def hom_dual_cosyzygy_ranks(K: FinModule, count: int) -> list[int]:
    """Ranks of the first ``count`` terms of 0 -> K -> Q_0 -> Q_{-1} -> ...

    Built directly from Hom_R(-, R): the minimal generators f_1..f_q of
    K* = Hom(K, R) give K -> R^q, v -> (f_j(v)), and the next step continues
    from the cokernel.  Independent of the Matlis-dual construction.
    """
    R = K.algebra
    out = []
    cur = K
    one = free_module(R, 1)
    for _ in range(count):
        H, maps = hom_module(cur, one)
        q, cover = projective_cover(H)
        out.append(q)
        if q == 0:
            out.extend([0] * (count - len(out)))
            break
        gens = cover.matrix[:, :: R.dim]  # H-coordinates of the generators
        stack = np.stack([m.matrix for m in maps])
        fs = [np.tensordot(gens[:, j], stack, axes=1) % R.p for j in range(q)]
        emb = np.vstack(fs)  # row block j is f_j : cur -> R
        cur, _ = quotient_module(free_module(R, q), emb)
    return out


@dataclass(eq=False)
class CompleteResolution:
    complex: FreeComplex
    module: FinModule
    reduced: FinModule
    free_rank: int
    positive: Resolution
    negative: Resolution
    splice: np.ndarray = field(repr=False)  # M_red -> T_{-1}, injective

    @property
    def lo(self) -> int:
        return self.complex.lo

    @property
    def hi(self) -> int:
        return self.complex.hi

    @property
    def tate_betti(self) -> dict:
        return dict(sorted(self.complex.ranks.items()))


def complete_resolution(M: FinModule, lo: int, hi: int) -> CompleteResolution:
    """Minimal complete resolution of M on the window [lo, hi] (lo < 0 <= hi).

    Free summands are removed first; T depends only on the reduced part.
    """
    if not lo < 0 <= hi:
        raise ValueError(f"window must satisfy lo < 0 <= hi, got [{lo}, {hi}]")
    R = M.algebra
    d = R.dim
    gorenstein_form(R)
    red, free_rank = strip_free_summands(M)
    pos = minimal_resolution(red, hi)
    neg = minimal_resolution(matlis_dual(red), -lo - 1)
    ranks = {n: pos.complex.ranks[n] for n in range(hi + 1)}
    ranks.update({-m - 1: neg.complex.ranks[m] for m in range(-lo)})
    diffs = {n: pos.complex.diffs[n] for n in range(1, hi + 1)}
    for m in range(1, -lo):
        diffs[-m] = np.ascontiguousarray(neg.complex.diffs[m].transpose(1, 0, 2))
    q = ranks[-1]
    emb = R.field.matmul(_dual_identification(R, q), neg.augmentation.matrix.T) if q else np.zeros((0, red.dim), np.int64)
    diffs[0] = _generator_images(emb, pos.augmentation, d)
    T = FreeComplex(R, ranks, diffs)
    if not T.is_minimal():
        raise InvariantViolation("complete resolution is not minimal")
    return CompleteResolution(T, M, red, free_rank, pos, neg, emb)


def tate_betti(M: FinModule, lo: int, hi: int) -> "InvariantReport":
    T = complete_resolution(M, lo, hi)
    return InvariantReport(
        "tate_betti", lo, [T.complex.ranks[n] for n in range(lo, hi + 1)], "ranks of the minimal complete resolution"
    )


# ---------------------------------------------------------------------------
# reports


@dataclass(frozen=True)
class InvariantReport:
    """Integer invariants indexed by a contiguous window starting at ``start``."""

    kind: str
    start: int
    values: list
    provenance: str = ""

    @property
    def stop(self) -> int:
        return self.start + len(self.values) - 1

    @property
    def window(self) -> tuple[int, int]:
        return (self.start, self.stop)

    def __getitem__(self, n: int) -> int:
        if not self.start <= n <= self.stop:
            raise IndexError(f"degree {n} outside window {self.window}")
        return self.values[n - self.start]

    def items(self):
        return [(self.start + i, v) for i, v in enumerate(self.values)]

    def as_dict(self) -> dict:
        return {
            "kind": self.kind,
            "window": list(self.window),
            "values": {str(n): v for n, v in self.items()},
            "provenance": self.provenance,
        }


@dataclass
class AcyclicityReport:
    window: tuple
    d_squared_zero: bool
    minimal: bool
    homology: dict
    dual_homology: dict

    @property
    def passed(self) -> bool:
        return (
            self.d_squared_zero
            and not any(self.homology.values())
            and not any(self.dual_homology.values())
        )


def check_total_acyclicity(T) -> AcyclicityReport:
    """Homology of T and of Hom(T, R) at every interior degree of the window."""
    C = T.complex if isinstance(T, CompleteResolution) else T
    return AcyclicityReport(
        window=(C.lo, C.hi),
        d_squared_zero=C.d_squared_zero(),
        minimal=C.is_minimal(),
        homology=C.homology(),
        dual_homology=C.hom_cohomology(),
    )


def _window_for(lo: int, hi: int) -> tuple[int, int]:
    return min(lo - 1, -1), max(hi + 1, 0)


def ext_hat(M: FinModule, N: FinModule, lo: int, hi: int) -> InvariantReport:
    """dim H^i(Hom(T_M, N)) for i in [lo, hi]."""
    T = complete_resolution(M, *_window_for(lo, hi))
    dims = T.complex.hom_cohomology(N, range(lo, hi + 1))
    return InvariantReport("ext_hat", lo, [dims[i] for i in range(lo, hi + 1)], "cohomology of Hom(T_M, N)")


def tor_hat(M: FinModule, N: FinModule, lo: int, hi: int) -> InvariantReport:
    """dim H_i(T_M (x) N) for i in [lo, hi]."""
    T = complete_resolution(M, *_window_for(lo, hi))
    dims = T.complex.homology(N, range(lo, hi + 1))
    return InvariantReport("tor_hat", lo, [dims[i] for i in range(lo, hi + 1)], "homology of T_M (x) N")


def bass_numbers_ext(N: FinModule, steps: int) -> InvariantReport:
    """mu^n(m, N) = dim Ext^n(k, N) from the minimal resolution of k."""
    R = N.algebra
    P = minimal_resolution(residue_field(R), steps + 1).complex
    cob = P.hom_matrices(N)
    dims = {n: r * N.dim for n, r in P.ranks.items()}
    F = R.field
    vals = []
    for n in range(steps + 1):
        incoming = F.rank(cob[n - 1]) if n >= 1 else 0
        vals.append(dims[n] - F.rank(cob[n]) - incoming)
    return InvariantReport("bass", 0, vals, "dim Ext^n(k, N) via the minimal resolution of k")


def bass_numbers(N: FinModule, steps: int) -> InvariantReport:
    """Bass numbers mu^n(m, N), n = 0..steps, by two routes that must agree."""
    ext = bass_numbers_ext(N, steps)
    dual = minimal_resolution(matlis_dual(N), steps).betti
    if list(ext.values) != dual:
        raise InvariantViolation(f"Bass numbers disagree: Ext route {ext.values}, dual route {dual}")
    return InvariantReport("bass", 0, list(ext.values), "Ext(k, N); equal to betti(N^v)")


def tate_bass(N: FinModule, lo: int, hi: int) -> InvariantReport:
    """Tate-Bass numbers at m: ranks of the dual of the complete resolution of N^v.

    The minimal complete injective resolution of N is U = Hom_k(T, k) for T
    the minimal complete resolution of N^v; U^n = E(k)^rank(T_n).
    """
    T = complete_resolution(matlis_dual(N), *_window_for(lo, hi))
    rep = check_total_acyclicity(T)
    if not (rep.passed and rep.minimal):
        raise InvariantViolation("dual complete resolution is not exact and minimal")
    vals = [T.complex.ranks[n] for n in range(lo, hi + 1)]
    return InvariantReport("tate_bass", lo, vals, "ranks of the Matlis dual of the complete resolution of N^v")


def tate_bass_ext(N: FinModule, lo: int, hi: int) -> InvariantReport:
    """Tate-Bass numbers as dim H^n(Hom(T_k, N)) (independent of resolving N^v)."""
    rep = ext_hat(residue_field(N.algebra), N, lo, hi)
    return InvariantReport("tate_bass", lo, list(rep.values), "dim H^n(Hom(T_k, N))")


# ---------------------------------------------------------------------------
# balance


@dataclass
class BalanceReport:
    window: tuple
    hom_left: list   # H^i(Hom(T_M, N))
    hom_right: list  # H^i(Hom(M, U_N))
    tensor_left: list   # H_i(T_M (x) N)
    tensor_right: list  # H^{-i-1}(M (x) U_N)

    @property
    def hom_balanced(self) -> bool:
        return self.hom_left == self.hom_right

    @property
    def tensor_balanced(self) -> bool:
        return self.tensor_left == self.tensor_right

    @property
    def passed(self) -> bool:
        return self.hom_balanced and self.tensor_balanced


def _cohomology_of_dual(chain: dict, dims: dict, degrees, F) -> dict:
    """Cohomology of Hom_k(C, k) for a chain complex C given by k-matrices."""
    cochain = {n - 1: np.ascontiguousarray(D.T) for n, D in chain.items()}
    return _homology(cochain, dims, degrees, F, +1)


def balance_check(M: FinModule, N: FinModule, lo: int, hi: int) -> BalanceReport:
    """Compare both sides of Tate balance on [lo, hi].

    Right-hand sides use the minimal complete injective resolution of N,
    U = (T')^v with T' the complete resolution of N^v:

    * Hom(M, U^n) = (T'_n (x) M)^v, so H^n(Hom(M, U)) is the cohomology of
      the transposed complex T' (x) M;
    * M (x) U^n = Hom(M, T'_n)^v and Hom(M, R^b) = Hom(M, R)^b, so
      H^n(M (x) U) is the cohomology of the transposed complex T' (x) Hom(M, R).

    In these conventions H_i(T_M (x) N) matches H^{-i-1}(M (x) U).
    """
    R = M.algebra
    F = R.field
    degrees = range(lo, hi + 1)
    hom_left = ext_hat(M, N, lo, hi).values
    tensor_left = tor_hat(M, N, lo, hi).values

    tlo, thi = min(lo - 1, -hi - 2, -1), max(hi + 1, -lo, 0)
    Tp = complete_resolution(matlis_dual(N), tlo, thi).complex

    chain = Tp.tensor_matrices(M)
    dims = {n: r * M.dim for n, r in Tp.ranks.items()}
    right = _cohomology_of_dual(chain, dims, degrees, F)
    hom_right = [right[i] for i in degrees]

    H, _ = hom_module(M, free_module(R, 1))
    chain = Tp.tensor_matrices(H)
    dims = {n: r * H.dim for n, r in Tp.ranks.items()}
    right = _cohomology_of_dual(chain, dims, [-i - 1 for i in degrees], F)
    tensor_right = [right[-i - 1] for i in degrees]
    return BalanceReport((lo, hi), list(hom_left), hom_right, list(tensor_left), tensor_right)


def betti_via_tor(M: FinModule, steps: int) -> list[int]:
    """beta_n(M) = dim H_n(P(k) (x) M): an oracle independent of resolving M."""
    P = minimal_resolution(residue_field(M.algebra), steps + 1).complex
    dims = P.homology(M, range(1, steps + 1))
    F = M.field
    h0 = M.dim - F.rank(P.kmatrix(1, M)) if steps + 1 >= 1 else M.dim
    return [h0] + [dims[n] for n in range(1, steps + 1)]

