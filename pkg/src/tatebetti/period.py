"""Eventual periodicity of minimal complexes and of integer invariants.

A complex C is certified periodic from n0 with period s by an R-isomorphism
between the cokernels Omega_n = coker(d_{n+1}) at n0 and n0 + s.  Lifting that
isomorphism through the free modules gives isomorphisms of the chunk
C_{n0+2} -> C_{n0+1} -> C_{n0} onto its translate, and the validator checks
those lifts explicitly.  Failing to find a certificate never proves
aperiodicity: the isomorphism search is randomized and one-sided.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .artinalg import (
    FinModule,
    IsoCertificate,
    LocalAlgebra,
    free_module,
    is_isomorphic,
    quotient_module,
    r_span,
    residue_field,
    ring_invariants,
)
from .errors import InsufficientWindow, NonMinimalInput
from .resolve import CompleteResolution, FreeComplex, InvariantReport, Resolution, minimal_resolution

__all__ = [
    "PeriodicityCertificate",
    "InvariantPeriodicity",
    "DichotomyReport",
    "cokernel_module",
    "detect_complex_periodicity",
    "validate_certificate",
    "invariant_periodicity",
    "hypersurface_dichotomy",
]

DEFAULT_MAX_PERIOD = 6
DEFAULT_WINDOW = 12


@dataclass(eq=False)
class PeriodicityCertificate:
    n0: int
    s: int
    witness: IsoCertificate
    checked_window: tuple
    complex: FreeComplex = field(repr=False)

    def as_dict(self) -> dict:
        return {
            "n0": self.n0,
            "s": self.s,
            "checked_window": list(self.checked_window),
            "witness_dim": int(self.witness.matrix.shape[0]),
            "witness": self.witness.matrix.tolist(),
        }


@dataclass(frozen=True)
class InvariantPeriodicity:
    s: int
    holds_on: tuple
    sequence: tuple


def _complex_of(res) -> FreeComplex:
    if isinstance(res, (Resolution, CompleteResolution)):
        return res.complex
    return res


def cokernel_module(C: FreeComplex, n: int) -> tuple[FinModule, np.ndarray]:
    """Omega_n = coker(d_{n+1} : C_{n+1} -> C_n) and the projection C_n -> Omega_n."""
    R = C.algebra
    F = free_module(R, C.ranks[n])
    E = C.diffs[n + 1]
    cols = E.transpose(0, 2, 1).reshape(C.ranks[n] * R.dim, C.ranks[n + 1])
    return quotient_module(F, r_span(F, cols))


def _stream(seed: int, s: int, offset: int) -> np.random.Generator:
    # each (period, start) candidate gets its own reproducible stream
    return np.random.default_rng([seed, s, offset])


def detect_complex_periodicity(
    res, max_period: int = DEFAULT_MAX_PERIOD, seed: int = 0, trials: int = 20
) -> PeriodicityCertificate | None:
    """Smallest period s <= max_period (then smallest n0) with a validated certificate."""
    C = _complex_of(res)
    if not C.is_minimal():
        raise NonMinimalInput("periodicity detection needs a minimal complex")
    lo, hi = C.lo, C.hi
    cache: dict = {}

    def omega(n):
        if n not in cache:
            cache[n] = cokernel_module(C, n)
        return cache[n]

    for s in range(1, max_period + 1):
        # the chunk check needs d_{n0+s+2}
        for n0 in range(lo, hi - s - 1):
            if any(C.ranks[n] != C.ranks[n + s] for n in range(n0, hi - s + 1)):
                continue
            A, _ = omega(n0)
            B, _ = omega(n0 + s)
            if A.dim != B.dim:
                continue
            iso = is_isomorphic(A, B, trials=trials, rng=_stream(seed, s, n0 - lo))
            if iso is None:
                continue
            cert = PeriodicityCertificate(n0, s, iso, (lo, hi), C)
            if validate_certificate(cert):
                return cert
    return None


def _lift(F, target_map: np.ndarray, rhs: np.ndarray) -> np.ndarray | None:
    return F.solve(target_map, rhs) if rhs.shape[1] else np.zeros((target_map.shape[1], 0), np.int64)


def _free_map(R: LocalAlgebra, images: np.ndarray, rank_src: int, rank_tgt: int) -> np.ndarray:
    """k-matrix of the R-linear map R^rank_src -> R^rank_tgt sending e_c to images[:, c]."""
    F = free_module(R, rank_tgt)
    if rank_src == 0:
        return np.zeros((rank_tgt * R.dim, 0), np.int64)
    cols = np.stack([F.field.matmul(B, images) for B in F.basis_actions], axis=2)  # (n, c, i)
    return cols.reshape(rank_tgt * R.dim, rank_src * R.dim)


def validate_certificate(cert: PeriodicityCertificate) -> bool:
    """Check the witness and the lifted isomorphism of the first chunk.

    The witness phi : Omega_{n0} -> Omega_{n0+s} is lifted to f0 : C_{n0} -> C_{n0+s},
    then f1, f2 on the next two degrees; each f must be invertible and the
    squares with d_{n0+1}, d_{n0+2} must commute.
    """
    C = cert.complex
    R = C.algebra
    F = R.field
    n0, s = cert.n0, cert.s
    if not (C.lo <= n0 and n0 + s + 2 <= C.hi):
        return False
    # re-derive both cokernels rather than trusting the modules stored in the witness
    src, q_src = cokernel_module(C, n0)
    tgt, q_tgt = cokernel_module(C, n0 + s)
    if not IsoCertificate(src, tgt, cert.witness.matrix).validate():
        return False
    d = R.dim
    # f0: lift phi . q_src on free generators through q_tgt
    gens = q_src[:, ::d] if C.ranks[n0] else np.zeros((q_src.shape[0], 0), np.int64)
    imgs = _lift(F, q_tgt, F.matmul(cert.witness.matrix, gens))
    if imgs is None:
        return False
    fs = [_free_map(R, imgs, C.ranks[n0], C.ranks[n0 + s])]
    for j in (1, 2):
        src, tgt = n0 + j, n0 + s + j
        D_src = C.kmatrix(src)
        D_tgt = C.kmatrix(tgt)
        rhs = F.matmul(fs[-1], D_src)[:, ::d] if C.ranks[src] else np.zeros((D_tgt.shape[0], 0), np.int64)
        imgs = _lift(F, D_tgt, rhs)
        if imgs is None:
            return False
        f = _free_map(R, imgs, C.ranks[src], C.ranks[tgt])
        if not np.array_equal(F.matmul(D_tgt, f), F.matmul(fs[-1], D_src)):
            return False
        fs.append(f)
    return all(F.is_invertible(f) for f in fs)


def invariant_periodicity(report: InvariantReport | list, max_period: int = DEFAULT_MAX_PERIOD, start: int = 0):
    """Smallest s <= max_period with value_n = value_{n+s} on the whole window."""
    if isinstance(report, InvariantReport):
        values, start = list(report.values), report.start
    else:
        values = list(report)
    if len(values) < 2 * max_period:
        raise InsufficientWindow(f"window of length {len(values)} is too short for periods up to {max_period}")
    for s in range(1, max_period + 1):
        if all(values[i] == values[i + s] for i in range(len(values) - s)):
            return InvariantPeriodicity(s, (start, start + len(values) - 1), tuple(values))
    return None


@dataclass
class DichotomyReport:
    is_hypersurface: bool
    embedding_dim: int
    betti: list
    certificate: PeriodicityCertificate | None
    grows: bool

    @property
    def consistent(self) -> bool:
        if self.is_hypersurface:
            return self.certificate is not None and self.certificate.s <= 2
        return self.grows

    def as_dict(self) -> dict:
        return {
            "is_hypersurface": self.is_hypersurface,
            "embedding_dim": self.embedding_dim,
            "betti_k": self.betti,
            "certificate": None if self.certificate is None else self.certificate.as_dict(),
            "betti_grows": self.grows,
            "consistent": self.consistent,
        }


def hypersurface_dichotomy(R: LocalAlgebra, window: int = DEFAULT_WINDOW, seed: int = 0) -> DichotomyReport:
    """Hypersurfaces must show a period <= 2 for k; other rings must show growth."""
    inv = ring_invariants(R)
    res = minimal_resolution(residue_field(R), window)
    cert = None
    if inv.is_hypersurface:
        cert = detect_complex_periodicity(res, max_period=2, seed=seed)
    grows = any(b > res.betti[0] for b in res.betti)
    return DichotomyReport(inv.is_hypersurface, inv.embedding_dim, res.betti, cert, grows)
