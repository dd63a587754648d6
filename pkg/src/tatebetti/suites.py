"""Named verification suites run by ``tatebetti verify``.

Each suite checks its hypotheses first (Gorenstein ring, periodic residue
field) and reports SKIP with the reason when they fail, since the statements
being checked are conditionals.  Instances are listed in a fixed order and
every random module is derived from the suite seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field


from .artinalg import (
    FinModule,
    LocalAlgebra,
    double_dual_map,
    hom_basis,
    matlis_dual,
    random_module,
    residue_field,
    ring_invariants,
    strip_free_summands,
)
from .period import detect_complex_periodicity, hypersurface_dichotomy
from .resolve import (
    balance_check,
    bass_numbers_ext,
    check_total_acyclicity,
    complete_resolution,
    minimal_resolution,
    tate_bass,
    tate_bass_ext,
    tor_hat,
)

__all__ = ["SUITES", "SuiteReport", "sample_modules", "run_suite"]

PASS, FAIL, SKIP = "PASS", "FAIL", "SKIP"


@dataclass
class SuiteReport:
    suite: str
    seed: int
    status: str = PASS
    reason: str = ""
    parameters: dict = field(default_factory=dict)
    instances: list = field(default_factory=list)

    def add(self, name: str, ok: bool, **data):
        self.instances.append({"instance": name, "verdict": PASS if ok else FAIL, **data})
        if not ok:
            self.status = FAIL

    def skip(self, reason: str) -> "SuiteReport":
        self.status = SKIP
        self.reason = reason
        return self

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "status": self.status,
            "reason": self.reason,
            "parameters": self.parameters,
            "instances": self.instances,
        }


def sample_modules(R: LocalAlgebra, seed: int, count: int, named: dict | None = None) -> list[tuple[str, FinModule]]:
    """Named modules first, then ``count`` seeded random ones.

    Odd-indexed samples use sparse presentations so that the sample covers
    more than the generic isomorphism type.
    """
    out = list((named or {}).items())
    for i in range(count):
        s = seed * 10_007 + i
        zero_prob = 0.5 if i % 2 else 0.0
        out.append((f"random[{s}]", random_module(R, s, zero_prob=zero_prob)))
    return out


def _gorenstein(R: LocalAlgebra) -> bool:
    return ring_invariants(R).is_gorenstein


def _k_period(R: LocalAlgebra, steps: int, max_period: int, seed: int):
    return detect_complex_periodicity(minimal_resolution(residue_field(R), steps), max_period, seed=seed)


def suite_minimality(R, seed, pairs, named, lo, hi, steps, max_period, rep):
    for name, M in [("k", residue_field(R))] + sample_modules(R, seed, pairs, named):
        P = minimal_resolution(M, steps).complex
        exact = not any(P.homology().values())
        rep.add(
            f"{name}:minimal_resolution",
            P.d_squared_zero() and exact and P.is_minimal(),
            betti=[P.ranks[n] for n in range(P.hi + 1)],
        )
        if _gorenstein(R):
            T = complete_resolution(M, lo, hi).complex
            exact = not any(T.homology().values())
            rep.add(
                f"{name}:complete_resolution",
                T.d_squared_zero() and exact and T.is_minimal(),
                tate_betti={str(n): T.ranks[n] for n in range(lo, hi + 1)},
            )


def suite_acyclicity(R, seed, pairs, named, lo, hi, steps, max_period, rep):
    if not _gorenstein(R):
        return rep.skip("ring is not Gorenstein; complete resolutions are not constructed")
    for name, M in [("k", residue_field(R))] + sample_modules(R, seed, pairs, named):
        a = check_total_acyclicity(complete_resolution(M, lo, hi))
        rep.add(
            name,
            a.passed and a.minimal,
            homology={str(n): v for n, v in a.homology.items()},
            hom_R_homology={str(n): v for n, v in a.dual_homology.items()},
        )


def suite_balance(R, seed, pairs, named, lo, hi, steps, max_period, rep):
    if not _gorenstein(R):
        return rep.skip("ring is not Gorenstein; complete resolutions are not constructed")
    mods = sample_modules(R, seed, 2 * pairs, named)
    for i in range(0, len(mods) - 1, 2):
        (a, M), (b, N) = mods[i], mods[i + 1]
        br = balance_check(M, N, lo, hi)
        rep.add(
            f"({a}, {b})",
            br.passed,
            hom_T_N=br.hom_left,
            hom_M_U=br.hom_right,
            T_tensor_N=br.tensor_left,
            M_tensor_U=br.tensor_right,
        )


def _periodicity_common(R, steps, max_period, seed, rep):
    if not _gorenstein(R):
        rep.skip("ring is not Gorenstein; complete resolutions are not constructed")
        return None
    cert = _k_period(R, steps, max_period, seed)
    if cert is None:
        rep.skip("hypothesis not satisfied: k's resolution not eventually periodic in window")
        return None
    rep.parameters["k_period"] = {"n0": cert.n0, "s": cert.s}
    return cert.s


def suite_tate_betti_periodicity(R, seed, pairs, named, lo, hi, steps, max_period, rep):
    s = _periodicity_common(R, steps, max_period, seed, rep)
    if s is None:
        return rep
    for name, M in sample_modules(R, seed, pairs, named):
        T = complete_resolution(M, lo, hi).complex
        vals = [T.ranks[n] for n in range(lo, hi + 1)]
        ok = all(T.ranks[i] == T.ranks[i + s] for i in range(lo, hi - s + 1))
        rep.add(name, ok, tate_betti=vals)


def suite_tate_bass_periodicity(R, seed, pairs, named, lo, hi, steps, max_period, rep):
    s = _periodicity_common(R, steps, max_period, seed, rep)
    if s is None:
        return rep
    for name, N in sample_modules(R, seed, pairs, named):
        via_dual = tate_bass(N, lo, hi).values
        via_ext = tate_bass_ext(N, lo, hi).values
        ok = via_dual == via_ext and all(via_dual[i] == via_dual[i + s] for i in range(len(via_dual) - s))
        rep.add(name, ok, tate_bass=via_dual, tate_bass_ext_route=via_ext)


def suite_matlis_duality(R, seed, pairs, named, lo, hi, steps, max_period, rep):
    if not _gorenstein(R):
        return rep.skip("ring is not Gorenstein; the duality statements are about Gorenstein rings")
    mods = sample_modules(R, seed, pairs, named)
    for i, (name, M) in enumerate(mods):
        D = matlis_dual(M)
        T = complete_resolution(M, lo, hi)
        tb = [T.complex.ranks[n] for n in range(lo, hi + 1)]
        mu_hat = tate_bass_ext(D, lo, hi).values
        betti = minimal_resolution(M, steps).betti
        mu = bass_numbers_ext(D, steps).values
        canonical = double_dual_map(M)
        dd = canonical.is_linear() and M.field.is_invertible(canonical.matrix)
        _, other = mods[(i + 1) % len(mods)]
        hom_dims = (len(hom_basis(M, other)), len(hom_basis(matlis_dual(other), D)))
        red, _ = strip_free_summands(M)
        neg = [T.complex.ranks[-n - 1] for n in range(-lo)]
        dual_betti = minimal_resolution(matlis_dual(red), -lo - 1).betti
        ok = mu_hat == tb and mu == betti and dd and hom_dims[0] == hom_dims[1] and neg == dual_betti
        rep.add(
            name,
            ok,
            tate_betti_M=tb,
            tate_bass_dual=mu_hat,
            betti_M=betti,
            bass_dual=mu,
            double_dual_canonical_iso=dd,
            hom_dims=list(hom_dims),
        )


def suite_hypersurface_dichotomy(R, seed, pairs, named, lo, hi, steps, max_period, rep):
    d = hypersurface_dichotomy(R, steps, seed=seed)
    rep.add("k", d.consistent, **d.as_dict())


def suite_tor_k_identity(R, seed, pairs, named, lo, hi, steps, max_period, rep):
    if not _gorenstein(R):
        return rep.skip("ring is not Gorenstein; complete resolutions are not constructed")
    k = residue_field(R)
    for name, M in sample_modules(R, seed, pairs, named):
        T = complete_resolution(M, lo, hi).complex
        tb = [T.ranks[n] for n in range(lo, hi + 1)]
        tor = tor_hat(k, M, lo, hi).values
        rep.add(name, tor == tb, tate_betti=tb, tor_hat_k_M=tor)


SUITES = {
    "balance": suite_balance,
    "tate-betti-periodicity": suite_tate_betti_periodicity,
    "tate-bass-periodicity": suite_tate_bass_periodicity,
    "matlis-duality": suite_matlis_duality,
    "hypersurface-dichotomy": suite_hypersurface_dichotomy,
    "minimality": suite_minimality,
    "acyclicity": suite_acyclicity,
    "tor-k-identity": suite_tor_k_identity,
}

DEFAULT_WINDOWS = {
    "balance": (-5, 5),
    "acyclicity": (-6, 8),
    "tate-betti-periodicity": (-8, 8),
    "tate-bass-periodicity": (-8, 8),
    "matlis-duality": (-6, 6),
    "tor-k-identity": (-5, 5),
}


def run_suite(
    name: str,
    R: LocalAlgebra,
    seed: int = 0,
    pairs: int = 10,
    named: dict | None = None,
    lo: int | None = None,
    hi: int | None = None,
    steps: int = 8,
    max_period: int = 6,
) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    dlo, dhi = DEFAULT_WINDOWS.get(name, (-4, 4))
    lo = dlo if lo is None else lo
    hi = dhi if hi is None else hi
    rep = SuiteReport(name, seed, parameters={"window": [lo, hi], "steps": steps, "pairs": pairs})
    SUITES[name](R, seed, pairs, named or {}, lo, hi, steps, max_period, rep)
    return rep
