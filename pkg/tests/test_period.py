import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tatebetti.artinalg import IsoCertificate, random_module, residue_field
from tatebetti.errors import InsufficientWindow, NonMinimalInput
from tatebetti.period import (
    PeriodicityCertificate,
    cokernel_module,
    detect_complex_periodicity,
    hypersurface_dichotomy,
    invariant_periodicity,
    validate_certificate,
)
from tatebetti.resolve import FreeComplex, InvariantReport, complete_resolution, minimal_resolution

from conftest import HYPERSURFACES, ring


def k_resolution(name, steps=8):
    return minimal_resolution(residue_field(ring(name)), steps)


class TestComplexPeriodicity:
    def test_dual_numbers(self):
        cert = detect_complex_periodicity(k_resolution("x2"))
        assert (cert.n0, cert.s) == (0, 1)
        assert validate_certificate(cert)

    def test_x3_needs_period_two(self):
        res = k_resolution("x3")
        assert cokernel_module(res.complex, 1)[0].dim == 2
        assert cokernel_module(res.complex, 2)[0].dim == 1
        assert detect_complex_periodicity(res, max_period=1) is None
        cert = detect_complex_periodicity(res)
        assert (cert.n0, cert.s) == (0, 2)

    def test_x2y2_not_found(self):
        assert detect_complex_periodicity(k_resolution("x2y2", 5), max_period=4) is None

    def test_non_minimal_rejected(self):
        R = ring("x2")
        E = np.zeros((1, 1, R.dim), np.int64)
        E[0, 0, 0] = 1
        C = FreeComplex(R, {0: 1, 1: 1}, {1: E})
        with pytest.raises(NonMinimalInput):
            detect_complex_periodicity(C)

    def test_cokernels_of_k_resolution_are_syzygies(self):
        res = k_resolution("x2y2", 4)
        for n in range(4):
            assert cokernel_module(res.complex, n)[0].dim == res.syzygy_module(n).dim

    def test_seed_reproducible(self):
        a = detect_complex_periodicity(k_resolution("x5"), seed=3)
        b = detect_complex_periodicity(k_resolution("x5"), seed=3)
        assert np.array_equal(a.witness.matrix, b.witness.matrix)

    def test_forged_certificate_rejected(self):
        res = k_resolution("x3")
        cert = detect_complex_periodicity(res)
        # claiming s = 1 with the n0 = 0 witness: Omega_0 and Omega_1 differ
        A, _ = cokernel_module(res.complex, 0)
        fake = PeriodicityCertificate(0, 1, IsoCertificate(A, A, np.eye(A.dim, dtype=np.int64)), cert.checked_window, res.complex)
        assert not validate_certificate(fake)
        bad = IsoCertificate(cert.witness.source, cert.witness.target, np.zeros_like(cert.witness.matrix))
        assert not validate_certificate(PeriodicityCertificate(0, 2, bad, cert.checked_window, res.complex))

    def test_x4_alternates_x_and_x3(self):
        R = ring("x4")
        res = k_resolution("x4", 6)
        for n in range(1, 7):
            e = R.basis_exps[int(np.flatnonzero(res.complex.diffs[n][0, 0])[0])]
            assert e == ((1,) if n % 2 else (3,))
        cert = detect_complex_periodicity(res)
        assert cert.s == 2

    @pytest.mark.parametrize("name", HYPERSURFACES)
    def test_complete_resolutions_fully_periodic(self, name):
        # minimal T of a hypersurface module repeats from the left edge of the window
        R = ring(name)
        for seed in range(3):
            T = complete_resolution(random_module(R, seed), -6, 6)
            if not any(T.complex.ranks.values()):
                continue
            cert = detect_complex_periodicity(T)
            assert cert is not None and cert.s <= 2 and cert.n0 == -6
            assert validate_certificate(cert)
            ranks = T.complex.ranks
            assert all(ranks[n] == ranks[n + cert.s] for n in range(cert.n0, 6 - cert.s + 1))


class TestInvariantPeriodicity:
    def test_examples(self):
        assert invariant_periodicity([1] * 6, max_period=3).s == 1
        assert invariant_periodicity([1, 2] * 3, max_period=3).s == 2
        assert invariant_periodicity([1, 2, 3, 4, 5], max_period=2) is None

    def test_short_window(self):
        with pytest.raises(InsufficientWindow):
            invariant_periodicity([1, 1, 1], max_period=2)

    def test_report_input(self):
        rep = InvariantReport("tate_betti", -6, [2, 1] * 6)
        found = invariant_periodicity(rep)
        assert found.s == 2 and found.holds_on == (-6, 5)

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.integers(0, 3), min_size=1, max_size=4), st.integers(3, 5))
    def test_repeated_block(self, block, reps):
        seq = block * reps
        found = invariant_periodicity(seq, max_period=len(block), start=0) if len(seq) >= 2 * len(block) else None
        assert found is not None and len(block) % found.s == 0


class TestDichotomy:
    @pytest.mark.parametrize("name", HYPERSURFACES)
    def test_hypersurfaces(self, name):
        d = hypersurface_dichotomy(ring(name))
        assert d.is_hypersurface and d.consistent and d.certificate.s <= 2

    def test_x2y2(self):
        d = hypersurface_dichotomy(ring("x2y2"), window=10)
        assert not d.is_hypersurface and d.consistent
        assert d.betti == list(range(1, 12))

    def test_m2(self):
        d = hypersurface_dichotomy(ring("m2"), window=8)
        assert not d.is_hypersurface and d.consistent
        assert d.betti == [2**n for n in range(9)]
        assert d.as_dict()["certificate"] is None
