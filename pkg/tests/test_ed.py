import math

import numpy as np
import pytest

from massbox import ed
from massbox.bethe import enumerate_spectrum

PI = math.pi


class TestInteractionElement:
    def test_ground_overlap(self):
        # 4 * integral of sin^4 = 4 * 3/8
        assert abs(ed.interaction_element(1, 1, 1, 1) - 1.5) < 1e-12

    def test_parity_selection_rule(self):
        assert abs(ed.interaction_element(1, 1, 2, 1)) < 1e-13
        assert abs(ed.interaction_element(2, 3, 1, 1)) < 1e-13

    def test_bra_ket_symmetry(self):
        a = ed.interaction_element(2, 3, 4, 1)
        b = ed.interaction_element(4, 1, 2, 3)
        assert abs(a - b) < 1e-13

    def test_matches_tensor(self):
        v = ed.interaction_tensor(6)
        idx = lambda n1, n2: (n1 - 1) * 6 + (n2 - 1)
        for n1, n2, m1, m2 in ((1, 1, 1, 1), (2, 1, 4, 1), (3, 2, 5, 4)):
            assert abs(v[idx(n1, n2), idx(m1, m2)] - ed.interaction_element(n1, m1, n2, m2)) < 1e-12

    def test_rejects_bad_indices(self):
        with pytest.raises(ValueError):
            ed.interaction_element(0, 1, 1, 1)


class TestHamiltonian:
    def test_noninteracting_diagonal(self):
        ham = ed.build_hamiltonian(0.0, 3.0, 8)
        n = np.arange(1, 9)
        expected = (np.add.outer(n**2, 3 * n**2) * PI**2 / 8.0).reshape(-1)
        assert np.abs(np.diag(ham.matrix) - expected).max() < 1e-10
        assert np.abs(ham.matrix - np.diag(expected)).max() < 1e-12

    def test_symmetric(self):
        ham = ed.build_hamiltonian(2.5, 3.0, 10)
        assert np.abs(ham.matrix - ham.matrix.T).max() < 1e-12

    def test_parity_blocks_decouple(self):
        ham = ed.build_hamiltonian(1.0, 3.0, 10)
        n = np.arange(1, 11)
        total = (np.add.outer(n, n) % 2).reshape(-1)
        mixed = ham.matrix[total == 0][:, total == 1]
        assert np.abs(mixed).max() < 1e-12

    def test_memory_guard(self):
        with pytest.raises(ValueError):
            ed.build_hamiltonian(1.0, 3.0, 81)


class TestSpectrum:
    def test_noninteracting_levels(self):
        vals = ed.spectrum(0.0, 3.0, cutoff=10, count=3)
        expected = np.array([PI**2 / 2, 7 * PI**2 / 8, 3 * PI**2 / 2])
        assert np.abs(vals - expected).max() < 1e-10

    def test_variational_monotonicity(self):
        e20 = ed.spectrum(1.0, 3.0, 20, 5)
        e30 = ed.spectrum(1.0, 3.0, 30, 5)
        e40 = ed.spectrum(1.0, 3.0, 40, 5)
        assert (e30 <= e20 + 1e-12).all()
        assert (e40 <= e30 + 1e-12).all()

    def test_strong_coupling_pair_approaches_limit(self):
        # fixed-cutoff eigenvalues increase monotonically with the coupling;
        # after basis extrapolation the gamma = 1e4 pair sits just below the
        # infinite-repulsion energy
        limit = 7 * PI**2 / 6
        ladder = [ed.spectrum(g, 3.0, cutoff=30, count=2) for g in (1e2, 1e3, 1e4)]
        for lo, hi in zip(ladder, ladder[1:]):
            assert (hi >= lo - 1e-12).all()
        pair = ed.extrapolated_spectrum(1e4, 2)
        assert (pair < limit).all()
        assert (limit - pair < 1e-2).all()

    def test_interaction_independent_eigenvalue(self):
        for gamma in (0.0, 1.0, 10.0):
            vals = ed.spectrum(gamma, 3.0, cutoff=40, count=12)
            assert np.abs(vals - 3.5 * PI**2).min() < 1e-8

    def test_silver_ratio_spectrum_is_well_defined(self):
        vals = ed.spectrum(1.0, 3.0 - 2.0 * math.sqrt(2.0), cutoff=16, count=4)
        assert np.isfinite(vals).all()
        assert (np.diff(vals) > -1e-12).all()
        assert vals[0] > 0.0

    def test_count_of_flat_levels_matches_triples(self):
        # below 10 pi^2 exactly three triple classes exist:
        # energies 3.5, 6.5 and 9.5 in units of pi^2
        lo = ed.spectrum(1.0, 3.0, cutoff=30, count=60)
        hi = ed.spectrum(8.0, 3.0, cutoff=30, count=60)
        lo = lo[lo < 10 * PI**2]
        flat = [e for e in lo if np.abs(hi - e).min() < 1e-8]
        assert len(flat) == 3
        assert np.abs(np.array(flat) / PI**2 - np.array([3.5, 6.5, 9.5])).max() < 1e-10


class TestExtrapolation:
    def test_exact_model_recovery(self):
        pts = [(n, 5.0 + 1.0 / n) for n in (20, 30, 40)]
        assert abs(ed.extrapolate(pts) - 5.0) < 1e-9

    def test_constant_data(self):
        assert abs(ed.extrapolate([(20, 2.0), (30, 2.0), (40, 2.0)]) - 2.0) < 1e-12

    def test_poor_fit_raises(self):
        with pytest.raises(ed.PoorFitError):
            ed.extrapolate([(20, 1.0), (30, 5.0), (40, 1.0)])

    def test_needs_three_points(self):
        with pytest.raises(ValueError):
            ed.extrapolate([(20, 1.0), (30, 1.1)])

    def test_ground_state_extrapolation_matches_solver(self):
        bethe_e = enumerate_spectrum(1.0, 1)[0].energy
        ed_e = ed.extrapolated_spectrum(1.0, 1)[0]
        assert abs(ed_e - bethe_e) / bethe_e < 2e-4


class TestValidationReport:
    def test_gamma_one_report(self):
        report = ed.validate_against_bethe(1.0, 4)
        assert report["all_pass"]
        assert len(report["levels"]) == 4
        for row in report["levels"]:
            assert row["rel_deviation"] < 1e-3
        assert report["cutoffs"] == [20, 30, 40]
