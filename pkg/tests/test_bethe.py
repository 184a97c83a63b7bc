import math

import numpy as np
import pytest

from massbox import coefficients
from massbox.bethe import (
    COT_BRANCH,
    TAN_BRANCH,
    PoleError,
    branch_for,
    canonical_momentum,
    constraint_rank_probe,
    continue_level,
    d6_group,
    energy,
    enumerate_spectrum,
    hardcore_levels,
    hardcore_residual,
    orbit_is_physical,
    orbit_partners,
    residual,
    solve_root,
)
from massbox.dihedral import MomentumVector
from tests.conftest import GROUND_ROOT_G1, PARTNER_1_G1, PARTNER_2_G1

PI = math.pi


class TestResidual:
    def test_paper_root_is_near_zero(self):
        # 5-digit rounding of the reported root limits the residual to ~5e-4
        f = residual(COT_BRANCH, *GROUND_ROOT_G1, 1.0)
        assert max(abs(f[0]), abs(f[1])) < 5e-4

    def test_pole_guard_on_lattice(self):
        with pytest.raises(PoleError):
            residual(COT_BRANCH, PI, PI, 0.0)

    def test_tan_pole_guard(self):
        with pytest.raises(PoleError):
            residual(TAN_BRANCH, PI, PI / 2, 1.0)

    def test_hardcore_limit_values(self):
        # cot(4pi/3) = 1/sqrt(3), cot(5pi/3) = -1/sqrt(3): both sums vanish
        assert abs(1.0 / math.tan(4 * PI / 3) - 1.0 / math.sqrt(3.0)) < 1e-12
        assert abs(1.0 / math.tan(5 * PI / 3) + 1.0 / math.sqrt(3.0)) < 1e-12
        f = hardcore_residual(COT_BRANCH, PI, 5 * PI / 3)
        assert max(abs(f[0]), abs(f[1])) < 1e-12

    def test_hardcore_limit_tan_branch_shares_the_root(self):
        f = hardcore_residual(TAN_BRANCH, PI, 5 * PI / 3)
        assert max(abs(f[0]), abs(f[1])) < 1e-12

    def test_rejected_hardcore_candidate_fails_equations(self):
        # the partner (3pi/2, pi/6) of the (1, 2) label violates the second
        # limit equation: cot(2pi/3) - cot(pi/6) = -4/sqrt(3)
        f = hardcore_residual(COT_BRANCH, 1.5 * PI, PI / 6)
        assert abs(f[1] + 4.0 / math.sqrt(3.0)) < 1e-12


class TestSolveRoot:
    def test_paper_ground_root(self):
        root = solve_root(COT_BRANCH, np.array([0.94 * PI, 1.18 * PI]), 1.0)
        assert abs(root.k1 - GROUND_ROOT_G1[0]) < 5e-5 * PI
        assert abs(root.k2 - GROUND_ROOT_G1[1]) < 5e-5 * PI
        assert root.residual_norm < 1e-10

    def test_weak_coupling_stays_near_lattice(self):
        root = solve_root(COT_BRANCH, np.array([PI, PI]), 1e-8)
        assert abs(root.k1 - PI) < 1e-4
        assert abs(root.k2 - PI) < 1e-4

    def test_strong_coupling_near_hardcore_point(self):
        root = solve_root(COT_BRANCH, np.array([PI, 5 * PI / 3]), 1e4)
        assert abs(root.k1 - PI) < 1e-3 * PI
        assert abs(root.k2 - 5 * PI / 3) < 1e-3 * PI


class TestOrbitPartners:
    def test_paper_partners_at_gamma_one(self):
        kp, kpp = orbit_partners(MomentumVector(*GROUND_ROOT_G1))
        assert abs(kp.k1 - PARTNER_1_G1[0]) < 5e-5 * PI
        assert abs(kp.k2 - PARTNER_1_G1[1]) < 5e-5 * PI
        assert abs(kpp.k1 - PARTNER_2_G1[0]) < 5e-5 * PI
        assert abs(kpp.k2 - PARTNER_2_G1[1]) < 5e-5 * PI

    def test_hardcore_partners(self):
        kp, kpp = orbit_partners(MomentumVector(PI, 5 * PI / 3))
        assert kp.close_to(MomentumVector(2 * PI, 4 * PI / 3), tol=1e-12)
        assert kpp.close_to(MomentumVector(3 * PI, PI / 3), tol=1e-12)

    def test_partners_satisfy_same_equations(self):
        root = continue_level(1, 1, 1.0)
        for partner in orbit_partners(root.momentum()):
            f = residual(COT_BRANCH, partner.k1, partner.k2, 1.0)
            assert max(abs(f[0]), abs(f[1])) < 1e-8


class TestEnergy:
    def test_lattice_ground(self):
        assert abs(energy(np.array([PI, PI])) - PI**2 / 2) < 1e-12

    def test_hardcore_ground(self):
        assert abs(energy(np.array([PI, 5 * PI / 3])) - 7 * PI**2 / 6) < 1e-12

    def test_triple_level(self):
        assert abs(energy(np.array([5 * PI, PI])) - 7 * PI**2 / 2) < 1e-12

    def test_group_invariance(self, d6):
        k = np.array([0.873, 1.442])
        e = energy(k)
        for d in d6.elements:
            assert abs(energy(d @ k) - e) < 1e-12


class TestContinuation:
    def test_ground_to_gamma_one(self):
        root = continue_level(1, 1, 1.0)
        assert abs(root.k1 - GROUND_ROOT_G1[0]) < 5e-5 * PI
        assert abs(root.k2 - GROUND_ROOT_G1[1]) < 5e-5 * PI

    def test_first_excited_weak_coupling_energy(self):
        root = continue_level(2, 1, 1e-6)
        assert abs(root.energy - 7 * PI**2 / 8) < 1e-4

    def test_gamma_zero_is_lattice(self):
        root = continue_level(1, 1, 0.0)
        assert (root.k1, root.k2) == (PI, PI)
        assert abs(root.energy - PI**2 / 2) < 1e-12

    def test_branch_assignment(self):
        assert branch_for(1, 1) == COT_BRANCH
        assert branch_for(2, 1) == TAN_BRANCH
        assert continue_level(2, 1, 1.0).branch == TAN_BRANCH

    def test_weak_coupling_roots_near_lattice(self):
        # generic seeds approach their lattice point linearly in gamma
        for n1, n2 in ((1, 1), (2, 1), (1, 2), (2, 2), (4, 1)):
            root = continue_level(n1, n2, 1e-4)
            rep = canonical_momentum(np.array([root.k1, root.k2]))
            lattice = canonical_momentum(np.array([n1 * PI, n2 * PI]))
            assert np.abs(rep - lattice).max() < 1e-3 * PI

    def test_invariant_line_seed_scaling(self):
        # the (3m, m) family leaves its axis representative as k1 = 2 sqrt(gamma)
        g = 1e-4
        root = continue_level(3, 1, g)
        rep = canonical_momentum(np.array([root.k1, root.k2]))
        assert abs(rep[0] - 2.0 * math.sqrt(g)) < 1e-3 * PI
        assert abs(rep[1] - 2 * PI - g / (3 * PI)) < 1e-3 * PI

    def test_strong_coupling_joins_hardcore_orbit(self):
        root = continue_level(1, 1, 1e4)
        rep = canonical_momentum(np.array([root.k1, root.k2]))
        hc = canonical_momentum(np.array([PI, 5 * PI / 3]))
        assert np.abs(rep - hc).max() < 1e-3 * PI

    def test_energy_monotone_in_coupling(self):
        gammas = [0.0, 0.1, 1.0, 10.0, 100.0]
        for n1, n2 in ((1, 1), (2, 1), (3, 1), (1, 2)):
            energies = [continue_level(n1, n2, g).energy for g in gammas]
            assert all(b >= a - 1e-10 for a, b in zip(energies, energies[1:]))


class TestSpectrum:
    def test_gamma_zero_levels(self):
        levels = enumerate_spectrum(0.0, 2)
        assert abs(levels[0].energy - PI**2 / 2) < 1e-12
        assert levels[0].quantum_numbers == (1, 1)
        assert abs(levels[1].energy - 7 * PI**2 / 8) < 1e-12
        assert levels[1].quantum_numbers == (2, 1)

    def test_gamma_one_ground_energy(self):
        # energy formula applied to the reported gamma = 1 root
        expected = (GROUND_ROOT_G1[0] ** 2 + 3 * GROUND_ROOT_G1[1] ** 2) / 8
        levels = enumerate_spectrum(1.0, 1)
        assert abs(levels[0].energy - expected) < 1e-3
        assert abs(levels[0].energy / PI**2 - 0.63097) < 1e-4

    def test_strong_coupling_degenerate_pair(self):
        # the even member approaches the limit as ~17/gamma, so the bound is
        # relative; both levels close onto the same infinite-repulsion energy
        levels = enumerate_spectrum(1e4, 2)
        for lv in levels:
            assert abs(lv.energy - 7 * PI**2 / 6) < 1e-3 * (7 * PI**2 / 6)
        assert levels[1].energy - levels[0].energy < 2e-3

    def test_parities_alternate_on_lowest_levels(self, lowest_levels_g1):
        assert [lv.parity for lv in lowest_levels_g1] == [1, -1, 1, -1, 1, -1]
        assert [lv.root.branch for lv in lowest_levels_g1] == [
            COT_BRANCH,
            TAN_BRANCH,
            COT_BRANCH,
            TAN_BRANCH,
            COT_BRANCH,
            TAN_BRANCH,
        ]

    def test_interaction_independent_level_present(self):
        for gamma in (0.1, 1.0, 10.0):
            levels = enumerate_spectrum(gamma, 10)
            special = [lv for lv in levels if lv.interaction_independent]
            assert len(special) == 1
            assert abs(special[0].energy - 7 * PI**2 / 2) < 1e-12
            assert special[0].parity == 1

    def test_level_orbit_partners_recorded(self, lowest_levels_g1):
        lv = lowest_levels_g1[0]
        k, kp, kpp = lv.orbit
        assert k.close_to(lv.root.momentum(), tol=1e-12)
        got = {(round(kp.k1, 6), round(kp.k2, 6)), (round(kpp.k1, 6), round(kpp.k2, 6))}
        expected = {
            (round(PARTNER_1_G1[0], 4), round(PARTNER_1_G1[1], 4)),
            (round(PARTNER_2_G1[0], 4), round(PARTNER_2_G1[1], 4)),
        }
        for a, b in got:
            assert any(abs(a - c) < 1e-3 and abs(b - d) < 1e-3 for c, d in expected)

    def test_determinant_consistency_at_roots(self, lowest_levels_g1):
        group = d6_group()
        for lv in lowest_levels_g1:
            if lv.interaction_independent:
                continue
            dets = coefficients.pair_determinants(
                group, np.array([lv.root.k1, lv.root.k2]), 1.0
            )
            assert np.abs(dets).max() < 1e-8

    def test_spurious_axis_root_rejected(self):
        # the scattering-invariant line carries a degenerate-orbit solution
        # family; it satisfies the transcendental system but must not surface
        # as a level (its amplitude null vector is a vanishing wavefunction)
        spurious = solve_root(COT_BRANCH, np.array([3.14289 * PI, 1.04763 * PI]), 1.0)
        assert abs(spurious.k1 - 3.0 * spurious.k2) < 1e-8
        assert not orbit_is_physical(np.array([spurious.k1, spurious.k2]))
        for lv in enumerate_spectrum(1.0, 8):
            if not lv.interaction_independent:
                assert orbit_is_physical(np.array([lv.root.k1, lv.root.k2]))


class TestHardcore:
    def test_lowest_orbit(self):
        levels = hardcore_levels(2)
        for lv in levels:
            assert abs(lv.root.k1 - PI) < 1e-12
            assert abs(lv.root.k2 - 5 * PI / 3) < 1e-12
            assert abs(lv.energy - 7 * PI**2 / 6) < 1e-12
        assert {lv.parity for lv in levels} == {1, -1}

    def test_parity_doublets_and_ordering(self):
        levels = hardcore_levels(8)
        energies = [lv.energy for lv in levels]
        assert energies == sorted(energies)
        for even, odd in zip(levels[0::2], levels[1::2]):
            assert abs(even.energy - odd.energy) < 1e-12
            assert (even.parity, odd.parity) == (1, -1)

    def test_limit_residuals_vanish(self):
        for lv in hardcore_levels(6):
            assert lv.root.residual_norm < 1e-10

    def test_rejected_labels(self):
        # (l1, l2) = (1, 1): the orbit image (0, 2pi/3) has a vanishing
        # component; (1, 2): a partner fails the limit equations
        reps = {(round(lv.root.k1 / PI, 6), round(lv.root.k2 / PI, 6)) for lv in hardcore_levels(20)}
        assert (1.0, round(1.0 / 3.0, 6)) not in reps
        assert (1.0, round(2.0 / 3.0, 6)) not in reps

    def test_continued_root_matches_hardcore(self):
        root = continue_level(2, 1, 1e4)
        rep = canonical_momentum(np.array([root.k1, root.k2]))
        hc = hardcore_levels(1)[0]
        hc_rep = canonical_momentum(np.array([hc.root.k1, hc.root.k2]))
        assert np.abs(rep - hc_rep).max() < 1e-3 * PI


class TestProbe:
    def test_eta3_solvable(self):
        rep = constraint_rank_probe(3.0)
        assert rep.n_conditions == 6
        assert rep.n_independent == 3
        assert rep.solvable
        assert rep.message == "solvable: 3 independent conditions"

    def test_equal_mass_reduces_to_two_conditions(self):
        rep = constraint_rank_probe(1.0)
        assert rep.n_conditions == 4
        assert rep.n_independent == 2
        assert rep.solvable

    def test_silver_ratio_overdetermined(self):
        rep = constraint_rank_probe(3.0 - 2.0 * math.sqrt(2.0))
        assert rep.n_conditions == 8
        assert rep.n_independent == 4
        assert not rep.solvable
        assert rep.min_residual > 1e-6

    def test_unclassified_eta_rejected(self):
        with pytest.raises(ValueError):
            constraint_rank_probe(2.0)
