"""Photon budgets and the energetic bill for Shor's algorithm."""

from __future__ import annotations

import math

import numpy as np
import pytest

from qecopt.scheme import PI_SQ_OVER_16, get_scheme
from qecopt.shor import (
    HBAR,
    MinBudget,
    ShorProblem,
    energy_bill,
    min_photon_budget,
    optimize_photon_budget,
    photon_noise_model,
    rwa_margin,
    target_logical_error,
)

ALIFERIS = get_scheme("aliferis2006")


class TestShorProblem:
    def test_gate_count_defaults_to_square(self):
        assert ShorProblem(R=2048).L == 2048 ** 2
        assert ShorProblem(R=100, L=12345).L == 12345

    def test_validation(self):
        with pytest.raises(ValueError):
            ShorProblem(R=1)
        with pytest.raises(ValueError):
            ShorProblem(R=10, P_target=0.5)
        with pytest.raises(ValueError):
            ShorProblem(R=10, P_target=1.0)


class TestTargetLogicalError:
    def test_standard_two_thirds(self):
        problem = ShorProblem(R=2048)
        assert target_logical_error(problem) == pytest.approx(
            1.0 / (3.0 * 2048 ** 2), rel=1e-12
        )
        assert target_logical_error(problem) == pytest.approx(7.95e-8, rel=1e-2)

    def test_single_gate(self):
        assert target_logical_error(ShorProblem(R=2, L=1)) == pytest.approx(1.0 / 3.0)

    def test_thousand_bit_key(self):
        assert target_logical_error(ShorProblem(R=10 ** 3)) == pytest.approx(
            1.0 / 3e6, rel=1e-12
        )

    def test_general_target_uses_log_expansion(self):
        problem = ShorProblem(R=100, P_target=0.9)
        assert target_logical_error(problem) == pytest.approx(
            -math.log(0.9) / 100 ** 2, rel=1e-12
        )


class TestOptimizePhotonBudget:
    def test_model_construction(self):
        problem = ShorProblem(R=10 ** 3)
        model = photon_noise_model(problem, 1e6, ALIFERIS)
        assert model.L == 10 ** 6
        assert model.n_tot == pytest.approx(1e12)
        assert model.A == ALIFERIS.D  # per-level component growth

    def test_small_key_needs_no_encoding(self):
        result = optimize_photon_budget(ShorProblem(R=10 ** 3), 1e6, ALIFERIS)
        assert result.k_max == 0
        # p(0) = (pi^2/16)/n_L
        assert result.log10_p_min.log10_value == pytest.approx(
            math.log10(PI_SQ_OVER_16 / 1e6), abs=1e-12
        )

    def test_medium_key_prefers_one_level(self):
        result = optimize_photon_budget(ShorProblem(R=10 ** 5), 1e9, ALIFERIS)
        assert result.k_max == 1

    def test_budget_just_above_second_level_crossing(self):
        # the level-1 -> level-2 crossing sits at B (pi^2/16) D^3 photons
        crossing = ALIFERIS.B * PI_SQ_OVER_16 * ALIFERIS.D ** 3
        result = optimize_photon_budget(ShorProblem(R=10 ** 7), crossing * 2, ALIFERIS)
        assert result.k_max == 2

    def test_more_photons_never_hurt(self):
        problem = ShorProblem(R=10 ** 5)
        values = [
            optimize_photon_budget(problem, n_L, ALIFERIS).log10_p_min.log10_value
            for n_L in np.logspace(4, 14, 40)
        ]
        assert all(b <= a + 1e-12 for a, b in zip(values, values[1:]))

    def test_k_staircase_is_non_decreasing(self):
        problem = ShorProblem(R=10 ** 3)
        ks = [
            optimize_photon_budget(problem, n_L, ALIFERIS).k_max
            for n_L in np.logspace(4, 14, 60)
        ]
        assert ks == sorted(ks)


class TestMinPhotonBudget:
    def test_thousand_bit_closed_form(self):
        # At level 0 the target is met at n_L = (pi^2/16)/p_err exactly.
        problem = ShorProblem(R=10 ** 3)
        budget = min_photon_budget(problem, ALIFERIS)
        expected = PI_SQ_OVER_16 / target_logical_error(problem)
        assert budget.feasible
        assert budget.k == 0
        assert expected <= budget.n_L <= expected * 1.011  # 1% bisection slack
        assert budget.n_L == pytest.approx(1.85e6, rel=0.02)

    def test_section_five_triple(self):
        # R = 1e3 / 1e5 / 1e7 need levels 0 / 1 / 2 at minimal budgets of
        # order 1e6 / 1e9 / 1e11 photons per logical gate.
        for R, expected_k, order in ((10 ** 3, 0, 1e6), (10 ** 5, 1, 1e9),
                                     (10 ** 7, 2, 1e11)):
            budget = min_photon_budget(ShorProblem(R=R), ALIFERIS)
            assert budget.feasible
            assert budget.k == expected_k
            assert order / 3.2 <= budget.n_L <= order * 3.2

    def test_trivial_target_needs_one_photon(self):
        # p(0) at a single photon equals pi^2/16 exactly in real arithmetic;
        # the no-slack log10 comparison may land one ulp either side, so the
        # answer is 1 up to the 1% bisection tolerance.
        budget = min_photon_budget(
            ShorProblem(R=10 ** 3), ALIFERIS, p_err=PI_SQ_OVER_16
        )
        assert 1.0 <= budget.n_L <= 1.011
        assert budget.k == 0
        # A hair above the exact boundary the single photon suffices exactly.
        relaxed = min_photon_budget(
            ShorProblem(R=10 ** 3), ALIFERIS, p_err=PI_SQ_OVER_16 * 1.0001
        )
        assert relaxed.n_L == 1.0
        assert relaxed.k == 0

    def test_unreachable_target_is_explicit(self):
        budget = min_photon_budget(
            ShorProblem(R=10 ** 3), ALIFERIS, p_err=1e-300, n_L_cap=1e12
        )
        assert not budget.feasible

    def test_consistency_with_the_optimizer(self):
        # The returned budget meets the target; half of it does not.
        problem = ShorProblem(R=10 ** 5)
        target = math.log10(target_logical_error(problem))
        budget = min_photon_budget(problem, ALIFERIS)
        at_budget = optimize_photon_budget(problem, budget.n_L, ALIFERIS)
        at_half = optimize_photon_budget(problem, 0.5 * budget.n_L, ALIFERIS)
        assert at_budget.log10_p_min.log10_value <= target
        assert at_half.log10_p_min.log10_value > target

    def test_level_is_non_decreasing_in_key_length(self):
        ks = [
            min_photon_budget(ShorProblem(R=R), ALIFERIS).k
            for R in (10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6, 10 ** 7)
        ]
        assert ks == sorted(ks)


class TestEnergyBill:
    def test_thousand_bit_reference(self):
        problem = ShorProblem(R=10 ** 3)
        bill = energy_bill(problem, 1e6, 0, gamma=10.0, omega0=1e10, scheme=ALIFERIS)
        assert bill.n_g == pytest.approx(1e6)
        assert bill.E_tot == pytest.approx(HBAR * 1e10 * 1e6 * 1e6, rel=1e-12)
        assert bill.E_tot == pytest.approx(1.05e-12, rel=1e-2)  # ~1 pJ
        assert bill.tau_g == pytest.approx(2.467e-7, rel=1e-3)  # ~100 ns scale
        assert bill.T_tot == pytest.approx(0.2467, rel=1e-3)  # ~100 ms scale
        assert bill.P_avg == pytest.approx(4.274e-12, rel=1e-3)  # ~1 pW scale

    def test_hundred_thousand_bit_reference(self):
        problem = ShorProblem(R=10 ** 5)
        bill = energy_bill(problem, 1e9, 1, gamma=10.0, omega0=1e10, scheme=ALIFERIS)
        assert bill.n_g == pytest.approx(1e9 / 575.0, rel=1e-12)
        assert bill.E_tot == pytest.approx(1.05e-5, rel=1e-2)  # ~10 uJ
        assert bill.T_tot == pytest.approx(4.26e3, rel=1e-2)  # ~1000 s scale
        assert bill.P_avg == pytest.approx(2.48e-9, rel=1e-2)  # ~1 nW scale

    def test_no_concatenation_means_no_clock_slowdown(self):
        problem = ShorProblem(R=10 ** 3)
        bill = energy_bill(problem, 1e6, 0, gamma=10.0, omega0=1e10, scheme=ALIFERIS)
        assert bill.tau_L == bill.tau_g

    @pytest.mark.parametrize("n_L,k", [(1e6, 0), (1e9, 1), (1e11, 2), (3e12, 3)])
    def test_identities(self, n_L, k):
        problem = ShorProblem(R=10 ** 4)
        bill = energy_bill(problem, n_L, k, gamma=10.0, omega0=1e10, scheme=ALIFERIS)
        assert bill.n_g == pytest.approx(n_L / ALIFERIS.A ** k, rel=1e-12)
        assert bill.tau_L == pytest.approx(ALIFERIS.M ** k * bill.tau_g, rel=1e-12)
        assert bill.T_tot == pytest.approx(problem.L * bill.tau_L, rel=1e-12)
        assert bill.P_avg * bill.T_tot == pytest.approx(bill.E_tot, rel=1e-12)

    def test_validation(self):
        problem = ShorProblem(R=10 ** 3)
        with pytest.raises(ValueError):
            energy_bill(problem, 0.0, 0, 10.0, 1e10, ALIFERIS)
        with pytest.raises(ValueError):
            energy_bill(problem, 1e6, -1, 10.0, 1e10, ALIFERIS)


class TestRwaMargin:
    def test_thousand_bit_operating_point(self):
        assert rwa_margin(1e6, 0, gamma=10.0, omega0=1e10, scheme=ALIFERIS) == (
            pytest.approx(1e3)
        )

    def test_boundary_value(self):
        # n_g = omega0/gamma sits exactly at the approximation boundary
        assert rwa_margin(1e9, 0, gamma=1.0, omega0=1e9, scheme=ALIFERIS) == (
            pytest.approx(1.0)
        )

    def test_concatenated_operating_point(self):
        got = rwa_margin(1e11, 2, gamma=10.0, omega0=1e10, scheme=ALIFERIS)
        n_g = 1e11 / 575.0 ** 2
        assert n_g == pytest.approx(3.02e5, rel=1e-2)
        assert got == pytest.approx(1e9 / n_g, rel=1e-12)
        assert got == pytest.approx(3.3e3, rel=2e-2)
