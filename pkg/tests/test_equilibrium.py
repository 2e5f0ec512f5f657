"""Tests for best responses, the share-equation solver, and the oracle."""

import math

import numpy as np
import pytest

from tsm.core import (
    Coefficients,
    DomainError,
    InfeasibilityError,
    MarketParams,
    MarketState,
    check_feasibility,
    cloud_payoff,
    demand_reduced,
    derive_coefficients,
    provider_payoff,
    supply_reduced,
)
from tsm.equilibrium import (
    ShareEquation,
    _best_price_unchecked,
    build_share_equation,
    first_order_residuals,
    oracle_equilibrium,
    provider_best_price,
    second_order_check,
    solve_share,
    stackelberg_solve,
)

# A parameter draw whose game has a reported equilibrium (frozen; found by
# scanning the simulation-setup ranges).
FEASIBLE_PARAMS = MarketParams(
    alpha=0.4157495017341835, beta=2.0116927898597186, gamma=0.2746010273260006,
    psi=0.1, phi=0.4281244537440676, k1=0.8706127934353941,
    f_c=0.4668312747528217,
)
# f2 fails here (weak externalities make a1/a2 < 1).
INFEASIBLE_PARAMS = MarketParams(
    alpha=0.5, beta=1.0, gamma=0.3, psi=0.1, phi=2.0, k1=0.5, f_c=1.0,
)
# Strong externalities, all flags pass, but the share equation has no root.
NO_ROOT_PARAMS = MarketParams(
    alpha=0.434, beta=1.916, gamma=0.301, psi=0.1, phi=1.442, k1=0.410,
    f_c=0.66 * 1.11,
)


class TestProviderBestPrice:
    def test_direct_substitution(self):
        # a1=2, a2=1, f_c=1, share=0.5 -> 4; exact on the raw formula
        c = Coefficients(a1=2.0, a2=1.0, a3=0.0, a4=0.0,
                         share_exp_a=0.0, share_exp_b=0.0)
        assert _best_price_unchecked(0.5, c, 1.0) == 4.0
        # and through validated params approaching that coefficient corner
        p = MarketParams(alpha=1e-3, beta=1e-3, gamma=2.0, psi=0.0, phi=2.0,
                         k1=0.5, f_c=1.0)
        assert provider_best_price(0.5, p) == pytest.approx(4.0, rel=1e-5)

    def test_share_zero_boundary_is_curve_minimum(self):
        p = FEASIBLE_PARAMS
        c = derive_coefficients(p)
        floor = c.a1 * p.f_c / (c.a1 - c.a2)
        assert provider_best_price(1e-12, p) == pytest.approx(floor, rel=1e-9)
        for share in (0.1, 0.5, 0.9):
            assert provider_best_price(share, p) > floor

    def test_strictly_increasing_in_share(self):
        p = FEASIBLE_PARAMS
        shares = np.linspace(0.01, 0.99, 60)
        prices = [provider_best_price(s, p) for s in shares]
        assert all(b > a for a, b in zip(prices, prices[1:]))

    def test_grid_argmax_oracle(self):
        # brute-force argmax of the provider payoff brackets the formula
        p = FEASIBLE_PARAMS
        share = 0.31
        grid = np.geomspace(p.f_c / (1 - share) * (1 + 1e-9),
                            p.f_c / (1 - share) * 1e3, 100_000)
        payoffs = [provider_payoff(float(x), share, p) for x in grid]
        best = grid[int(np.argmax(payoffs))]
        formula = provider_best_price(share, p)
        step = grid[1] / grid[0]
        assert best / step <= formula <= best * step

    def test_infeasibility_errors(self):
        with pytest.raises(InfeasibilityError):
            provider_best_price(0.5, INFEASIBLE_PARAMS)
        with pytest.raises(DomainError):
            provider_best_price(1.0, FEASIBLE_PARAMS)


class TestShareEquation:
    def test_symmetric_multipliers_drop_out(self):
        # k1 = k2 = 1 and beta = alpha make the multiplier factor 1
        p = MarketParams(alpha=0.7, beta=0.7, gamma=0.8, psi=0.0, phi=3.0,
                         k1=1.0, k2=1.0, f_c=0.4, f_s=2.0)
        c = derive_coefficients(p)
        eq = build_share_equation(p)
        expected = (p.f_s * (p.phi / (c.a4 + c.a2))
                    * (c.a1 * p.f_c / (c.a1 - c.a2)) ** eq.exp_b)
        assert eq.rhs_c == pytest.approx(expected, rel=1e-12)

    def test_phi_zero_limit(self):
        eq = build_share_equation(MarketParams(
            alpha=0.7, beta=0.7, gamma=0.8, psi=0.0, phi=0.0, k1=1.0,
            f_c=0.4))
        assert eq.rhs_c == 0.0

    def test_log_space_oracle(self):
        # direct product arithmetic agrees with the log-space constant
        rng = np.random.default_rng(5)
        checked = 0
        while checked < 40:
            alpha = rng.uniform(0.1, 0.7)
            p = MarketParams(
                alpha=alpha, beta=rng.uniform(1e-3, 0.99) / alpha,
                gamma=rng.uniform(0.1, 0.35), psi=0.1,
                phi=rng.uniform(0.1, 5.0), k1=rng.uniform(0.1, 0.9),
                f_c=rng.uniform(0.2, 2.0),
            )
            if not check_feasibility(p).f1_price_positive:
                continue
            checked += 1
            c = derive_coefficients(p)
            eq = build_share_equation(p)
            direct = (p.f_s * (p.phi / (c.a4 + c.a2))
                      * ((p.k2 * p.k1 ** p.beta) / (p.k1 * p.k2 ** p.alpha))
                      ** (1.0 / c.a2)
                      * (c.a1 * p.f_c / (c.a1 - c.a2)) ** eq.exp_b)
            if not (1e-250 < direct < 1e250):
                continue
            assert eq.rhs_c == pytest.approx(direct, rel=1e-12)

    def test_rhs_positive_under_f1(self):
        eq = build_share_equation(FEASIBLE_PARAMS)
        assert eq.rhs_c > 0.0

    def test_f1_required(self):
        with pytest.raises(InfeasibilityError):
            build_share_equation(MarketParams(
                alpha=0.3, beta=0.5, gamma=0.3, psi=0.1, phi=1.0, k1=0.5,
                f_c=1.0))


class TestSolveShare:
    def test_closed_form_special_case(self):
        # chi^-1 = 2  =>  chi* = 0.5
        eq = ShareEquation(exp_a=-1.0, exp_b=0.0, rhs_c=2.0,
                           log_rhs_c=math.log(2.0))
        sol = solve_share(eq, INFEASIBLE_PARAMS)
        assert sol.n_roots == 1
        assert sol.share_star == pytest.approx(0.5, abs=1e-10)

    def test_monotone_case_single_root(self):
        # B > 0 with A < 0 makes chi^A (1-chi)^B strictly decreasing
        p = MarketParams(alpha=0.5, beta=1.9, gamma=0.1, psi=0.35, phi=2.0,
                         k1=0.5, f_c=1.0)
        eq = build_share_equation(p)
        assert eq.exp_a < 0.0 and eq.exp_b > 0.0
        sol = solve_share(eq, p)
        assert sol.n_roots == 1

    def test_requires_negative_exp_a(self):
        eq = ShareEquation(exp_a=0.5, exp_b=1.0, rhs_c=1.0, log_rhs_c=0.0)
        with pytest.raises(InfeasibilityError):
            solve_share(eq, INFEASIBLE_PARAMS)

    def test_no_root_is_data(self):
        eq = build_share_equation(NO_ROOT_PARAMS)
        sol = solve_share(eq, NO_ROOT_PARAMS)
        assert sol.n_roots == 0
        assert sol.share_star is None

    def test_residual_oracle(self):
        eq = build_share_equation(FEASIBLE_PARAMS)
        sol = solve_share(eq, FEASIBLE_PARAMS)
        assert sol.n_roots >= 1
        g = (sol.share_star ** eq.exp_a
             * (1.0 - sol.share_star) ** eq.exp_b)
        assert abs(g - eq.rhs_c) <= 1e-8
        assert sol.residual <= 1e-8

    def test_numeraire_rescaling_recomputed(self):
        # scaling f_s and f_c together moves the equation's constant and
        # hence the root; the solve responds rather than caching
        import dataclasses
        scaled = dataclasses.replace(FEASIBLE_PARAMS,
                                     f_s=3.0 * FEASIBLE_PARAMS.f_s,
                                     f_c=3.0 * FEASIBLE_PARAMS.f_c)
        base = solve_share(build_share_equation(FEASIBLE_PARAMS), FEASIBLE_PARAMS)
        moved = solve_share(build_share_equation(scaled), scaled)
        again = solve_share(build_share_equation(scaled), scaled)
        assert moved == again
        assert moved.share_star != base.share_star

    def test_payoff_maximizing_root_selected(self):
        eq = build_share_equation(FEASIBLE_PARAMS)
        sol = solve_share(eq, FEASIBLE_PARAMS)
        assert sol.n_roots == 2
        c = derive_coefficients(FEASIBLE_PARAMS)
        payoffs = [
            cloud_payoff(_best_price_unchecked(r, c, FEASIBLE_PARAMS.f_c), r,
                         FEASIBLE_PARAMS)
            for r in sol.roots
        ]
        assert sol.share_star == sol.roots[int(np.argmax(payoffs))]


class TestStackelbergSolve:
    def test_flag_failure_propagates(self):
        res = stackelberg_solve(INFEASIBLE_PARAMS)
        assert not res.feasible
        assert res.price_star is None
        assert res.share_roots_found == 0

    def test_no_root_flagged_infeasible(self):
        res = stackelberg_solve(NO_ROOT_PARAMS)
        assert not res.feasible
        assert res.feasibility.all_ok       # flags pass; the equation is rootless
        assert res.share_roots_found == 0

    def test_reported_equilibrium_fields(self):
        res = stackelberg_solve(FEASIBLE_PARAMS)
        assert res.feasible
        assert res.share_star == pytest.approx(0.30666015686409254, abs=1e-9)
        assert res.price_star == pytest.approx(
            provider_best_price(res.share_star, FEASIBLE_PARAMS), rel=1e-10)
        assert res.demand == demand_reduced(res.price_star, res.share_star,
                                            FEASIBLE_PARAMS)
        assert res.supply == supply_reduced(res.price_star, res.share_star,
                                            FEASIBLE_PARAMS)
        assert res.residual <= 1e-8

    def test_first_order_conditions(self):
        res = stackelberg_solve(FEASIBLE_PARAMS)
        at = MarketState(price=res.price_star, share=res.share_star,
                         demand=res.demand, supply=res.supply)
        foc_price, foc_share = first_order_residuals(FEASIBLE_PARAMS, at)
        assert foc_price <= 1e-6
        assert foc_share <= 1e-6

    def test_determinism(self):
        assert stackelberg_solve(FEASIBLE_PARAMS) == stackelberg_solve(FEASIBLE_PARAMS)


class TestOracle:
    def test_agrees_with_closed_form(self):
        res = stackelberg_solve(FEASIBLE_PARAMS)
        oracle = oracle_equilibrium(FEASIBLE_PARAMS, grid_n=2000)
        assert abs(oracle.share - res.share_star) <= 2.0 / 2000
        assert abs(oracle.price - res.price_star) / res.price_star <= 2.0 / 2000
        assert oracle.n_candidates >= 1

    def test_degenerate_zero_cost_returns_upper_bound(self):
        # f_s = 0 and phi > a4 + a2: payoff strictly increasing in share
        p = MarketParams(alpha=0.4, beta=1.2, gamma=0.3, psi=0.1, phi=3.0,
                         k1=0.5, f_c=1.0, f_s=0.0)
        oracle = oracle_equilibrium(p, grid_n=500)
        assert oracle.share >= 0.98
        assert oracle.n_candidates == 0

    def test_grid_n_validated(self):
        with pytest.raises(DomainError):
            oracle_equilibrium(FEASIBLE_PARAMS, grid_n=50)


class TestSecondOrder:
    def test_analytic_provider_condition_tracks_f2(self):
        soc = second_order_check(
            FEASIBLE_PARAMS,
            MarketState(price=2.26, share=0.31, demand=1.0, supply=1.0))
        assert check_feasibility(FEASIBLE_PARAMS).f2_price_max
        assert soc.provider_soc_analytic

    def test_numeric_agreement_at_equilibrium(self):
        res = stackelberg_solve(FEASIBLE_PARAMS)
        at = MarketState(price=res.price_star, share=res.share_star,
                         demand=res.demand, supply=res.supply)
        soc = second_order_check(FEASIBLE_PARAMS, at)
        assert soc.provider_soc_negative and soc.cloud_soc_negative
        assert soc.provider_agreement and soc.cloud_agreement
        assert soc.d2_provider < 0.0 and soc.d2_cloud < 0.0

    def test_f3_violation_is_reported(self):
        # phi below a4 + a2: the share stationary point cannot be a maximum
        p = MarketParams(alpha=0.5, beta=1.0, gamma=0.3, psi=0.1, phi=0.2,
                         k1=0.5, f_c=1.0)
        soc = second_order_check(
            p, MarketState(price=1.7, share=0.4, demand=1.0, supply=1.0))
        assert not soc.cloud_soc_analytic
        assert soc.cloud_agreement == (soc.cloud_soc_negative is False)
