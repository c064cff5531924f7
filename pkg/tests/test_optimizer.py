import math

import numpy as np
import pytest
from scipy.optimize import brentq

from bsbound.optimizer import (
    MinimizeConfig,
    _Probe,
    extract_alpha,
    minimize_absorption,
    solve_thickness_for_ratio,
    sweep,
)
from bsbound.slab import ScaledSlabParams, evaluate


def ratio_at(eps_s, d, gamma_tilde=1e-3, omega_tilde=1e-3):
    return evaluate(ScaledSlabParams(omega_tilde, gamma_tilde, d, eps_s)).x


class TestThicknessSolve:
    def test_near_transmissive_phase_tends_to_zero(self):
        d = solve_thickness_for_ratio(6.2, 1e6, branch="first")
        phi = math.sqrt(6.2) * 1e-3 * d
        assert 0 < phi < 0.05

    def test_lossless_seed_agreement(self):
        # root should sit within O(gamma*omega) of the closed lossless form
        d = solve_thickness_for_ratio(6.2, 1.0, branch="first")
        eta = math.sqrt(6.2)
        phi_lossless = math.asin(math.sqrt(4 * 6.2 / (5.2**2)))
        assert math.sqrt(6.2) * 1e-3 * d == pytest.approx(phi_lossless, rel=1e-4)
        d2 = solve_thickness_for_ratio(6.2, 1.0, branch="second")
        assert eta * 1e-3 * d2 == pytest.approx(math.pi - phi_lossless, rel=1e-4)

    def test_feasibility_boundary(self):
        # x = 1 needs eps_s >= 3 + 2*sqrt(2)
        assert solve_thickness_for_ratio(4.0, 1.0) is None
        assert solve_thickness_for_ratio(5.8, 1.0) is None
        assert solve_thickness_for_ratio(5.9, 1.0) is not None

    def test_constraint_residual_randomized(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            x_target = float(10.0 ** rng.uniform(-1.5, 3.0))
            eps_s = float(rng.uniform(1.5, 400.0))
            branch = "first" if rng.random() < 0.5 else "second"
            d = solve_thickness_for_ratio(eps_s, x_target, branch=branch)
            if d is None:
                continue
            x = ratio_at(eps_s, d)
            assert abs(x - x_target) / x_target <= 1e-10

    def test_branch_ordering(self):
        d1 = solve_thickness_for_ratio(6.2, 1.0, branch="first")
        d2 = solve_thickness_for_ratio(6.2, 1.0, branch="second")
        assert d1 < d2

    def test_invalid_inputs(self):
        with pytest.raises(ValueError):
            solve_thickness_for_ratio(0.5, 1.0)
        with pytest.raises(ValueError):
            solve_thickness_for_ratio(6.2, -1.0)
        with pytest.raises(ValueError):
            solve_thickness_for_ratio(6.2, 1.0, branch="third")


class TestMinimize:
    def test_symmetric_splitter(self):
        res = minimize_absorption(MinimizeConfig(x_target=1.0))
        assert res.feasible
        assert 0.85 <= res.alpha <= 0.95
        assert 6.0 <= res.eps_s_star <= 6.4
        assert res.branch == "first"
        assert res.diagnostics.constraint_residual <= 1e-10

    def test_extreme_transmission_alpha_small(self):
        res = minimize_absorption(MinimizeConfig(x_target=1e4))
        assert res.feasible
        assert res.alpha < 0.05

    def test_small_parameter_stability(self):
        a = minimize_absorption(MinimizeConfig(x_target=1.0)).alpha
        b = minimize_absorption(
            MinimizeConfig(x_target=1.0, gamma_tilde=5e-4, omega_tilde=5e-4)
        ).alpha
        assert abs(a - b) / a < 0.01

    def test_gamma_linearity(self):
        base = minimize_absorption(MinimizeConfig(x_target=1.0))
        doubled = minimize_absorption(MinimizeConfig(x_target=1.0, gamma_tilde=2e-3))
        assert doubled.p_min / base.p_min == pytest.approx(2.0, rel=0.01)

    def test_branch_dominance(self):
        for x in (0.3, 1.0, 3.0):
            res = minimize_absorption(MinimizeConfig(x_target=x))
            rejected = res.diagnostics.rejected_branch_p
            if math.isfinite(rejected):
                assert res.p_min <= rejected

    def test_constraint_reevaluates_through_slab(self):
        res = minimize_absorption(MinimizeConfig(x_target=0.7))
        x = ratio_at(res.eps_s_star, res.d_star)
        assert abs(x - 0.7) / 0.7 <= 1e-10

    def test_determinism(self):
        cfg = MinimizeConfig(x_target=1.0)
        assert minimize_absorption(cfg) == minimize_absorption(cfg)

    def test_infeasible_everywhere(self):
        res = minimize_absorption(
            MinimizeConfig(x_target=1.0, eps_s_range=(1.0 + 1e-6, 5.0))
        )
        assert not res.feasible
        assert res.branch == "none"
        assert math.isnan(res.alpha)

    def test_second_period_is_worse(self):
        # one-time check behind the first-period restriction: the k = 1
        # roots of the same ratio constraint cost strictly more absorption
        res = minimize_absorption(MinimizeConfig(x_target=1.0))
        probe = _Probe(res.eps_s_star, 1e-3, 1e-3)

        def h(phi):
            return math.log(probe.response(phi)[1])

        lo, hi = math.pi * (1 + 1e-9), 2 * math.pi * (1 - 1e-9)
        golden = (math.sqrt(5) - 1) / 2
        a, b = lo, hi
        for _ in range(60):
            c, dpt = b - golden * (b - a), a + golden * (b - a)
            if h(c) < h(dpt):
                b = dpt
            else:
                a = c
        valley = 0.5 * (a + b)
        for lo_i, hi_i in ((lo, valley), (valley, hi)):
            if (h(lo_i)) * (h(hi_i)) < 0:
                root = brentq(lambda v: h(v), lo_i, hi_i, xtol=1e-13)
                p_second_period = probe.response(root)[0]
                assert p_second_period > res.p_min

    def test_config_validation(self):
        with pytest.raises(ValueError):
            MinimizeConfig(x_target=-1.0)
        with pytest.raises(ValueError):
            MinimizeConfig(x_target=1.0, eps_s_range=(0.5, 10.0))
        with pytest.raises(ValueError):
            MinimizeConfig(x_target=1.0, branch_policy="widest")


class TestExtractAlpha:
    def test_default_ladder(self):
        ex = extract_alpha(1.0)
        assert ex.feasible and ex.scaling_ok
        assert ex.drift < 0.01
        assert 0.85 <= ex.alpha <= 0.95

    def test_needs_two_levels(self):
        with pytest.raises(ValueError):
            extract_alpha(1.0, levels=((1e-3, 1e-3),))

    def test_propagates_infeasibility(self):
        ex = extract_alpha(
            1.0, config=MinimizeConfig(x_target=1.0, eps_s_range=(1.0 + 1e-6, 5.0))
        )
        assert not ex.feasible
        assert math.isnan(ex.alpha)


class TestSweep:
    def test_grid_shape(self):
        rows = sweep([0.05, 0.2, 1.0, 5.0, 20.0])
        alphas = [r.alpha for r in rows]
        assert max(alphas) == alphas[2]
        assert rows[0].eps_s_star > rows[2].eps_s_star
        assert rows[0].eps_s_star > 80.0

    def test_row_matches_standalone(self):
        rows = sweep([1.0])
        res = minimize_absorption(MinimizeConfig(x_target=1.0))
        row = rows[0]
        assert (row.alpha, row.eps_s_star, row.d_star, row.p_min) == (
            res.alpha, res.eps_s_star, res.d_star, res.p_min,
        )

    def test_parallel_rows_identical(self):
        xs = [0.5, 1.0, 2.0]
        assert sweep(xs, jobs=1) == sweep(xs, jobs=2)

    def test_infeasible_rows_are_data(self):
        rows = sweep([1e-4, 1.0])  # 1e-4 needs eps_s far beyond the default range
        assert not rows[0].feasible
        assert rows[1].feasible

    def test_empty_grid_rejected(self):
        with pytest.raises(ValueError):
            sweep([])
