
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import optimize

from evgrow.errors import MeanOutOfRange
from evgrow.evariable import null_expectation
from evgrow.expfam import poisson, scaled_bernoulli, gaussian_location
from evgrow.surround1d import (
    BoundaryPrior,
    balance_objective,
    crossing_point,
    grow_surround_1d,
    monotonicity_scan,
    solve_balance,
    worst_case_growth,
)
from oracles import exact_bernoulli_objective, gh_objective


class TestCrossingPoint:
    def test_gaussian_midpoint(self):
        np.testing.assert_allclose(crossing_point(gaussian_location(1), -1.0, 2.0), 0.5)

    def test_likelihoods_equal_there(self):
        fam = poisson(2.0)
        yc = crossing_point(fam, -1.0, 1.5)
        from evgrow.expfam import log_density_ratio

        np.testing.assert_allclose(log_density_ratio(fam, -1.0, yc), log_density_ratio(fam, 1.5, yc),
                                   atol=1e-12)


class TestBalanceObjective:
    def test_gaussian_matches_gauss_hermite(self):
        fam = gaussian_location(1)
        for mu, w in ((-1.0, 0.3), (2.0, 0.3), (0.4, 0.8), (3.5, 0.05)):
            np.testing.assert_allclose(balance_objective(fam, -1.0, 2.0, mu, w),
                                       gh_objective(mu, w, -1.0, 2.0), rtol=1e-10, atol=1e-12)

    def test_endpoint_weights(self):
        # w = 1 puts all mass on mu_plus: f(mu_plus, 1) = kl(mu_plus)
        fam = gaussian_location(1)
        np.testing.assert_allclose(balance_objective(fam, -1.0, 2.0, 2.0, 1.0), 2.0, rtol=1e-12)

    def test_bernoulli_matches_direct_sum(self):
        fam = scaled_bernoulli(0.3)
        for mu in (-0.8, 0.1, 1.0, 2.0):
            np.testing.assert_allclose(balance_objective(fam, -0.8, 1.0, mu, 0.4, 10),
                                       exact_bernoulli_objective(0.3, 10, mu, 0.4, -0.8, 1.0),
                                       rtol=1e-12, atol=1e-14)

    def test_pair_must_surround_null(self):
        with pytest.raises(MeanOutOfRange):
            balance_objective(gaussian_location(1), 0.5, 2.0, 1.0, 0.5)


class TestSolveBalance:
    @pytest.mark.parametrize("a", [0.3, 1.0, 2.5])
    def test_symmetric_gaussian(self, a):
        res = solve_balance(gaussian_location(1), -a, a)
        assert abs(res.w - 0.5) < 1e-10

    def test_asymmetric_gaussian_against_root_of_oracle(self):
        res = solve_balance(gaussian_location(1), -1.0, 2.0)
        assert res.residual < 1e-9
        ref = optimize.brentq(lambda w: gh_objective(-1.0, w, -1.0, 2.0) - gh_objective(2.0, w, -1.0, 2.0),
                              1e-9, 1 - 1e-9, xtol=1e-14)
        np.testing.assert_allclose(res.w, ref, atol=1e-9)

    def test_bernoulli_against_direct_sum(self):
        res = solve_balance(scaled_bernoulli(0.3), -0.8, 1.0, 10)
        ref = optimize.brentq(
            lambda w: exact_bernoulli_objective(0.3, 10, -0.8, w, -0.8, 1.0)
            - exact_bernoulli_objective(0.3, 10, 1.0, w, -0.8, 1.0),
            1e-9, 1 - 1e-9, xtol=1e-14,
        )
        np.testing.assert_allclose(res.w, ref, atol=1e-10)
        assert res.residual < 1e-9

    @settings(max_examples=10, deadline=None)
    @given(st.floats(0.2, 3.0), st.floats(0.2, 3.0))
    def test_balance_residual_small(self, a, b):
        res = solve_balance(gaussian_location(1), -a, b)
        assert res.residual < 1e-9
        # heavier weight on the nearer boundary point
        if a < b:
            assert res.w < 0.5


class TestGrowSurround:
    def test_growth_routes_agree(self):
        ev = grow_surround_1d(gaussian_location(1), -1.0, 2.0)
        np.testing.assert_allclose(ev.meta["grow_direct"], ev.meta["grow_balance"], rtol=1e-8)
        assert ev.provenance == "surround-mixture"

    @pytest.mark.parametrize(
        "fam, lo, hi, n",
        [(gaussian_location(1), -1.0, 1.0, 1), (gaussian_location(1), -0.5, 2.0, 3),
         (scaled_bernoulli(0.3), -0.8, 1.0, 10), (poisson(2.0), -1.0, 1.5, 4)],
        ids=["gauss-sym", "gauss-asym", "bernoulli", "poisson"],
    )
    def test_null_expectation_at_most_one(self, fam, lo, hi, n):
        ne = null_expectation(grow_surround_1d(fam, lo, hi, n))
        # a mixture of likelihood ratios integrates to exactly 1
        np.testing.assert_allclose(ne.value, 1.0, atol=1e-10)

    def test_growth_below_boundary_divergence(self):
        ev = grow_surround_1d(gaussian_location(1), -1.0, 1.0)
        assert 0 < ev.grow_value < 0.5

    def test_worst_case_on_boundary(self):
        fam = gaussian_location(1)
        ev = grow_surround_1d(fam, -1.0, 2.0)
        outside = np.concatenate([np.linspace(-4, -1, 13), np.linspace(2, 5, 13)])
        growth = worst_case_growth(ev, outside)
        assert growth.min() >= ev.grow_value - 1e-10

    def test_prior_mixture(self):
        fam = gaussian_location(1)
        prior = BoundaryPrior(fam, [[-1.0], [1.0]], [0.5, 0.5])
        np.testing.assert_allclose(prior.log_ratio(0.0), -0.5)
        with pytest.raises(ValueError):
            BoundaryPrior(fam, [[-1.0], [1.0]], [0.6, 0.6])


class TestMonotonicity:
    def test_gaussian_no_violations(self):
        fam = gaussian_location(1)
        w = solve_balance(fam, -1.0, 1.0).w
        assert monotonicity_scan(fam, -1.0, 1.0, w) == []

    def test_bernoulli_no_violations(self):
        fam = scaled_bernoulli(0.3)
        w = solve_balance(fam, -0.8, 1.0, 10).w
        assert monotonicity_scan(fam, -0.8, 1.0, w, n=10) == []

    def test_scan_detects_a_reversed_grid(self):
        # the symmetric objective falls towards 0 from the left, which the scan must flag
        fam = gaussian_location(1)
        viol = monotonicity_scan(fam, -1.0, 1.0, 0.5, right_grid=np.linspace(-1.0, -0.1, 10),
                                 left_grid=np.linspace(-3.0, -1.0, 11))
        assert viol and all(v.side == "right" for v in viol)
