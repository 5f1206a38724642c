import math

import numpy as np
import pytest
from scipy import special, stats

from evgrow.csc_convex import (
    BoundReport,
    csc_convex_bound,
    mle_bound_check_1d,
    naive_markov_mass,
    oracle_prob,
)
from evgrow.expfam import SampleConfig, bernoulli_to_mean, gaussian_location, kl, poisson, scaled_bernoulli
from evgrow.meansets import HalfSpace, Interval1D


class TestConvexBound:
    def test_bernoulli_against_binomial_tail(self):
        fam = scaled_bernoulli(0.3)
        rep = csc_convex_bound(fam, Interval1D(bernoulli_to_mean(0.3, 0.5)), 30)
        assert rep.oracle_kind == "exact"
        np.testing.assert_allclose(rep.oracle_prob, stats.binom.sf(14, 30, 0.3), rtol=1e-12)
        q, p = 0.5, 0.3
        d = q * math.log(q / p) + (1 - q) * math.log((1 - q) / (1 - p))
        np.testing.assert_allclose(rep.bound, math.exp(-30 * d), rtol=1e-12)
        assert rep.valid and rep.margin > 0

    def test_gaussian_threshold(self):
        fam = gaussian_location(1)
        rep = csc_convex_bound(fam, Interval1D(1.0), 1, SampleConfig(1, 5, 400_000))
        np.testing.assert_allclose(rep.bound, 0.6065306597126334, rtol=1e-14)
        assert rep.oracle_kind == "montecarlo"
        assert abs(rep.oracle_prob - stats.norm.sf(1.0)) < 5 * rep.oracle_se
        assert rep.valid

    def test_gaussian_halfspace_d2(self):
        rep = csc_convex_bound(gaussian_location(2), HalfSpace([1.0, 1.0], 1.0), 4,
                               SampleConfig(4, 0, 200_000))
        np.testing.assert_allclose(rep.D_lower, 4 * 0.25, rtol=1e-12)
        assert abs(rep.oracle_prob - stats.norm.sf(1.0 / math.sqrt(2) * 2)) < 5 * rep.oracle_se

    def test_poisson_exact_oracle(self):
        fam = poisson(2.0)
        rep = csc_convex_bound(fam, Interval1D(1.0), 5)
        # 5 draws: sum of Poissons has rate 10, mean >= 3 means count >= 15
        np.testing.assert_allclose(rep.oracle_prob, stats.poisson.sf(14, 10.0), rtol=1e-10)
        assert rep.valid

    @pytest.mark.parametrize("n", [1, 5, 20, 80])
    def test_bound_holds_for_left_tail(self, n):
        rep = csc_convex_bound(scaled_bernoulli(0.3), Interval1D(-1.4, -0.6), n)
        assert rep.oracle_prob <= rep.bound

    def test_report_invariant(self):
        with pytest.raises(ValueError):
            BoundReport(D_lower=1.0, regret=0.0, log_bound=-2.0, bound=math.exp(-2.0), n=1)

    def test_oracle_reproducible(self):
        fam = gaussian_location(1)
        cfg = SampleConfig(4, 9, 10_000)
        a, b = oracle_prob(fam, Interval1D(0.5), 4, cfg), oracle_prob(fam, Interval1D(0.5), 4, cfg)
        assert a == b


class TestLikelihoodRatioEvents:
    @pytest.mark.parametrize("sign", [1, -1])
    def test_events_coincide_under_enumeration(self, sign):
        fam = scaled_bernoulli(0.3)
        D = 20 * float(kl(fam, bernoulli_to_mean(0.3, 0.5 if sign > 0 else 0.15)))
        chk = mle_bound_check_1d(fam, D, sign, 20)
        assert chk.kind == "exact"
        assert chk.events_equal
        assert chk.valid
        np.testing.assert_allclose(chk.prob_sup_event, chk.prob_fixed_event, rtol=0, atol=0)

    def test_gaussian_monte_carlo(self):
        chk = mle_bound_check_1d(gaussian_location(1), 2.0, 1, 1, SampleConfig(1, 2, 100_000))
        assert chk.events_equal
        # event is Y >= 2 for a single standard normal draw
        assert abs(chk.prob_sup_event - stats.norm.sf(2.0)) < 5 * chk.se + 1e-12

    def test_bad_sign(self):
        with pytest.raises(ValueError):
            mle_bound_check_1d(gaussian_location(1), 1.0, 0)


class TestNaiveMarkov:
    def test_bernoulli_matches_shtarkov_sum(self):
        # independent route: sum over counts of the maximised binomial likelihood
        n = 20
        k = np.arange(n + 1)
        ml = special.comb(n, k) * np.exp(special.xlogy(k, k / n) + special.xlogy(n - k, (n - k) / n))
        mm = naive_markov_mass(scaled_bernoulli(0.3), n)
        assert mm.kind == "exact"
        np.testing.assert_allclose(mm.value, ml.sum(), rtol=1e-10)
        assert mm.value > 1

    def test_gaussian_lower_estimate_exceeds_one(self):
        mm = naive_markov_mass(gaussian_location(1), 4)
        assert mm.kind == "lower-estimate"
        # within +-3 sd: integral of exp(y^2 / 2) phi(y) is 6 / sqrt(2 pi)
        np.testing.assert_allclose(mm.value, 6 / math.sqrt(2 * math.pi), rtol=1e-10)
