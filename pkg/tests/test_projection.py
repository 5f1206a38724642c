
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.optimize import minimize

from evgrow.errors import InfeasibleSet
from evgrow.evariable import null_expectation
from evgrow.expfam import bernoulli_to_mean, gaussian_location, kl, poisson, scaled_bernoulli
from evgrow.meansets import ConvexPolytope, HalfSpace, Interval1D
from evgrow.projection import (
    euclidean_projection,
    grow_convex,
    info_project_convex,
    pythagorean_residuals,
    sample_probes,
)
from evgrow.quadrature import expect


class TestInfoProjection:
    def test_gaussian_halfspace(self):
        res = info_project_convex(gaussian_location(2), HalfSpace([1.0, 1.0], 2.0))
        np.testing.assert_allclose(res.mu_star, [1.0, 1.0], atol=1e-12)
        np.testing.assert_allclose(res.kl_value, 1.0, rtol=1e-12)
        assert res.kkt_residual < 1e-10

    def test_bernoulli_interval_is_endpoint(self):
        fam = scaled_bernoulli(0.3)
        c = bernoulli_to_mean(0.3, 0.5)
        res = info_project_convex(fam, Interval1D(c))
        assert res.mean() == c
        res_lo = info_project_convex(fam, Interval1D(-1.4, -0.5))
        assert res_lo.mean() == -0.5

    def test_halfspace_outside_mean_space(self):
        with pytest.raises(InfeasibleSet):
            info_project_convex(scaled_bernoulli(0.3), HalfSpace([1.0], 4.0))

    def test_polytope_matches_generic_optimiser(self):
        fam = gaussian_location(2)
        poly = ConvexPolytope([[1.0, 0.2], [0.3, 1.0], [1.0, -1.0]], [1.0, 0.5, -3.0])
        res = info_project_convex(fam, poly)
        # independent route: SLSQP on the divergence itself
        ref = minimize(lambda m: float(kl(fam, m)), x0=[3.0, 3.0], method="SLSQP",
                       constraints=[{"type": "ineq", "fun": lambda m: poly.normals @ m - poly.offsets}],
                       options={"ftol": 1e-14, "maxiter": 500})
        np.testing.assert_allclose(res.mu_star, ref.x, atol=1e-6)
        np.testing.assert_allclose(res.kl_value, ref.fun, rtol=1e-8)
        assert res.kkt_residual < 1e-8

    def test_one_dimensional_polytope_agrees_with_interval(self):
        fam = poisson(2.0)
        poly = ConvexPolytope([[1.0], [-1.0]], [1.0, -3.0])
        np.testing.assert_allclose(info_project_convex(fam, poly).mu_star,
                                   info_project_convex(fam, Interval1D(1.0, 3.0)).mu_star, atol=1e-9)

    def test_euclidean_projection_interior_fixed(self):
        x = np.array([2.0, 2.0])
        np.testing.assert_array_equal(euclidean_projection(np.eye(2), np.ones(2), x), x)

    def test_surrounding_set_rejected(self):
        from evgrow.meansets import SurroundKLBallComplement

        with pytest.raises(TypeError):
            info_project_convex(gaussian_location(1), SurroundKLBallComplement(0.5))


class TestGrowConvex:
    def test_gaussian_halfspace_value(self):
        ev = grow_convex(gaussian_location(2), HalfSpace([1.0, 0.0], 2.0))
        np.testing.assert_allclose(ev.meta["mu_star"], [2.0, 0.0], atol=1e-8)
        np.testing.assert_allclose(ev.grow_value, 2.0, rtol=1e-12)
        np.testing.assert_allclose(null_expectation(ev).value, 1.0, atol=1e-10)

    @pytest.mark.parametrize("n", [1, 7, 30])
    def test_discrete_normalisation_exact(self, n):
        fam = scaled_bernoulli(0.3)
        ev = grow_convex(fam, Interval1D(bernoulli_to_mean(0.3, 0.5)), n)
        ne = null_expectation(ev)
        assert ne.kind == "exact"
        np.testing.assert_allclose(ne.value, 1.0, atol=1e-12)

    def test_poisson_normalisation(self):
        ev = grow_convex(poisson(2.0), Interval1D(1.0), 5)
        np.testing.assert_allclose(null_expectation(ev).value, 1.0, atol=1e-12)

    @settings(max_examples=25, deadline=None)
    @given(st.floats(0.0, 2.0))
    def test_worst_case_attained_at_projection(self, shift):
        # every alternative grows at least as fast as the projection
        fam = scaled_bernoulli(0.3)
        c = bernoulli_to_mean(0.3, 0.5)
        ev = grow_convex(fam, Interval1D(c), 10)
        mu = c + shift * (1 / 0.3 - c) * 0.45
        growth = expect(fam, mu, ev.log_value, 10)
        assert growth >= ev.grow_value - 1e-10


class TestPythagoras:
    def test_gaussian_halfspace_identity(self):
        fam = gaussian_location(2)
        M1 = HalfSpace([1.0, 0.0], 2.0)
        np.testing.assert_allclose(pythagorean_residuals(fam, M1, [2.0, 3.0]), 0.0, atol=1e-12)

    @pytest.mark.parametrize(
        "fam, M1",
        [(gaussian_location(2), HalfSpace([1.0, 2.0], 1.5)),
         (scaled_bernoulli(0.3), Interval1D(0.9523809523809524)),
         (poisson(2.0), Interval1D(-1.5, -0.5)),
         (gaussian_location(2), ConvexPolytope([[1.0, 0.0], [0.0, 1.0]], [1.0, 0.5]))],
        ids=["halfspace", "bernoulli", "poisson-left", "polytope"],
    )
    def test_residuals_nonnegative(self, fam, M1):
        probes = sample_probes(fam, M1, 100, seed=4)
        assert len(probes) == 100
        assert np.all(M1.contains(probes, fam))
        res = pythagorean_residuals(fam, M1, probes if fam.d > 1 else probes[:, 0])
        assert res.min() >= -1e-9
