import math

import numpy as np
import pytest
from scipy import special, stats

from evgrow.errors import QuadratureFailure
from evgrow.expfam import gaussian_location, poisson
from evgrow.quadrature import (
    expect,
    integrate_line,
    integrate_plane,
    integrate_polar,
    integrate_segments,
    line_edges,
    safe_exp,
)


class TestHelpers:
    def test_safe_exp_maps_nan_to_zero(self):
        np.testing.assert_array_equal(safe_exp([np.nan, 0.0, -np.inf]), [0.0, 1.0, 0.0])

    def test_line_edges(self):
        np.testing.assert_array_equal(line_edges([2.0, -1.0, 2.0, np.inf]),
                                      [-np.inf, -9.0, -5.0, -1.0, 0.0, 2.0, 6.0, 10.0, np.inf])

    def test_failure_is_reported(self):
        with pytest.raises(QuadratureFailure):
            integrate_segments(lambda x: 1.0 / x, [0.0, 1.0])


class TestLine:
    def test_gaussian_mass(self):
        val, err = integrate_line(lambda y: stats.norm.logpdf(y, 3.0, 0.01), 3.0, 0.01)
        np.testing.assert_allclose(val, 1.0, rtol=1e-13)
        assert err < 1e-12

    def test_kinked_integrand(self):
        # exp(-|y|) has a kink at 0
        val, _ = integrate_line(lambda y: -np.abs(y), 0.0, 1.0, breakpoints=[0.0])
        np.testing.assert_allclose(val, 2.0, rtol=1e-13)

    def test_signed_factor(self):
        val, _ = integrate_line(lambda y: stats.norm.logpdf(y), 0.0, 1.0, factor=lambda y: y**2 - 1)
        np.testing.assert_allclose(val, 0.0, atol=1e-13)


class TestPlane:
    def test_plane_and_polar_agree_with_closed_form(self):
        # off-centre Gaussian restricted to the first quadrant
        def logf(pts):
            return -0.5 * np.sum((pts - 0.5) ** 2, axis=-1) - math.log(2 * math.pi)

        exact = stats.norm.cdf(0.5) ** 2
        plane, _ = integrate_plane(
            lambda p: np.where((p[..., 0] > 0) & (p[..., 1] > 0), logf(p), -np.inf),
            (0.0, 0.0), 1.0, [0.0], [0.0],
        )
        polar, _ = integrate_polar(
            lambda p: np.where((p[..., 0] > 0) & (p[..., 1] > 0), logf(p), -np.inf),
            0.0, 1.0, [0.0, math.pi / 2],
        )
        np.testing.assert_allclose(plane, exact, rtol=1e-11)
        np.testing.assert_allclose(polar, exact, rtol=1e-11)

    def test_ring_mass(self):
        # exp(-(r - 2)^2 / (2 s^2)) over the plane, via the radial integral
        s = 0.1

        def logf(pts):
            r = np.linalg.norm(pts, axis=-1)
            return -((r - 2.0) ** 2) / (2 * s * s)

        exact = 2 * math.pi * s * (s * math.exp(-2 / s**2) + 2 * math.sqrt(math.pi / 2)
                                   * (1 + special.erf(2 / (s * math.sqrt(2)))))
        val, _ = integrate_polar(logf, 2.0, s)
        np.testing.assert_allclose(val, exact, rtol=1e-11)


class TestExpect:
    def test_continuous_moments(self):
        fam = gaussian_location(1)
        np.testing.assert_allclose(expect(fam, 1.5, lambda y: y, 4), 1.5, rtol=1e-12)
        np.testing.assert_allclose(expect(fam, 1.5, lambda y: (y - 1.5) ** 2, 4), 0.25, rtol=1e-12)

    def test_discrete_moments(self):
        fam = poisson(2.0)
        np.testing.assert_allclose(expect(fam, 1.0, lambda y: y, 3), 1.0, rtol=1e-12)
        np.testing.assert_allclose(expect(fam, 1.0, lambda y: (y - 1.0) ** 2, 3), 1.0, rtol=1e-11)
