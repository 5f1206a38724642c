"""Adaptive quadrature helpers built on scipy's vectorised tanh-sinh rule.

Every routine splits the domain at caller-supplied breakpoints (kinks of
max/log-sum-exp integrands, density peaks) and integrates each piece with
``scipy.integrate.tanhsinh`` in one vectorised call. Infinite ends are
handled by the rule's own variable transform.
"""

from __future__ import annotations

import math
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.integrate import tanhsinh

from .errors import QuadratureFailure
from .expfam import FamilySpec, as_points, natural_of_mean

ATOL = 1e-14
RTOL = 1e-13
# outer levels of nested rules see the inner rule's rounding noise
OUTER_ATOL = 1e-13
OUTER_RTOL = 1e-11
# accepted error estimate when the rule hits its refinement cap
ACCEPT_ERR = 1e-10
# finite cuts (standardised units) beyond the outermost breakpoint: the rule
# can stop early on a half-line that starts at a density peak
TAIL_PADS = (4.0, 8.0)


def safe_exp(logv) -> np.ndarray:
    """exp() that maps NaN logs to 0.

    NaNs only arise as inf - inf at the transformed endpoints at infinity,
    where every integrand here vanishes.
    """
    logv = np.asarray(logv)
    return np.exp(np.where(np.isnan(logv), -np.inf, logv))


def integrate_segments(
    func: Callable,
    edges,
    args: tuple = (),
    what: str = "integral",
    atol: float = ATOL,
    rtol: float = RTOL,
):
    """Sum of integrals of ``func`` over consecutive ``edges``.

    ``edges`` may have extra leading axes matching the broadcast shape of
    ``args``; the last axis lists segment endpoints. Returns ``(value, err)``
    with the segment axis summed out.
    """
    edges = np.asarray(edges, dtype=float)
    a, b = edges[..., :-1], edges[..., 1:]
    args = tuple(np.asarray(x)[..., None] for x in args)
    with np.errstate(invalid="ignore", over="ignore"):
        res = tanhsinh(func, a, b, args=args, atol=atol, rtol=rtol)
    bad = (res.status != 0) & ~((res.status == -2) & (res.error <= ACCEPT_ERR))
    if np.any(bad) or not np.all(np.isfinite(res.integral)):
        raise QuadratureFailure(
            f"{what}: tanh-sinh failed (status {np.unique(res.status).tolist()}, "
            f"max error {np.nanmax(res.error):.2e})"
        )
    return res.integral.sum(axis=-1), res.error.sum(axis=-1)


def line_edges(breakpoints: Sequence[float] = ()) -> np.ndarray:
    """Segment edges for a standardised variable: the breakpoints, 0, and
    padded cuts on both sides before the infinite ends."""
    pts = [float(b) for b in breakpoints if np.isfinite(b)] + [0.0]
    lo, hi = min(pts), max(pts)
    pts += [lo - p for p in TAIL_PADS] + [hi + p for p in TAIL_PADS]
    return np.concatenate(([-np.inf], np.unique(pts), [np.inf]))


def integrate_line(
    log_integrand: Callable,
    center: float,
    scale: float,
    breakpoints=(),
    factor: Optional[Callable] = None,
):
    """Integral over the real line of ``exp(log_integrand(y)) * factor(y)``.

    The variable is standardised as ``y = center + scale * z`` so the rule
    sees an integrand of unit width. ``factor`` defaults to 1 and may change
    sign.
    """

    def f(z):
        y = center + scale * z
        val = scale * safe_exp(log_integrand(y))
        if factor is None:
            return val
        # the weight vanishes wherever the factor is undefined
        return np.where(val > 0, val * np.nan_to_num(factor(y)), 0.0)

    zb = (np.asarray(breakpoints, dtype=float) - center) / scale
    return integrate_segments(f, line_edges(zb), what="line integral")


def integrate_plane(
    log_integrand: Callable, center, scale: float, breaks_x=(), breaks_y=()
):
    """Nested Cartesian integral over the plane of ``exp(log_integrand(pts))``."""
    cx, cy = (float(c) for c in center)
    ex = line_edges((np.asarray(breaks_x, dtype=float) - cx) / scale)
    ey = line_edges((np.asarray(breaks_y, dtype=float) - cy) / scale)

    def inner(zy, zx):
        pts = np.stack(np.broadcast_arrays(cx + scale * zx, cy + scale * zy), axis=-1)
        return scale * scale * safe_exp(log_integrand(pts))

    def outer(zx):
        return integrate_segments(inner, ey, args=(zx,), what="plane inner")[0]

    return integrate_segments(outer, ex, what="plane outer", atol=OUTER_ATOL, rtol=OUTER_RTOL)


def integrate_polar(
    log_integrand: Callable,
    radial_peak: float,
    radial_scale: float,
    angle_breaks=(),
    atol: Optional[float] = None,
    rtol: Optional[float] = None,
):
    """Nested polar integral over the plane of ``exp(log_integrand(pts))``.

    The inner radial integral uses ``r = radial_peak + radial_scale * t`` and
    is split at the peak; the outer angular integral is split at
    ``angle_breaks`` (taken modulo 2 pi). ``atol``/``rtol``, when given,
    replace the default tolerances at both levels.
    """
    in_tol = dict(atol=atol or ATOL, rtol=rtol or RTOL)
    out_tol = dict(atol=atol or OUTER_ATOL, rtol=rtol or OUTER_RTOL)
    two_pi = 2.0 * math.pi
    ang = np.unique(np.concatenate(([0.0, two_pi], np.mod(angle_breaks, two_pi))))
    t0 = -radial_peak / radial_scale
    tail = [*TAIL_PADS, np.inf]
    et = np.array([t0, 0.0, *tail]) if radial_peak > 0 else np.array([0.0, *tail])

    def inner(t, phi):
        r = radial_peak + radial_scale * t
        pts = np.stack(np.broadcast_arrays(r * np.cos(phi), r * np.sin(phi)), axis=-1)
        return radial_scale * r * safe_exp(log_integrand(pts))

    def outer(phi):
        return integrate_segments(inner, et, args=(phi,), what="polar inner", **in_tol)[0]

    return integrate_segments(outer, ang, what="polar outer", **out_tol)


def family_log_density(fam: FamilySpec, mu, n: int) -> Callable:
    """``y -> log p_mu(y)`` at sample size n for a continuous family.

    ``y`` has trailing axis ``d`` (any leading shape).
    """
    theta = np.asarray(natural_of_mean(fam, mu), dtype=float).reshape(fam.d)
    lz = float(fam.log_partition(theta[None])[0])
    logp0 = fam.support.log_density

    def logdens(pts):
        with np.errstate(invalid="ignore", over="ignore"):
            val = n * (pts @ theta - lz) + logp0(pts, n)
        # inf - inf only happens at the transformed endpoints at infinity
        return np.where(np.isnan(val), -np.inf, val)

    return logdens


def expect_continuous_1d(fam: FamilySpec, mu: float, g: Callable, n: int, breakpoints=()):
    """E under the member with mean ``mu`` (sample size n) of ``g(y)``, d == 1."""
    theta = float(natural_of_mean(fam, mu))
    scale = math.sqrt(float(fam.hessian(np.array([[theta]]))[0, 0, 0]) / n)
    logdens = family_log_density(fam, mu, n)

    def f(z):
        y = mu + scale * z
        return scale * np.exp(logdens(y[..., None])) * g(y)

    zb = (np.asarray(breakpoints, dtype=float) - mu) / scale
    return integrate_segments(f, line_edges(zb), what="expectation")


def expect_discrete(fam: FamilySpec, mu, g: Callable, n: int) -> float:
    """Exact expectation of ``g`` under a discrete member (tilted enumeration)."""
    from .expfam import log_ratio_theta, tilted_outcomes

    out = tilted_outcomes(fam, [mu] if fam.d == 1 else np.atleast_2d(mu), n)
    theta = np.asarray(natural_of_mean(fam, mu), dtype=float).reshape(fam.d)
    logw = out.logp + log_ratio_theta(fam, theta, out.ys, n)
    w = np.exp(logw - np.logaddexp.reduce(logw))
    ys = out.ys[:, 0] if fam.d == 1 else out.ys
    return float(np.sum(w * g(ys)))


def expect(fam: FamilySpec, mu, g: Callable, n: int, breakpoints=()) -> float:
    """E_{P_mu}[g(Y)] at sample size n; exact for discrete, quadrature for d == 1."""
    if fam.is_discrete:
        return expect_discrete(fam, mu, g, n)
    if fam.d != 1:
        raise NotImplementedError("continuous expectations are implemented for d == 1")
    return float(expect_continuous_1d(fam, float(mu), g, n, breakpoints)[0])


def points_fn(fam: FamilySpec, fn: Callable) -> Callable:
    """Wrap a function of ``(m, d)`` points so it accepts any point shape."""

    def wrapped(y):
        pts, shape = as_points(fam, y)
        out = np.asarray(fn(pts)).reshape(shape)
        return float(out) if out.ndim == 0 else out

    return wrapped
