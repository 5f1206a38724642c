"""Information projection of the null onto convex mean sets.

For a closed convex set of means bounded away from 0, the member closest to
the null in KL divergence has a mean ``mu_star`` on the set's boundary, and
the likelihood ratio ``p_{mu_star}(Y) / p0(Y)`` is the growth-optimal
e-variable against every alternative whose mean lies in the set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from .errors import InfeasibleSet, NoConvergence
from .evariable import EVariable
from .expfam import (
    FamilySpec,
    as_points,
    kl,
    kl_between,
    log_ratio_theta,
    natural_of_mean,
)
from .meansets import ConvexPolytope, HalfSpace, Interval1D, MeanSet
from .quadrature import points_fn

KKT_TOL = 1e-8


@dataclass
class ProjectionResult:
    mu_star: np.ndarray  # (d,)
    theta_star: np.ndarray  # (d,)
    kl_value: float  # single-draw divergence
    kkt_residual: float
    method: str
    iterations: int = 0
    meta: dict = field(default_factory=dict)

    def mean(self):
        """mu_star as a float (d = 1) or array."""
        return float(self.mu_star[0]) if len(self.mu_star) == 1 else self.mu_star.copy()


def _theta(fam: FamilySpec, mu: np.ndarray) -> np.ndarray:
    return np.asarray(natural_of_mean(fam, mu if fam.d > 1 else mu[0]), dtype=float).reshape(fam.d)


def _kl1(fam: FamilySpec, mu: np.ndarray) -> float:
    return float(kl(fam, mu if fam.d > 1 else mu[0]))


def _sup_along(fam: FamilySpec, v: np.ndarray) -> float:
    lo, hi = fam.mean_space.lower, fam.mean_space.upper
    with np.errstate(invalid="ignore"):
        ends = np.maximum(np.where(v == 0, 0.0, v * lo), np.where(v == 0, 0.0, v * hi))
    return float(np.sum(ends))


def _project_halfspace(fam: FamilySpec, M1: HalfSpace) -> ProjectionResult:
    v, a = M1.v, M1.a
    if _sup_along(fam, v) <= a:
        raise InfeasibleSet(f"halfspace v.mu >= {a} misses the interior of the mean space")

    def excess(lam):
        return float(fam.mean_map((lam * v)[None])[0] @ v) - a

    hi = 1.0
    while excess(hi) < 0:
        hi *= 2.0
        if hi > 1e300:
            raise InfeasibleSet("halfspace constraint cannot be met by any member")
    lam = brentq(excess, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    theta = lam * v
    mu = fam.mean_map(theta[None])[0]
    if fam.theta_of_mu is not None:
        theta = _theta(fam, mu)
    resid = max(abs(mu @ v - a), float(np.linalg.norm(theta - (theta @ v) * v)))
    return ProjectionResult(mu, theta, _kl1(fam, mu), resid, "halfspace-root")


def _project_interval(fam: FamilySpec, M1: Interval1D) -> ProjectionResult:
    end = M1.lower if M1.lower > 0 else M1.upper
    mu = np.array([end])
    if not fam.mean_space.interior_contains(mu[None])[0]:
        raise InfeasibleSet(f"interval endpoint {end} lies outside the open mean space")
    return ProjectionResult(mu, _theta(fam, mu), _kl1(fam, mu), 0.0, "interval-endpoint")


def euclidean_projection(normals: np.ndarray, offsets: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Closest point to x in {mu : normals @ mu >= offsets}.

    Exact: enumerates candidate active sets of size <= d, keeps those whose
    affine projection is feasible with nonnegative multipliers, and returns
    the nearest.
    """
    k, d = normals.shape
    if np.all(normals @ x >= offsets):
        return x.copy()
    best, best_dist = None, math.inf
    for size in range(1, min(k, d) + 1):
        for active in itertools.combinations(range(k), size):
            A, b = normals[list(active)], offsets[list(active)]
            gram = A @ A.T
            if np.linalg.matrix_rank(gram) < size:
                continue
            mult = np.linalg.solve(gram, b - A @ x)
            if np.any(mult < -1e-14):
                continue
            cand = x + A.T @ mult
            if np.all(normals @ cand >= offsets - 1e-12 * (1 + np.abs(offsets))):
                dist = float(np.linalg.norm(cand - x))
                if dist < best_dist:
                    best, best_dist = cand, dist
    if best is None:
        raise InfeasibleSet("polytope is empty")
    return best


def _project_polytope(
    fam: FamilySpec, M1: ConvexPolytope, tol: float = 1e-12, max_iter: int = 10_000
) -> ProjectionResult:
    V, a = M1.normals, M1.offsets

    def proj(x):
        return euclidean_projection(V, a, x)

    mu = proj(np.zeros(fam.d))
    if not fam.mean_space.interior_contains(mu[None])[0]:
        raise InfeasibleSet("closest point of the polytope to 0 lies outside the mean space")
    f, grad = _kl1(fam, mu), _theta(fam, mu)
    step, it = 1.0, 0
    for it in range(1, max_iter + 1):
        while True:
            cand = proj(mu - step * grad)
            diff = cand - mu
            if fam.mean_space.interior_contains(cand[None])[0]:
                fc = _kl1(fam, cand)
                if fc <= f + grad @ diff + diff @ diff / (2 * step) + 1e-15:
                    break
            step *= 0.5
            if step < 1e-20:
                raise NoConvergence("projected gradient line search failed")
        mu, f = cand, fc
        grad = _theta(fam, mu)
        if np.linalg.norm(diff) / step <= tol:
            break
        step *= 2.0
    else:
        raise NoConvergence("projected gradient did not reach the stationarity tolerance")
    resid = float(np.linalg.norm(mu - proj(mu - grad)))
    return ProjectionResult(mu, grad, f, resid, "projected-gradient", it)


def info_project_convex(fam: FamilySpec, M1: MeanSet) -> ProjectionResult:
    """Mean of the family member in ``M1`` closest to the null in KL."""
    if not M1.convex:
        raise TypeError(f"{M1.tag} is not a convex mean set")
    if getattr(M1, "d", fam.d) != fam.d:
        raise ValueError(f"mean set has dimension {M1.d}, family has {fam.d}")
    if isinstance(M1, HalfSpace):
        res = _project_halfspace(fam, M1)
    elif isinstance(M1, Interval1D):
        res = _project_interval(fam, M1)
    elif isinstance(M1, ConvexPolytope):
        res = _project_polytope(fam, M1)
    else:
        raise TypeError(f"no projection routine for {type(M1).__name__}")
    if res.kkt_residual > KKT_TOL:
        raise NoConvergence(f"projection certificate failed: KKT residual {res.kkt_residual:.2e}")
    return res


def grow_convex(fam: FamilySpec, M1: MeanSet, n: int = 1) -> EVariable:
    """Growth-optimal e-variable ``p_{mu_star}(Y) / p0(Y)`` at sample size n."""
    proj = info_project_convex(fam, M1)
    theta = proj.theta_star

    def log_value(pts):
        return log_ratio_theta(fam, theta, pts, n)

    hint = {}
    if not fam.is_discrete:
        sd = math.sqrt(float(np.max(np.linalg.eigvalsh(fam.hessian(theta[None])[0]))) / n)
        if fam.d == 1:
            hint = {"kind": "line", "center": float(proj.mu_star[0]), "scale": sd}
        elif fam.d == 2:
            hint = {"kind": "plane", "center": tuple(proj.mu_star), "scale": sd}
    return EVariable(
        log_value=points_fn(fam, log_value),
        family=fam,
        n=n,
        provenance="convex-GROW",
        grow_value=n * proj.kl_value,
        meta={"mu_star": proj.mean(), "theta_star": theta.tolist(), "projection": proj},
        quad_hint=hint,
        cover_means=[proj.mu_star],
    )


def pythagorean_residuals(
    fam: FamilySpec, M1: MeanSet, probes, projection: Optional[ProjectionResult] = None
) -> np.ndarray:
    """``D(mu || 0) - D(mu || mu_star) - D(mu_star || 0)`` for each probe mean."""
    proj = projection or info_project_convex(fam, M1)
    pts, shape = as_points(fam, probes)
    arg = pts if fam.d > 1 else pts[:, 0]
    star = proj.mean()
    res = np.asarray(kl(fam, arg)) - np.asarray(kl_between(fam, arg, star)) - proj.kl_value
    return np.asarray(res).reshape(shape)


def sample_probes(
    fam: FamilySpec, M1: MeanSet, count: int, seed: int = 0, window: float = 3.0
) -> np.ndarray:
    """Uniform draws from a box of half-width ``window`` around mu_star,
    intersected with ``M1`` and the interior of the mean space.

    Returns an ``(count, d)`` array.
    """
    proj = info_project_convex(fam, M1)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    lo = np.maximum(proj.mu_star - window, fam.mean_space.lower)
    hi = np.minimum(proj.mu_star + window, fam.mean_space.upper)
    out: list[np.ndarray] = []
    for _ in range(1000):
        cand = rng.uniform(lo, hi, size=(4 * count, fam.d))
        keep = M1.contains(cand, fam) & fam.mean_space.interior_contains(cand)
        out.extend(cand[keep])
        if len(out) >= count:
            return np.array(out[:count])
    raise InfeasibleSet("could not draw probes from the mean set window")
