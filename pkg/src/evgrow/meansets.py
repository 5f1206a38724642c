"""Sets of alternative means: convex sets and "surrounding" sets.

Convex sets are closed and kept away from the null mean 0. Surrounding sets
are described through their complement, an open bounded neighbourhood of 0
that every ray from the origin leaves exactly once; the crossing radius
along a unit direction is ``boundary_radius``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy.optimize import brentq

from .errors import Degenerate, InfeasibleSet, NoSuchRadius, NotNice
from .expfam import FamilySpec, as_points, kl, rate_function


def _fmt(x) -> str:
    return json.dumps(np.asarray(x).tolist())


def exit_radius(fam: FamilySpec, u: np.ndarray) -> float:
    """Distance from 0 to the edge of the mean space along unit direction u."""
    lo, hi = fam.mean_space.lower, fam.mean_space.upper
    with np.errstate(divide="ignore", invalid="ignore"):
        cand = np.where(u > 0, hi / u, np.where(u < 0, lo / u, np.inf))
    return float(np.min(cand))


def kl_radius(fam: FamilySpec, u, level: float, n: int = 1) -> float:
    """Radius rho > 0 with kl(rho * u, n) = level along the unit direction u.

    kl is strictly increasing along rays from 0, so the root is bracketed and
    found with Brent's safeguarded bisection.
    """
    u = np.asarray(u, dtype=float).reshape(fam.d)
    if not level > 0:
        raise NoSuchRadius(f"divergence level must be positive, got {level}")

    def excess(rho):
        pt = rho * u
        return float(kl(fam, pt if fam.d > 1 else pt[0], n)) - level

    edge = exit_radius(fam, u)
    if math.isfinite(edge):
        hi = edge * (1.0 - 1e-13)
        if excess(hi) < 0:
            raise NoSuchRadius(
                f"level {level} exceeds the divergence reachable along {u.tolist()} "
                f"inside the mean space"
            )
    else:
        hi = 1.0
        for _ in range(200):
            if excess(hi) >= 0:
                break
            hi *= 2.0
        else:
            raise NoSuchRadius(f"divergence stays below {level} along {u.tolist()}")
    return brentq(excess, 0.0, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)


class MeanSet:
    """Common interface: ``contains(pts, fam)`` on ``(m, d)`` arrays."""

    convex: bool = False
    surrounding: bool = False
    tag: str = "meanset"

    def describe(self) -> dict:
        raise NotImplementedError

    def label(self) -> str:
        params = ",".join(f"{k}={_fmt(v)}" for k, v in self.describe().items() if k != "variant")
        return f"{self.tag}({params})"

    def contains(self, pts: np.ndarray, fam: Optional[FamilySpec] = None) -> np.ndarray:
        raise NotImplementedError

    def contains_point(self, fam: FamilySpec, y) -> np.ndarray:
        pts, shape = as_points(fam, y)
        out = self.contains(pts, fam).reshape(shape)
        return bool(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# convex sets


@dataclass
class HalfSpace(MeanSet):
    """{mu : v . mu >= a} with unit normal v and offset a > 0."""

    v: np.ndarray
    a: float
    convex = True
    tag = "halfspace"

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float).reshape(-1)
        norm = np.linalg.norm(v)
        if not norm > 0:
            raise Degenerate("halfspace normal must be nonzero")
        self.v, self.a = v / norm, float(self.a) / norm
        if not self.a > 0:
            raise Degenerate(f"halfspace offset {self.a} <= 0 puts the null mean in the set")

    @property
    def d(self) -> int:
        return len(self.v)

    def contains(self, pts, fam=None):
        return pts @ self.v >= self.a

    def describe(self):
        return {"variant": "halfspace", "v": self.v.tolist(), "a": self.a}


@dataclass
class Interval1D(MeanSet):
    """Closed interval [lower, upper]; one end may be infinite."""

    lower: float = -math.inf
    upper: float = math.inf
    convex = True
    tag = "interval"
    d = 1

    def __post_init__(self):
        self.lower, self.upper = float(self.lower), float(self.upper)
        if not self.lower <= self.upper:
            raise InfeasibleSet(f"empty interval [{self.lower}, {self.upper}]")
        if self.lower <= 0.0 <= self.upper:
            raise Degenerate("interval contains the null mean 0")

    def contains(self, pts, fam=None):
        y = pts[:, 0]
        return (y >= self.lower) & (y <= self.upper)

    def describe(self):
        return {"variant": "interval", "lower": self.lower, "upper": self.upper}


@dataclass
class ConvexPolytope(MeanSet):
    """Intersection of halfspaces {mu : normals @ mu >= offsets}."""

    normals: np.ndarray
    offsets: np.ndarray
    convex = True
    tag = "polytope"

    def __post_init__(self):
        self.normals = np.atleast_2d(np.asarray(self.normals, dtype=float))
        self.offsets = np.asarray(self.offsets, dtype=float).reshape(-1)
        if self.normals.shape[0] != len(self.offsets):
            raise ValueError("polytope needs one offset per normal")
        if np.any(np.linalg.norm(self.normals, axis=1) == 0):
            raise Degenerate("polytope normals must be nonzero")
        if not np.any(self.offsets > 0):
            raise Degenerate("polytope contains the null mean 0")

    @property
    def d(self) -> int:
        return self.normals.shape[1]

    def contains(self, pts, fam=None):
        return np.all(pts @ self.normals.T >= self.offsets, axis=-1)

    def describe(self):
        return {
            "variant": "polytope",
            "normals": self.normals.tolist(),
            "offsets": self.offsets.tolist(),
        }


# ---------------------------------------------------------------------------
# surrounding sets


class SurroundingSet(MeanSet):
    surrounding = True

    def boundary_radius(self, fam: FamilySpec, u: np.ndarray) -> np.ndarray:
        """Crossing radius of the complement's boundary along unit rows of u."""
        raise NotImplementedError

    def contains(self, pts, fam=None):
        r = np.linalg.norm(pts, axis=-1)
        out = np.zeros(len(pts), dtype=bool)
        nz = r > 0
        if np.any(nz):
            out[nz] = r[nz] >= self.boundary_radius(fam, pts[nz] / r[nz, None])
        return out

    def boundary_points_1d(self, fam: FamilySpec) -> tuple[float, float]:
        if fam.d != 1:
            raise ValueError("two-point boundary exists only in dimension 1")
        rad = self.boundary_radius(fam, np.array([[-1.0], [1.0]]))
        return -float(rad[0]), float(rad[1])

    def check_nice(self, fam: FamilySpec, n_dirs: int = 64) -> None:
        """Boundary must sit inside the interior of the family's mean space."""
        if fam.d == 1:
            dirs = np.array([[-1.0], [1.0]])
        elif fam.d == 2:
            ang = np.linspace(0, 2 * np.pi, n_dirs, endpoint=False)
            dirs = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        else:
            rng = np.random.default_rng(0)
            dirs = rng.standard_normal((n_dirs, fam.d))
            dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
        try:
            rad = np.asarray(self.boundary_radius(fam, dirs), dtype=float)
        except NoSuchRadius as exc:
            raise NotNice(str(exc)) from None
        if not np.all(np.isfinite(rad) & (rad > 0)):
            raise NotNice(f"{self.tag}: boundary radius must be finite and positive")
        if not np.all(fam.mean_space.interior_contains(rad[:, None] * dirs)):
            raise NotNice(f"{self.tag}: boundary leaves the interior of the mean space")


@dataclass
class SurroundIntervalComplement(SurroundingSet):
    """d = 1: complement (mu_minus, mu_plus) around 0."""

    mu_minus: float
    mu_plus: float
    tag = "surround_interval"
    d = 1

    def __post_init__(self):
        self.mu_minus, self.mu_plus = float(self.mu_minus), float(self.mu_plus)
        if not self.mu_minus < 0 < self.mu_plus:
            raise Degenerate(f"need mu_minus < 0 < mu_plus, got ({self.mu_minus}, {self.mu_plus})")

    def boundary_radius(self, fam, u):
        u = np.asarray(u, dtype=float).reshape(-1, 1)
        return np.where(u[:, 0] > 0, self.mu_plus, -self.mu_minus)

    def contains(self, pts, fam=None):
        y = pts[:, 0]
        return (y <= self.mu_minus) | (y >= self.mu_plus)

    def describe(self):
        return {"variant": "surround_interval", "mu_minus": self.mu_minus, "mu_plus": self.mu_plus}


@dataclass
class SurroundKLBallComplement(SurroundingSet):
    """Complement {mu : kl(mu, 1) < D1} (a single-draw KL ball)."""

    D1: float
    tag = "kl_ball"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        self.D1 = float(self.D1)
        if not self.D1 > 0:
            raise Degenerate(f"KL-ball radius must be positive, got {self.D1}")

    def boundary_radius(self, fam, u):
        u = np.atleast_2d(np.asarray(u, dtype=float))
        if fam.name == "gaussian":
            return np.full(len(u), math.sqrt(2.0 * self.D1))
        out = np.empty(len(u))
        for i, row in enumerate(u):
            key = (id(fam), tuple(np.round(row, 15)))
            if key not in self._cache:
                self._cache[key] = kl_radius(fam, row, self.D1)
            out[i] = self._cache[key]
        return out

    def contains(self, pts, fam=None):
        if fam is None:
            raise ValueError("KL-ball membership needs the family")
        return np.atleast_1d(rate_function(fam, pts if fam.d > 1 else pts[:, 0])) >= self.D1

    def describe(self):
        return {"variant": "kl_ball", "D1": self.D1}


@dataclass
class SurroundRadial(SurroundingSet):
    """Complement {rho u : rho < b(u)} for a positive radius function b.

    ``radius`` is a constant (a centred sphere) or a callable mapping unit
    rows ``(m, d)`` to radii ``(m,)``.
    """

    radius: float | Callable[[np.ndarray], np.ndarray]
    tag = "radial"

    def __post_init__(self):
        if not callable(self.radius):
            self.radius = float(self.radius)
            if not self.radius > 0:
                raise Degenerate("boundary radius must be positive")

    def boundary_radius(self, fam, u):
        u = np.atleast_2d(np.asarray(u, dtype=float))
        if callable(self.radius):
            rad = np.asarray(self.radius(u), dtype=float).reshape(len(u))
            if np.any(rad <= 0):
                raise Degenerate("boundary radius function must be positive")
            return rad
        return np.full(len(u), self.radius)

    def describe(self):
        return {"variant": "radial", "radius": self.radius if not callable(self.radius) else "callable"}


_VARIANTS = {
    "halfspace": lambda c: HalfSpace(c["v"], c["a"]),
    "interval": lambda c: Interval1D(c.get("lower", -math.inf), c.get("upper", math.inf)),
    "polytope": lambda c: ConvexPolytope(c["normals"], c["offsets"]),
    "surround_interval": lambda c: SurroundIntervalComplement(c["mu_minus"], c["mu_plus"]),
    "kl_ball": lambda c: SurroundKLBallComplement(c["D1"]),
    "radial": lambda c: SurroundRadial(c["radius"]),
}

# keys each variant table may carry besides "variant"
VARIANT_KEYS = {
    "halfspace": {"v", "a"},
    "interval": {"lower", "upper"},
    "polytope": {"normals", "offsets"},
    "surround_interval": {"mu_minus", "mu_plus"},
    "kl_ball": {"D1"},
    "radial": {"radius"},
}


def meanset_from_config(cfg: dict) -> MeanSet:
    """Build a mean set from a ``{"variant": ..., params...}`` table."""
    try:
        build = _VARIANTS[cfg["variant"]]
    except KeyError:
        raise ValueError(
            f"mean set needs a 'variant' in {sorted(_VARIANTS)}, got {cfg.get('variant')!r}"
        ) from None
    try:
        return build(cfg)
    except KeyError as exc:
        raise ValueError(f"mean set {cfg['variant']!r} is missing key {exc}") from None
