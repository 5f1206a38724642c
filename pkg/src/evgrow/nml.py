"""Shtarkov (normalised maximum likelihood) e-variables for surrounding alternatives.

A surrounding alternative is split into cells, each labelled by a boundary
point ``r``. An estimator maps an outcome ``y`` to a label ``r(y)``; the
plug-in density ``p_{r(y)}(y)`` normalised over all outcomes is the Shtarkov
distribution, and the log of its normaliser is the minimax regret ``mmreg``.
Dividing by ``p0`` gives an e-variable whose regret against the plug-in is
the same constant for every outcome, which yields the bound

    P0(Y in M1) <= exp(mmreg - D_lower).

Supported layouts:

* ``points``: an explicit finite label set, maximum-likelihood estimator;
* ``radial``: every boundary point is a label; the estimator is the ray
  crossing (``radial``) or the likelihood argmax on the boundary (``mle``);
* ``cones`` (d = 2): k corners on the boundary at angles ``2 pi i / k``; the
  cone between consecutive corners, cut by the chord, is a convex cell whose
  label is the information projection of the null onto it.

In d = 1 ``radial`` and ``cones`` both reduce to the two boundary points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from . import kernels
from .csc_convex import BoundReport, oracle_prob
from .errors import OriginRay, UnsupportedDimension
from .evariable import EVariable
from .expfam import FamilySpec, SampleConfig, as_points, kl, natural_of_mean, tilted_outcomes
from .meansets import ConvexPolytope, SurroundingSet, SurroundKLBallComplement
from .projection import info_project_convex
from .quadrature import integrate_line, integrate_polar, points_fn

KINDS = ("points", "radial", "cones")
ESTIMATORS = ("radial", "mle")
ANGLE_TOL = 1e-10
MLE_CHUNK = 4096
# boundary MLE over a non-spherical boundary jumps across the boundary's
# medial axis; the plug-in density has a ridge there and tight tolerances
# become very expensive
RIDGE_ATOL = 1e-8
RIDGE_RTOL = 1e-6


@dataclass(frozen=True)
class PartitionSpec:
    kind: str = "radial"
    estimator: str = "mle"
    corners: Optional[int] = None
    points: Optional[tuple] = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"partition kind must be one of {KINDS}, got {self.kind!r}")
        if self.estimator not in ESTIMATORS:
            raise ValueError(f"estimator must be one of {ESTIMATORS}, got {self.estimator!r}")
        if self.kind == "cones" and (self.corners is None or self.corners < 3):
            raise ValueError("a cone partition needs corners >= 3")
        if self.kind == "points" and not self.points:
            raise ValueError("a points partition needs at least one label")

    def label(self) -> str:
        if self.kind == "cones":
            return f"cones(k={self.corners})"
        if self.kind == "points":
            return f"points({len(self.points)})"
        return self.kind


# ---------------------------------------------------------------------------
# label sets


@dataclass
class Labels:
    """A finite label set with natural parameters, sorted lexicographically."""

    means: np.ndarray  # (k, d)
    thetas: np.ndarray
    log_zs: np.ndarray
    corner_angles: Optional[np.ndarray] = None  # cones only

    @classmethod
    def build(cls, fam: FamilySpec, means, corner_angles=None) -> "Labels":
        means = np.asarray(means, dtype=float).reshape(-1, fam.d)
        order = np.lexsort(means.T[::-1])
        means = means[order]
        thetas = np.asarray(natural_of_mean(fam, means if fam.d > 1 else means[:, 0]), dtype=float)
        thetas = thetas.reshape(-1, fam.d)
        return cls(means, thetas, fam.log_partition(thetas), corner_angles)


def _cone_cells(fam: FamilySpec, M1: SurroundingSet, k: int) -> tuple[list[ConvexPolytope], np.ndarray]:
    angles = 2.0 * math.pi * np.arange(k) / k
    dirs = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    corners = M1.boundary_radius(fam, dirs)[:, None] * dirs
    cells = []
    for i in range(k):
        u0, u1 = dirs[i], dirs[(i + 1) % k]
        c0, c1 = corners[i], corners[(i + 1) % k]
        edge = c1 - c0
        v = np.array([edge[1], -edge[0]])
        if v @ c0 < 0:
            v = -v
        normals = [v, [-u0[1], u0[0]], [u1[1], -u1[0]]]
        cells.append(ConvexPolytope(normals, [v @ c0, 0.0, 0.0]))
    return cells, angles


def partition_labels(fam: FamilySpec, partition: PartitionSpec, M1: SurroundingSet) -> Optional[Labels]:
    """Finite label set for the partition, or None for a continuous boundary."""
    if partition.kind == "points":
        return Labels.build(fam, partition.points)
    if fam.d == 1:
        lo, hi = M1.boundary_points_1d(fam)
        return Labels.build(fam, [[lo], [hi]])
    if partition.kind == "cones":
        if fam.d != 2:
            raise UnsupportedDimension("cone partitions are implemented for d == 2")
        cells, angles = _cone_cells(fam, M1, partition.corners)
        reps = [info_project_convex(fam, c).mu_star for c in cells]
        labels = Labels.build(fam, reps, corner_angles=angles)
        labels.cells = cells  # type: ignore[attr-defined]
        return labels
    return None


# ---------------------------------------------------------------------------
# estimators


def _angle(pts: np.ndarray) -> np.ndarray:
    return np.mod(np.arctan2(pts[:, 1], pts[:, 0]), 2.0 * math.pi)


def _spherical(fam: FamilySpec, M1: SurroundingSet) -> bool:
    """Radially symmetric family with a constant-radius boundary: MLE = ray crossing."""
    const = isinstance(M1, SurroundKLBallComplement) or not callable(getattr(M1, "radius", None))
    return bool(fam.radially_symmetric and const)


def _continuous_boundary_points(
    fam: FamilySpec, partition: PartitionSpec, M1: SurroundingSet, pts: np.ndarray, n: int
) -> np.ndarray:
    """Boundary label for each outcome when every boundary point is a label."""
    r = np.linalg.norm(pts, axis=1)
    u = np.zeros_like(pts)
    nz = r > 0
    u[nz] = pts[nz] / r[nz, None]
    # at the origin every ray ties; take the lexicographically largest direction
    u[~nz] = np.eye(fam.d)[0]
    radial = M1.boundary_radius(fam, u)[:, None] * u
    if partition.estimator == "radial":
        return radial
    if _spherical(fam, M1):
        return radial
    if fam.d != 2:
        raise UnsupportedDimension("boundary maximum likelihood is implemented for d <= 2")
    return _boundary_mle_2d(fam, M1, pts)


def _boundary_log_ratio(fam: FamilySpec, M1: SurroundingSet, pts: np.ndarray, phi: np.ndarray):
    """Per-outcome log ratio ``theta(b(phi)) . y - log Z`` with ``phi`` of shape (m,) or (m, g)."""
    u = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
    flat = u.reshape(-1, 2)
    bpts = M1.boundary_radius(fam, flat)[:, None] * flat
    th = np.asarray(natural_of_mean(fam, bpts), dtype=float).reshape(-1, 2)
    lz = fam.log_partition(th)
    th, lz = th.reshape(u.shape), lz.reshape(u.shape[:-1])
    y = pts if phi.ndim == 1 else pts[:, None, :]
    return np.sum(th * y, axis=-1) - lz


def _boundary_mle_2d(fam: FamilySpec, M1: SurroundingSet, pts: np.ndarray) -> np.ndarray:
    """Boundary point maximising the likelihood of each outcome.

    A 360-step angle grid locates the best cell; golden-section search,
    vectorised over outcomes, refines within one step on either side.
    Outcomes are processed in chunks to bound memory.
    """
    if len(pts) > MLE_CHUNK:
        return np.concatenate([_boundary_mle_2d(fam, M1, pts[i:i + MLE_CHUNK])
                               for i in range(0, len(pts), MLE_CHUNK)])
    step = 2.0 * math.pi / 360
    grid = np.arange(360) * step
    vals = _boundary_log_ratio(fam, M1, pts, np.broadcast_to(grid, (len(pts), 360)))
    best = grid[np.argmax(vals, axis=1)]
    a, b = best - step, best + step
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = _boundary_log_ratio(fam, M1, pts, c), _boundary_log_ratio(fam, M1, pts, d)
    while np.max(b - a) > ANGLE_TOL:
        left = fc >= fd
        b = np.where(left, d, b)
        a = np.where(left, a, c)
        c_new = np.where(left, b - g * (b - a), d)
        d_new = np.where(left, c, a + g * (b - a))
        c, d = c_new, d_new
        fc, fd = _boundary_log_ratio(fam, M1, pts, c), _boundary_log_ratio(fam, M1, pts, d)
    phi = 0.5 * (a + b)
    # never return worse than the grid point
    grid_best = np.max(vals, axis=1)
    phi = np.where(_boundary_log_ratio(fam, M1, pts, phi) >= grid_best, phi, best)
    u = np.stack([np.cos(phi), np.sin(phi)], axis=1)
    return M1.boundary_radius(fam, u)[:, None] * u


def _finite_choice(
    fam: FamilySpec, partition: PartitionSpec, labels: Labels, pts: np.ndarray, n: int
) -> np.ndarray:
    """Index into ``labels`` chosen for each outcome."""
    _, best = kernels.best_log_ratio(pts, labels.thetas, labels.log_zs, n)
    if partition.estimator == "mle" or partition.kind == "points":
        return best
    if fam.d == 1:
        # ray estimator: the side of the outcome; the origin falls back to the MLE
        side = np.where(pts[:, 0] > 0, len(labels.means) - 1, 0)
        return np.where(pts[:, 0] == 0, best, side)
    # cones: cell by angle between consecutive corners
    k = len(labels.corner_angles)
    cell = np.minimum((_angle(pts) / (2.0 * math.pi / k)).astype(int), k - 1)
    rep_angle = _angle(labels.means)
    cell_of_label = np.minimum((rep_angle / (2.0 * math.pi / k)).astype(int), k - 1)
    lookup = np.empty(k, dtype=np.intp)
    lookup[cell_of_label] = np.arange(k)
    choice = lookup[cell]
    return np.where(np.linalg.norm(pts, axis=1) == 0, best, choice)


def estimate_r(fam: FamilySpec, partition: PartitionSpec, M1: SurroundingSet, y, n: int = 1):
    """Boundary label chosen for outcome(s) ``y``.

    Raises OriginRay at ``y = 0``, where no ray direction exists.
    """
    pts, shape = as_points(fam, y)
    if np.any(np.linalg.norm(pts, axis=1) == 0):
        raise OriginRay("the origin has no ray direction")
    out = _labels_for(fam, partition, M1, pts, n)
    out = out.reshape(shape + ((fam.d,) if fam.d > 1 else ()))
    return float(out) if out.ndim == 0 else out


def _labels_for(fam, partition, M1, pts, n, labels: Optional[Labels] = None) -> np.ndarray:
    labels = labels if labels is not None else partition_labels(fam, partition, M1)
    if labels is None:
        return _continuous_boundary_points(fam, partition, M1, pts, n)
    return labels.means[_finite_choice(fam, partition, labels, pts, n)]


def plug_in_log_ratio(
    fam: FamilySpec,
    partition: PartitionSpec,
    M1: SurroundingSet,
    pts: np.ndarray,
    n: int,
    labels: Optional[Labels] = None,
) -> np.ndarray:
    """``log p_{r(y)}(y) / p0(y)`` for outcomes ``pts`` of shape ``(m, d)``."""
    if labels is not None:
        idx = _finite_choice(fam, partition, labels, pts, n)
        th, lz = labels.thetas[idx], labels.log_zs[idx]
    else:
        r = _continuous_boundary_points(fam, partition, M1, pts, n)
        th = np.asarray(natural_of_mean(fam, r if fam.d > 1 else r[:, 0]), dtype=float)
        th = th.reshape(-1, fam.d)
        lz = fam.log_partition(th)
    with np.errstate(invalid="ignore", over="ignore"):
        return n * (np.sum(th * pts, axis=1) - lz)


# ---------------------------------------------------------------------------
# normaliser


@dataclass
class ShtarkovResult:
    mmreg: float
    error: float
    method: str
    labels: Optional[Labels] = field(default=None, repr=False)
    quad_hint: dict = field(default_factory=dict, repr=False)
    cover_means: list = field(default_factory=list, repr=False)


def _split_1d(fam, partition, labels: Labels) -> float:
    lo, hi = labels.means[0, 0], labels.means[-1, 0]
    if partition.estimator == "radial" and partition.kind != "points":
        return 0.0
    tm, tp = labels.thetas[0, 0], labels.thetas[-1, 0]
    return float((labels.log_zs[-1] - labels.log_zs[0]) / (tp - tm)) if tp != tm else 0.5 * (lo + hi)


def log_shtarkov_normalizer(
    fam: FamilySpec, partition: PartitionSpec, M1: SurroundingSet, n: int = 1
) -> ShtarkovResult:
    """``log`` of the integral (or sum) over outcomes of the plug-in density."""
    labels = partition_labels(fam, partition, M1)

    def log_plug(pts):
        return plug_in_log_ratio(fam, partition, M1, pts, n, labels)

    if fam.is_discrete:
        cover = labels.means if labels is not None else np.zeros((0, fam.d))
        out = tilted_outcomes(fam, cover, n)
        logs = out.logp + log_plug(out.ys)
        return ShtarkovResult(
            float(np.logaddexp.reduce(logs)), 0.0, "enumeration", labels, {}, list(cover)
        )
    logp0 = fam.support.log_density
    sd0 = math.sqrt(float(fam.hessian(np.zeros((1, fam.d)))[0, 0, 0]) / n)
    if fam.d == 1:
        lo, hi = labels.means[0, 0], labels.means[-1, 0]
        split = _split_1d(fam, partition, labels)
        sds = np.sqrt(fam.hessian(labels.thetas)[:, 0, 0] / n)
        hint = {"kind": "line", "center": 0.0, "scale": float(min(sd0, sds.min())),
                "breakpoints": sorted({lo, split, hi, 0.0})}

        def log_integrand(y):
            y = np.asarray(y, dtype=float)
            return log_plug(y.reshape(-1, 1)).reshape(y.shape) + logp0(y[..., None], n)

        value, err = integrate_line(log_integrand, hint["center"], hint["scale"], hint["breakpoints"])
        return ShtarkovResult(float(math.log(value)), float(err / value), "quadrature-line",
                              labels, hint, list(labels.means))
    if fam.d != 2:
        raise UnsupportedDimension(f"continuous Shtarkov normaliser needs d <= 2, got d = {fam.d}")
    if labels is not None:
        peak = float(np.min(np.linalg.norm(labels.means, axis=1)))
        breaks = np.concatenate([labels.corner_angles if labels.corner_angles is not None else [],
                                 _angle(labels.means)])
    else:
        ang = np.linspace(0.0, 2.0 * math.pi, 64, endpoint=False)
        dirs = np.stack([np.cos(ang), np.sin(ang)], axis=1)
        peak = float(np.min(M1.boundary_radius(fam, dirs)))
        breaks = np.array([])
    hint = {"kind": "polar", "peak": peak, "scale": sd0, "angle_breaks": breaks.tolist()}
    ridge = labels is None and partition.estimator == "mle" and not _spherical(fam, M1)
    if ridge:
        hint.update(atol=RIDGE_ATOL, rtol=RIDGE_RTOL)

    def log_integrand2(pts):
        flat = pts.reshape(-1, 2)
        val = log_plug(flat).reshape(pts.shape[:-1])
        return val + logp0(pts, n)

    value, err = integrate_polar(log_integrand2, peak, sd0, breaks, hint.get("atol"), hint.get("rtol"))
    mmreg = math.log(value)
    if ridge:
        # round the normaliser up by its error estimate so E0[S] <= 1 survives
        mmreg += math.log1p(err / value)
    cover = list(labels.means) if labels is not None else []
    return ShtarkovResult(float(mmreg), float(err / value), "quadrature-polar", labels, hint, cover)


def shtarkov_split_closed_form(
    fam: FamilySpec, partition: PartitionSpec, M1: SurroundingSet, n: int = 1
) -> float:
    """d = 1 normaliser from tilted tail probabilities at the split point.

    With labels ``mu_minus < mu_plus`` and split ``s``, the normaliser is
    ``P_{mu_minus}(Y < s) + P_{mu_plus}(Y >= s)`` (ties at ``s`` go to the
    larger label). Continuous families need a tilted CDF.
    """
    if fam.d != 1:
        raise UnsupportedDimension("the split form is one-dimensional")
    labels = partition_labels(fam, partition, M1)
    if len(labels.means) == 1:
        return 0.0
    if len(labels.means) != 2:
        raise ValueError("the split form needs exactly two labels")
    lo, hi = float(labels.means[0, 0]), float(labels.means[1, 0])
    split = _split_1d(fam, partition, labels)
    if fam.is_discrete:
        out = tilted_outcomes(fam, labels.means, n)
        y = out.ys[:, 0]
        total = 0.0
        for j, mu, mask in ((0, lo, y < split), (1, hi, y >= split)):
            th = labels.thetas[j, 0]
            logw = out.logp[mask] + n * (th * y[mask] - labels.log_zs[j])
            total += float(np.exp(np.logaddexp.reduce(logw))) if mask.any() else 0.0
        return math.log(total)
    if fam.tilted_cdf is None:
        raise UnsupportedDimension(f"{fam.name} has no tilted CDF for the split form")
    below = float(fam.tilted_cdf(lo, split, n))
    above = 1.0 - float(fam.tilted_cdf(hi, split, n))
    return math.log(below + above)


# ---------------------------------------------------------------------------
# e-variable and bounds


def nml_evariable(
    fam: FamilySpec, partition: PartitionSpec, M1: SurroundingSet, n: int = 1
) -> EVariable:
    """``q_shtarkov(Y) / p0(Y)``: plug-in log ratio minus the log normaliser."""
    sh = log_shtarkov_normalizer(fam, partition, M1, n)
    labels, mmreg = sh.labels, sh.mmreg

    def log_value(pts):
        return plug_in_log_ratio(fam, partition, M1, pts, n, labels) - mmreg

    D = lower_divergence(fam, partition, M1, n)
    return EVariable(
        log_value=points_fn(fam, log_value),
        family=fam,
        n=n,
        provenance="shtarkov-NML",
        grow_value=None,
        meta={"mmreg": mmreg, "growth_lower_bound": D - mmreg, "partition": partition.label(),
              "estimator": partition.estimator},
        quad_hint=sh.quad_hint,
        cover_means=sh.cover_means,
    )


def regret(
    fam: FamilySpec,
    partition: PartitionSpec,
    M1: SurroundingSet,
    log_q_ratio: Callable[[np.ndarray], np.ndarray],
    ys,
    n: int = 1,
) -> np.ndarray:
    """``log p_{r(y)}(y) - log q(y)`` where ``log_q_ratio(y) = log q(y)/p0(y)``."""
    pts, shape = as_points(fam, ys)
    labels = partition_labels(fam, partition, M1)
    out = plug_in_log_ratio(fam, partition, M1, pts, n, labels) - np.asarray(
        log_q_ratio(pts if fam.d > 1 else pts[:, 0])
    ).reshape(-1)
    return out.reshape(shape)


def boundary_min_kl(fam: FamilySpec, M1: SurroundingSet) -> float:
    """Smallest single-draw divergence over the complement's boundary."""
    if isinstance(M1, SurroundKLBallComplement):
        return M1.D1
    if fam.d == 1:
        lo, hi = M1.boundary_points_1d(fam)
        return float(min(kl(fam, lo), kl(fam, hi)))
    if fam.d != 2:
        raise UnsupportedDimension("boundary minimisation is implemented for d <= 2")

    def kl_at(phi):
        u = np.array([[math.cos(phi), math.sin(phi)]])
        return float(kl(fam, M1.boundary_radius(fam, u)[0] * u[0]))

    grid = np.linspace(0.0, 2.0 * math.pi, 721)
    vals = np.array([kl_at(p) for p in grid])
    j = int(np.argmin(vals))
    step = grid[1] - grid[0]
    res = minimize_scalar(kl_at, bounds=(grid[j] - step, grid[j] + step), method="bounded",
                          options={"xatol": ANGLE_TOL})
    return float(min(res.fun, vals[j]))


def lower_divergence(
    fam: FamilySpec, partition: PartitionSpec, M1: SurroundingSet, n: int = 1
) -> float:
    """``n`` times the smallest divergence the partition can certify.

    Continuous boundaries give the boundary minimum; finite label sets give
    the minimum over the labels (the cells' information projections).
    """
    labels = partition_labels(fam, partition, M1)
    if labels is None or (fam.d == 1 and partition.kind != "points"):
        return n * boundary_min_kl(fam, M1)
    pts = labels.means if fam.d > 1 else labels.means[:, 0]
    return n * float(np.min(kl(fam, pts)))


def csc_surround_bound(
    fam: FamilySpec,
    M1: SurroundingSet,
    partition: PartitionSpec,
    n: int = 1,
    cfg: Optional[SampleConfig] = None,
    with_oracle: bool = True,
    stream: int = 0,
) -> BoundReport:
    """``exp(mmreg - D_lower)`` bound on ``P0(Y in M1)``, with its oracle."""
    M1.check_nice(fam)
    sh = log_shtarkov_normalizer(fam, partition, M1, n)
    D = lower_divergence(fam, partition, M1, n)
    rep = BoundReport(
        D_lower=D,
        regret=sh.mmreg,
        log_bound=sh.mmreg - D,
        bound=math.exp(sh.mmreg - D),
        n=n,
        family=fam.describe(),
        meanset=M1.label(),
        partition=partition.label(),
        estimator=partition.estimator,
        extra={"mmreg_error": sh.error, "method": sh.method},
    )
    if with_oracle:
        orc = oracle_prob(fam, M1, n, cfg, stream)
        rep.oracle_prob, rep.oracle_se, rep.oracle_kind = orc.prob, orc.se, orc.kind
    return rep


@dataclass
class RegretScan:
    ns: np.ndarray
    mmreg: np.ndarray
    slope: float
    intercept: float

    def rows(self) -> list[tuple[int, float]]:
        return [(int(n), float(m)) for n, m in zip(self.ns, self.mmreg)]


def regret_scan(
    fam: FamilySpec, M1: SurroundingSet, partition: PartitionSpec, n_list: Sequence[int]
) -> RegretScan:
    """mmreg at each n and the least-squares slope of mmreg against log n."""
    ns = np.asarray(n_list, dtype=int)
    if len(ns) < 2 or np.any(np.diff(ns) <= 0):
        raise ValueError("n_list must be strictly increasing with at least two entries")
    vals = np.array([log_shtarkov_normalizer(fam, partition, M1, int(n)).mmreg for n in ns])
    slope, intercept = np.polyfit(np.log(ns), vals, 1)
    return RegretScan(ns, vals, float(slope), float(intercept))


@dataclass
class Sandwich:
    lower: float
    upper: float
    mmreg: float
    n: int

    @property
    def gap(self) -> float:
        return self.upper - self.lower


def grow_sandwich(
    fam: FamilySpec, M1: SurroundKLBallComplement, partition: PartitionSpec, n: int = 1
) -> Sandwich:
    """Bracket on the optimal worst-case growth against a KL-ball complement.

    Upper: ``n D1`` (no e-variable beats the divergence of a boundary
    member). Lower: ``n D1 - mmreg_n`` from the Shtarkov e-variable.
    """
    if not isinstance(M1, SurroundKLBallComplement):
        raise TypeError("the growth sandwich is stated for KL-ball complements")
    mmreg = log_shtarkov_normalizer(fam, partition, M1, n).mmreg
    upper = n * M1.D1
    return Sandwich(upper - mmreg, upper, mmreg, n)


@dataclass
class PartitionRow:
    k: Optional[int]  # None for the continuous boundary
    D_lower: float
    mmreg: float
    log_bound: float


def compare_partitions(
    fam: FamilySpec,
    M1: SurroundKLBallComplement,
    k_list: Sequence[int],
    n: int,
    estimator: str = "radial",
) -> list[PartitionRow]:
    """Bound components for k-corner cone partitions and the continuous boundary.

    The continuous row comes last.
    """
    if fam.d != 2:
        raise UnsupportedDimension("partition comparison is stated for d == 2")
    rows = []
    for k in k_list:
        part = PartitionSpec("cones", estimator, corners=int(k))
        mm = log_shtarkov_normalizer(fam, part, M1, n).mmreg
        D = lower_divergence(fam, part, M1, n)
        rows.append(PartitionRow(int(k), D, mm, mm - D))
    part = PartitionSpec("radial", estimator)
    mm = log_shtarkov_normalizer(fam, part, M1, n).mmreg
    D = lower_divergence(fam, part, M1, n)
    rows.append(PartitionRow(None, D, mm, mm - D))
    return rows
