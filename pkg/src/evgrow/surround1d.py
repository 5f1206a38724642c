"""Growth-optimal e-variable against a surrounding alternative in one dimension.

The alternative is every member whose mean lies outside ``(mu_minus,
mu_plus)``. The optimal e-variable is the likelihood ratio of a two-point
mixture on the boundary, ``(1 - w) p_{mu_minus} + w p_{mu_plus}``, with the
weight ``w`` chosen so that the expected log-growth is the same at both
boundary points (the balance equation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BracketFailure, MeanOutOfRange, QuadratureFailure
from .evariable import EVariable
from .expfam import FamilySpec, as_points, tilted_outcomes
from .quadrature import expect, integrate_line, points_fn
from .projection import _theta

BALANCE_WTOL = 1e-12
MONOTONE_TOL = 1e-10
ROUTE_TOL = 1e-8


@dataclass
class BoundaryPrior:
    """Finitely supported prior on boundary means with its Bayes mixture.

    ``log_ratio(y)`` is ``log sum_i w_i p_{mu_i}(y) / p0(y)`` at sample size n.
    """

    family: FamilySpec
    means: np.ndarray  # (k, d)
    weights: np.ndarray  # (k,)
    n: int = 1
    thetas: np.ndarray = field(init=False, repr=False)
    log_zs: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        fam = self.family
        self.means = np.asarray(self.means, dtype=float).reshape(-1, fam.d)
        self.weights = np.asarray(self.weights, dtype=float).reshape(-1)
        if len(self.weights) != len(self.means):
            raise ValueError("one weight per boundary mean")
        if np.any(self.weights <= 0) or abs(self.weights.sum() - 1.0) > 1e-12:
            raise ValueError("prior weights must be positive and sum to 1")
        self.thetas = np.array([_theta(fam, m) for m in self.means])
        self.log_zs = fam.log_partition(self.thetas)

    def log_ratio(self, y):
        pts, shape = as_points(self.family, y)
        out = kernels.mixture_log_ratio(pts, np.log(self.weights), self.thetas, self.log_zs, self.n)
        return float(out[0]) if shape == () else out.reshape(shape)

    def atoms(self) -> list[tuple]:
        return [(m.tolist() if len(m) > 1 else float(m[0]), float(w)) for m, w in zip(self.means, self.weights)]


def _check_pair(fam: FamilySpec, mu_minus: float, mu_plus: float) -> None:
    if fam.d != 1:
        raise ValueError("surrounding balance is implemented for d == 1 only")
    if not mu_minus < 0 < mu_plus:
        raise MeanOutOfRange(f"need mu_minus < 0 < mu_plus, got ({mu_minus}, {mu_plus})")
    ends = np.array([[mu_minus], [mu_plus]])
    if not np.all(fam.mean_space.interior_contains(ends)):
        raise MeanOutOfRange(f"boundary ({mu_minus}, {mu_plus}) leaves the mean space interior")


def crossing_point(fam: FamilySpec, mu_minus: float, mu_plus: float) -> float:
    """Outcome where the two boundary likelihoods are equal (independent of n)."""
    tm, tp = _theta(fam, np.array([mu_minus]))[0], _theta(fam, np.array([mu_plus]))[0]
    lzm, lzp = fam.log_partition(np.array([[tm], [tp]]))
    return float((lzp - lzm) / (tp - tm))


def _pair_log_ratio(fam, mu_minus, mu_plus, w, n):
    thetas = np.array([_theta(fam, np.array([mu_minus])), _theta(fam, np.array([mu_plus]))])
    log_zs = fam.log_partition(thetas)
    with np.errstate(divide="ignore"):
        lw = np.log(np.array([1.0 - w, w]))

    def log_ratio(y):
        y = np.asarray(y, dtype=float)
        return kernels.mixture_log_ratio(y.reshape(-1, 1), lw, thetas, log_zs, n).reshape(y.shape)

    return log_ratio


def balance_objective(
    fam: FamilySpec, mu_minus: float, mu_plus: float, mu: float, w: float, n: int = 1
) -> float:
    """Expected log mixture ratio ``f(mu, w)`` under the member with mean mu."""
    _check_pair(fam, mu_minus, mu_plus)
    if not 0.0 <= w <= 1.0:
        raise ValueError(f"weight must lie in [0, 1], got {w}")
    log_ratio = _pair_log_ratio(fam, mu_minus, mu_plus, w, n)
    bps = (mu_minus, crossing_point(fam, mu_minus, mu_plus), mu_plus)
    return expect(fam, mu, log_ratio, n, breakpoints=bps)


@dataclass
class BalanceResult:
    w: float
    prior: BoundaryPrior
    residual: float
    f_minus: float
    f_plus: float
    iterations: int


def solve_balance(fam: FamilySpec, mu_minus: float, mu_plus: float, n: int = 1) -> BalanceResult:
    """Weight on mu_plus equalising the expected log-growth at both boundary points.

    Bisection on ``h(w) = f(mu_minus, w) - f(mu_plus, w)``, which is strictly
    decreasing with ``h(0) > 0 > h(1)``.
    """
    _check_pair(fam, mu_minus, mu_plus)

    def h(w):
        return balance_objective(fam, mu_minus, mu_plus, mu_minus, w, n) - balance_objective(
            fam, mu_minus, mu_plus, mu_plus, w, n
        )

    lo, hi = 0.0, 1.0
    h_lo, h_hi = h(lo), h(hi)
    if not (h_lo > 0 > h_hi):
        raise BracketFailure(
            f"balance function does not change sign on [0, 1]: h(0)={h_lo:.3e}, h(1)={h_hi:.3e}"
        )
    it = 0
    while hi - lo > BALANCE_WTOL and it < 200:
        mid = 0.5 * (lo + hi)
        h_mid = h(mid)
        if h_mid == 0:
            lo = hi = mid
            break
        if h_mid > 0:
            lo = mid
        else:
            hi = mid
        it += 1
    w = 0.5 * (lo + hi)
    f_minus = balance_objective(fam, mu_minus, mu_plus, mu_minus, w, n)
    f_plus = balance_objective(fam, mu_minus, mu_plus, mu_plus, w, n)
    prior = BoundaryPrior(fam, [[mu_minus], [mu_plus]], [1.0 - w, w], n)
    return BalanceResult(w, prior, abs(f_minus - f_plus), f_minus, f_plus, it)


def _mixture_quad_hint(fam: FamilySpec, mu_minus: float, mu_plus: float, n: int) -> dict:
    thetas = np.array([[_theta(fam, np.array([m]))[0]] for m in (mu_minus, mu_plus)])
    sd = math.sqrt(float(np.min(fam.hessian(thetas)[:, 0, 0])) / n)
    return {
        "kind": "line",
        "center": 0.0,
        "scale": sd,
        "breakpoints": [mu_minus, crossing_point(fam, mu_minus, mu_plus), mu_plus],
    }


def mixture_kl(fam: FamilySpec, prior: BoundaryPrior, hint: dict) -> float:
    """D(P_W || P0) = E_{P0}[S log S] integrated directly over outcomes."""
    n = prior.n
    if fam.is_discrete:
        out = tilted_outcomes(fam, prior.means, n)
        ls = prior.log_ratio(out.ys[:, 0])
        return float(np.sum(np.exp(out.logp + ls) * ls))
    logp0 = fam.support.log_density

    def log_weight(y):
        return prior.log_ratio(y) + logp0(np.asarray(y)[..., None], n)

    value, _ = integrate_line(
        log_weight, hint["center"], hint["scale"], hint["breakpoints"], factor=prior.log_ratio
    )
    return float(value)


def grow_surround_1d(fam: FamilySpec, mu_minus: float, mu_plus: float, n: int = 1) -> EVariable:
    """Boundary-mixture e-variable with its worst-case growth rate.

    The growth is computed twice: directly as ``D(P_W || P0)`` and as the
    balanced objective at ``mu_minus``; both are stored in ``meta``.
    """
    bal = solve_balance(fam, mu_minus, mu_plus, n)
    hint = _mixture_quad_hint(fam, mu_minus, mu_plus, n)
    direct = mixture_kl(fam, bal.prior, hint)
    via_balance = bal.f_minus
    if abs(direct - via_balance) > ROUTE_TOL * max(1.0, abs(direct)):
        raise QuadratureFailure(
            f"growth routes disagree: direct {direct!r} vs balance {via_balance!r}"
        )
    prior = bal.prior
    return EVariable(
        log_value=points_fn(fam, lambda pts: kernels.mixture_log_ratio(
            pts, np.log(prior.weights), prior.thetas, prior.log_zs, n)),
        family=fam,
        n=n,
        provenance="surround-mixture",
        grow_value=via_balance,
        meta={
            "w": bal.w,
            "prior": prior.atoms(),
            "balance_residual": bal.residual,
            "grow_direct": direct,
            "grow_balance": via_balance,
            "f_plus": bal.f_plus,
        },
        quad_hint=hint,
        cover_means=[np.array([mu_minus]), np.array([mu_plus])],
    )


@dataclass
class Violation:
    side: str
    mu_a: float
    mu_b: float
    f_a: float
    f_b: float


def default_grid(
    fam: FamilySpec, mu_minus: float, mu_plus: float, points: int = 200, span: float = 3.0
) -> tuple[np.ndarray, np.ndarray]:
    """Ascending grids ``(left, right)`` outward from each boundary point."""
    lo, hi = float(fam.mean_space.lower[0]), float(fam.mean_space.upper[0])
    right_end = min(mu_plus + span, mu_plus + 0.98 * (hi - mu_plus))
    left_end = max(mu_minus - span, mu_minus - 0.98 * (mu_minus - lo))
    return np.linspace(left_end, mu_minus, points), np.linspace(mu_plus, right_end, points)


def monotonicity_scan(
    fam: FamilySpec,
    mu_minus: float,
    mu_plus: float,
    w: float,
    right_grid=None,
    left_grid=None,
    n: int = 1,
    points: int = 200,
) -> list[Violation]:
    """Adjacent grid pairs where ``f(., w)`` fails to grow away from the boundary.

    ``f`` should increase on ``mu >= mu_plus`` and decrease on
    ``mu <= mu_minus``; drops larger than 1e-10 are reported.
    """
    if right_grid is None or left_grid is None:
        left_def, right_def = default_grid(fam, mu_minus, mu_plus, points)
        left_grid = left_def if left_grid is None else left_grid
        right_grid = right_def if right_grid is None else right_grid
    out: list[Violation] = []
    for side, grid, sign in (("right", right_grid, 1.0), ("left", left_grid, -1.0)):
        grid = np.sort(np.asarray(grid, dtype=float))
        vals = [balance_objective(fam, mu_minus, mu_plus, float(m), w, n) for m in grid]
        for a, b, fa, fb in zip(grid[:-1], grid[1:], vals[:-1], vals[1:]):
            if sign * (fb - fa) < -MONOTONE_TOL:
                out.append(Violation(side, float(a), float(b), fa, fb))
    return out


def worst_case_growth(ev: EVariable, means) -> np.ndarray:
    """E_{P_mu}[log S] for each mean in ``means`` (d == 1)."""
    hint = ev.quad_hint
    return np.array(
        [expect(ev.family, float(m), ev.log_value, ev.n, hint.get("breakpoints", ())) for m in means]
    )


__all__ = [
    "BoundaryPrior",
    "BalanceResult",
    "Violation",
    "balance_objective",
    "crossing_point",
    "default_grid",
    "grow_surround_1d",
    "monotonicity_scan",
    "solve_balance",
    "worst_case_growth",
]
