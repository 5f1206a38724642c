"""Natural exponential families generated by a zero-mean null distribution.

A family is described by its log-partition function ``log Z(theta)``, the
mean map ``theta -> grad log Z(theta)`` and the support of the null ``P0``.
Members are indexed by their mean ``mu``; the member with mean ``mu`` has
density ``exp(theta(mu) . y - log Z(theta(mu))) * p0(y)``.

Sample size enters only through a multiplier: if ``Y`` is the average of
``n`` i.i.d. draws, every log-likelihood ratio and every KL divergence is
``n`` times its single-draw value, so one ``FamilySpec`` serves all ``n``.

Points are passed as floats (``d == 1``) or arrays with a trailing axis of
length ``d``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np
from scipy import stats
from scipy.special import expit, gammaln, logit, logsumexp, ndtr

from .errors import (
    FamilyInvariantError,
    MeanOutOfRange,
    NoConvergence,
    NotDiscrete,
    TooLarge,
)

DEFAULT_OUTCOME_CAP = 1_000_000
POISSON_TAIL = 1e-14


@dataclass(frozen=True)
class Box:
    """Axis-aligned open box, possibly unbounded."""

    lower: np.ndarray
    upper: np.ndarray

    def interior_contains(self, x: np.ndarray) -> np.ndarray:
        return np.all((x > self.lower) & (x < self.upper), axis=-1)


@dataclass(frozen=True)
class DiscreteSupport:
    atoms: np.ndarray  # (k, d), sorted ascending for d == 1
    log_weights: np.ndarray  # (k,)
    truncated: bool = False


@dataclass(frozen=True)
class ContinuousSupport:
    # log density of Y at sample size n w.r.t. Lebesgue measure
    log_density: Callable[[np.ndarray, int], np.ndarray]
    lower: np.ndarray
    upper: np.ndarray


Support = Union[DiscreteSupport, ContinuousSupport]


@dataclass(frozen=True)
class Outcomes:
    """Finite list of outcomes of Y with their null log-probabilities."""

    ys: np.ndarray  # (m, d)
    logp: np.ndarray  # (m,)
    captured_mass: float = 1.0

    def __len__(self) -> int:
        return len(self.logp)

    @property
    def probs(self) -> np.ndarray:
        return np.exp(self.logp)


@dataclass(frozen=True)
class SampleConfig:
    n: int = 1
    seed: int = 0
    mc_samples: int = 1_000_000

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"sample size n must be a positive integer, got {self.n!r}")
        if int(self.mc_samples) != self.mc_samples or self.mc_samples < 1:
            raise ValueError(f"mc_samples must be a positive integer, got {self.mc_samples!r}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must fit in 64 unsigned bits, got {self.seed!r}")


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Independent generator for replication ``stream`` of a seeded run."""
    return np.random.default_rng(np.random.SeedSequence(int(seed), spawn_key=(int(stream),)))


@dataclass(eq=False)
class FamilySpec:
    """A natural exponential family generated by a null with zero mean.

    Vectorised callables take natural parameters of shape ``(m, d)``.
    ``outcomes(n, thetas, cap)`` enumerates the law of ``Y`` at sample size
    ``n`` for discrete families, covering the bulk of the null and of the
    tilted members with natural parameters ``thetas``.
    """

    name: str
    d: int
    log_partition: Callable[[np.ndarray], np.ndarray]
    mean_map: Callable[[np.ndarray], np.ndarray]
    hessian: Callable[[np.ndarray], np.ndarray]
    support: Support
    mean_space: Box
    natural_domain: Box
    sampler: Callable[[np.random.Generator, np.ndarray, int, int], np.ndarray]
    theta_of_mu: Optional[Callable[[np.ndarray], np.ndarray]] = None
    outcomes: Optional[Callable[..., Outcomes]] = None
    tilted_cdf: Optional[Callable[[float, np.ndarray, int], np.ndarray]] = None
    radially_symmetric: bool = False
    params: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.validate()

    @property
    def is_discrete(self) -> bool:
        return isinstance(self.support, DiscreteSupport)

    def describe(self) -> dict:
        return {"family": self.name, "d": self.d, **self.params}

    def validate(self) -> None:
        """Check the construction invariants; raise FamilyInvariantError."""
        if self.d < 1:
            raise FamilyInvariantError(f"{self.name}: dimension must be positive")
        zero = np.zeros((1, self.d))
        lz0 = float(self.log_partition(zero)[0])
        if not abs(lz0) <= 1e-12:
            raise FamilyInvariantError(
                f"{self.name}: log_partition(0) = {lz0:.3e}, must be 0 (p0 unnormalised)"
            )
        m0 = np.asarray(self.mean_map(zero))[0]
        if not np.max(np.abs(m0)) <= 1e-12:
            raise FamilyInvariantError(f"{self.name}: mean_map(0) = {m0}, null mean must be 0")
        if self.is_discrete:
            total = float(np.exp(logsumexp(self.support.log_weights)))
            if not abs(total - 1.0) <= 1e-12:
                raise FamilyInvariantError(
                    f"{self.name}: base weights sum to {total!r}, expected 1"
                )
        if self.d == 1:
            grid = np.linspace(-1.0, 1.0, 41)
            grid = grid[self.natural_domain.interior_contains(grid[:, None])]
            means = np.asarray(self.mean_map(grid[:, None]))[:, 0]
            if not np.all(np.diff(means) > 0):
                raise FamilyInvariantError(f"{self.name}: mean map is not strictly increasing")
        else:
            try:
                np.linalg.cholesky(np.asarray(self.hessian(zero))[0])
            except np.linalg.LinAlgError:
                raise FamilyInvariantError(
                    f"{self.name}: log_partition is not strictly convex at 0"
                ) from None


# ---------------------------------------------------------------------------
# point handling


def as_points(fam: FamilySpec, x) -> tuple[np.ndarray, tuple]:
    """Return ``(points of shape (m, d), leading shape)``."""
    arr = np.asarray(x, dtype=float)
    if fam.d == 1:
        if arr.ndim >= 1 and arr.shape[-1] == 1 and arr.ndim > 1:
            arr = arr[..., 0]
        return arr.reshape(-1, 1), arr.shape
    if arr.shape[-1:] != (fam.d,):
        raise ValueError(f"expected trailing dimension {fam.d}, got shape {arr.shape}")
    return arr.reshape(-1, fam.d), arr.shape[:-1]


def _scalar_out(values: np.ndarray, shape: tuple):
    out = np.asarray(values).reshape(shape)
    return float(out) if out.ndim == 0 else out


def _vector_out(fam: FamilySpec, values: np.ndarray, shape: tuple):
    if fam.d == 1:
        return _scalar_out(values[:, 0], shape)
    return np.asarray(values).reshape(shape + (fam.d,))


def _check_interior(fam: FamilySpec, pts: np.ndarray) -> None:
    ok = fam.mean_space.interior_contains(pts)
    if not np.all(ok):
        bad = pts[~ok][0]
        raise MeanOutOfRange(
            f"{fam.name}: mean {bad if fam.d > 1 else bad[0]} outside the interior of the "
            f"mean space ({fam.mean_space.lower}, {fam.mean_space.upper})"
        )


# ---------------------------------------------------------------------------
# parameter maps


def solve_natural(fam: FamilySpec, mu, tol: float = 1e-10, max_iter: int = 200) -> np.ndarray:
    """Invert the mean map numerically at a single mean ``mu``.

    d == 1 uses Newton steps safeguarded by a bracketing interval (bisection
    whenever Newton leaves the bracket); d > 1 uses Newton on the convex
    objective ``log Z(theta) - theta . mu`` with backtracking.
    """
    mu = np.asarray(mu, dtype=float).reshape(fam.d)
    if fam.d == 1:
        return np.array([_solve_natural_1d(fam, float(mu[0]), tol, max_iter)])
    return _solve_natural_nd(fam, mu, tol, max_iter)


def _solve_natural_1d(fam: FamilySpec, target: float, tol: float, max_iter: int) -> float:
    if target == 0.0:
        return 0.0

    def resid(t):
        return float(fam.mean_map(np.array([[t]]))[0, 0]) - target

    lo_dom = float(fam.natural_domain.lower[0])
    hi_dom = float(fam.natural_domain.upper[0])
    sign = 1.0 if target > 0 else -1.0
    edge = hi_dom if sign > 0 else lo_dom
    inner, outer = 0.0, sign
    for _ in range(max_iter):
        if math.isfinite(edge) and sign * (outer - edge) >= 0:
            outer = 0.5 * (inner + edge)
        if sign * resid(outer) >= 0:
            break
        inner, outer = outer, 2.0 * outer
    else:
        raise NoConvergence(f"{fam.name}: could not bracket natural parameter for mean {target}")
    lo, hi = sorted((inner, outer))
    t = 0.5 * (lo + hi)
    for _ in range(max_iter):
        r = resid(t)
        if abs(r) <= tol:
            return t
        if r > 0:
            hi = t
        else:
            lo = t
        var = float(fam.hessian(np.array([[t]]))[0, 0, 0])
        step = t - r / var if var > 0 else math.nan
        t = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(t)):
            if abs(resid(t)) <= tol:
                return t
            break
    raise NoConvergence(f"{fam.name}: Newton/bisection stalled for mean {target}")


def _solve_natural_nd(fam: FamilySpec, mu: np.ndarray, tol: float, max_iter: int) -> np.ndarray:
    def objective(th):
        return float(fam.log_partition(th[None])[0] - th @ mu)

    theta = np.zeros(fam.d)
    for _ in range(max_iter):
        grad = fam.mean_map(theta[None])[0] - mu
        if np.max(np.abs(grad)) <= tol:
            return theta
        step = np.linalg.solve(fam.hessian(theta[None])[0], grad)
        f0, t = objective(theta), 1.0
        while t > 1e-12:
            cand = theta - t * step
            if fam.natural_domain.interior_contains(cand[None])[0] and objective(
                cand
            ) <= f0 - 1e-4 * t * (grad @ step):
                break
            t *= 0.5
        theta = theta - t * step
    raise NoConvergence(f"{fam.name}: damped Newton did not converge for mean {mu}")


def natural_of_mean(fam: FamilySpec, mu):
    """Natural parameter theta(mu); closed form when the family has one."""
    pts, shape = as_points(fam, mu)
    _check_interior(fam, pts)
    if fam.theta_of_mu is not None:
        theta = np.asarray(fam.theta_of_mu(pts), dtype=float)
    else:
        theta = np.array([solve_natural(fam, p) for p in pts]).reshape(pts.shape)
    return _vector_out(fam, theta, shape)


def _theta_points(fam: FamilySpec, mu) -> tuple[np.ndarray, np.ndarray, tuple]:
    pts, shape = as_points(fam, mu)
    theta, _ = as_points(fam, natural_of_mean(fam, pts if fam.d > 1 else pts[:, 0]))
    return pts, theta, shape


def kl(fam: FamilySpec, mu, n: int = 1):
    """D(P_mu || P0) for Y at sample size n, in nats."""
    pts, theta, shape = _theta_points(fam, mu)
    single = np.sum(theta * pts, axis=-1) - fam.log_partition(theta)
    return _scalar_out(n * np.maximum(single, 0.0), shape)


def kl_between(fam: FamilySpec, mu_a, mu_b, n: int = 1):
    """D(P_mu_a || P_mu_b) between two family members."""
    pa, ta, shape = _theta_points(fam, mu_a)
    pb, tb, _ = _theta_points(fam, mu_b)
    val = np.sum((ta - tb) * pa, axis=-1) - fam.log_partition(ta) + fam.log_partition(tb)
    return _scalar_out(n * val, shape)


def log_density_ratio(fam: FamilySpec, mu, y, n: int = 1):
    """log p_mu(y) / p0(y) = n (theta(mu) . y - log Z(theta(mu)))."""
    theta = np.asarray(natural_of_mean(fam, mu), dtype=float).reshape(1, fam.d)
    ys, shape = as_points(fam, y)
    val = n * (ys @ theta[0] - fam.log_partition(theta)[0])
    return _scalar_out(val, shape)


def log_ratio_theta(fam: FamilySpec, theta: np.ndarray, ys: np.ndarray, n: int) -> np.ndarray:
    """Vectorised log-likelihood ratio for a fixed natural parameter (internal)."""
    theta = np.asarray(theta, dtype=float).reshape(fam.d)
    return n * (ys @ theta - fam.log_partition(theta[None])[0])


def rate_function(fam: FamilySpec, y):
    """Single-draw Legendre transform sup_theta (theta . y - log Z(theta)).

    Equals ``kl(fam, y)`` inside the mean space; at an extreme atom of a
    discrete d = 1 family it equals minus the log-weight of that atom; it is
    infinite outside the closed convex support.
    """
    ys, shape = as_points(fam, y)
    out = np.full(len(ys), np.inf)
    inside = fam.mean_space.interior_contains(ys)
    if np.any(inside):
        out[inside] = np.atleast_1d(kl(fam, ys[inside] if fam.d > 1 else ys[inside, 0]))
    if fam.is_discrete and fam.d == 1 and not np.all(inside):
        atoms = fam.support.atoms[:, 0]
        lw = fam.support.log_weights
        lo_atom, hi_atom = atoms[0], atoms[-1]
        yy = ys[:, 0]
        at_lo = np.isclose(yy, lo_atom, rtol=1e-12, atol=1e-12) & ~inside
        out[at_lo] = -lw[0]
        # a truncated support has no genuine upper extreme atom
        if not fam.support.truncated:
            at_hi = np.isclose(yy, hi_atom, rtol=1e-12, atol=1e-12) & ~inside
            out[at_hi] = -lw[-1]
    return _scalar_out(out, shape)


# ---------------------------------------------------------------------------
# sampling and enumeration


def sample_mean(fam: FamilySpec, mu, cfg: SampleConfig, stream: int = 0) -> np.ndarray:
    """``cfg.mc_samples`` draws of Y (the average of ``cfg.n`` draws) under P_mu."""
    theta = np.asarray(natural_of_mean(fam, mu), dtype=float).reshape(fam.d)
    ys = fam.sampler(make_rng(cfg.seed, stream), theta, cfg.n, cfg.mc_samples)
    return ys[:, 0] if fam.d == 1 else ys


def enumerate_outcomes(fam: FamilySpec, n: int, cap: int = DEFAULT_OUTCOME_CAP) -> Outcomes:
    """Exact law of Y under P0 at sample size n (discrete families only)."""
    if not fam.is_discrete or fam.outcomes is None:
        raise NotDiscrete(f"{fam.name} has no discrete support to enumerate")
    return fam.outcomes(n, np.zeros((0, fam.d)), cap)


def tilted_outcomes(
    fam: FamilySpec, mus, n: int, cap: int = DEFAULT_OUTCOME_CAP
) -> Outcomes:
    """Null outcomes on a grid that also covers the bulk of each member in ``mus``."""
    if not fam.is_discrete or fam.outcomes is None:
        raise NotDiscrete(f"{fam.name} has no discrete support to enumerate")
    pts, _ = as_points(fam, mus)
    thetas = np.array([solve_or_closed(fam, p) for p in pts]).reshape(-1, fam.d)
    return fam.outcomes(n, thetas, cap)


def solve_or_closed(fam: FamilySpec, mu_point: np.ndarray) -> np.ndarray:
    theta = natural_of_mean(fam, mu_point if fam.d > 1 else float(mu_point[0]))
    return np.asarray(theta, dtype=float).reshape(fam.d)


def _stars_and_bars(n: int, k: int):
    for bars in itertools.combinations(range(n + k - 1), k - 1):
        prev, counts = -1, []
        for b in bars:
            counts.append(b - prev - 1)
            prev = b
        counts.append(n + k - 1 - prev - 1)
        yield counts


# ---------------------------------------------------------------------------
# built-in families


def gaussian_location(d: int = 1) -> FamilySpec:
    """N(mu, I_d) location family; Y ~ N(mu, I_d / n) at sample size n."""
    d = int(d)

    def log_partition(th):
        return 0.5 * np.sum(th * th, axis=-1)

    def mean_map(th):
        return np.array(th, dtype=float, copy=True)

    def hessian(th):
        return np.broadcast_to(np.eye(d), th.shape[:-1] + (d, d)).copy()

    def log_density(y, n):
        return -0.5 * n * np.sum(y * y, axis=-1) + 0.5 * d * math.log(n / (2 * math.pi))

    def sampler(rng, theta, n, size):
        return theta + rng.standard_normal((size, d)) / math.sqrt(n)

    def tilted_cdf(mu, y, n):
        return ndtr(math.sqrt(n) * (np.asarray(y) - mu))

    inf = np.full(d, np.inf)
    return FamilySpec(
        name="gaussian",
        d=d,
        log_partition=log_partition,
        mean_map=mean_map,
        hessian=hessian,
        support=ContinuousSupport(log_density, -inf, inf),
        mean_space=Box(-inf, inf),
        natural_domain=Box(-inf, inf),
        sampler=sampler,
        theta_of_mu=mean_map,
        tilted_cdf=tilted_cdf if d == 1 else None,
        radially_symmetric=True,
        params={"d": d},
    )


def bernoulli_to_mean(p: float, q):
    """Mean of the scaled-Bernoulli statistic whose success probability is q."""
    q = np.asarray(q, dtype=float)
    out = q / p - (1.0 - q) / (1.0 - p)
    return float(out) if out.ndim == 0 else out


def mean_to_bernoulli(p: float, mu):
    mu = np.asarray(mu, dtype=float)
    out = p + mu * p * (1.0 - p)
    return float(out) if out.ndim == 0 else out


def scaled_bernoulli(p: float) -> FamilySpec:
    """X = 1/p w.p. p and -1/(1-p) otherwise; Y is a rescaled Bin(n, p) average."""
    p = float(p)
    if not 0.0 < p < 1.0:
        raise FamilyInvariantError(f"scaled_bernoulli: p must lie in (0, 1), got {p}")
    lp, lq, pq = math.log(p), math.log1p(-p), p * (1.0 - p)
    base_logit = math.log(p) - math.log1p(-p)

    def log_partition(th):
        t = th[..., 0]
        return np.logaddexp(lp + t / p, lq - t / (1.0 - p))

    def success(t):
        return expit(base_logit + t / pq)

    def mean_map(th):
        q = success(th[..., 0])
        return ((q - p) / pq)[..., None]

    def hessian(th):
        q = success(th[..., 0])
        return (q * (1.0 - q) / pq**2)[..., None, None]

    def theta_of_mu(mu):
        q = p + mu[..., 0] * pq
        return (pq * (logit(q) - base_logit))[..., None]

    def outcomes(n, thetas, cap):
        if n + 1 > cap:
            raise TooLarge(f"{n + 1} outcomes exceed cap {cap}")
        k = np.arange(n + 1)
        ys = bernoulli_to_mean(p, k / n)
        return Outcomes(np.asarray(ys).reshape(-1, 1), stats.binom.logpmf(k, n, p))

    def sampler(rng, theta, n, size):
        k = rng.binomial(n, success(float(theta[0])), size=size)
        return np.asarray(bernoulli_to_mean(p, k / n)).reshape(-1, 1)

    atoms = np.array([[-1.0 / (1.0 - p)], [1.0 / p]])
    return FamilySpec(
        name="scaled_bernoulli",
        d=1,
        log_partition=log_partition,
        mean_map=mean_map,
        hessian=hessian,
        support=DiscreteSupport(atoms, np.array([lq, lp])),
        mean_space=Box(atoms[0], atoms[1]),
        natural_domain=Box(np.array([-np.inf]), np.array([np.inf])),
        sampler=sampler,
        theta_of_mu=theta_of_mu,
        outcomes=outcomes,
        params={"p": p},
    )


def poisson(lam: float) -> FamilySpec:
    """Centered Poisson: Y = X - lam with X ~ Poisson(lam) under the null."""
    lam = float(lam)
    if not lam > 0:
        raise FamilyInvariantError(f"poisson: rate must be positive, got {lam}")

    def log_partition(th):
        t = th[..., 0]
        return lam * (np.expm1(t) - t)

    def mean_map(th):
        return (lam * np.expm1(th[..., 0]))[..., None]

    def hessian(th):
        return (lam * np.exp(th[..., 0]))[..., None, None]

    def theta_of_mu(mu):
        return np.log1p(mu[..., 0] / lam)[..., None]

    def outcomes(n, thetas, cap):
        rates = [n * lam] + [n * lam * math.exp(t) for t in np.asarray(thetas)[:, 0]]
        kmax = int(max(stats.poisson.isf(POISSON_TAIL, r) for r in rates)) + 1
        if kmax + 1 > cap:
            raise TooLarge(f"{kmax + 1} Poisson outcomes exceed cap {cap}")
        k = np.arange(kmax + 1)
        logp = stats.poisson.logpmf(k, n * lam)
        total = logsumexp(logp)
        return Outcomes((k / n - lam).reshape(-1, 1), logp - total, float(np.exp(total)))

    def sampler(rng, theta, n, size):
        k = rng.poisson(n * lam * math.exp(float(theta[0])), size=size)
        return (k / n - lam).reshape(-1, 1)

    trunc = int(stats.poisson.isf(POISSON_TAIL, lam)) + 1
    k = np.arange(trunc + 1)
    return FamilySpec(
        name="poisson",
        d=1,
        log_partition=log_partition,
        mean_map=mean_map,
        hessian=hessian,
        support=DiscreteSupport(
            (k - lam).reshape(-1, 1), stats.poisson.logpmf(k, lam), truncated=True
        ),
        mean_space=Box(np.array([-lam]), np.array([np.inf])),
        natural_domain=Box(np.array([-np.inf]), np.array([np.inf])),
        sampler=sampler,
        theta_of_mu=theta_of_mu,
        outcomes=outcomes,
        params={"lam": lam},
        metadata={"truncation_point": trunc, "tail_mass": POISSON_TAIL},
    )


def discrete_family(atoms, weights, name: str = "discrete") -> FamilySpec:
    """Family generated by an arbitrary finitely supported null on the line.

    No closed forms: natural parameters come from the numerical inverse and
    the law at sample size n from multinomial enumeration.
    """
    atoms = np.asarray(atoms, dtype=float).reshape(-1)
    weights = np.asarray(weights, dtype=float).reshape(-1)
    if atoms.shape != weights.shape or len(atoms) < 2 or np.any(weights <= 0):
        raise FamilyInvariantError(f"{name}: need >= 2 atoms with positive weights")
    order = np.argsort(atoms)
    atoms, weights = atoms[order], weights[order]
    logw = np.log(weights)

    def _tilt(th):
        return th[..., 0, None] * atoms + logw  # (..., k)

    def log_partition(th):
        return logsumexp(_tilt(th), axis=-1)

    def _probs(th):
        lt = _tilt(th)
        return np.exp(lt - logsumexp(lt, axis=-1, keepdims=True))

    def mean_map(th):
        return (_probs(th) @ atoms)[..., None]

    def hessian(th):
        pr = _probs(th)
        m = pr @ atoms
        return (pr @ atoms**2 - m**2)[..., None, None]

    def outcomes(n, thetas, cap):
        k = len(atoms)
        count = math.comb(n + k - 1, k - 1)
        if count > cap:
            raise TooLarge(f"{count} multinomial outcomes exceed cap {cap}")
        counts = np.array(list(_stars_and_bars(n, k)), dtype=float)
        logp = gammaln(n + 1) - gammaln(counts + 1).sum(axis=1) + counts @ logw
        return Outcomes((counts @ atoms / n).reshape(-1, 1), logp)

    def sampler(rng, theta, n, size):
        counts = rng.multinomial(n, _probs(theta[None])[0], size=size)
        return (counts @ atoms / n).reshape(-1, 1)

    return FamilySpec(
        name=name,
        d=1,
        log_partition=log_partition,
        mean_map=mean_map,
        hessian=hessian,
        support=DiscreteSupport(atoms.reshape(-1, 1), logw),
        mean_space=Box(atoms[:1], atoms[-1:]),
        natural_domain=Box(np.array([-np.inf]), np.array([np.inf])),
        sampler=sampler,
        outcomes=outcomes,
        params={"atoms": atoms.tolist(), "weights": weights.tolist()},
    )


FAMILIES: dict[str, tuple[Callable[..., FamilySpec], str]] = {
    "gaussian": (gaussian_location, "d: dimension (int, identity covariance)"),
    "scaled_bernoulli": (scaled_bernoulli, "p: success probability in (0, 1)"),
    "poisson": (poisson, "lam: null rate > 0 (statistic is X - lam)"),
    "discrete": (discrete_family, "atoms: list of floats; weights: list summing to 1"),
}


def build_family(name: str, **params) -> FamilySpec:
    try:
        ctor, _ = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return ctor(**params)
