"""Concentration bounds for convex alternatives and their truth oracles.

For a convex mean set ``M1`` with information projection ``mu_star``,
``P0(Y in M1) <= exp(-n kl(mu_star))``. The oracle computes the left side
exactly for discrete families and by Monte Carlo otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .expfam import (
    FamilySpec,
    SampleConfig,
    enumerate_outcomes,
    log_ratio_theta,
    natural_of_mean,
    rate_function,
    sample_mean,
)
from .meansets import MeanSet, kl_radius
from .projection import info_project_convex
from .quadrature import integrate_line

MC_SLACK_SE = 3.0
EXACT_SLACK = 1e-12
# boundary outcomes of the likelihood-ratio events may differ by rounding only
EVENT_SLACK = 1e-9


@dataclass
class BoundReport:
    """One bound evaluation with its oracle probability."""

    D_lower: float
    regret: float
    log_bound: float
    bound: float
    n: int
    oracle_prob: Optional[float] = None
    oracle_se: Optional[float] = None
    oracle_kind: str = "none"
    family: dict = field(default_factory=dict)
    meanset: str = ""
    partition: str = ""
    estimator: str = ""
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        expected = self.regret - self.D_lower
        if not math.isclose(self.log_bound, expected, rel_tol=1e-15, abs_tol=1e-15):
            raise ValueError("log_bound must equal regret - D_lower")

    @property
    def margin(self) -> Optional[float]:
        """Bound minus oracle probability (positive when the bound holds)."""
        if self.oracle_prob is None:
            return None
        return self.bound - self.oracle_prob

    @property
    def valid(self) -> bool:
        if self.oracle_kind == "exact":
            return self.oracle_prob <= self.bound + EXACT_SLACK
        if self.oracle_kind == "montecarlo":
            return self.oracle_prob <= self.bound + MC_SLACK_SE * self.oracle_se
        return True


@dataclass
class OracleResult:
    prob: float
    se: float
    kind: str


def oracle_prob(
    fam: FamilySpec, M1: MeanSet, n: int, cfg: Optional[SampleConfig] = None, stream: int = 0
) -> OracleResult:
    """P0(Y in M1) at sample size n: exact sum (discrete) or Monte Carlo."""
    if fam.is_discrete:
        out = enumerate_outcomes(fam, n)
        inside = M1.contains(out.ys, fam)
        return OracleResult(float(np.sum(out.probs[inside])), 0.0, "exact")
    cfg = SampleConfig(n, cfg.seed, cfg.mc_samples) if cfg else SampleConfig(n)
    ys = sample_mean(fam, 0.0 if fam.d == 1 else np.zeros(fam.d), cfg, stream)
    inside = M1.contains(ys.reshape(-1, fam.d), fam)
    p = float(inside.mean())
    return OracleResult(p, math.sqrt(p * (1.0 - p) / len(inside)), "montecarlo")


def csc_convex_bound(
    fam: FamilySpec,
    M1: MeanSet,
    n: int = 1,
    cfg: Optional[SampleConfig] = None,
    with_oracle: bool = True,
) -> BoundReport:
    """``exp(-n kl(mu_star))`` for a convex mean set, optionally with its oracle."""
    proj = info_project_convex(fam, M1)
    D = n * proj.kl_value
    rep = BoundReport(
        D_lower=D,
        regret=0.0,
        log_bound=-D,
        bound=math.exp(-D),
        n=n,
        family=fam.describe(),
        meanset=M1.label(),
        extra={"mu_star": np.asarray(proj.mu_star).tolist(), "kkt_residual": proj.kkt_residual},
    )
    if with_oracle:
        orc = oracle_prob(fam, M1, n, cfg)
        rep.oracle_prob, rep.oracle_se, rep.oracle_kind = orc.prob, orc.se, orc.kind
    return rep


@dataclass
class MLECheck:
    mu_star: float
    D: float
    bound: float
    prob_sup_event: float
    prob_fixed_event: float
    se: float
    kind: str
    mismatches: int  # outcomes (or samples) where the two events disagree

    @property
    def events_equal(self) -> bool:
        return self.mismatches == 0

    @property
    def valid(self) -> bool:
        slack = EXACT_SLACK if self.kind == "exact" else MC_SLACK_SE * self.se
        return max(self.prob_sup_event, self.prob_fixed_event) <= self.bound + slack


def mle_bound_check_1d(
    fam: FamilySpec, D: float, sign: int, n: int = 1, cfg: Optional[SampleConfig] = None
) -> MLECheck:
    """Compare the sup-likelihood-ratio event on one side with a fixed-ratio event.

    The event ``{sup_mu p_mu(Y)/p0(Y) >= e^D, sgn(Y) = sign}`` coincides with
    ``{p_{mu_star}(Y)/p0(Y) >= e^D}`` where ``kl(mu_star, n) = D`` on that
    side; both have null probability at most ``e^{-D}``.
    """
    if fam.d != 1:
        raise ValueError("the one-sided likelihood-ratio check is one-dimensional")
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    mu_star = sign * kl_radius(fam, np.array([float(sign)]), D / n)
    theta = np.atleast_1d(natural_of_mean(fam, mu_star))

    if fam.is_discrete:
        out = enumerate_outcomes(fam, n)
        ys, weights, kind = out.ys, out.probs, "exact"
    else:
        cfg = SampleConfig(n, cfg.seed, cfg.mc_samples) if cfg else SampleConfig(n)
        ys = sample_mean(fam, 0.0, cfg).reshape(-1, 1)
        weights, kind = np.full(len(ys), 1.0 / len(ys)), "montecarlo"
    y = ys[:, 0]
    sup_log = n * np.asarray(rate_function(fam, y))
    ev_sup = (sup_log >= D - EVENT_SLACK) & (np.sign(y) == sign)
    ev_fixed = log_ratio_theta(fam, theta, ys, n) >= D - EVENT_SLACK
    pa, pb = float(weights[ev_sup].sum()), float(weights[ev_fixed].sum())
    se = 0.0
    if kind == "montecarlo":
        se = math.sqrt(max(pa * (1 - pa), pb * (1 - pb)) / len(y))
    return MLECheck(
        mu_star=float(mu_star),
        D=float(D),
        bound=math.exp(-D),
        prob_sup_event=pa,
        prob_fixed_event=pb,
        se=se,
        kind=kind,
        mismatches=int(np.sum(ev_sup != ev_fixed)),
    )


@dataclass
class MarkovMass:
    value: float
    kind: str  # exact | lower-estimate


def naive_markov_mass(fam: FamilySpec, n: int = 1, window_sd: float = 3.0) -> MarkovMass:
    """E_{P0}[sup_mu p_mu(Y) / p0(Y)]; at least 1, so the sup-ratio is no e-variable.

    Exact for discrete families. For continuous families the integral may
    diverge; a window of ``window_sd`` null standard deviations gives a
    lower estimate.
    """
    if fam.d != 1:
        raise ValueError("implemented for d == 1")
    if fam.is_discrete:
        out = enumerate_outcomes(fam, n)
        logs = out.logp + n * np.asarray(rate_function(fam, out.ys[:, 0]))
        return MarkovMass(float(np.exp(np.logaddexp.reduce(logs))), "exact")
    sd = math.sqrt(float(fam.hessian(np.zeros((1, 1)))[0, 0, 0]) / n)
    half = window_sd * sd
    logp0 = fam.support.log_density

    def log_integrand(y):
        y = np.asarray(y)
        inside = np.abs(y) <= half
        val = n * np.asarray(rate_function(fam, np.clip(y, -half, half))) + logp0(y[..., None], n)
        return np.where(inside, val, -np.inf)

    value, _ = integrate_line(log_integrand, 0.0, sd, breakpoints=(-half, 0.0, half))
    return MarkovMass(float(value), "lower-estimate")
