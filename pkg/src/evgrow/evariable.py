"""E-variables represented by their log-value function.

An e-variable is a nonnegative statistic ``S(Y)`` with ``E_{P0}[S] <= 1``.
Every constructor in the package returns an :class:`EVariable` carrying the
information needed to check that property numerically: candidate means to
cover when enumerating discrete outcomes, and a quadrature layout (centre,
scale and kinks) for continuous families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .expfam import FamilySpec, SampleConfig, sample_mean, tilted_outcomes
from .quadrature import integrate_line, integrate_plane, integrate_polar

PROVENANCES = ("convex-GROW", "surround-mixture", "shtarkov-NML")


@dataclass
class NullExpectation:
    value: float
    se: float
    kind: str  # exact | quadrature | montecarlo


@dataclass
class EVariable:
    """``S(y) = exp(log_value(y))`` for Y at sample size ``n``.

    Attributes
    ----------
    log_value : callable
        Maps outcomes (floats for d = 1, arrays with trailing axis d
        otherwise) to log S, preserving the leading shape.
    grow_value : float, optional
        Worst-case expected log-growth over the alternative, in nats.
    quad_hint : dict
        Layout for null quadrature: ``{"kind": "line" | "plane" | "polar", ...}``.
    cover_means : list
        Means whose bulk a discrete enumeration has to cover.
    """

    log_value: Callable
    family: FamilySpec
    n: int
    provenance: str
    grow_value: Optional[float] = None
    meta: dict = field(default_factory=dict)
    quad_hint: dict = field(default_factory=dict)
    cover_means: list = field(default_factory=list)

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")

    def __call__(self, y):
        return np.exp(self.log_value(y))


def _null_scale(fam: FamilySpec, n: int) -> float:
    return math.sqrt(float(fam.hessian(np.zeros((1, fam.d)))[0, 0, 0]) / n)


def null_expectation(
    ev: EVariable, method: str = "auto", cfg: Optional[SampleConfig] = None
) -> NullExpectation:
    """E_{P0}[S] at the e-variable's sample size.

    ``method="auto"`` enumerates discrete families exactly and integrates
    continuous families by quadrature (d <= 2); ``"mc"`` averages S over
    ``cfg.mc_samples`` null draws and reports the standard error.
    """
    fam, n = ev.family, ev.n
    if method == "mc":
        cfg = cfg or SampleConfig(n=n)
        ys = sample_mean(fam, 0.0 if fam.d == 1 else np.zeros(fam.d), SampleConfig(n, cfg.seed, cfg.mc_samples))
        s = np.exp(ev.log_value(ys))
        return NullExpectation(float(s.mean()), float(s.std(ddof=1) / math.sqrt(len(s))), "montecarlo")
    if method != "auto":
        raise ValueError(f"unknown method {method!r}")
    if fam.is_discrete:
        cover = [np.atleast_1d(np.asarray(m, dtype=float)) for m in ev.cover_means]
        out = tilted_outcomes(fam, np.array(cover).reshape(-1, fam.d), n)
        ys = out.ys[:, 0] if fam.d == 1 else out.ys
        logs = out.logp + ev.log_value(ys)
        return NullExpectation(float(np.exp(np.logaddexp.reduce(logs))), 0.0, "exact")

    logp0 = fam.support.log_density
    hint = ev.quad_hint
    kind = hint.get("kind", "line" if fam.d == 1 else "plane")
    if fam.d == 1 and kind == "line":

        def log_integrand(y):
            return ev.log_value(y) + logp0(np.asarray(y)[..., None], n)

        value, err = integrate_line(
            log_integrand,
            hint.get("center", 0.0),
            hint.get("scale", _null_scale(fam, n)),
            hint.get("breakpoints", ()),
        )
    elif fam.d == 2:

        def log_integrand(pts):
            return ev.log_value(pts) + logp0(pts, n)

        if kind == "polar":
            value, err = integrate_polar(
                log_integrand,
                hint["peak"],
                hint.get("scale", _null_scale(fam, n)),
                hint.get("angle_breaks", ()),
                atol=hint.get("atol"),
                rtol=hint.get("rtol"),
            )
        else:
            value, err = integrate_plane(
                log_integrand,
                hint.get("center", (0.0, 0.0)),
                hint.get("scale", _null_scale(fam, n)),
                hint.get("breaks_x", ()),
                hint.get("breaks_y", ()),
            )
    else:
        return null_expectation(ev, "mc", cfg)
    return NullExpectation(float(value), float(err), "quadrature")
