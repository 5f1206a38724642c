"""Property checks: e-variable normalisation, Pythagorean residuals,
monotonicity scans, balance residuals and bound validity.

Each check returns a :class:`Check`; exceptions inside a check are reported
as failures rather than raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .csc_convex import csc_convex_bound
from .evariable import EVariable, null_expectation
from .expfam import (
    SampleConfig,
    bernoulli_to_mean,
    gaussian_location,
    poisson,
    scaled_bernoulli,
)
from .meansets import HalfSpace, Interval1D, SurroundKLBallComplement
from .nml import PartitionSpec, csc_surround_bound, nml_evariable
from .projection import grow_convex, info_project_convex, pythagorean_residuals, sample_probes
from .surround1d import grow_surround_1d, monotonicity_scan

NORMALISATION_TOL = 1e-6
PYTHAGORAS_TOL = 1e-9
BALANCE_TOL = 1e-9


@dataclass
class Check:
    name: str
    passed: bool
    detail: str

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'} {self.name}: {self.detail}"


def run_check(name: str, fn: Callable[[], tuple[bool, str]]) -> Check:
    try:
        ok, detail = fn()
    except Exception as exc:  # noqa: BLE001 - reported, not raised
        return Check(name, False, f"{type(exc).__name__}: {exc}")
    return Check(name, bool(ok), detail)


def _normalisation(ev: EVariable, cfg: SampleConfig):
    def fn():
        ne = null_expectation(ev, cfg=cfg)
        slack = 3 * ne.se if ne.kind == "montecarlo" else NORMALISATION_TOL
        return ne.value <= 1 + slack, f"E0[S] = {ne.value:.12g} ({ne.kind})"

    return fn


def _pythagoras(fam, M1, seed):
    def fn():
        probes = sample_probes(fam, M1, 100, seed)
        res = pythagorean_residuals(fam, M1, probes if fam.d > 1 else probes[:, 0])
        return res.min() >= -PYTHAGORAS_TOL, f"min residual {res.min():.3e} over 100 probes"

    return fn


def _monotone(fam, lo, hi, n):
    def fn():
        ev = grow_surround_1d(fam, lo, hi, n)
        viol = monotonicity_scan(fam, lo, hi, ev.meta["w"], n=n)
        return not viol, f"{len(viol)} violations on 200-point grids"

    return fn


def _balance(fam, lo, hi, n):
    def fn():
        ev = grow_surround_1d(fam, lo, hi, n)
        r = ev.meta["balance_residual"]
        return r < BALANCE_TOL, f"w = {ev.meta['w']:.12g}, residual {r:.2e}"

    return fn


def _bound(rep_fn):
    def fn():
        rep = rep_fn()
        return rep.valid, (
            f"oracle {rep.oracle_prob:.6g} (se {rep.oracle_se:.2g}, {rep.oracle_kind}) "
            f"vs bound {rep.bound:.6g}"
        )

    return fn


def default_suite(seed: int = 0, mc_samples: int = 1_000_000) -> list[Check]:
    """Property checks on the shipped reference configurations."""
    g1, g2 = gaussian_location(1), gaussian_location(2)
    bern = scaled_bernoulli(0.3)
    pois = poisson(2.0)
    c = bernoulli_to_mean(0.3, 0.5)
    kl_ball = SurroundKLBallComplement(0.5)
    bern_ball = SurroundKLBallComplement(0.1)
    mle = PartitionSpec("radial", "mle")
    cfg = SampleConfig(1, seed, mc_samples)

    def sc(n):
        return SampleConfig(n, seed, mc_samples)

    checks = [
        ("family-invariants", lambda: (all(f.validate() is None for f in (g1, g2, bern, pois)),
                                       "gaussian(1), gaussian(2), scaled_bernoulli(0.3), poisson(2)")),
        ("projection/gaussian-halfspace", lambda: (
            np.allclose(info_project_convex(g2, HalfSpace([1, 0], 2)).mu_star, [2, 0], atol=1e-8),
            "mu_star = (2, 0)")),
        ("evalue/convex-gaussian-d2", lambda: _normalisation(grow_convex(g2, HalfSpace([1, 0], 2), 1), cfg)()),
        ("evalue/convex-bernoulli-n30", lambda: _normalisation(grow_convex(bern, Interval1D(c), 30), cfg)()),
        ("evalue/convex-poisson-n5", lambda: _normalisation(grow_convex(pois, Interval1D(1.0), 5), cfg)()),
        ("evalue/surround-gaussian", lambda: _normalisation(grow_surround_1d(g1, -1, 1, 1), cfg)()),
        ("evalue/surround-bernoulli-n10", lambda: _normalisation(grow_surround_1d(bern, -0.8, 1.0, 10), cfg)()),
        ("evalue/nml-gaussian-d1", lambda: _normalisation(nml_evariable(g1, mle, kl_ball, 16), cfg)()),
        ("evalue/nml-gaussian-d2", lambda: _normalisation(nml_evariable(g2, mle, kl_ball, 16), cfg)()),
        ("evalue/nml-bernoulli-n20", lambda: _normalisation(nml_evariable(bern, mle, bern_ball, 20), cfg)()),
        ("pythagoras/gaussian-halfspace", _pythagoras(g2, HalfSpace([1, 0], 2), seed)),
        ("pythagoras/bernoulli-interval", _pythagoras(bern, Interval1D(c), seed)),
        ("balance/gaussian(-1,2)", _balance(g1, -1.0, 2.0, 1)),
        ("monotone/gaussian(-1,1)", _monotone(g1, -1.0, 1.0, 1)),
        ("monotone/bernoulli(-0.8,1)", _monotone(bern, -0.8, 1.0, 10)),
        ("bound/csc-convex-bernoulli-n30", _bound(lambda: csc_convex_bound(bern, Interval1D(c), 30, sc(30)))),
        ("bound/csc-convex-gaussian-n1", _bound(lambda: csc_convex_bound(g1, Interval1D(1.0), 1, sc(1)))),
        ("bound/nml-gaussian-d1-n16", _bound(lambda: csc_surround_bound(g1, kl_ball, mle, 16, sc(16)))),
        ("bound/nml-gaussian-d2-n16", _bound(lambda: csc_surround_bound(g2, kl_ball, mle, 16, sc(16)))),
        ("bound/nml-bernoulli-n20", _bound(lambda: csc_surround_bound(bern, bern_ball, mle, 20, sc(20)))),
    ]
    return [run_check(name, fn) for name, fn in checks]


def config_checks(spec) -> list[Check]:
    """Checks applicable to one resolved config run."""
    from .runner import family_of, meanset_of, partition_of, sample_of

    out = []
    fam_box: dict = {}

    def build():
        fam_box["fam"] = family_of(spec)
        return True, f"{spec.family} satisfies the construction invariants"

    out.append(run_check("family-invariants", build))
    if "fam" not in fam_box:
        return out
    fam = fam_box["fam"]
    M1 = meanset_of(spec)
    n = spec.get("n", 1)
    cfg = sample_of(spec, n)
    if M1 is None:
        return out
    if M1.convex:
        out.append(run_check("evalue/convex", lambda: _normalisation(grow_convex(fam, M1, n), cfg)()))
        out.append(run_check("pythagoras", _pythagoras(fam, M1, spec.get("seed", 0))))
        out.append(run_check("bound/csc-convex", _bound(lambda: csc_convex_bound(fam, M1, n, cfg))))
        return out
    part = partition_of(spec)
    if fam.d == 1:
        lo, hi = M1.boundary_points_1d(fam)
        out.append(run_check("balance", _balance(fam, lo, hi, n)))
        out.append(run_check("monotone", _monotone(fam, lo, hi, n)))
        out.append(run_check("evalue/surround", lambda: _normalisation(grow_surround_1d(fam, lo, hi, n), cfg)()))
    out.append(run_check("evalue/nml", lambda: _normalisation(nml_evariable(fam, part, M1, n), cfg)()))
    out.append(run_check("bound/nml", _bound(lambda: csc_surround_bound(fam, M1, part, n, cfg))))
    return out


SUITES = {"default": default_suite}
