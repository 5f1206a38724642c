"""Turns resolved config runs into CSV rows."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .config import RunSpec
from .csc_convex import BoundReport, csc_convex_bound
from .evariable import null_expectation
from .expfam import FamilySpec, SampleConfig, build_family, kl
from .meansets import MeanSet, meanset_from_config
from .nml import (
    PartitionSpec,
    compare_partitions,
    csc_surround_bound,
    grow_sandwich,
    lower_divergence,
    regret_scan,
)
from .projection import grow_convex
from .surround1d import grow_surround_1d

COLUMNS = (
    "family",
    "d",
    "mode",
    "meanset",
    "partition",
    "estimator",
    "n",
    "D_lower",
    "mmreg",
    "log_bound",
    "bound",
    "oracle_prob",
    "oracle_se",
    "oracle_kind",
    "extra_json",
)


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    return repr(obj)


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    return str(value)


@dataclass
class RunOutput:
    rows: list = field(default_factory=list)
    falsified: list = field(default_factory=list)  # descriptions of failed invariants
    plot: Optional[dict] = None


def family_of(spec: RunSpec) -> FamilySpec:
    params = {k: v for k, v in spec.family.items() if k != "name"}
    return build_family(spec.family["name"], **params)


def meanset_of(spec: RunSpec) -> Optional[MeanSet]:
    return meanset_from_config(spec.meanset) if spec.meanset is not None else None


def partition_of(spec: RunSpec) -> PartitionSpec:
    return PartitionSpec(
        kind=spec.get("partition", "radial"),
        estimator=spec.get("estimator", "mle"),
        corners=spec.get("corners"),
    )


def sample_of(spec: RunSpec, n: int) -> SampleConfig:
    return SampleConfig(n=n, seed=spec.get("seed", 0), mc_samples=spec.get("mc_samples", 1_000_000))


def _row(spec: RunSpec, fam: FamilySpec, extra: Optional[dict] = None, **cols) -> dict:
    row = {c: None for c in COLUMNS}
    row.update(family=fam.name, d=fam.d, mode=spec.mode, oracle_kind="none")
    row.update(cols)
    payload = {"config": spec.echo(), **(extra or {})}
    row["extra_json"] = json.dumps(payload, sort_keys=True, default=_json_default)
    return row


def _report_row(spec: RunSpec, fam: FamilySpec, rep: BoundReport, extra: Optional[dict] = None) -> dict:
    payload = {**rep.extra, **(extra or {})}
    if rep.oracle_kind != "none":
        payload["bound_valid"] = rep.valid
    return _row(
        spec,
        fam,
        payload,
        meanset=rep.meanset,
        partition=rep.partition or None,
        estimator=rep.estimator or None,
        n=rep.n,
        D_lower=rep.D_lower,
        mmreg=rep.regret if rep.partition else None,
        log_bound=rep.log_bound,
        bound=rep.bound,
        oracle_prob=rep.oracle_prob,
        oracle_se=rep.oracle_se,
        oracle_kind=rep.oracle_kind,
    )


def execute(spec: RunSpec) -> RunOutput:
    """Run one resolved config entry."""
    out = RunOutput()
    mode = spec.mode
    n = spec.get("n")

    if mode == "verify":
        from .verify import config_checks

        for chk in config_checks(spec):
            row = {c: None for c in COLUMNS}
            row.update(family=spec.family["name"], d=spec.family.get("d", 1), mode=mode,
                       meanset=meanset_of(spec).label() if spec.meanset else None, n=n,
                       oracle_kind="none")
            payload = {"config": spec.echo(), "property": chk.name, "passed": chk.passed,
                       "detail": chk.detail}
            row["extra_json"] = json.dumps(payload, sort_keys=True, default=_json_default)
            out.rows.append(row)
            if not chk.passed:
                out.falsified.append(f"{chk.name}: {chk.detail}")
        return out

    fam = family_of(spec)
    M1 = meanset_of(spec)

    if mode == "grow-convex":
        ev = grow_convex(fam, M1, n)
        ne = null_expectation(ev)
        D = ev.grow_value
        out.rows.append(_row(
            spec, fam,
            {"mu_star": ev.meta["mu_star"], "grow_value": D, "null_expectation": ne.value,
             "null_expectation_kind": ne.kind},
            meanset=M1.label(), n=n, D_lower=D, log_bound=-D, bound=math.exp(-D),
        ))
        return out

    if mode == "csc-convex":
        rep = csc_convex_bound(fam, M1, n, sample_of(spec, n), with_oracle=spec.get("oracle", True))
        out.rows.append(_report_row(spec, fam, rep))
        if not rep.valid:
            out.falsified.append(f"csc-convex n={n}: oracle {rep.oracle_prob} exceeds bound {rep.bound}")
        return out

    if mode == "grow-surround-1d":
        if spec.get("mu_minus") is not None and spec.get("mu_plus") is not None:
            lo, hi = spec.get("mu_minus"), spec.get("mu_plus")
        else:
            lo, hi = M1.boundary_points_1d(fam)
        ev = grow_surround_1d(fam, lo, hi, n)
        ne = null_expectation(ev)
        D = n * float(min(kl(fam, lo), kl(fam, hi)))
        out.rows.append(_row(
            spec, fam,
            {"mu_minus": lo, "mu_plus": hi, "null_expectation": ne.value, **ev.meta},
            meanset=M1.label() if M1 else f"surround_interval(mu_minus={lo},mu_plus={hi})",
            n=n, D_lower=D,
        ))
        return out

    partition = partition_of(spec)
    if mode == "nml-bound":
        rep = csc_surround_bound(fam, M1, partition, n, sample_of(spec, n),
                                 with_oracle=spec.get("oracle", True))
        out.rows.append(_report_row(spec, fam, rep))
        if not rep.valid:
            out.falsified.append(f"nml-bound n={n}: oracle {rep.oracle_prob} exceeds bound {rep.bound}")
        out.plot = {"kind": "bound", "n": n, "log_bound": rep.log_bound,
                    "oracle": rep.oracle_prob}
        return out

    if mode == "regret-scan":
        M1.check_nice(fam)
        scan = regret_scan(fam, M1, partition, spec.get("n_list"))
        for i, (nn, mm) in enumerate(scan.rows()):
            D = lower_divergence(fam, partition, M1, nn)
            extra, cols = {}, {}
            if spec.get("oracle", False):
                rep = csc_surround_bound(fam, M1, partition, nn, sample_of(spec, nn), stream=i)
                cols = {"oracle_prob": rep.oracle_prob, "oracle_se": rep.oracle_se,
                        "oracle_kind": rep.oracle_kind}
                extra["bound_valid"] = rep.valid
                if not rep.valid:
                    out.falsified.append(f"regret-scan n={nn}: oracle exceeds bound")
            out.rows.append(_row(spec, fam, extra, meanset=M1.label(), partition=partition.label(),
                                 estimator=partition.estimator, n=nn, D_lower=D, mmreg=mm,
                                 log_bound=mm - D, bound=math.exp(mm - D), **cols))
        out.rows.append(_row(spec, fam, {"summary": "least-squares fit of mmreg against log n",
                                         "slope": scan.slope, "intercept": scan.intercept},
                             meanset=M1.label(), partition=partition.label(),
                             estimator=partition.estimator))
        out.plot = {"kind": "regret", "ns": scan.ns.tolist(), "mmreg": scan.mmreg.tolist(),
                    "slope": scan.slope, "intercept": scan.intercept}
        return out

    if mode == "grow-sandwich":
        sw = grow_sandwich(fam, M1, partition, n)
        out.rows.append(_row(spec, fam, {"lower": sw.lower, "upper": sw.upper, "gap": sw.gap,
                                         "gap_over_log_n": sw.gap / math.log(n) if n > 1 else None},
                             meanset=M1.label(), partition=partition.label(),
                             estimator=partition.estimator, n=n, D_lower=sw.upper, mmreg=sw.mmreg,
                             log_bound=sw.mmreg - sw.upper, bound=math.exp(sw.mmreg - sw.upper)))
        return out

    if mode == "compare-partitions":
        rows = compare_partitions(fam, M1, spec.get("k_list"), n, spec.get("estimator", "radial"))
        cont = rows[-1]
        best = all(cont.log_bound < r.log_bound for r in rows[:-1])
        for r in rows:
            label = "radial" if r.k is None else f"cones(k={r.k})"
            out.rows.append(_row(spec, fam, {"k": r.k, "continuous_best": best},
                                 meanset=M1.label(), partition=label,
                                 estimator=spec.get("estimator", "radial"), n=n, D_lower=r.D_lower,
                                 mmreg=r.mmreg, log_bound=r.log_bound, bound=math.exp(r.log_bound)))
        return out

    raise ValueError(f"unknown mode {mode!r}")
