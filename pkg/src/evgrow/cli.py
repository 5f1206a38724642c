"""Command-line front end.

    evgrow run <config.toml>         run one experiment, write CSV (and SVG)
    evgrow verify [--suite default]  run the property suite
    evgrow families                  list built-in families

Exit codes: 0 success, 1 configuration error, 2 a bound or property was
falsified, 3 a numerical routine failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import os
import sys
from typing import Optional, Sequence

from .config import ExperimentConfig, load_config
from .errors import ConfigError
from .expfam import FAMILIES
from .runner import COLUMNS, RunOutput, execute, format_cell
from .svg import line_plot

EXIT_OK, EXIT_CONFIG, EXIT_FALSIFIED, EXIT_DOWNSTREAM = 0, 1, 2, 3


def render_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COLUMNS)
    for row in rows:
        writer.writerow([format_cell(row[c]) for c in COLUMNS])
    return buf.getvalue()


def render_svg(cfg: ExperimentConfig, outputs: list[RunOutput]) -> Optional[str]:
    plots = [o.plot for o in outputs if o.plot]
    if not plots:
        rows = [r for o in outputs for r in o.rows if r.get("log_bound") is not None and r.get("n")]
        if not rows:
            return None
        ns = [r["n"] for r in rows]
        series = [("log bound", ns, [r["log_bound"] for r in rows])]
        return line_plot(series, "n", "nats", f"{cfg.mode}: log bound vs n", log_x=True)
    if plots[0]["kind"] == "regret":
        p = plots[0]
        fit = [p["intercept"] + p["slope"] * math.log(n) for n in p["ns"]]
        return line_plot(
            [("mmreg", p["ns"], p["mmreg"]), ("least-squares fit", p["ns"], fit)],
            "n (log scale)",
            "mmreg (nats)",
            "minimax regret vs log n",
            log_x=True,
            annotation=f"slope = {p['slope']:.4f}",
        )
    ns = [p["n"] for p in plots]
    series = [("log bound", ns, [p["log_bound"] for p in plots])]
    if any(p["oracle"] is not None for p in plots):
        series.append(
            ("log oracle", ns, [math.log(p["oracle"]) if p["oracle"] else None for p in plots])
        )
    return line_plot(series, "n (log scale)", "nats", "bound and oracle vs n", log_x=True)


def cmd_run(path: str) -> int:
    try:
        cfg = load_config(path)
        runs = cfg.runs()
    except ConfigError as exc:
        print(f"evgrow: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    outputs = []
    for i, spec in enumerate(runs):
        try:
            outputs.append(execute(spec))
        except ConfigError as exc:
            print(f"evgrow: config error in run {i}: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except Exception as exc:  # noqa: BLE001 - mapped to an exit code
            where = getattr(exc, "__module__", None) or type(exc).__module__
            print(f"evgrow: {cfg.mode} run {i} failed ({type(exc).__name__} from {where}): {exc}",
                  file=sys.stderr)
            return EXIT_DOWNSTREAM
    # rows are buffered and written in config order only after every run succeeded
    text = render_csv([r for o in outputs for r in o.rows])
    if cfg.csv:
        with open(cfg.csv, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if cfg.svg:
        svg = render_svg(cfg, outputs)
        if svg is not None:
            with open(cfg.svg, "w", encoding="utf-8") as fh:
                fh.write(svg)
    falsified = [f for o in outputs for f in o.falsified]
    for msg in falsified:
        print(f"evgrow: FALSIFIED {msg}", file=sys.stderr)
    return EXIT_FALSIFIED if falsified else EXIT_OK


def cmd_verify(suite: str, seed: int, mc_samples: int, config: Optional[str]) -> int:
    from .verify import SUITES

    if config is not None:
        return cmd_run_verify_config(config)
    if suite not in SUITES:
        print(f"evgrow: unknown suite {suite!r}; choose from {sorted(SUITES)}", file=sys.stderr)
        return EXIT_CONFIG
    seed_env = os.environ.get("EVGROW_SEED")
    if seed_env is not None:
        try:
            seed = int(seed_env)
        except ValueError:
            print(f"evgrow: EVGROW_SEED must be an integer, got {seed_env!r}", file=sys.stderr)
            return EXIT_CONFIG
    checks = SUITES[suite](seed=seed, mc_samples=mc_samples)
    for chk in checks:
        print(chk.line())
    failed = sum(not c.passed for c in checks)
    print(f"verify: {len(checks) - failed} passed, {failed} failed")
    return EXIT_FALSIFIED if failed else EXIT_OK


def cmd_run_verify_config(path: str) -> int:
    from .verify import config_checks

    try:
        cfg = load_config(path)
        runs = cfg.runs()
    except ConfigError as exc:
        print(f"evgrow: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    failed = total = 0
    for spec in runs:
        for chk in config_checks(spec):
            print(chk.line())
            total += 1
            failed += not chk.passed
    print(f"verify: {total - failed} passed, {failed} failed")
    return EXIT_FALSIFIED if failed else EXIT_OK


def cmd_families() -> int:
    for name, (_, doc) in FAMILIES.items():
        print(f"{name}: {doc}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="evgrow", description="GROW e-variables and CSC bounds")
    sub = parser.add_subparsers(dest="command", required=True)
    p_run = sub.add_parser("run", help="run an experiment config")
    p_run.add_argument("config")
    p_ver = sub.add_parser("verify", help="run the property suite")
    p_ver.add_argument("--suite", default="default")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--mc-samples", type=int, default=1_000_000)
    p_ver.add_argument("--config", default=None, help="check one experiment config instead")
    sub.add_parser("families", help="list built-in families")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return cmd_run(args.config)
    if args.command == "verify":
        return cmd_verify(args.suite, args.seed, args.mc_samples, args.config)
    return cmd_families()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
