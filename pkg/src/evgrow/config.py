"""Experiment configuration files (TOML).

One experiment per file::

    mode = "nml-bound"
    seed = 7

    [family]
    name = "gaussian"
    d = 1

    [meanset]
    variant = "kl_ball"
    D1 = 0.5

    [sample]
    n = 16
    mc_samples = 1000000

    partition = "radial"      # or "cones" with corners = k
    estimator = "mle"

    [output]
    csv = "bound.csv"
    svg = "bound.svg"

    [[sweep]]
    n = 4

Flat keys may also sit at the top level (``n``, ``n_list``, ``mu_minus``,
...). Each ``[[sweep]]`` table overrides flat keys and yields its own run.
"""

from __future__ import annotations

import copy
import inspect
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Optional

from .errors import ConfigError
from .expfam import FAMILIES
from .meansets import VARIANT_KEYS

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover - exercised on 3.10
    import tomli as tomllib

MODES = (
    "grow-convex",
    "csc-convex",
    "grow-surround-1d",
    "nml-bound",
    "regret-scan",
    "grow-sandwich",
    "compare-partitions",
    "verify",
)

FLAT_KEYS = {
    "n": int,
    "n_list": list,
    "seed": int,
    "mc_samples": int,
    "mu_minus": float,
    "mu_plus": float,
    "partition": str,
    "estimator": str,
    "corners": int,
    "k_list": list,
    "oracle": bool,
}

_NEEDS_N = {"grow-convex", "csc-convex", "grow-surround-1d", "nml-bound", "grow-sandwich", "compare-partitions"}
_SURROUNDING = {"surround_interval", "kl_ball", "radial"}
_CONVEX = {"halfspace", "interval", "polytope"}


@dataclass
class RunSpec:
    """One fully resolved run (a config, or one of its sweep entries)."""

    mode: str
    family: dict
    meanset: Optional[dict]
    params: dict

    def get(self, key: str, default: Any = None) -> Any:
        return self.params.get(key, default)

    def echo(self) -> dict:
        out = {"mode": self.mode, "family": self.family, **self.params}
        if self.meanset is not None:
            out["meanset"] = self.meanset
        return out


@dataclass
class ExperimentConfig:
    mode: str
    family: dict
    meanset: Optional[dict]
    params: dict
    sweep: list = field(default_factory=list)
    csv: Optional[str] = None
    svg: Optional[str] = None

    def runs(self) -> list[RunSpec]:
        entries = self.sweep or [{}]
        out = []
        for i, entry in enumerate(entries):
            params = {**self.params, **entry}
            spec = RunSpec(self.mode, copy.deepcopy(self.family), copy.deepcopy(self.meanset), params)
            _validate_run(spec, where=f"sweep[{i}]" if self.sweep else "config")
            out.append(spec)
        return out


def _check_type(key: str, value: Any, where: str) -> Any:
    kind = FLAT_KEYS[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(f"{where}: key '{key}' must be a number, got {value!r}")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(f"{where}: key '{key}' must be an integer, got {value!r}")
        return value
    if not isinstance(value, kind):
        raise ConfigError(f"{where}: key '{key}' must be a {kind.__name__}, got {value!r}")
    return value


def _validate_run(spec: RunSpec, where: str) -> None:
    mode, p = spec.mode, spec.params
    if mode in _NEEDS_N and "n" not in p:
        raise ConfigError(f"{where}: mode '{mode}' needs key 'n'")
    if "n" in p and p["n"] < 1:
        raise ConfigError(f"{where}: key 'n' must be >= 1")
    if "mc_samples" in p and p["mc_samples"] < 1:
        raise ConfigError(f"{where}: key 'mc_samples' must be >= 1")
    variant = spec.meanset.get("variant") if spec.meanset else None
    if mode in ("grow-convex", "csc-convex") and variant not in _CONVEX:
        raise ConfigError(f"{where}: mode '{mode}' needs a convex [meanset] ({sorted(_CONVEX)})")
    if mode == "grow-surround-1d":
        has_pair = "mu_minus" in p and "mu_plus" in p
        if not has_pair and variant not in _SURROUNDING:
            raise ConfigError(f"{where}: mode '{mode}' needs 'mu_minus' and 'mu_plus' or a surrounding [meanset]")
    if mode in ("nml-bound", "regret-scan") and variant not in _SURROUNDING:
        raise ConfigError(f"{where}: mode '{mode}' needs a surrounding [meanset] ({sorted(_SURROUNDING)})")
    if mode in ("grow-sandwich", "compare-partitions") and variant != "kl_ball":
        raise ConfigError(f"{where}: mode '{mode}' needs [meanset] variant 'kl_ball'")
    if mode == "regret-scan":
        ns = p.get("n_list")
        if not ns:
            raise ConfigError(f"{where}: mode 'regret-scan' needs key 'n_list'")
        if not all(isinstance(x, int) and not isinstance(x, bool) and x >= 1 for x in ns):
            raise ConfigError(f"{where}: 'n_list' must hold positive integers")
        if any(b <= a for a, b in zip(ns, ns[1:])) or len(ns) < 2:
            raise ConfigError(f"{where}: 'n_list' must be strictly increasing with >= 2 entries")
    if mode == "compare-partitions":
        ks = p.get("k_list")
        if not ks or not all(isinstance(k, int) and k >= 3 for k in ks):
            raise ConfigError(f"{where}: mode 'compare-partitions' needs 'k_list' of integers >= 3")
    if "partition" in p and p["partition"] not in ("cones", "radial", "points"):
        raise ConfigError(f"{where}: 'partition' must be \"cones\" or \"radial\"")
    if "estimator" in p and p["estimator"] not in ("mle", "radial"):
        raise ConfigError(f"{where}: 'estimator' must be \"mle\" or \"radial\"")
    if p.get("partition") == "cones" and mode != "compare-partitions" and "corners" not in p:
        raise ConfigError(f"{where}: partition 'cones' needs key 'corners'")


def parse_config(text: str, source: str = "<config>", env: Optional[dict] = None) -> ExperimentConfig:
    """Parse and validate a config; raises ConfigError with key/line diagnostics."""
    env = os.environ if env is None else env
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{source}: {exc}") from None

    mode = raw.get("mode")
    if mode not in MODES:
        raise ConfigError(f"{source}: key 'mode' must be one of {list(MODES)}, got {mode!r}")
    family = raw.get("family")
    if not isinstance(family, dict) or "name" not in family:
        raise ConfigError(f"{source}: missing [family] table with a 'name' key")
    if family["name"] not in FAMILIES:
        raise ConfigError(f"{source}: [family] name must be one of {sorted(FAMILIES)}, got {family['name']!r}")
    allowed = set(inspect.signature(FAMILIES[family["name"]][0]).parameters)
    for key in family:
        if key != "name" and key not in allowed:
            raise ConfigError(f"{source}: unknown key '{key}' in [family] for {family['name']!r}")
    meanset = raw.get("meanset")
    if meanset is not None and (not isinstance(meanset, dict) or "variant" not in meanset):
        raise ConfigError(f"{source}: [meanset] needs a 'variant' key")
    if meanset is not None:
        variant = meanset["variant"]
        if variant not in VARIANT_KEYS:
            raise ConfigError(f"{source}: [meanset] variant must be one of {sorted(VARIANT_KEYS)}, got {variant!r}")
        for key in meanset:
            if key != "variant" and key not in VARIANT_KEYS[variant]:
                raise ConfigError(f"{source}: unknown key '{key}' in [meanset] for variant {variant!r}")

    params: dict = {}
    sample = raw.get("sample", {})
    if not isinstance(sample, dict):
        raise ConfigError(f"{source}: [sample] must be a table")
    known_tables = {"mode", "family", "meanset", "sample", "output", "sweep"}
    for block, where in ((sample, "[sample]"), (raw, "top level")):
        for key, value in block.items():
            if block is raw and key in known_tables:
                continue
            if key not in FLAT_KEYS:
                raise ConfigError(f"{source}: unknown key '{key}' at {where}")
            params[key] = _check_type(key, value, f"{source} {where}")

    sweep = raw.get("sweep", [])
    if not isinstance(sweep, list):
        raise ConfigError(f"{source}: 'sweep' must be an array of tables ([[sweep]])")
    checked_sweep = []
    for i, entry in enumerate(sweep):
        if not isinstance(entry, dict):
            raise ConfigError(f"{source}: sweep[{i}] must be a table")
        item = {}
        for key, value in entry.items():
            if key not in FLAT_KEYS:
                raise ConfigError(f"{source}: unknown key '{key}' in sweep[{i}]")
            item[key] = _check_type(key, value, f"{source} sweep[{i}]")
        checked_sweep.append(item)

    seed_env = env.get("EVGROW_SEED")
    if seed_env is not None:
        try:
            seed = int(seed_env)
        except ValueError:
            raise ConfigError(f"EVGROW_SEED must be an integer, got {seed_env!r}") from None
        params["seed"] = seed
        for item in checked_sweep:
            item.pop("seed", None)
    params.setdefault("seed", 0)
    if not 0 <= params["seed"] < 2**64:
        raise ConfigError(f"{source}: seed must be a 64-bit unsigned integer")

    output = raw.get("output", {})
    if not isinstance(output, dict):
        raise ConfigError(f"{source}: [output] must be a table")
    cfg = ExperimentConfig(
        mode=mode,
        family=dict(family),
        meanset=dict(meanset) if meanset is not None else None,
        params=params,
        sweep=checked_sweep,
        csv=output.get("csv"),
        svg=output.get("svg"),
    )
    cfg.runs()  # validates every resolved run up front
    return cfg


def load_config(path: str, env: Optional[dict] = None) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, source=path, env=env)

