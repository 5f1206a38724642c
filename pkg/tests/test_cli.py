import csv
import io
import json
import math
import shutil
from pathlib import Path

import numpy as np
import pytest

from evgrow.cli import EXIT_CONFIG, EXIT_DOWNSTREAM, EXIT_FALSIFIED, EXIT_OK, main
from evgrow.expfam import FAMILIES

CONFIGS = Path(__file__).resolve().parents[1] / "configs"
HEADER = ("family,d,mode,meanset,partition,estimator,n,D_lower,mmreg,log_bound,bound,"
          "oracle_prob,oracle_se,oracle_kind,extra_json")

SMALL_BOUND = """
mode = "nml-bound"
partition = "radial"
estimator = "mle"
seed = 5

[family]
name = "gaussian"
d = 1

[meanset]
variant = "kl_ball"
D1 = 0.5

[sample]
mc_samples = 20000

[output]
csv = "out.csv"

[[sweep]]
n = 16

[[sweep]]
n = 4

[[sweep]]
n = 8
"""


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def write(tmp_path, text, name="cfg.toml"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestRun:
    def test_csc_convex_gaussian(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert main(["run", str(CONFIGS / "csc_convex_gaussian.toml")]) == EXIT_OK
        text = (tmp_path / "csc_convex_gaussian.csv").read_text()
        assert text.splitlines()[0] == HEADER
        (row,) = rows_of(text)
        np.testing.assert_allclose(float(row["bound"]), math.exp(-0.5), rtol=1e-15)
        assert row["bound"].startswith("0.60653")
        assert float(row["oracle_prob"]) <= float(row["bound"])

    def test_regret_scan_summary_slope(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert main(["run", str(CONFIGS / "regret_scan_circle.toml")]) == EXIT_OK
        rows = rows_of((tmp_path / "regret_scan_circle.csv").read_text())
        assert [int(r["n"]) for r in rows[:-1]] == [16 * 2**k for k in range(9)]
        summary = json.loads(rows[-1]["extra_json"])
        assert abs(summary["slope"] - 0.5) < 0.05
        svg = (tmp_path / "regret_scan_circle.svg").read_text()
        assert svg.startswith("<svg") or "<svg" in svg[:200]
        assert f"slope = {summary['slope']:.4f}" in svg

    def test_sweep_rows_in_config_order(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        assert main(["run", write(tmp_path, SMALL_BOUND)]) == EXIT_OK
        rows = rows_of((tmp_path / "out.csv").read_text())
        assert [r["n"] for r in rows] == ["16", "4", "8"]

    def test_every_row_echoes_config(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        main(["run", write(tmp_path, SMALL_BOUND)])
        for r in rows_of((tmp_path / "out.csv").read_text()):
            cfg = json.loads(r["extra_json"])["config"]
            assert cfg["family"] == {"name": "gaussian", "d": 1}
            assert cfg["n"] == int(r["n"])
            assert cfg["mc_samples"] == 20000

    def test_byte_identical_reruns(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        cfg = write(tmp_path, SMALL_BOUND)
        main(["run", cfg])
        first = (tmp_path / "out.csv").read_bytes()
        main(["run", cfg])
        assert (tmp_path / "out.csv").read_bytes() == first

    def test_env_seed_overrides(self, tmp_path, monkeypatch):
        monkeypatch.chdir(tmp_path)
        cfg = write(tmp_path, SMALL_BOUND)
        main(["run", cfg])
        base = rows_of((tmp_path / "out.csv").read_text())
        monkeypatch.setenv("EVGROW_SEED", "99")
        main(["run", cfg])
        other = rows_of((tmp_path / "out.csv").read_text())
        assert json.loads(other[0]["extra_json"])["config"]["seed"] == 99
        assert [r["oracle_prob"] for r in base] != [r["oracle_prob"] for r in other]
        assert [r["bound"] for r in base] == [r["bound"] for r in other]

    def test_csv_to_stdout_without_path(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        shutil.copy(CONFIGS / "grow_convex_halfspace.toml", tmp_path)
        assert main(["run", "grow_convex_halfspace.toml"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.splitlines()[0] == HEADER
        (row,) = rows_of(out)
        np.testing.assert_allclose(float(row["D_lower"]), 2.0, rtol=1e-12)


class TestExitCodes:
    def test_missing_family(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        text = SMALL_BOUND.replace('[family]\nname = "gaussian"\nd = 1\n', "")
        assert main(["run", write(tmp_path, text)]) == EXIT_CONFIG
        captured = capsys.readouterr()
        assert "family" in captured.err
        assert captured.out == ""
        assert not (tmp_path / "out.csv").exists()

    @pytest.mark.parametrize(
        "old, new, key",
        [('mode = "nml-bound"', 'mode = "fly"', "mode"),
         ("D1 = 0.5", "D1 = 0.5\nradius = 2", "radius"),
         ("mc_samples = 20000", 'mc_samples = "many"', "mc_samples")],
    )
    def test_diagnostics_name_the_key(self, tmp_path, monkeypatch, capsys, old, new, key):
        monkeypatch.chdir(tmp_path)
        assert main(["run", write(tmp_path, SMALL_BOUND.replace(old, new))]) == EXIT_CONFIG
        assert key in capsys.readouterr().err

    def test_unsorted_n_list(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        text = (CONFIGS / "regret_scan_circle.toml").read_text().replace("[16, 32,", "[32, 16,")
        assert main(["run", write(tmp_path, text)]) == EXIT_CONFIG
        assert "n_list" in capsys.readouterr().err

    def test_unreadable_file(self, tmp_path):
        assert main(["run", str(tmp_path / "absent.toml")]) == EXIT_CONFIG

    def test_corrupted_family_falsified(self, tmp_path, monkeypatch, capsys):
        monkeypatch.chdir(tmp_path)
        assert main(["run", str(CONFIGS / "corrupted_family.toml")]) == EXIT_FALSIFIED
        captured = capsys.readouterr()
        assert "FamilyInvariantError" in captured.err
        (row,) = rows_of(captured.out)
        assert json.loads(row["extra_json"])["passed"] is False

    def test_downstream_failure(self, tmp_path, monkeypatch, capsys):
        # a Poisson mean below -lambda lies outside the mean space
        monkeypatch.chdir(tmp_path)
        text = """
mode = "grow-convex"
[family]
name = "poisson"
lam = 2.0
[meanset]
variant = "interval"
lower = -5.0
upper = -3.0
[sample]
n = 1
"""
        assert main(["run", write(tmp_path, text)]) == EXIT_DOWNSTREAM
        captured = capsys.readouterr()
        assert "failed" in captured.err and captured.out == ""


class TestOtherCommands:
    def test_families(self, capsys):
        assert main(["families"]) == EXIT_OK
        out = capsys.readouterr().out
        for name in FAMILIES:
            assert out.count(f"{name}:") == 1

    def test_verify_config(self, capsys):
        assert main(["verify", "--config", str(CONFIGS / "verify_bernoulli.toml")]) == EXIT_OK
        lines = capsys.readouterr().out.splitlines()
        assert lines[-1].endswith("0 failed")
        assert all(ln.startswith("PASS ") for ln in lines[:-1])

    def test_verify_corrupted_config(self, capsys):
        assert main(["verify", "--config", str(CONFIGS / "corrupted_family.toml")]) == EXIT_FALSIFIED
        assert "FAIL family-invariants" in capsys.readouterr().out

    def test_verify_unknown_suite(self):
        assert main(["verify", "--suite", "nope"]) == EXIT_CONFIG

    def test_every_shipped_config_parses(self):
        from evgrow.config import load_config

        for path in sorted(CONFIGS.glob("*.toml")):
            assert load_config(str(path)).runs()
