import json
import subprocess
import sys

import pytest

from quantcs.cli import main


def tiny_plan_json():
    return json.dumps(
        {
            "family": "one_bit_gaussian",
            "model": {"structure": "sparse", "n": 12, "k": 3, "alpha": 1.0, "beta": 1.0},
            "m_grid": [30, 60],
            "trials": 2,
            "iterations": 10,
            "master_seed": 5,
        }
    )


class TestRun:
    def test_writes_csv_and_svg(self, tmp_path, capsys):
        config = tmp_path / "plan.json"
        config.write_text(tiny_plan_json())
        out = tmp_path / "cells.csv"
        svg = tmp_path / "plot.svg"
        rc = main(["run", "--config", str(config), "--out", str(out), "--svg", str(svg)])
        assert rc == 0
        assert "wrote 2 cells (4 trials)" in capsys.readouterr().out
        header = out.read_text().split("\n")[0]
        assert header == "family,n,k_or_r,m,L,delta,lambda,zeta,trials,mean_err,stderr,slope_group"
        assert svg.read_text().startswith("<svg ")

    def test_rerun_is_byte_identical(self, tmp_path):
        config = tmp_path / "plan.json"
        config.write_text(tiny_plan_json())
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["run", "--config", str(config), "--out", str(a)]) == 0
        assert main(["run", "--config", str(config), "--out", str(b), "--threads", "3"]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_bad_config_exits_2(self, tmp_path, capsys):
        config = tmp_path / "plan.json"
        config.write_text('{"family": "one_bit_gaussian", "m_grid": [30], "bogus": 1}')
        rc = main(["run", "--config", str(config), "--out", str(tmp_path / "x.csv")])
        assert rc == 2
        assert "error:" in capsys.readouterr().err

    def test_missing_config_file_exits_2(self, tmp_path, capsys):
        rc = main(["run", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path / "x.csv")])
        assert rc == 2
        assert "error:" in capsys.readouterr().err


class TestRecover:
    def _lines(self, capsys):
        return capsys.readouterr().out.strip().split("\n")

    def test_one_bit_gaussian(self, capsys):
        rc = main(["recover", "--family", "one_bit_gaussian", "--n", "20", "--k", "1", "--m", "80", "--iters", "10"])
        assert rc == 0
        lines = self._lines(capsys)
        assert lines[0] == "iter,error"
        assert len(lines) == 12  # header + 10 iterates + final
        assert lines[1].startswith("1,")
        tag, value = lines[-1].split(",")
        assert tag == "final"
        assert 0.0 <= float(value) <= 2.0

    def test_final_matches_last_iterate(self, capsys):
        rc = main(["recover", "--family", "one_bit_gaussian", "--n", "20", "--k", "1", "--m", "80", "--iters", "5"])
        assert rc == 0
        lines = self._lines(capsys)
        assert float(lines[-2].split(",")[1]) == pytest.approx(float(lines[-1].split(",")[1]), abs=1e-12)

    def test_dithered_one_bit_needs_lambda(self, capsys):
        args = ["recover", "--family", "dithered_one_bit", "--n", "20", "--k", "1", "--m", "80", "--iters", "5"]
        assert main(args) == 2
        assert "error:" in capsys.readouterr().err
        assert main(args + ["--lambda", "1.5"]) == 0

    def test_dithered_multi_bit(self, capsys):
        rc = main(
            ["recover", "--family", "dithered_multi_bit", "--n", "20", "--k", "1", "--m", "80", "--L", "4", "--iters", "5"]
        )
        assert rc == 0
        assert self._lines(capsys)[-1].startswith("final,")

    def test_deterministic_for_fixed_seed(self, capsys):
        args = ["recover", "--family", "one_bit_gaussian", "--n", "15", "--k", "1", "--m", "40", "--iters", "5", "--seed", "3"]
        assert main(args) == 0
        first = capsys.readouterr().out
        assert main(args) == 0
        assert capsys.readouterr().out == first


class TestVerify:
    def test_single_suite_passes(self, capsys):
        rc = main(["verify", "--suite", "quantizer"])
        out = capsys.readouterr().out
        assert rc == 0
        assert "[pass] quantizer." in out
        assert "all checks passed" in out
        assert "[FAIL]" not in out

    def test_unknown_suite_rejected(self):
        with pytest.raises(SystemExit):
            main(["verify", "--suite", "nope"])


class TestEntryPoint:
    def test_console_script(self):
        proc = subprocess.run(
            ["quantcs", "recover", "--family", "one_bit_gaussian", "--n", "10", "--k", "1", "--m", "30", "--iters", "3"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("iter,error")

    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "quantcs", "verify", "--suite", "projection"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "all checks passed" in proc.stdout
