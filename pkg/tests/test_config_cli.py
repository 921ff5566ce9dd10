import math
from pathlib import Path

import numpy as np
import pytest

from probewitness.cli import fmt, main
from probewitness.config import parse_grid, scenario_from_text, scenario_to_text
from probewitness.errors import ConfigError
from probewitness.thermo import fidelity_oscillator_closed_form

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

TLS_DECOUPLED = (CONFIGS / "tls_decoupled.cfg").read_text()
OSC = """beta = 1.0
system.kind = truncated_oscillator
system.omega = 1.0
system.n_sys = 5
apparatus.kind = boson_bath
apparatus.mode.1.omega = 1.0
apparatus.mode.1.g = 0.1
coupling.kind = dephasing
coupling.lambda_rule = sqrt_n
"""


def write(tmp_path, text, name="s.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def parse_run(text):
    return dict(line.split(" = ", 1) for line in text.splitlines())


class TestConfig:
    @pytest.mark.parametrize("path", sorted(CONFIGS.glob("*.cfg")), ids=lambda p: p.name)
    def test_round_trip(self, path):
        sc = scenario_from_text(path.read_text())
        text = scenario_to_text(sc)
        again = scenario_from_text(text)
        assert scenario_to_text(again) == text
        assert again.system == sc.system and again.apparatus == sc.apparatus and again.coupling == sc.coupling
        assert again.beta == sc.beta and again.options == sc.options
        assert {k: tuple(v) for k, v in again.sweeps.items()} == {k: tuple(v) for k, v in sc.sweeps.items()}

    def test_missing_beta(self):
        with pytest.raises(ConfigError, match="beta"):
            scenario_from_text(TLS_DECOUPLED.replace("beta = 1.0\n", ""))

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="system.omgea"):
            scenario_from_text(OSC + "system.omgea = 2\n")

    def test_duplicate_key(self):
        with pytest.raises(ConfigError):
            scenario_from_text(OSC + "beta = 2.0\n")

    def test_grids(self):
        assert parse_grid("sweep.lambda", "0:0.9:10") == pytest.approx(tuple(np.linspace(0, 0.9, 10)))
        assert parse_grid("sweep.lambda", "0.1, 0.3, 0.2") == (0.1, 0.3, 0.2)
        with pytest.raises(ConfigError):
            parse_grid("sweep.lambda", "0:1")
        for bad in ("", "0:1:0", "0.5:0.5:3", "0.2"):
            with pytest.raises(ConfigError, match="sweep.lambda"):
                scenario_from_text(OSC + f"sweep.lambda = {bad}\n")


class TestRun:
    def test_decoupled_tls(self, tmp_path, capsys):
        assert main(["run", write(tmp_path, TLS_DECOUPLED)]) == 0
        out = parse_run(capsys.readouterr().out)
        assert float(out["beta_eff"]) == 1.0 and float(out["fidelity"]) == 1.0
        assert float(out["delta_T"]) == 0.0

    def test_oscillator_fidelity_matches_closed_form(self, tmp_path, capsys):
        assert main(["run", write(tmp_path, OSC)]) == 0
        out = parse_run(capsys.readouterr().out)
        # lambda = eps = |g|^2/omega_1; the system is truncated at 5 levels, so compare against the
        # closed form restricted to the same levels
        assert float(out["beta_eff"]) == pytest.approx(0.99, abs=1e-10)
        lam, beta = 0.01, 1.0
        e = np.arange(5) + 0.5
        p = np.exp(-beta * e)
        q = p * np.exp(beta * lam * np.arange(5))
        truncated = np.sum(np.sqrt(p * q)) / math.sqrt(p.sum() * q.sum())
        assert abs(float(out["fidelity"]) - truncated) <= 1e-9

    def test_oscillator_fidelity_full_ladder(self, capsys):
        assert main(["run", str(CONFIGS / "fig3.cfg")]) == 0
        out = parse_run(capsys.readouterr().out)
        assert abs(float(out["fidelity"]) - fidelity_oscillator_closed_form(1.0, 1.0, 0.01)) <= 1e-9

    def test_missing_beta_exit_2(self, tmp_path, capsys):
        assert main(["run", write(tmp_path, OSC.replace("beta = 1.0\n", ""))]) == 2
        assert "beta" in capsys.readouterr().err

    def test_missing_file_exit_2(self, tmp_path):
        assert main(["run", str(tmp_path / "absent.cfg")]) == 2

    def test_cap_exit_4(self, tmp_path):
        assert main(["run", write(tmp_path, OSC + "options.dimension_cap = 10\n")]) == 4

    def test_truncation_gate_exit_3(self, tmp_path):
        assert main(["run", write(tmp_path, OSC + "apparatus.n_trunc = 6\n")]) == 3

    def test_out_file(self, tmp_path):
        out = tmp_path / "r.txt"
        assert main(["run", write(tmp_path, TLS_DECOUPLED), "--out", str(out)]) == 0
        assert out.read_bytes().startswith(b"beta = 1\n")


class TestSweep:
    def test_fig3a(self, capsys):
        assert main(["sweep", str(CONFIGS / "fig3.cfg"), "--axis", "lambda"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "axis_value,fidelity_closed,fidelity_series,abs_err"
        rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
        assert rows[0, 1] == 1.0
        assert np.all(np.diff(rows[:, 0]) > 0) and np.all(np.diff(rows[:, 1]) < 0)
        assert rows[:, 3].max() <= 1e-9

    def test_fig3b(self, capsys):
        assert main(["sweep", str(CONFIGS / "fig3.cfg"), "--axis", "delta_T"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "delta_T,fidelity"
        rows = np.array([[float(x) for x in ln.split(",")] for ln in lines[1:]])
        assert np.all(np.diff(rows[:, 0]) > 0) and np.all(np.diff(rows[:, 1]) < 0)

    def test_tls_g_axis(self, capsys):
        assert main(["sweep", str(CONFIGS / "tls_cavity.cfg"), "--axis", "g"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "g,beta_eff,delta_U,delta_T,fidelity"
        assert len(lines) == 12

    def test_lambda_out_of_range_exit_3(self, tmp_path):
        cfg = (CONFIGS / "fig3.cfg").read_text().replace("sweep.lambda = 0:0.9:91", "sweep.lambda = 0:1:11")
        assert main(["sweep", write(tmp_path, cfg), "--axis", "lambda"]) == 3

    def test_empty_grid_exit_2(self, tmp_path):
        cfg = (CONFIGS / "fig3.cfg").read_text().replace("sweep.lambda = 0:0.9:91", "sweep.lambda =")
        assert main(["sweep", write(tmp_path, cfg), "--axis", "lambda"]) == 2

    def test_missing_grid_exit_2(self, tmp_path):
        assert main(["sweep", write(tmp_path, OSC), "--axis", "lambda"]) == 2

    def test_bad_axis_exit_2(self):
        with pytest.raises(SystemExit) as exc:
            main(["sweep", str(CONFIGS / "fig3.cfg"), "--axis", "omega"])
        assert exc.value.code == 2

    def test_bytes_deterministic_and_clean(self, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        for p in (a, b):
            assert main(["sweep", str(CONFIGS / "fig3.cfg"), "--axis", "lambda", "--out", str(p)]) == 0
        data = a.read_bytes()
        assert data == b.read_bytes()
        assert b"\r" not in data and data.endswith(b"\n")
        assert all(line == line.rstrip() for line in data.decode().split("\n"))


class TestCheck:
    @pytest.mark.parametrize("suite", ["fn", "fidelity", "jc"])
    def test_suites_pass(self, suite, capsys):
        assert main(["check", suite]) == 0
        assert "FAIL" not in capsys.readouterr().out

    def test_unknown_suite(self, capsys):
        assert main(["check", "nosuch"]) == 2
        assert "nosuch" in capsys.readouterr().err


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(0.1) == "0.10000000000000001"
    assert fmt(None) == "none"
