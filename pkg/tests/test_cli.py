"""Command-line interface: outputs, determinism, exit codes."""

import json

import numpy as np
import pytest

from blocknorm.cli import main, parse_grid
from blocknorm.errors import ConfigurationError


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGridParsing:
    def test_inclusive_endpoints(self):
        grid = parse_grid("1.6:4.0:0.1")
        assert len(grid) == 25
        assert grid[0] == 1.6 and grid[-1] == 4.0

    def test_rho_grid(self):
        assert parse_grid("0:0.9:0.1") == [round(0.1 * i, 12) for i in range(10)]

    def test_single_value(self):
        assert parse_grid("2.5") == [2.5]

    def test_bad_grids(self):
        with pytest.raises(ConfigurationError):
            parse_grid("1:2")
        with pytest.raises(ConfigurationError):
            parse_grid("1:2:0")
        with pytest.raises(ConfigurationError):
            parse_grid("3:1:0.5")


class TestTable1Command:
    def test_stdout_contents(self, capsys):
        code, out, err = _run(capsys, "table1")
        assert code == 0
        lines = out.strip().splitlines()
        assert len(lines) == 26
        assert lines[11].split(",") == ["2.6", "0.00466", "0.00879", "0.01437", "3.08271"]
        assert "manifest" not in out
        assert "rng_algorithm" in err  # manifest goes to stderr for stdout output

    def test_file_output_with_manifest(self, capsys, tmp_path):
        path = tmp_path / "t1.csv"
        code, _, _ = _run(capsys, "table1", "--output", str(path))
        assert code == 0
        lines = path.read_text().strip().splitlines()
        assert len(lines) == 26
        manifest = json.loads((tmp_path / "t1.csv.manifest.json").read_text())
        assert manifest["command"].startswith("blocknorm table1")
        assert "library_version" in manifest

    def test_unwritable_path(self, capsys, tmp_path):
        code, _, err = _run(capsys, "table1", "--output", str(tmp_path / "missing" / "t.csv"))
        assert code != 0
        assert err


class TestSimulateCommand:
    def test_deterministic_repeat(self, capsys, tmp_path):
        args = [
            "simulate", "--process", "iid", "--stat", "i-star", "--m", "50",
            "--n", "400", "--reps", "10", "--seed", "1", "--x", "1.6:2.0:0.2",
        ]
        code1, out1, _ = _run(capsys, *args)
        code2, out2, _ = _run(capsys, *args)
        assert code1 == code2 == 0
        assert out1 == out2

    def test_json_format_embeds_manifest(self, capsys, tmp_path):
        path = tmp_path / "run.json"
        code, _, _ = _run(
            capsys, "simulate", "--process", "ar1", "--rho", "0.5", "--stat", "t-star",
            "--m", "20", "--n", "200", "--reps", "50", "--seed", "3",
            "--x", "2.0:3.0:0.5", "--format", "json", "--output", str(path),
        )
        assert code == 0
        payload = json.loads(path.read_text())
        assert payload["manifest"]["master_seed"] == 3
        assert payload["metadata"]["config"]["process"] == "ar1"
        assert len(payload["rows"]["x"]) == 3

    def test_grid_csv_shape(self, capsys):
        code, out, _ = _run(
            capsys, "simulate", "--process", "ar1", "--rho-grid", "0:0.2:0.1",
            "--stat", "i-star", "--m", "10", "--n", "100", "--reps", "40",
            "--seed", "5", "--x", "1.6:1.8:0.1",
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0] == "x,rho=0,rho=0.1,rho=0.2,full:rho=0,full:rho=0.1,full:rho=0.2"
        assert len(lines) == 4

    def test_interlace_stat_rejects_bigsmall_flags(self, capsys):
        code, _, err = _run(
            capsys, "simulate", "--process", "iid", "--stat", "i-star",
            "--m1", "5", "--m2", "2", "--n", "100", "--reps", "10", "--seed", "1",
        )
        assert code == 1
        assert "m1" in err

    def test_bigsmall_stat_requires_m1_m2(self, capsys):
        code, _, _ = _run(
            capsys, "simulate", "--process", "iid", "--stat", "w-star",
            "--m", "5", "--n", "100", "--reps", "10", "--seed", "1",
        )
        assert code == 1

    def test_process_param_mismatch(self, capsys):
        code, _, err = _run(
            capsys, "simulate", "--process", "iid", "--rho", "0.5",
            "--stat", "i-star", "--m", "5", "--n", "100", "--reps", "10", "--seed", "1",
        )
        assert code == 1
        assert "rho" in err

    def test_unknown_flag_is_an_error(self, capsys):
        code, _, _ = _run(capsys, "simulate", "--process", "iid", "--nonsense", "1")
        assert code == 1

    def test_workers_env_fallback(self, capsys, monkeypatch):
        monkeypatch.setenv("BLOCKNORM_WORKERS", "2")
        args = [
            "simulate", "--process", "iid", "--stat", "t-star", "--m", "10",
            "--n", "100", "--reps", "30", "--seed", "9", "--x", "2.0:2.0:1.0",
        ]
        code, out_env, _ = _run(capsys, *args)
        assert code == 0
        monkeypatch.delenv("BLOCKNORM_WORKERS")
        code, out_one, _ = _run(capsys, *args)
        assert code == 0
        assert out_env == out_one  # worker count never changes the numbers

    def test_config_file_and_flag_precedence(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(
            "process = iid\nstat = i-star\nm = 10\nn = 120\nreps = 20\nseed = 4\nx = 1.6:1.8:0.1\n"
        )
        code, out_file, _ = _run(capsys, "simulate", "--config", str(cfg), "--format", "json")
        assert code == 0
        assert json.loads(out_file)["manifest"]["master_seed"] == 4
        # flag overrides the file value
        code, out_flag, _ = _run(
            capsys, "simulate", "--config", str(cfg), "--seed", "5", "--format", "json"
        )
        assert code == 0
        assert json.loads(out_flag)["manifest"]["master_seed"] == 5


class TestCiAndTestCommands:
    @pytest.fixture()
    def panel_csv(self, tmp_path):
        rng = np.random.default_rng(12)
        panel = rng.standard_normal((160, 3))
        path = tmp_path / "panel.csv"
        np.savetxt(path, panel, delimiter=",")
        return path

    def test_ci_json_shape(self, capsys, panel_csv, tmp_path):
        out_path = tmp_path / "ci.json"
        code, out, _ = _run(capsys, "ci", str(panel_csv), "--alpha", "0.05", "--output", str(out_path))
        assert code == 0
        payload = json.loads(out_path.read_text())
        assert len(payload["ci"]["centers"]) == 3
        assert payload["ci"]["m"] == 4  # auto = round(160**0.25)
        assert "coord" in out  # human-readable table on stdout

    def test_ci_explicit_m_and_stdout(self, capsys, panel_csv):
        code, out, err = _run(capsys, "ci", str(panel_csv), "--m", "8")
        assert code == 0
        payload = json.loads(out)
        assert payload["ci"]["m"] == 8
        assert "halfwidth" in err  # table moves to stderr when JSON is on stdout

    def test_ci_empty_file(self, capsys, tmp_path):
        empty = tmp_path / "empty.csv"
        empty.write_text("")
        code, _, err = _run(capsys, "ci", str(empty))
        assert code == 2
        assert "data error" in err

    def test_test_accepts_centers(self, capsys, panel_csv, tmp_path):
        code, out, _ = _run(capsys, "ci", str(panel_csv), "--m", "8")
        centers = json.loads(out)["ci"]["centers"]
        mu0 = tmp_path / "mu0.csv"
        mu0.write_text(",".join(str(c) for c in centers) + "\n")
        code, out, _ = _run(capsys, "test", str(panel_csv), "--mu0", str(mu0), "--m", "8")
        assert code == 0
        assert json.loads(out)["test"]["reject"] is False

    def test_test_detects_displacement(self, capsys, panel_csv, tmp_path):
        mu0 = tmp_path / "mu0.csv"
        mu0.write_text("50,0,0\n")
        code, out, _ = _run(capsys, "test", str(panel_csv), "--mu0", str(mu0), "--m", "8")
        assert code == 0  # the decision is payload, not exit status
        payload = json.loads(out)["test"]
        assert payload["reject"] is True
        assert 0 in payload["violating_coordinates"]

    def test_test_wrong_mu0_length(self, capsys, panel_csv, tmp_path):
        mu0 = tmp_path / "mu0.csv"
        mu0.write_text("1,2\n")
        code, _, err = _run(capsys, "test", str(panel_csv), "--mu0", str(mu0))
        assert code == 2
        assert "data error" in err


class TestTopLevel:
    def test_no_command(self, capsys):
        code, _, _ = _run(capsys)
        assert code == 1

    def test_help_exits_zero(self, capsys):
        assert main(["--help"]) == 0
        for sub in ("table1", "simulate", "ci", "test"):
            assert main([sub, "--help"]) == 0

    def test_version(self, capsys):
        assert main(["--version"]) == 0
        assert "blocknorm" in capsys.readouterr().out
