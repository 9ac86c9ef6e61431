"""End-to-end tests of the command suite."""

import json
import math

import pytest

from subordination.cli import run
from subordination.cli.csvio import read_table, sibling
from subordination.cli.manifest import RunManifest, file_digest

PANELS = ["--smax", "1", "--ds", "0.01", "--horizon", "50", "--points", "40", "--seed", "7"]


@pytest.fixture(autouse=True)
def _no_env_seed(monkeypatch):
    monkeypatch.delenv("SUBORDINATION_SEED", raising=False)


def stdout_rows(capsys):
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0].startswith("# ")
    return lines[1], [line.split(",") for line in lines[2:]]


class TestArtifacts:
    def test_panels_are_reproducible(self, tmp_path):
        first, second = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(["panels", *PANELS, "--out", str(first)]) == 0
        assert run(["panels", *PANELS, "--out", str(second)]) == 0
        assert first.read_bytes() == second.read_bytes()
        for suffix in ("curve", "path"):
            assert sibling(first, suffix).read_bytes() == sibling(second, suffix).read_bytes()

        table = read_table(first)
        assert list(table.columns) == ["t", "L", "v_of_L"]
        assert table.meta["seed"] == "7"
        assert table["t"][-1] == pytest.approx(50.0)

    def test_manifest_records_digests(self, tmp_path):
        out = tmp_path / "fig.csv"
        assert run(["panels", *PANELS, "--out", str(out)]) == 0
        manifest = RunManifest.read(tmp_path / "fig.manifest.json")
        assert manifest.status == "ok"
        assert manifest.exit_code == 0
        assert manifest.seed == 7
        assert manifest.subcommand == "panels"
        assert manifest.outputs[str(out)] == file_digest(out)
        assert len(manifest.outputs) == 3
        assert manifest.stale_outputs() == []
        out.write_text("changed\n")
        assert manifest.stale_outputs() == [str(out)]

    def test_figure1_name_runs_panels(self, tmp_path):
        by_alias, by_name = tmp_path / "fig1.csv", tmp_path / "panels.csv"
        assert run(["figure1", *PANELS, "--v0", "0.1", "--alpha", "0.5",
                    "--out", str(by_alias)]) == 0
        assert run(["panels", *PANELS, "--v0", "0.1", "--alpha", "0.5",
                    "--out", str(by_name)]) == 0
        assert by_alias.read_bytes() == by_name.read_bytes()
        manifest = RunManifest.read(tmp_path / "fig1.manifest.json")
        assert manifest.subcommand == "panels"
        assert manifest.command[1] == "figure1"

    def test_lemma31_name_runs_convolved_check(self, tmp_path):
        out = tmp_path / "resid.csv"
        argv = ["verify", "lemma31", "--family", "gamma", "--a", "1", "--b", "1",
                "--decay", "1", "--T", "1", "--dt", "0.05", "--out", str(out)]
        assert run(argv) == 0
        table = read_table(out)
        assert list(table.columns) == ["dt", "max_residual", "rate"]
        assert table.meta["check"] == "convolved_rhs"

    def test_theorem41_name_runs_closure_check(self, tmp_path):
        out = tmp_path / "closure.csv"
        argv = ["verify", "theorem41", "--family", "stable", "--alpha", "0.5", "--u0", "0.5",
                "--n", "2000", "--T", "0.5", "--dt", "0.05", "--seed", "3", "--out", str(out)]
        assert run(argv) == 0
        summary = read_table(sibling(out, "summary"))
        assert list(summary.columns) == ["max_residual", "bound", "within_bound"]
        assert RunManifest.read(tmp_path / "closure.manifest.json").subcommand == "verify closure"

    def test_explicit_manifest_path(self, tmp_path, capsys):
        target = tmp_path / "run.json"
        assert run(["series", "euler", "--alpha", "1", "--K", "5", "--manifest", str(target)]) == 0
        record = json.loads(target.read_text())
        assert record["outputs"] == {}
        assert record["config"]["K"] == 5

    def test_config_file_and_flag_precedence(self, tmp_path, capsys):
        config = tmp_path / "run.yaml"
        config.write_text("alpha: 0.5\nu0: 0.3\nK: 4\n")
        assert run(["series", "euler", "--config", str(config), "--K", "6"]) == 0
        header, rows = stdout_rows(capsys)
        assert header == "k,E_k"
        assert len(rows) == 7
        assert float(rows[0][1]) == pytest.approx(0.3)


class TestQueries:
    def test_series_euler_stdout(self, capsys):
        assert run(["series", "euler", "--alpha", "1", "--u0", "0.5", "--K", "5"]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0].startswith("# kind=classical_euler")
        values = [float(line.split(",")[1]) for line in out[2:]]
        assert values[3] == pytest.approx(-0.125, abs=1e-12)
        assert values[5] == pytest.approx(0.25, abs=1e-12)

    def test_mittag_leffler(self, capsys):
        assert run(["special", "ml", "--alpha", "0.5", "--z", "-1", "-3"]) == 0
        header, rows = stdout_rows(capsys)
        assert header == "input,value,method"
        assert float(rows[0][1]) == pytest.approx(0.42758357615580700, abs=1e-12)
        assert rows[0][2] == "series"
        assert rows[1][2] == "integral"

    def test_phik_closed_form(self, capsys):
        assert run(["special", "phik", "--family", "stable", "--alpha", "0.5",
                    "--k", "1", "--t", "1"]) == 0
        _, rows = stdout_rows(capsys)
        assert float(rows[0][1]) == pytest.approx(1.0 / math.gamma(1.5))
        assert rows[0][2] == "closed_form"

    def test_west_series(self, capsys):
        assert run(["series", "west", "--alpha", "1", "--u0", "0.7", "--t", "1"]) == 0
        _, rows = stdout_rows(capsys)
        assert float(rows[0][1]) == pytest.approx(0.7 / (0.7 + 0.3 * math.exp(-1.0)), abs=1e-12)

    def test_mc_functional(self, capsys):
        assert run(["mc", "functional", "--family", "stable", "--alpha", "0.5", "--v", "exp",
                    "--t", "1", "--n", "20000", "--seed", "1"]) == 0
        header, rows = stdout_rows(capsys)
        assert header == "mean,sample_variance,stderr,n,seed"
        mean, stderr = float(rows[0][0]), float(rows[0][2])
        assert abs(mean - 0.42758357615580700) < 4.0 * stderr


class TestSolve:
    def test_identity_logistic(self, tmp_path):
        out = tmp_path / "u.csv"
        code = run(["solve", "--family", "identity", "--u0", "0.5", "--T", "2",
                    "--dt", "0.001", "--out", str(out)])
        assert code == 0
        table = read_table(out)
        expected = 1.0 / (1.0 + math.exp(-2.0))
        assert table["u"][-1] == pytest.approx(expected, abs=1e-6)
        assert table.meta["forcing"] == "none"

    def test_forcing_file(self, tmp_path):
        sigma = tmp_path / "sigma.csv"
        assert run(["mc", "sigma", "--family", "stable", "--alpha", "0.5", "--v", "logistic",
                    "--v0", "0.3", "--tmax", "1", "--steps", "10", "--n", "2000",
                    "--out", str(sigma)]) == 0
        out = tmp_path / "u.csv"
        assert run(["solve", "--family", "stable", "--alpha", "0.5", "--u0", "0.3", "--T", "1",
                    "--dt", "0.01", "--sigma", str(sigma), "--out", str(out)]) == 0
        assert read_table(out).meta["forcing"] == str(sigma)

    def test_step_failure_writes_diagnostics(self, tmp_path, capsys):
        out = tmp_path / "u.csv"
        code = run(["solve", "--family", "identity", "--u0", "0.5", "--T", "4", "--dt", "2",
                    "--out", str(out)])
        assert code == 3
        error = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
        assert error["category"] == "step_size"
        diagnostics = sibling(out, "diagnostics")
        assert diagnostics.exists()
        assert "error_type=StepSizeError" in diagnostics.read_text().splitlines()[0]
        manifest = RunManifest.read(tmp_path / "u.manifest.json")
        assert manifest.exit_code == 3
        assert str(diagnostics) in manifest.outputs


class TestExitCodes:
    def test_unknown_flag(self, capsys):
        assert run(["series", "euler", "--bogus", "1"]) == 2

    def test_missing_command(self):
        assert run([]) == 2

    def test_alpha_out_of_range(self, capsys):
        assert run(["special", "ml", "--alpha", "1.5"]) == 2

    def test_unknown_config_key(self, tmp_path, capsys):
        config = tmp_path / "bad.yaml"
        config.write_text("alpha: 0.5\nbeta: 2\n")
        assert run(["series", "euler", "--config", str(config)]) == 2
        assert "beta" in capsys.readouterr().err

    def test_identity_has_no_tail(self, capsys):
        assert run(["symbols", "eval", "--family", "identity", "--z", "1"]) == 4

    def test_multi_column_command_needs_out(self, capsys):
        assert run(["simulate", "--family", "gamma"]) == 2

    def test_divergent_west_series(self, capsys):
        assert run(["series", "west", "--alpha", "0.5", "--u0", "0.4", "--t", "1"]) == 2

    def test_help(self, capsys):
        assert run(["--help"]) == 0
