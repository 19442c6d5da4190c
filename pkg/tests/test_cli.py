"""Tests for the harness command-line interface."""

import json

import pytest

from choicenet.networks.relu_net import deserialize, evaluate
from scripts.config import EXIT_ASSERTION_FAILURES, EXIT_CONFIG_ERROR, EXIT_OK
from scripts.run_harness import main

CONFIG_TEXT = """d = 1
epsilon = 0.1
trials = 2
seed = 42

[field]
base = "identity"

[nu]
kind = "fixed"
k = 3

[quadrature]
samples = 2000
verify_samples = 20000
seed = 7
"""


@pytest.fixture
def log_dir(tmp_path):
    return str(tmp_path / "logs")


@pytest.fixture
def config_path(tmp_path):
    path = tmp_path / "identity.toml"
    path.write_text(CONFIG_TEXT)
    return str(path)


class TestDriverCommands:
    """Test cases for the single-module subcommands."""

    def test_build_spike(self, log_dir, capsys):
        code = main(["--log-dir", log_dir, "build-spike", "--center", "0.5", "--residual", "1", "--n", "4"])

        net = deserialize(capsys.readouterr().out.strip())
        assert code == EXIT_OK
        assert net.widths == (1, 3, 1, 1)
        assert evaluate(net, [0.5]) == 1.0
        assert evaluate(net, [0.9]) == pytest.approx(0.0, abs=1e-12)

    def test_build_spike_rejects_center_outside_cube(self, log_dir, capsys):
        code = main(["--log-dir", log_dir, "build-spike", "--center", "1.5", "--residual", "1"])

        assert code == EXIT_CONFIG_ERROR
        assert "Invalid input" in capsys.readouterr().out

    def test_sample_is_reproducible(self, log_dir, capsys):
        argv = ["--log-dir", log_dir, "sample", "--nu", "fixed:5", "--d", "2", "--seed", "7"]

        assert main(argv) == EXIT_OK
        first = json.loads(capsys.readouterr().out)
        assert main(argv) == EXIT_OK
        second = json.loads(capsys.readouterr().out)

        assert first == second
        assert first["size"] == 5
        assert all(len(p) == 2 and all(0.0 <= c < 1.0 for c in p) for p in first["points"])

    def test_sample_rejects_bad_distribution(self, log_dir):
        with pytest.raises(SystemExit) as exit_info:
            main(["--log-dir", log_dir, "sample", "--nu", "uniform:3", "--d", "1"])
        assert exit_info.value.code == 2

    def test_approx_certificate(self, log_dir, capsys):
        code = main(
            [
                "--log-dir",
                log_dir,
                "approx",
                "--base",
                "sin2pi",
                "--budget",
                "0.01",
                "--samples",
                "4000",
                "--seed",
                "3",
            ]
        )

        document = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert document["strategy"] == "hat_interp_1d"
        assert document["estimate"]["upper_confidence"] < 0.01
        assert document["widths"][0] == 1 and document["widths"][-1] == 1
        assert document["parameters"] > 0

    def test_approx_non_integrable_base_uses_zero_network(self, log_dir, capsys):
        code = main(["--log-dir", log_dir, "approx", "--base", "non_integrable", "--budget", "0.01"])

        document = json.loads(capsys.readouterr().out)
        assert code == EXIT_OK
        assert document["strategy"] == "zero"
        assert document["estimate"] is None
        assert document["grid_resolution"] == 0
        assert document["widths"] == [1, 1]


class TestRunAndVerify:
    """Test cases for run, verify and history."""

    def test_run_then_verify(self, tmp_path, log_dir, config_path, capsys):
        out = str(tmp_path / "out")

        assert main(["--log-dir", log_dir, "run", config_path, "--output", out]) == EXIT_OK
        assert "RUN PASSED" in capsys.readouterr().out

        assert main(["--log-dir", log_dir, "verify", out]) == EXIT_OK
        assert "VERIFICATION PASSED" in capsys.readouterr().out

        assert main(["--log-dir", log_dir, "history", "--output", out]) == EXIT_OK
        printed = capsys.readouterr().out
        assert "Total Executions: 2" in printed
        assert "Runs: 1" in printed
        assert "Verifications: 1" in printed

    def test_tampered_report_fails_verify(self, tmp_path, log_dir, config_path, capsys):
        out = tmp_path / "out"
        main(["--log-dir", log_dir, "run", config_path, "--output", str(out)])
        document = json.loads((out / "report.json").read_text())
        document["trials"][1]["network"]["layers"][-1]["bias"][0] -= 0.25
        (out / "report.json").write_text(json.dumps(document))
        capsys.readouterr()

        assert main(["--log-dir", log_dir, "verify", str(out)]) == EXIT_ASSERTION_FAILURES
        assert "VERIFICATION FAILED" in capsys.readouterr().out

    def test_config_error_exit_code(self, tmp_path, log_dir, capsys):
        path = tmp_path / "bad.toml"
        path.write_text(CONFIG_TEXT.replace("epsilon = 0.1", "epsilon = -0.1"))

        code = main(["--log-dir", log_dir, "run", str(path), "--output", str(tmp_path / "out")])

        assert code == EXIT_CONFIG_ERROR
        assert "Config error" in capsys.readouterr().out

    def test_missing_report_exit_code(self, tmp_path, log_dir):
        assert main(["--log-dir", log_dir, "verify", str(tmp_path / "nowhere")]) == EXIT_CONFIG_ERROR

    def test_empty_history(self, tmp_path, log_dir, capsys):
        assert main(["--log-dir", log_dir, "history", "--output", str(tmp_path / "fresh")]) == EXIT_OK
        assert "No harness executions recorded yet" in capsys.readouterr().out
