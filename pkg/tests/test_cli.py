"""
Tests for the probeboost command line: outputs and exit codes.
"""

import json

import pandas as pd
import pytest
import yaml

from engine.cli import EXIT_CONFIG, EXIT_DATA, EXIT_OK, benchmark_methods, build_parser, main, resolve_config
from engine.config import RunConfig


@pytest.fixture
def simulated_csv(tmp_path):
    path = tmp_path / "sim.csv"
    code = main(["simulate", "--n", "80", "--p", "8", "--p-inf", "2", "--seed", "3", "-o", str(path)])
    assert code == EXIT_OK
    return path


class TestSimulate:
    def test_writes_data_and_truth(self, simulated_csv):
        data = pd.read_csv(simulated_csv)
        truth = pd.read_csv(simulated_csv.with_name("sim_truth.csv"))

        assert list(data.columns) == [f"x{j}" for j in range(1, 9)] + ["y"]
        assert len(data) == 80
        assert set(data["y"].unique()) <= {0.0, 1.0}
        assert truth["informative"].sum() == 2

    def test_same_seed_same_file(self, simulated_csv, tmp_path):
        again = tmp_path / "again.csv"
        main(["simulate", "--n", "80", "--p", "8", "--p-inf", "2", "--seed", "3", "-o", str(again)])
        assert again.read_bytes() == simulated_csv.read_bytes()

    def test_missing_dimension(self, tmp_path):
        assert main(["simulate", "--n", "80", "--p", "8", "-o", str(tmp_path / "x.csv")]) == EXIT_CONFIG


class TestCsvCommands:
    def test_fit_with_trace(self, simulated_csv, tmp_path):
        out = tmp_path / "fit.csv"
        trace = tmp_path / "trace.json"
        code = main(["fit", "-i", str(simulated_csv), "--m-stop", "15", "-o", str(out), "--trace-json", str(trace)])

        assert code == EXIT_OK
        assert list(pd.read_csv(out).columns) == ["variable", "selected", "coefficient"]
        assert len(json.loads(trace.read_text())["selection_path"]) == 15

    def test_probe(self, simulated_csv, tmp_path):
        out = tmp_path / "probe.csv"
        assert main(["probe", "-i", str(simulated_csv), "--loss", "logistic", "-o", str(out)]) == EXIT_OK
        assert len(pd.read_csv(out)) == 8

    def test_stabsel(self, simulated_csv, tmp_path):
        out = tmp_path / "stab.csv"
        code = main(["stabsel", "-i", str(simulated_csv), "--q", "3", "--pi-thr", "0.7", "--b", "10", "-o", str(out)])

        assert code == EXIT_OK
        frame = pd.read_csv(out)
        assert frame["selected"].tolist() == (frame["frequency"] >= 0.7).tolist()

    def test_stabsel_needs_two_parameters(self, simulated_csv, tmp_path):
        assert main(["stabsel", "-i", str(simulated_csv), "--q", "3", "-o", str(tmp_path / "s.csv")]) == EXIT_CONFIG

    def test_cv_augmented(self, simulated_csv, tmp_path):
        out = tmp_path / "cv.csv"
        code = main(["cv", "-i", str(simulated_csv), "--folds", "3", "--m-max", "40", "--augmented", "-o", str(out)])
        assert code == EXIT_OK
        assert pd.read_csv(out)["variable"].tolist() == [f"x{j}" for j in range(1, 9)]

    def test_analyze(self, simulated_csv, tmp_path):
        out = tmp_path / "overlap.csv"
        code = main(
            [
                "analyze",
                "-i", str(simulated_csv),
                "--folds", "3", "--m-max", "40",
                "--q", "3", "--pi-thr", "0.7", "--b", "10",
                "-o", str(out),
            ]
        )  # fmt: skip

        assert code == EXIT_OK
        overlap = pd.read_csv(out, index_col="method")
        assert list(overlap.index) == ["cv:folds=3:m_max=40", "probing", "stabsel:b=10:pi_thr=0.7:q=3"]
        assert (overlap.to_numpy() == overlap.to_numpy().T).all()
        matrix = pd.read_csv(tmp_path / "overlap_selections.csv")
        assert matrix["probing"].sum() == overlap.loc["probing", "probing"]

    def test_blank_cell_is_a_data_error(self, tmp_path):
        path = tmp_path / "blank.csv"
        path.write_text("a,b,y\n1,2,3\n4,,6\n7,8,9\n")
        assert main(["fit", "-i", str(path), "-o", str(tmp_path / "out.csv")]) == EXIT_DATA

    def test_missing_input(self, tmp_path):
        assert main(["fit", "-o", str(tmp_path / "out.csv")]) == EXIT_CONFIG

    def test_missing_output(self, simulated_csv):
        assert main(["probe", "-i", str(simulated_csv)]) == EXIT_CONFIG

    def test_invalid_step_length(self, simulated_csv, tmp_path):
        assert main(["fit", "-i", str(simulated_csv), "--nu", "1.5", "-o", str(tmp_path / "o.csv")]) == EXIT_CONFIG


class TestArguments:
    def test_unknown_flag(self):
        assert main(["fit", "--colour", "red"]) == EXIT_CONFIG

    def test_help(self, capsys):
        assert main(["benchmark", "--help"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "--stability-grid" in out
        assert "--paper-grid" in out
        assert "reruns" in out

    @pytest.mark.parametrize("flag", ["--stability-grid", "--paper-grid"])
    def test_grid_flag_spellings_add_nine_cells(self, flag):
        config = resolve_config(build_parser().parse_args(["benchmark", "--methods", "probing", flag]))
        labels = [spec.label for spec in benchmark_methods(config)]
        assert len(labels) == 10
        assert labels[0] == "probing"
        assert all(label.startswith("stabsel") for label in labels[1:])

    def test_flags_override_config_file(self, simulated_csv, tmp_path):
        out = tmp_path / "fit.csv"
        config = tmp_path / "fit.yaml"
        config.write_text(
            yaml.safe_dump({"command": "fit", "input_path": str(simulated_csv), "output_path": str(out), "m_stop": 500})
        )
        trace = tmp_path / "trace.json"

        assert main(["fit", "--config", str(config), "--m-stop", "4", "--trace-json", str(trace)]) == EXIT_OK
        assert json.loads(trace.read_text())["iterations_performed"] == 4

    def test_config_file_for_another_command(self, tmp_path):
        config = tmp_path / "cv.yaml"
        config.write_text("command: cv\n")
        assert main(["fit", "--config", str(config)]) == EXIT_CONFIG

    def test_benchmark_methods_deduplicated(self):
        config = RunConfig(command="benchmark", params={"methods": "probing,cv,probing", "stability_grid": True})
        labels = [spec.label for spec in benchmark_methods(config)]
        assert len(labels) == 11
        assert labels[:2] == ["probing", "cv"]


class TestBenchmarkCommand:
    ARGS = ["--n", "40", "--p", "8", "--p-inf", "2", "--replications", "2", "--methods", "probing,cv:folds=3:m_max=30"]

    def test_writes_artifacts(self, tmp_path):
        out = tmp_path / "bench"
        assert main(["benchmark", *self.ARGS, "-o", str(out)]) == EXIT_OK

        metrics = pd.read_csv(out / "metrics.csv", comment="#", keep_default_na=False)
        assert len(metrics) == 4
        assert (metrics["error"] == "").all()
        summary = json.loads((out / "summary.json").read_text())
        (scenario_id,) = summary
        assert set(summary[scenario_id]) == {"probing", "cv:folds=3:m_max=30"}
        saved = yaml.safe_load((out / "config.yaml").read_text())
        assert saved["command"] == "benchmark"
        assert saved["p_inf"] == 2

    def test_rerun_is_identical_without_runtime(self, tmp_path):
        first, second = tmp_path / "a", tmp_path / "b"
        assert main(["benchmark", *self.ARGS, "--no-runtime", "--seed", "9", "-o", str(first)]) == EXIT_OK
        assert main(["benchmark", *self.ARGS, "--no-runtime", "--seed", "9", "-o", str(second)]) == EXIT_OK

        # first line is the generation timestamp
        assert (first / "metrics.csv").read_text().splitlines()[1:] == (second / "metrics.csv").read_text().splitlines()[1:]
        assert (first / "summary.json").read_bytes() == (second / "summary.json").read_bytes()

    def test_invalid_method(self, tmp_path):
        assert main(["benchmark", *self.ARGS[:-1], "lasso", "-o", str(tmp_path / "x")]) == EXIT_CONFIG
