"""
Tests for CSV loading and writing.
"""

import numpy as np
import pandas as pd
import pytest

from engine.datasets import load_csv, write_csv, write_instance
from engine.errors import DataError
from engine.models import Dataset, SimulationScenario
from engine.simulation import SimulationGenerator


class TestLoadCsv:
    def test_extracts_response(self, tmp_path):
        path = tmp_path / "small.csv"
        path.write_text("a,y,b\n1,0.5,2\n3,1.5,4\n5,2.5,6\n")
        data = load_csv(path, "y")

        assert data.p == 2
        assert data.n == 3
        assert data.column_names == ("a", "b")
        np.testing.assert_array_equal(data.x, [[1, 2], [3, 4], [5, 6]])
        np.testing.assert_array_equal(data.y, [0.5, 1.5, 2.5])

    def test_blank_cell_names_row_and_column(self, tmp_path):
        path = tmp_path / "blank.csv"
        path.write_text("a,b,y\n1,2,3\n4,,6\n")
        with pytest.raises(DataError, match=r"blank cell at row 2, column 'b'"):
            load_csv(path, "y")

    def test_non_numeric_cell(self, tmp_path):
        path = tmp_path / "text.csv"
        path.write_text("a,y\n1,2\nabc,3\n")
        with pytest.raises(DataError, match=r"'abc' at row 2, column 'a'"):
            load_csv(path, "y")

    def test_missing_response_column(self, tmp_path):
        path = tmp_path / "noresp.csv"
        path.write_text("a,b\n1,2\n3,4\n")
        with pytest.raises(DataError, match="response column 'y' not found"):
            load_csv(path, "y")

    def test_single_row_rejected(self, tmp_path):
        path = tmp_path / "one.csv"
        path.write_text("a,y\n1,2\n")
        with pytest.raises(DataError, match="at least 2 data rows"):
            load_csv(path, "y")

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataError, match="not found"):
            load_csv(tmp_path / "absent.csv", "y")

    def test_response_only(self, tmp_path):
        path = tmp_path / "y.csv"
        path.write_text("y\n1\n2\n")
        with pytest.raises(DataError, match="no covariate"):
            load_csv(path, "y")


class TestWriteCsv:
    def test_written_file_loads_identically(self, tmp_path):
        rng = np.random.default_rng(0)
        data = Dataset.from_arrays(rng.normal(size=(25, 4)) * 1e3, rng.normal(size=25), ["g1", "g2", "g3", "g4"])
        loaded = load_csv(write_csv(data, tmp_path / "out.csv", "resp"), "resp")

        assert loaded.column_names == data.column_names
        np.testing.assert_array_equal(loaded.x, data.x)
        np.testing.assert_array_equal(loaded.y, data.y)

    def test_response_name_collision(self, tmp_path):
        data = Dataset.from_arrays(np.ones((2, 1)), [0.0, 1.0], ["y"])
        with pytest.raises(DataError, match="collides"):
            write_csv(data, tmp_path / "out.csv", "y")

    def test_instance_writes_truth_sidecar(self, tmp_path):
        scenario = SimulationScenario(n=20, p=6, p_inf=2, replications=1, seed=3)
        instance = SimulationGenerator().generate(scenario, 0)
        data_path, truth_path = write_instance(instance, tmp_path / "sim.csv")

        assert truth_path.name == "sim_truth.csv"
        truth = pd.read_csv(truth_path)
        assert list(truth.columns) == ["variable", "beta", "informative"]
        assert tuple(np.flatnonzero(truth["informative"].to_numpy())) == instance.informative_set
        np.testing.assert_array_equal(truth["beta"].to_numpy(), instance.beta)
        np.testing.assert_array_equal(load_csv(data_path, "y").y, instance.data.y)
