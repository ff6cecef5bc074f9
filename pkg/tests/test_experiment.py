"""Tests for the Monte Carlo experiment runner."""

import json
import os
from unittest.mock import patch

import pytest

from ccuc.core.storage import save_instance
from ccuc.errors import DataError, SolverError
from ccuc.experiment.config import ExperimentConfig
from ccuc.experiment.runner import (
    REPORT_FILES,
    ROW_COLUMNS,
    child_seed,
    run_experiment,
)
from ccuc.experiment.tables import aggregate_tables
from ccuc.risk.support import theoretical_curve
from ccuc.scenarios.bounds import RiskSpec, required_sample_size

DETERMINISTIC_FILES = ("rows", "objective_risk", "violation_curve", "support_counts")


@pytest.fixture
def small_config(tmp_path):
    """Four cheap trials on a 2-generator, 3-snapshot instance."""
    return ExperimentConfig(
        synth=(2, 3, 1, 2, 1),
        n_grid=[5, 20],
        trials=2,
        test_size=200,
        beta=0.05,
        seed=3,
        out=str(tmp_path / "run"),
    )


def _read(path):
    with open(path) as f:
        return f.read()


class TestRunExperiment:
    """Test the full sweep."""

    def test_writes_every_report_file(self, small_config):
        report = run_experiment(small_config, backend="scipy")
        for key, name in REPORT_FILES.items():
            path = os.path.join(small_config.out, name)
            assert os.path.isfile(path)
            assert report.files[key] == path

    def test_rows(self, small_config):
        report = run_experiment(small_config, backend="scipy")
        rows = report.rows
        assert list(rows.columns) == ROW_COLUMNS
        assert len(rows) == 4
        assert report.failures == 0
        assert rows[["N", "trial"]].values.tolist() == [[5, 0], [5, 1], [20, 0], [20, 1]]
        assert (rows["n_support"] <= rows["n_candidates"]).all()
        assert (rows["n_candidates"] <= 3).all()

    def test_trial_seeds(self, small_config):
        rows = run_experiment(small_config, backend="scipy", write=False).rows
        expected = [child_seed(3, n, t) for n, t in [(5, 0), (5, 1), (20, 0), (20, 1)]]
        assert rows["seed"].tolist() == expected
        assert len(set(expected)) == 4

    def test_shared_test_set(self, small_config):
        summary = run_experiment(small_config, backend="scipy", write=False).summary
        assert summary["test_set"] == {"seed": child_seed(3, 0), "size": 200, "shared": True}

    def test_summary(self, small_config):
        report = run_experiment(small_config, backend="scipy")
        summary = json.loads(_read(report.files["summary"]))
        assert summary["rows"] == 4
        assert summary["failures"] == 0
        assert summary["backend"] == "scipy"
        assert summary["instance"] == {"n_g": 2, "n_t": 3, "n_k": 1, "n_d": 2, "n_w": 1}
        assert summary["config_hash"] == small_config.config_hash()
        assert summary["max_support"] <= 3

    def test_rerun_is_identical(self, small_config, tmp_path):
        first = run_experiment(small_config, backend="scipy")
        small_config.out = str(tmp_path / "again")
        second = run_experiment(small_config, backend="scipy")
        for key in DETERMINISTIC_FILES:
            assert _read(first.files[key]) == _read(second.files[key])

    def test_parallel_matches_serial(self, small_config, tmp_path):
        serial = run_experiment(small_config, backend="scipy")
        small_config.out = str(tmp_path / "parallel")
        parallel = run_experiment(small_config, jobs=3, backend="scipy")
        for key in DETERMINISTIC_FILES:
            assert _read(serial.files[key]) == _read(parallel.files[key])

    def test_bound_column(self, small_config):
        rows = run_experiment(small_config, backend="scipy", write=False).rows
        curve = dict(theoretical_curve(3, 0.05, [5, 20]))
        for _, row in rows.iterrows():
            assert row["epsilon_bound"] == pytest.approx(curve[row["N"]])

    def test_instance_file(self, small_config, small_instance, tmp_path):
        path = str(tmp_path / "inst.json")
        save_instance(small_instance, path)
        small_config.instance = path
        small_config.n_grid = [5]
        small_config.trials = 1
        report = run_experiment(small_config, backend="scipy", write=False)
        assert report.summary["instance"]["n_t"] == 4

    def test_missing_instance_file(self, small_config, tmp_path):
        small_config.instance = str(tmp_path / "missing.json")
        with pytest.raises(DataError):
            run_experiment(small_config, backend="scipy")

    def test_bad_distribution(self, small_config):
        small_config.distribution = "cauchy:1"
        with pytest.raises(DataError):
            run_experiment(small_config, backend="scipy")

    def test_failed_trials_are_recorded(self, small_config):
        with patch(
            "ccuc.experiment.runner.solve_instance", side_effect=SolverError("backend crashed")
        ):
            report = run_experiment(small_config, backend="scipy")
        assert report.failures == 4
        assert set(report.rows["status"]) == {"error"}
        assert set(report.rows["error"]) == {"backend crashed"}
        assert report.summary["max_support"] is None
        assert report.objective_risk["trials_ok"].tolist() == [0, 0]

    def test_support_can_be_skipped(self, small_config):
        small_config.support = False
        rows = run_experiment(small_config, backend="scipy", write=False).rows
        assert rows["n_support"].isna().all()
        assert rows["n_candidates"].notna().all()


class TestTables:
    """Test aggregate tables."""

    def test_bands_are_ordered(self, small_config):
        report = run_experiment(small_config, backend="scipy", write=False)
        table = report.objective_risk
        assert (table["objective_min"] <= table["objective_mean"] + 1e-9).all()
        assert (table["objective_mean"] <= table["objective_max"] + 1e-9).all()
        assert (table["epsilon_hat_min"] <= table["epsilon_hat_max"]).all()

    def test_tables_recompute_from_rows(self, small_config):
        report = run_experiment(small_config, backend="scipy", write=False)
        objective_risk, curve, support = aggregate_tables(report.rows, 3, 0.05)
        assert objective_risk.equals(report.objective_risk)
        assert curve["N"].tolist() == [5, 20]
        assert curve["vacuous"].tolist() == [False, False]
        assert support["n_t"].tolist() == [3, 3]

    def test_vacuous_flag(self, small_config):
        small_config.n_grid = [2, 5]
        small_config.trials = 1
        curve = run_experiment(small_config, backend="scipy", write=False).violation_curve
        assert curve["vacuous"].tolist() == [True, False]
        assert curve["epsilon_bound"].tolist()[0] == 1.0


@pytest.mark.slow
class TestAcceptance:
    """Statistical checks on larger sweeps."""

    def test_bound_exceeded_rarely(self, tmp_path):
        n = required_sample_size(RiskSpec(epsilon=0.2, beta=0.05, h=6))
        config = ExperimentConfig(
            synth=(3, 6, 1, 3, 1),
            n_grid=[n],
            trials=20,
            test_size=10_000,
            beta=0.05,
            seed=21,
            support=False,
            out=str(tmp_path / "bound"),
        )
        report = run_experiment(config, backend="scipy")
        assert report.failures == 0
        assert report.summary["trials_exceeding_bound"] <= 2

    def test_more_scenarios_lower_risk(self, tmp_path):
        config = ExperimentConfig(
            n_grid=[100, 400, 1000],
            trials=10,
            test_size=10_000,
            seed=5,
            support=False,
            out=str(tmp_path / "trend"),
        )
        report = run_experiment(config, backend="scipy")
        assert report.failures == 0
        table = report.objective_risk
        risk = table["epsilon_hat_mean"].tolist()
        cost = table["objective_mean"].tolist()
        assert risk[0] > risk[1] > risk[2]
        assert cost[1] >= cost[0] * (1 - 1e-4)
        assert cost[2] >= cost[1] * (1 - 1e-4)
