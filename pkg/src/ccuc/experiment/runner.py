"""
Monte Carlo experiment orchestrator.

For every N in the grid and every trial, a fresh training set is drawn from
a child seed of ``(seed, N, trial)``, the scenario UC problem is solved,
the solution is validated on one test set shared by all trials, and the
support scenarios are counted. Rows are merged by ``(N, trial)``, so serial
and parallel runs write identical report files. Wall-clock timings go to a
separate file.
"""

import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..core.instance import UCInstance
from ..core.storage import load_instance
from ..core.synthetic import synth_instance
from ..errors import DataError
from ..milp.solve import BackendLike, require_solution, resolve_backend, solve_instance
from ..risk.support import find_support_scenarios
from ..risk.violation import empirical_violation
from ..scenarios.bounds import epsilon_bound
from ..scenarios.reduction import reduce_scenarios
from ..scenarios.sampling import ScenarioSet, parse_distribution, sample_scenarios
from ..utils.files import safe_write_file
from .config import ExperimentConfig
from .tables import aggregate_tables

logger = logging.getLogger(__name__)

ROW_COLUMNS = [
    "N",
    "trial",
    "seed",
    "status",
    "objective",
    "epsilon_hat",
    "violated",
    "n_support",
    "n_candidates",
    "nondegenerate",
    "epsilon_bound",
    "exceeds_bound",
    "error",
]
TIMING_COLUMNS = ["N", "trial", "solve_time", "support_time"]
REPORT_FILES = {
    "rows": "rows.csv",
    "objective_risk": "objective_risk.csv",
    "violation_curve": "violation_curve.csv",
    "support_counts": "support_counts.csv",
    "timings": "timings.csv",
    "summary": "summary.json",
}
# Key of the shared test set in the seed tree; trial keys have three parts.
TEST_SET_KEY = 0


def child_seed(*keys: int) -> int:
    """Deterministic 32-bit seed derived from a key path."""
    return int(np.random.SeedSequence(list(keys)).generate_state(1, dtype=np.uint32)[0])


@dataclass
class ExperimentReport:
    """Row table, derived tables and run summary."""

    rows: pd.DataFrame
    objective_risk: pd.DataFrame
    violation_curve: pd.DataFrame
    support_counts: pd.DataFrame
    timings: pd.DataFrame
    summary: Dict[str, Any]
    files: Dict[str, str] = field(default_factory=dict)

    @property
    def failures(self) -> int:
        return int((self.rows["status"] != "ok").sum())


def experiment_instance(config: ExperimentConfig) -> UCInstance:
    """
    The instance named by the config, or its seeded synthetic instance.

    Raises:
        DataError: If the instance file cannot be loaded.
    """
    if config.instance:
        inst = load_instance(config.instance)
        if inst is None:
            raise DataError(f"cannot load instance {config.instance}")
        return inst
    return synth_instance(*config.synth, seed=config.seed)


def run_trial(
    inst: UCInstance,
    test_set: ScenarioSet,
    config: ExperimentConfig,
    n: int,
    trial: int,
    backend: BackendLike,
) -> Tuple[Dict[str, Any], Dict[str, Any]]:
    """One (N, trial) cell: returns its report row and its timing row."""
    seed = child_seed(config.seed, n, trial)
    bound = epsilon_bound(n, config.beta, inst.n_t).epsilon
    row: Dict[str, Any] = {
        "N": n,
        "trial": trial,
        "seed": seed,
        "status": "ok",
        "objective": np.nan,
        "epsilon_hat": np.nan,
        "violated": np.nan,
        "n_support": np.nan,
        "n_candidates": np.nan,
        "nondegenerate": np.nan,
        "epsilon_bound": bound,
        "exceeds_bound": np.nan,
        "error": "",
    }
    timing: Dict[str, Any] = {"N": n, "trial": trial, "solve_time": np.nan, "support_time": np.nan}

    try:
        scen = sample_scenarios(inst, n, config.distribution, seed)
        candidates = reduce_scenarios(scen)
        train = scen.subset(candidates) if config.reduce else scen
        result = solve_instance(inst, train, mip_gap=config.mip_gap, backend=backend)
        timing["solve_time"] = result.wall_time
        sol = require_solution(result, f"N={n} trial={trial}")

        report = empirical_violation(inst, sol, test_set)
        row.update(
            objective=sol.objective,
            epsilon_hat=report.epsilon_hat,
            violated=report.violated,
            n_candidates=len(candidates),
            exceeds_bound=bool(report.epsilon_hat > bound),
        )
        if config.support:
            start = time.perf_counter()
            support = find_support_scenarios(inst, scen, restrict_to_candidates=True, backend=backend)
            timing["support_time"] = time.perf_counter() - start
            row.update(n_support=len(support.support_indices), nondegenerate=support.nondegenerate)
    except Exception as exc:
        logger.warning("Trial N=%d #%d failed: %s", n, trial, exc)
        row.update(status="error", error=str(exc))
    return row, timing


def _rows_frame(records: List[Dict[str, Any]], columns: List[str]) -> pd.DataFrame:
    frame = pd.DataFrame.from_records(records, columns=columns)
    return frame.sort_values(["N", "trial"], kind="mergesort").reset_index(drop=True)


def _to_csv(frame: pd.DataFrame) -> str:
    return frame.to_csv(index=False, float_format="%.10g", lineterminator="\n")


def write_report(report: ExperimentReport, out_dir: str) -> Dict[str, str]:
    """
    Write every report file under ``out_dir``.

    Raises:
        DataError: If a file cannot be written.
    """
    contents = {
        "rows": _to_csv(report.rows),
        "objective_risk": _to_csv(report.objective_risk),
        "violation_curve": _to_csv(report.violation_curve),
        "support_counts": _to_csv(report.support_counts),
        "timings": _to_csv(report.timings),
        "summary": json.dumps(report.summary, indent=2, sort_keys=True) + "\n",
    }
    files = {}
    for key, content in contents.items():
        path = os.path.join(out_dir, REPORT_FILES[key])
        if not safe_write_file(path, content):
            raise DataError(f"cannot write {path}")
        files[key] = path
    logger.info("Wrote experiment report to %s", out_dir)
    return files


def run_experiment(
    config: ExperimentConfig,
    jobs: Optional[int] = None,
    backend: BackendLike = None,
    write: bool = True,
) -> ExperimentReport:
    """
    Run the full sweep and (by default) write the report files.

    Args:
        config: Experiment configuration
        jobs: Concurrent trials; defaults to ``config.jobs``
        backend: Backend name or object; None reads the configuration
        write: Write the report files under ``config.out``

    Returns:
        ExperimentReport; failed trials are recorded with status ``error``

    Raises:
        DataError: On an unusable instance, distribution or test set.
        SolverError: If the backend is unavailable.
    """
    workers = jobs or config.jobs
    session = resolve_backend(backend)
    inst = experiment_instance(config)
    parse_distribution(config.distribution)

    test_seed = child_seed(config.seed, TEST_SET_KEY)
    test_set = sample_scenarios(inst, config.test_size, config.distribution, test_seed)
    cells = [(n, trial) for n in config.n_grid for trial in range(config.trials)]
    logger.info(
        "Experiment: %d cells, N grid %s, %d trials, %d workers",
        len(cells), config.n_grid, config.trials, workers,
    )

    rows: List[Dict[str, Any]] = []
    timings: List[Dict[str, Any]] = []
    if workers <= 1:
        for n, trial in cells:
            row, timing = run_trial(inst, test_set, config, n, trial, session)
            rows.append(row)
            timings.append(timing)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = {
                pool.submit(run_trial, inst, test_set, config, n, trial, session): (n, trial)
                for n, trial in cells
            }
            for future in as_completed(futures):
                row, timing = future.result()
                rows.append(row)
                timings.append(timing)

    rows_frame = _rows_frame(rows, ROW_COLUMNS)
    objective_risk, violation_curve, support_counts = aggregate_tables(
        rows_frame, inst.n_t, config.beta
    )
    summary = {
        "config": config.to_dict(),
        "config_hash": config.config_hash(),
        "instance": {"n_g": inst.n_g, "n_t": inst.n_t, "n_k": inst.n_k, "n_d": inst.n_d, "n_w": inst.n_w},
        "backend": session.name,
        "test_set": {"seed": test_seed, "size": config.test_size, "shared": True},
        "rows": int(len(rows_frame)),
        "failures": int((rows_frame["status"] != "ok").sum()),
        "max_support": None
        if rows_frame["n_support"].isna().all()
        else int(rows_frame["n_support"].max()),
        "trials_exceeding_bound": int(rows_frame["exceeds_bound"].eq(True).sum()),
    }
    report = ExperimentReport(
        rows=rows_frame,
        objective_risk=objective_risk,
        violation_curve=violation_curve,
        support_counts=support_counts,
        timings=_rows_frame(timings, TIMING_COLUMNS),
        summary=summary,
    )
    if write:
        report.files = write_report(report, config.out)
    if report.failures:
        logger.warning("%d of %d trials failed", report.failures, len(rows_frame))
    return report
