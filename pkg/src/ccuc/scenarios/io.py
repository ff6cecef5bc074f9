"""
Wide-format CSV scenario files.

One row per (scenario, t); columns ``scenario,t,d_1..d_{n_d},w_1..w_{n_w}``
hold the load and wind forecast errors in MW. Scenario and snapshot indices
are 0-based.
"""

import logging
import os
from typing import List

import numpy as np
import pandas as pd

from ..errors import DataError
from ..utils.files import resolve_path
from .sampling import ScenarioSet

logger = logging.getLogger(__name__)


def scenario_columns(n_d: int, n_w: int) -> List[str]:
    """Header of a scenario file."""
    return (
        ["scenario", "t"]
        + [f"d_{j}" for j in range(1, n_d + 1)]
        + [f"w_{j}" for j in range(1, n_w + 1)]
    )


def scenarios_to_frame(scen: ScenarioSet) -> pd.DataFrame:
    """Flatten a scenario set into the wide table."""
    n, n_t = scen.N, scen.n_t
    frame = pd.DataFrame(
        np.hstack(
            [
                scen.d_err.reshape(n * n_t, scen.n_d),
                scen.w_err.reshape(n * n_t, scen.n_w),
            ]
        ),
        columns=scenario_columns(scen.n_d, scen.n_w)[2:],
    )
    frame.insert(0, "t", np.tile(np.arange(n_t), n))
    frame.insert(0, "scenario", np.repeat(np.arange(n), n_t))
    return frame


def write_scenarios(scen: ScenarioSet, path: str) -> None:
    """
    Write a scenario CSV file.

    Raises:
        OSError: If the file cannot be written.
    """
    resolved = resolve_path(path)
    os.makedirs(os.path.dirname(resolved), exist_ok=True)
    scenarios_to_frame(scen).to_csv(resolved, index=False, float_format="%.10g")
    logger.info("Wrote %d scenarios to %s", scen.N, path)


def read_scenarios(path: str) -> ScenarioSet:
    """
    Read a scenario CSV file.

    Raises:
        DataError: If the file is missing, has an unexpected header, or does
            not cover every (scenario, t) pair exactly once.
    """
    try:
        frame = pd.read_csv(resolve_path(path))
    except (OSError, ValueError, pd.errors.ParserError) as e:
        raise DataError(f"cannot read scenario file {path}: {e}") from e

    d_cols = [c for c in frame.columns if c.startswith("d_")]
    w_cols = [c for c in frame.columns if c.startswith("w_")]
    if list(frame.columns) != scenario_columns(len(d_cols), len(w_cols)) or not d_cols:
        raise DataError(f"unexpected header in {path}: {list(frame.columns)}")

    frame = frame.sort_values(["scenario", "t"], kind="mergesort")
    scenarios = frame["scenario"].to_numpy()
    times = frame["t"].to_numpy()
    n = int(scenarios.max()) + 1 if len(frame) else 0
    n_t = int(times.max()) + 1 if len(frame) else 0
    if n == 0 or len(frame) != n * n_t:
        raise DataError(f"{path} does not hold a complete scenario x snapshot grid")
    if not (
        np.array_equal(scenarios, np.repeat(np.arange(n), n_t))
        and np.array_equal(times, np.tile(np.arange(n_t), n))
    ):
        raise DataError(f"{path} has missing or duplicate (scenario, t) rows")

    d_err = frame[d_cols].to_numpy(dtype=float).reshape(n, n_t, len(d_cols))
    w_err = frame[w_cols].to_numpy(dtype=float).reshape(n, n_t, len(w_cols))
    logger.debug("Read %d scenarios (n_t=%d) from %s", n, n_t, path)
    return ScenarioSet(d_err=d_err, w_err=w_err, seed=0, descriptor="file")
