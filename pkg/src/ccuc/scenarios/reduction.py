"""
Net-demand scenario reduction.

Scenario constraints only bound total supply per snapshot, so at each
snapshot the scenario with the largest net demand error dominates all the
others. Collecting the maximizer of every snapshot gives at most ``n_t``
candidate support scenarios.
"""

from typing import List

import numpy as np

from ..errors import DataError
from .sampling import ScenarioSet


def net_errors(scen: ScenarioSet) -> np.ndarray:
    """``(N, n_t)`` array of total load error minus total wind error."""
    return scen.d_err.sum(axis=2) - scen.w_err.sum(axis=2)


def net_error(scen: ScenarioSet, i: int, t: int) -> float:
    """
    Net demand error of scenario ``i`` at snapshot ``t``.

    Raises:
        DataError: If an index is out of range.
    """
    if not 0 <= i < scen.N:
        raise DataError(f"scenario index {i} out of range [0, {scen.N})")
    if not 0 <= t < scen.n_t:
        raise DataError(f"snapshot index {t} out of range [0, {scen.n_t})")
    return float(scen.d_err[i, t].sum() - scen.w_err[i, t].sum())


def reduce_scenarios(scen: ScenarioSet) -> List[int]:
    """
    Indices of the per-snapshot net-error maximizers, ascending and unique.

    Ties go to the lowest scenario index. An empty set reduces to nothing.
    """
    if scen.N == 0:
        return []
    # argmax returns the first maximizer, i.e. the lowest index on ties.
    winners = np.argmax(net_errors(scen), axis=0)
    return sorted({int(i) for i in winners})
