"""
Out-of-sample violation of the scenario supply constraint.

A solution violates a trajectory when, at some snapshot and contingency,
total dispatch falls short of the realized net demand.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np
from scipy import stats

from ..core.evaluation import DEFAULT_TOL
from ..core.instance import UCInstance, UCSolution, check_solution_shape
from ..errors import DataError
from ..scenarios.sampling import ScenarioSet, check_compatible

logger = logging.getLogger(__name__)

CONFIDENCE = 0.99


def clopper_pearson(violated: int, tested: int, confidence: float = CONFIDENCE) -> Tuple[float, float]:
    """Exact two-sided binomial confidence interval for ``violated / tested``."""
    if tested <= 0:
        raise DataError("confidence interval needs at least one trial")
    alpha = 1.0 - confidence
    low = 0.0 if violated == 0 else float(stats.beta.ppf(alpha / 2, violated, tested - violated + 1))
    high = 1.0 if violated == tested else float(stats.beta.ppf(1 - alpha / 2, violated + 1, tested - violated))
    return low, high


@dataclass(frozen=True)
class ViolationReport:
    """Counts and per-trajectory flags of an out-of-sample test."""

    tested: int
    violated: int
    epsilon_hat: float
    per_scenario: np.ndarray  # bool (M,)
    worst_shortfall: float
    ci_low: float
    ci_high: float

    def to_dict(self) -> Dict[str, Any]:
        return {
            "tested": self.tested,
            "violated": self.violated,
            "epsilon_hat": self.epsilon_hat,
            "per_scenario": self.per_scenario.astype(int).tolist(),
            "worst_shortfall": self.worst_shortfall,
            "ci_low": self.ci_low,
            "ci_high": self.ci_high,
            "confidence": CONFIDENCE,
        }


def _deficits(inst: UCInstance, sol: UCSolution, d_err: np.ndarray, w_err: np.ndarray) -> np.ndarray:
    """``(M, n_t, n_k + 1)`` realized net demand minus total dispatch."""
    net = inst.net_forecast()[None, :] + d_err.sum(axis=2) - w_err.sum(axis=2)
    supply = sol.g.sum(axis=2)
    return net[:, :, None] - supply[None, :, :]


def is_violated(
    inst: UCInstance,
    sol: UCSolution,
    d_err,
    w_err,
    tol: float = DEFAULT_TOL,
) -> Tuple[bool, float]:
    """
    Test one error trajectory against a solution.

    Args:
        inst: Instance
        sol: Solution feasible for the deterministic constraints
        d_err: Load errors, shape ``(n_t, n_d)``
        w_err: Wind errors, shape ``(n_t, n_w)``
        tol: Absolute supply tolerance in MW

    Returns:
        (violated, worst shortfall in MW; 0 when not violated)

    Raises:
        DataError: On dimension mismatch.
    """
    check_solution_shape(inst, sol)
    d_err = np.asarray(d_err, dtype=float)
    w_err = np.asarray(w_err, dtype=float)
    if w_err.size == 0:
        w_err = np.zeros((inst.n_t, inst.n_w))
    if d_err.shape != (inst.n_t, inst.n_d) or w_err.shape != (inst.n_t, inst.n_w):
        raise DataError(
            f"trajectory shapes {d_err.shape}/{w_err.shape} do not match "
            f"({inst.n_t}, {inst.n_d})/({inst.n_t}, {inst.n_w})"
        )
    worst = float(_deficits(inst, sol, d_err[None], w_err[None]).max())
    return worst > tol, max(worst, 0.0)


def empirical_violation(
    inst: UCInstance,
    sol: UCSolution,
    test_set: ScenarioSet,
    tol: float = DEFAULT_TOL,
) -> ViolationReport:
    """
    Fraction of test trajectories the solution fails to cover.

    The test set must be independent of the training scenarios; callers
    record the seeds they used.

    Raises:
        DataError: If the test set is empty or does not fit the instance.
    """
    if test_set.N == 0:
        raise DataError("empirical violation needs a non-empty test set")
    check_compatible(inst, test_set)
    check_solution_shape(inst, sol)

    worst = _deficits(inst, sol, test_set.d_err, test_set.w_err).max(axis=(1, 2))
    per_scenario = worst > tol
    violated = int(per_scenario.sum())
    ci_low, ci_high = clopper_pearson(violated, test_set.N)
    report = ViolationReport(
        tested=test_set.N,
        violated=violated,
        epsilon_hat=violated / test_set.N,
        per_scenario=per_scenario,
        worst_shortfall=float(max(worst.max(), 0.0)),
        ci_low=ci_low,
        ci_high=ci_high,
    )
    logger.debug("Empirical violation %d/%d = %.4f", violated, test_set.N, report.epsilon_hat)
    return report
