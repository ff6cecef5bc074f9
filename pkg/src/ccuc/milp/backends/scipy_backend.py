"""
HiGHS through ``scipy.optimize.milp``.
"""

import logging
from typing import Optional

import numpy as np

from ..model import MilpModel
from .base import BackendResult, BaseBackend, SolveStatus, classify

logger = logging.getLogger(__name__)

# scipy.optimize.milp status codes
_OPTIMAL, _LIMIT, _INFEASIBLE, _UNBOUNDED = 0, 1, 2, 3


class ScipyBackend(BaseBackend):
    """Backend built on scipy's HiGHS MILP interface."""

    name = "scipy"

    def available(self) -> bool:
        try:
            from scipy.optimize import milp  # noqa: F401
        except ImportError:
            return False
        return True

    def solve(
        self, model: MilpModel, mip_gap: float, time_limit: Optional[float]
    ) -> BackendResult:
        from scipy.optimize import Bounds, LinearConstraint, milp

        lower, upper = model.variable_bounds()
        row_lo, row_hi = model.row_bounds()
        constraints = []
        if model.n_rows:
            constraints.append(LinearConstraint(model.constraint_matrix(), row_lo, row_hi))

        options = {"disp": False, "mip_rel_gap": float(mip_gap)}
        if time_limit:
            options["time_limit"] = float(time_limit)

        res = milp(
            c=model.objective_vector(),
            constraints=constraints or None,
            integrality=model.integrality(),
            bounds=Bounds(lower, upper),
            options=options,
        )

        x = None if res.x is None else np.asarray(res.x, dtype=float)
        objective = None if x is None else float(res.fun)
        gap = getattr(res, "mip_gap", None)
        bound = getattr(res, "mip_dual_bound", None)
        if bound is None and res.status == _OPTIMAL:
            bound = objective

        if res.status == _INFEASIBLE:
            status = SolveStatus.INFEASIBLE
        elif res.status == _UNBOUNDED:
            status = SolveStatus.UNBOUNDED
        else:
            status = classify(res.status == _OPTIMAL, x is not None, gap, mip_gap)

        logger.debug("scipy/HiGHS finished: status=%s message=%s", status.value, res.message)
        return BackendResult(
            status=status,
            x=x,
            objective=objective,
            bound=None if bound is None else float(bound),
            gap=None if gap is None else float(gap),
            message=str(res.message),
        )
