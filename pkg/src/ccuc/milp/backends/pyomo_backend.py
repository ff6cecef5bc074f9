"""
Pyomo backend: translates a MilpModel into a ConcreteModel and hands it to
any solver Pyomo knows (``appsi_highs`` by default, also ``highs``, ``cbc``,
``glpk``, ``gurobi``, ``cplex``).
"""

import logging
import math
from typing import Any, Dict, Optional

import numpy as np

from ...errors import SolverError
from ..model import MilpModel, VarKind
from .base import BackendResult, BaseBackend, SolveStatus, classify

logger = logging.getLogger(__name__)

DEFAULT_SOLVER = "appsi_highs"


def _gap_and_time_options(
    solver_name: str, mip_gap: float, time_limit: Optional[float]
) -> Dict[str, Any]:
    """Solver-specific option names for the MIP gap and time limit."""
    options: Dict[str, Any] = {}
    if solver_name in ("cbc", "asl:cbc"):
        options["ratio"] = mip_gap
        if time_limit:
            options["seconds"] = time_limit
    elif solver_name == "glpk":
        options["mipgap"] = mip_gap
        if time_limit:
            options["tmlim"] = int(math.ceil(time_limit))
    elif solver_name == "gurobi":
        options["MIPGap"] = mip_gap
        if time_limit:
            options["TimeLimit"] = time_limit
    elif solver_name == "cplex":
        options["mip_tolerances_mipgap"] = mip_gap
        if time_limit:
            options["timelimit"] = time_limit
    else:  # highs / appsi_highs
        options["mip_rel_gap"] = mip_gap
        if time_limit:
            options["time_limit"] = time_limit
    return options


class PyomoBackend(BaseBackend):
    """Backend built on Pyomo's SolverFactory."""

    name = "pyomo"

    def __init__(self, solver_name: str = DEFAULT_SOLVER) -> None:
        self.solver_name = solver_name

    def available(self) -> bool:
        try:
            from pyomo.environ import SolverFactory
        except ImportError:
            return False
        try:
            return bool(SolverFactory(self.solver_name).available(exception_flag=False))
        except Exception:
            return False

    def _to_pyomo(self, model: MilpModel):
        import pyomo.environ as pyo

        m = pyo.ConcreteModel(name=model.name)
        cols = range(model.n_variables)

        def _domain(_, j):
            return pyo.Binary if model.variables[j].kind is VarKind.BINARY else pyo.Reals

        def _bounds(_, j):
            var = model.variables[j]
            lower = None if np.isinf(var.lower) else var.lower
            upper = None if np.isinf(var.upper) else var.upper
            return lower, upper

        m.x = pyo.Var(cols, domain=_domain, bounds=_bounds)

        matrix = model.constraint_matrix()
        row_lo, row_hi = model.row_bounds()

        def _row(_, r):
            start, end = matrix.indptr[r], matrix.indptr[r + 1]
            body = sum(
                float(val) * m.x[int(col)]
                for col, val in zip(matrix.indices[start:end], matrix.data[start:end])
            )
            lower = None if np.isinf(row_lo[r]) else float(row_lo[r])
            upper = None if np.isinf(row_hi[r]) else float(row_hi[r])
            if isinstance(body, (int, float)):
                return pyo.Constraint.Skip
            return (lower, body, upper)

        m.rows = pyo.Constraint(range(model.n_rows), rule=_row)
        m.obj = pyo.Objective(
            expr=sum(coef * m.x[col] for col, coef in model.objective_terms().items()),
            sense=pyo.minimize,
        )
        return m

    def solve(
        self, model: MilpModel, mip_gap: float, time_limit: Optional[float]
    ) -> BackendResult:
        try:
            import pyomo.environ as pyo
            from pyomo.opt import TerminationCondition
        except ImportError as e:
            raise SolverError("pyomo backend selected but pyomo is not installed") from e

        m = self._to_pyomo(model)
        solver = pyo.SolverFactory(self.solver_name)
        if not solver.available(exception_flag=False):
            raise SolverError(f"pyomo solver {self.solver_name!r} is not available")
        for key, value in _gap_and_time_options(self.solver_name, mip_gap, time_limit).items():
            solver.options[key] = value

        results = solver.solve(m, load_solutions=False)
        condition = results.solver.termination_condition

        if condition in (TerminationCondition.infeasible, TerminationCondition.infeasibleOrUnbounded):
            return BackendResult(status=SolveStatus.INFEASIBLE, message=str(condition))
        if condition == TerminationCondition.unbounded:
            return BackendResult(status=SolveStatus.UNBOUNDED, message=str(condition))

        x = None
        objective = None
        if len(results.solution) > 0:
            m.solutions.load_from(results)
            x = np.array([pyo.value(m.x[j], exception=False) or 0.0 for j in range(model.n_variables)])
            objective = float(pyo.value(m.obj))

        bound = getattr(results.problem, "lower_bound", None)
        bound = float(bound) if bound is not None and np.isfinite(float(bound)) else objective
        gap = None
        if objective is not None and bound is not None:
            gap = abs(objective - bound) / max(abs(objective), 1e-10)

        finished = condition in (TerminationCondition.optimal, TerminationCondition.feasible)
        status = classify(finished, x is not None, gap, mip_gap)
        logger.debug("pyomo/%s finished: %s", self.solver_name, condition)
        return BackendResult(
            status=status, x=x, objective=objective, bound=bound, gap=gap, message=str(condition)
        )
