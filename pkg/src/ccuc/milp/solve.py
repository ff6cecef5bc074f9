"""
Solve driver, solution extraction and the enumeration oracle.
"""

import itertools
import logging
import time
from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Union

import numpy as np

from ..core.evaluation import commitment_violations
from ..core.instance import UCInstance, UCSolution
from ..errors import DataError, SolverError
from ..scenarios.sampling import ScenarioSet
from ..utils.config import DEFAULTS
from .backends import BaseBackend, SolveStatus, get_backend
from .formulation import build_suc
from .model import MilpModel, parse_name

logger = logging.getLogger(__name__)

DEFAULT_MIP_GAP = DEFAULTS["solver"]["mip_gap"]
ORACLE_MAX_BINARY_CELLS = 12

BackendLike = Union[str, BaseBackend, None]


@dataclass
class SolveResult:
    """Outcome of a solve with the extracted UC solution, if any."""

    status: SolveStatus
    solution: Optional[UCSolution] = None
    objective_bound: Optional[float] = None
    wall_time: float = 0.0
    info: Dict[str, Any] = field(default_factory=dict)

    @property
    def objective(self) -> Optional[float]:
        return None if self.solution is None else self.solution.objective

    @property
    def ok(self) -> bool:
        return self.status is SolveStatus.OPTIMAL and self.solution is not None


def resolve_backend(backend: BackendLike) -> BaseBackend:
    """Backend object for a name, an object, or None (configuration)."""
    if isinstance(backend, BaseBackend):
        return backend
    return get_backend(backend)


def extract_solution(
    model: MilpModel, x: np.ndarray, objective: float, mip_gap: float
) -> UCSolution:
    """
    Rebuild a UCSolution by parsing the model's variable names.

    Raises:
        DataError: If the model lacks UC dimensions or a name is malformed.
    """
    try:
        n_t, n_k, n_g = model.meta["n_t"], model.meta["n_k"], model.meta["n_g"]
    except KeyError as e:
        raise DataError("model carries no UC dimensions; build it with build_duc/build_suc") from e

    arrays = {
        "z": np.zeros((n_t, n_g)),
        "u": np.zeros((n_t, n_g)),
        "v": np.zeros((n_t, n_g)),
        "g": np.zeros((n_t, n_k + 1, n_g)),
        "r": np.zeros((n_t, n_g)),
    }
    for var, value in zip(model.variables, x):
        symbol, labels = parse_name(var.name)
        if symbol not in arrays:
            continue
        if symbol == "g":
            arrays["g"][labels["t"], labels["k"], labels["i"]] = value
        else:
            arrays[symbol][labels["t"], labels["i"]] = value
    # Clear solver noise below zero on nonnegative quantities.
    arrays["r"] = np.maximum(arrays["r"], 0.0)
    return UCSolution(objective=objective, mip_gap=mip_gap, **arrays)


def solve(
    model: MilpModel,
    mip_gap: Optional[float] = None,
    time_limit: Optional[float] = None,
    backend: BackendLike = None,
) -> SolveResult:
    """
    Solve a UC model with the configured backend.

    Args:
        model: Model from build_duc/build_suc
        mip_gap: Target relative gap (default 1e-4)
        time_limit: Seconds, or None/0 for no limit
        backend: Backend name, instance, or None for configuration

    Returns:
        SolveResult; ``solution`` is set whenever the backend has an incumbent

    Raises:
        SolverError: If the backend is unknown or unavailable.
    """
    gap_target = DEFAULT_MIP_GAP if mip_gap is None else float(mip_gap)
    session = resolve_backend(backend)

    start = time.perf_counter()
    raw = session.solve(model, gap_target, time_limit or None)
    wall_time = time.perf_counter() - start

    solution = None
    if raw.x is not None and raw.objective is not None:
        solution = extract_solution(model, raw.x, raw.objective, raw.gap or 0.0)

    if raw.status is SolveStatus.LIMIT:
        logger.warning("Solve stopped at a limit after %.2fs (%s)", wall_time, raw.message)
    logger.debug(
        "Solved %s with %s: status=%s objective=%s in %.3fs",
        model.name, session.name, raw.status.value, raw.objective, wall_time,
    )
    return SolveResult(
        status=raw.status,
        solution=solution,
        objective_bound=raw.bound,
        wall_time=wall_time,
        info={"backend": session.name, "gap": raw.gap, "message": raw.message},
    )


def solve_instance(
    inst: UCInstance,
    scen: ScenarioSet,
    mip_gap: Optional[float] = None,
    time_limit: Optional[float] = None,
    backend: BackendLike = None,
    include_redundant: bool = False,
) -> SolveResult:
    """Build and solve the scenario UC problem in one call."""
    model = build_suc(inst, scen, include_redundant=include_redundant)
    return solve(model, mip_gap=mip_gap, time_limit=time_limit, backend=backend)


def _commitment_from_pattern(inst: UCInstance, bits) -> tuple:
    """``z`` from a bit pattern and the cheapest consistent ``u``, ``v``."""
    z = np.array(bits, dtype=np.int64).reshape(inst.n_t, inst.n_g)
    z_prev = np.vstack([inst.fleet.z0.reshape(1, -1), z[:-1]])
    u = np.maximum(z - z_prev, 0)
    v = np.maximum(z_prev - z, 0)
    return z, u, v


def enumerate_oracle(
    inst: UCInstance,
    scen: ScenarioSet,
    backend: BackendLike = None,
) -> SolveResult:
    """
    Exhaustive reference solver for tiny instances.

    Enumerates every commitment pattern ``z`` (with the cheapest startup and
    shutdown indicators it implies), drops patterns that break the
    commitment-logic and minimum up/down rows, and solves the remaining
    dispatch LP for each with the binaries fixed. Startup and shutdown costs
    are nonnegative, so the cheapest (u, v) for a given z loses nothing.

    Raises:
        DataError: If ``n_g * n_t`` exceeds 12.
    """
    cells = inst.n_g * inst.n_t
    if cells > ORACLE_MAX_BINARY_CELLS:
        raise DataError(
            f"oracle limited to n_g * n_t <= {ORACLE_MAX_BINARY_CELLS}, got {cells}"
        )
    session = resolve_backend(backend)
    model = build_suc(inst, scen)
    z_cols = np.array([[model.index(f"z[t={t},i={i}]") for i in range(inst.n_g)] for t in range(inst.n_t)])
    u_cols = np.array([[model.index(f"u[t={t},i={i}]") for i in range(inst.n_g)] for t in range(inst.n_t)])
    v_cols = np.array([[model.index(f"v[t={t},i={i}]") for i in range(inst.n_g)] for t in range(inst.n_t)])

    start = time.perf_counter()
    tested = feasible = 0
    best: Optional[SolveResult] = None
    for bits in itertools.product((0, 1), repeat=cells):
        z, u, v = _commitment_from_pattern(inst, bits)
        if commitment_violations(inst, z, u, v):
            continue
        tested += 1
        fixed = {}
        for cols, values in ((z_cols, z), (u_cols, u), (v_cols, v)):
            fixed.update(zip(cols.ravel().tolist(), values.ravel().tolist()))
        raw = session.solve(model.with_fixed(fixed), 0.0, None)
        if raw.status is not SolveStatus.OPTIMAL or raw.x is None:
            continue
        feasible += 1
        if best is None or raw.objective < best.solution.objective:
            best = SolveResult(
                status=SolveStatus.OPTIMAL,
                solution=extract_solution(model, raw.x, raw.objective, 0.0),
                objective_bound=raw.objective,
            )

    wall_time = time.perf_counter() - start
    info = {"backend": session.name, "patterns_tested": tested, "patterns_feasible": feasible}
    logger.debug("Oracle tested %d patterns, %d feasible, %.2fs", tested, feasible, wall_time)
    if best is None:
        return SolveResult(status=SolveStatus.INFEASIBLE, wall_time=wall_time, info=info)
    best.wall_time = wall_time
    best.info = info
    return best


def require_solution(result: SolveResult, what: str = "scenario UC") -> UCSolution:
    """
    Return the solution of an optimal/feasible result.

    Raises:
        SolverError: When the result carries no usable solution.
    """
    if result.solution is None or result.status in (
        SolveStatus.INFEASIBLE,
        SolveStatus.UNBOUNDED,
    ):
        raise SolverError(f"{what} has no solution (status {result.status.value})")
    return result.solution
