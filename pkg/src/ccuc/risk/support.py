"""
Support-scenario detection by removal, and the theoretical violation curve.

Scenario ``i`` is a support scenario when dropping it lowers the optimal
objective. Only the per-snapshot net-error maximizers can be support
scenarios, so the default mode tests just those candidates; brute-force mode
tests every index.
"""

import logging
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass, field
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from ..core.instance import FLEET_FIELDS, UCInstance
from ..errors import SolverError
from ..milp.formulation import build_suc
from ..milp.solve import BackendLike, resolve_backend, require_solution, solve
from ..scenarios.bounds import epsilon_bound
from ..scenarios.reduction import reduce_scenarios
from ..scenarios.sampling import ScenarioSet

logger = logging.getLogger(__name__)

# Removal tests compare objectives to 1e-6 relative; solve well below that.
SUPPORT_MIP_GAP = 1e-9
OBJECTIVE_REL_TOL = 1e-6


@dataclass(frozen=True)
class SupportReport:
    """Outcome of the removal test."""

    support_indices: List[int]
    candidate_indices: List[int]
    base_objective: float
    support_objective: float
    nondegenerate: bool
    identical_generators: List[List[int]] = field(default_factory=list)
    removal_objectives: Dict[int, float] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "support_indices": list(self.support_indices),
            "candidate_indices": list(self.candidate_indices),
            "n_support": len(self.support_indices),
            "n_candidates": len(self.candidate_indices),
            "base_objective": self.base_objective,
            "support_objective": self.support_objective,
            "nondegenerate": self.nondegenerate,
            "identical_generators": [list(group) for group in self.identical_generators],
            "removal_objectives": {str(i): obj for i, obj in sorted(self.removal_objectives.items())},
        }


def objectives_differ(a: float, b: float, rel_tol: float = OBJECTIVE_REL_TOL) -> bool:
    """True when two objectives differ by more than ``rel_tol`` relative."""
    return abs(a - b) > rel_tol * max(abs(a), abs(b), 1.0)


def identical_generators(inst: UCInstance) -> List[List[int]]:
    """Groups (size >= 2) of generators whose parameters all coincide."""
    fleet = inst.fleet
    params = np.column_stack([np.asarray(getattr(fleet, name), dtype=float) for name in FLEET_FIELDS])
    groups: Dict[Tuple[float, ...], List[int]] = {}
    for i, row in enumerate(params):
        groups.setdefault(tuple(row.tolist()), []).append(i)
    return sorted(group for group in groups.values() if len(group) > 1)


def _objective(
    inst: UCInstance,
    scen: ScenarioSet,
    backend,
    mip_gap: float,
    what: str,
) -> float:
    result = solve(build_suc(inst, scen), mip_gap=mip_gap, backend=backend)
    return require_solution(result, what).objective


def find_support_scenarios(
    inst: UCInstance,
    scen: ScenarioSet,
    restrict_to_candidates: bool = True,
    backend: BackendLike = None,
    mip_gap: float = SUPPORT_MIP_GAP,
    jobs: int = 1,
    rel_tol: float = OBJECTIVE_REL_TOL,
) -> SupportReport:
    """
    Find the scenarios whose removal changes the optimal objective.

    Args:
        inst: Instance
        scen: Training scenarios
        restrict_to_candidates: Test only the net-error maximizers
            (otherwise every index, solving the full problem each time)
        backend: Backend name or object; None reads the configuration
        mip_gap: Gap for every solve; keep it far below ``rel_tol``
        jobs: Concurrent removal solves
        rel_tol: Relative objective change that marks a support scenario

    Returns:
        SupportReport with ascending index lists

    Raises:
        SolverError: If the base problem cannot be solved.
    """
    session = resolve_backend(backend)
    candidates = reduce_scenarios(scen)

    def reduced(scenarios: ScenarioSet) -> ScenarioSet:
        if not restrict_to_candidates:
            return scenarios
        return scenarios.subset(reduce_scenarios(scenarios))

    base = _objective(inst, reduced(scen), session, mip_gap, "base scenario UC")
    tested: Sequence[int] = candidates if restrict_to_candidates else range(scen.N)

    def _removal(i: int) -> Tuple[int, float]:
        return i, _objective(inst, reduced(scen.without(i)), session, mip_gap, f"removal of scenario {i}")

    removal: Dict[int, float] = {}
    if jobs <= 1:
        for i in tested:
            removal[i] = _removal(i)[1]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(_removal, i): i for i in tested}
            for future in as_completed(futures):
                try:
                    i, objective = future.result()
                except SolverError as exc:
                    logger.error("Removal of scenario %d failed: %s", futures[future], exc)
                    raise
                removal[i] = objective

    support = sorted(i for i, obj in removal.items() if objectives_differ(base, obj, rel_tol))
    support_objective = _objective(inst, scen.subset(support), session, mip_gap, "support-only scenario UC")
    nondegenerate = not objectives_differ(base, support_objective, rel_tol)

    report = SupportReport(
        support_indices=support,
        candidate_indices=candidates,
        base_objective=base,
        support_objective=support_objective,
        nondegenerate=nondegenerate,
        identical_generators=identical_generators(inst),
        removal_objectives=removal,
    )
    logger.debug(
        "Support scenarios: %d of %d tested (%d candidates), nondegenerate=%s",
        len(support), len(tested), len(candidates), nondegenerate,
    )
    if not nondegenerate:
        logger.warning(
            "Degenerate support set: objective over S %.6f differs from %.6f",
            support_objective, base,
        )
    return report


def theoretical_curve(n_t: int, beta: float, n_grid: Sequence[int]) -> List[Tuple[int, float]]:
    """
    Guaranteed violation level per N with ``h = n_t``.

    Grid entries below ``n_t`` give the vacuous level 1.0.
    """
    return [(int(n), epsilon_bound(int(n), beta, n_t).epsilon) for n in n_grid]
