"""
Base backend class and registry for MILP solvers.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional

import numpy as np

from ..model import MilpModel

logger = logging.getLogger(__name__)


class SolveStatus(Enum):
    """Outcome of a solve."""

    OPTIMAL = "optimal"
    FEASIBLE = "feasible"  # incumbent with gap above the target
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    LIMIT = "limit"  # time or iteration limit, incumbent optional


@dataclass
class BackendResult:
    """Raw answer of a backend session."""

    status: SolveStatus
    x: Optional[np.ndarray] = None
    objective: Optional[float] = None
    bound: Optional[float] = None
    gap: Optional[float] = None
    message: str = ""


def classify(
    finished: bool, has_solution: bool, gap: Optional[float], mip_gap: float
) -> SolveStatus:
    """Map a finished/limited run with its gap onto a SolveStatus."""
    if not finished:
        return SolveStatus.LIMIT
    if has_solution and gap is not None and gap > mip_gap + 1e-12:
        return SolveStatus.FEASIBLE
    return SolveStatus.OPTIMAL


class BaseBackend(ABC):
    """
    Abstract MILP backend.

    Every call to :meth:`solve` opens a private session, so one backend
    object may serve concurrent solves.
    """

    name = "base"

    @abstractmethod
    def available(self) -> bool:
        """True when the underlying solver can be imported."""

    @abstractmethod
    def solve(
        self, model: MilpModel, mip_gap: float, time_limit: Optional[float]
    ) -> BackendResult:
        """
        Solve ``model`` to the relative gap ``mip_gap``.

        Args:
            model: Model to solve
            mip_gap: Target relative MIP gap
            time_limit: Wall-clock limit in seconds, or None

        Returns:
            BackendResult with status, values and bound
        """


class BackendRegistry:
    """
    Registry for backend discovery by name.

    Each instance maintains its own independent set of backends.
    """

    def __init__(self) -> None:
        self._backends: Dict[str, BaseBackend] = {}

    def register(self, backend: BaseBackend) -> None:
        self._backends[backend.name] = backend

    def unregister(self, name: str) -> None:
        self._backends.pop(name, None)

    def get_backend(self, name: str) -> Optional[BaseBackend]:
        return self._backends.get(name)

    def names(self) -> List[str]:
        return list(self._backends)

    def available_names(self) -> List[str]:
        return [name for name, backend in self._backends.items() if backend.available()]
