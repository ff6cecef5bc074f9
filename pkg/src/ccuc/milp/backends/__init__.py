"""
MILP backends and their registry.
"""

from typing import Optional

from ...errors import SolverError
from ...utils.config import get_setting, load_config, solver_backend_name
from .base import BackendRegistry, BackendResult, BaseBackend, SolveStatus
from .pyomo_backend import PyomoBackend
from .scipy_backend import ScipyBackend


def register_all_backends(registry: BackendRegistry, pyomo_solver: Optional[str] = None) -> None:
    """Register every shipped backend."""
    registry.register(ScipyBackend())
    registry.register(PyomoBackend(pyomo_solver or "appsi_highs"))


def get_backend(name: Optional[str] = None) -> BaseBackend:
    """
    Resolve a backend by name; ``None`` reads ``CCUC_SOLVER`` and then the
    ``solver.backend`` config key.

    Raises:
        SolverError: If the backend is unknown or its solver is missing.
    """
    config = load_config()
    if name is None:
        name = solver_backend_name(config)
    registry = BackendRegistry()
    register_all_backends(registry, get_setting(config, "solver.pyomo_solver"))
    backend = registry.get_backend(name)
    if backend is None:
        raise SolverError(f"unknown solver backend {name!r}; choose from {registry.names()}")
    if not backend.available():
        raise SolverError(f"solver backend {name!r} is not available")
    return backend


__all__ = [
    "BackendRegistry",
    "BackendResult",
    "BaseBackend",
    "SolveStatus",
    "PyomoBackend",
    "ScipyBackend",
    "get_backend",
    "register_all_backends",
]
