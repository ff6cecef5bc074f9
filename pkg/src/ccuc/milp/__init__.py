"""
MILP layer: model container, UC formulations, backends, solve driver and
file export.
"""

from .model import Family, MilpModel, Sense, VarKind, format_name, parse_name
from .formulation import build_duc, build_suc
from .backends import SolveStatus, get_backend
from .solve import (
    SolveResult,
    enumerate_oracle,
    extract_solution,
    require_solution,
    solve,
    solve_instance,
)
from .writers import export_model, lp_text, mps_text, write_lp, write_mps

__all__ = [
    "Family",
    "MilpModel",
    "Sense",
    "VarKind",
    "format_name",
    "parse_name",
    "build_duc",
    "build_suc",
    "SolveStatus",
    "get_backend",
    "SolveResult",
    "enumerate_oracle",
    "extract_solution",
    "require_solution",
    "solve",
    "solve_instance",
    "export_model",
    "lp_text",
    "mps_text",
    "write_lp",
    "write_mps",
]
