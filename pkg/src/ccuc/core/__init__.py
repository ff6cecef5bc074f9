"""
Unit-commitment data model, synthetic instances, evaluation and storage.
"""

from .instance import (
    ContingencySet,
    ForecastSeries,
    GeneratorFleet,
    UCInstance,
    UCSolution,
    Violation,
    validate_instance,
)
from .evaluation import check_deterministic_feasibility, evaluate_cost
from .synthetic import synth_instance
from .storage import load_instance, load_solution, save_instance, save_solution

__all__ = [
    "ContingencySet",
    "ForecastSeries",
    "GeneratorFleet",
    "UCInstance",
    "UCSolution",
    "Violation",
    "validate_instance",
    "check_deterministic_feasibility",
    "evaluate_cost",
    "synth_instance",
    "load_instance",
    "load_solution",
    "save_instance",
    "save_solution",
]
