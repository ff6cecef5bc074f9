"""
Out-of-sample violation and support-scenario analysis.
"""

from .violation import ViolationReport, clopper_pearson, empirical_violation, is_violated
from .support import (
    SupportReport,
    find_support_scenarios,
    identical_generators,
    objectives_differ,
    theoretical_curve,
)

__all__ = [
    "ViolationReport",
    "clopper_pearson",
    "empirical_violation",
    "is_violated",
    "SupportReport",
    "find_support_scenarios",
    "identical_generators",
    "objectives_differ",
    "theoretical_curve",
]
