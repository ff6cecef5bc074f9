"""
ccuc - chance-constrained unit commitment with the scenario approach.
"""

__version__ = "1.0.0"
__author__ = "ccuc Contributors"

from .core.instance import UCInstance, UCSolution
from .core.synthetic import synth_instance
from .core.storage import load_instance, save_instance
from .scenarios.bounds import RiskSpec, epsilon_bound, required_sample_size
from .scenarios.sampling import ScenarioSet, sample_scenarios
from .scenarios.reduction import reduce_scenarios
from .milp.formulation import build_duc, build_suc
from .milp.solve import solve
from .risk.violation import empirical_violation
from .risk.support import find_support_scenarios

__all__ = [
    "UCInstance",
    "UCSolution",
    "synth_instance",
    "load_instance",
    "save_instance",
    "RiskSpec",
    "epsilon_bound",
    "required_sample_size",
    "ScenarioSet",
    "sample_scenarios",
    "reduce_scenarios",
    "build_duc",
    "build_suc",
    "solve",
    "empirical_violation",
    "find_support_scenarios",
]
