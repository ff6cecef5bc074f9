"""
Scenario sampling, scenario files, sample complexity and reduction.
"""

from .sampling import ScenarioSet, parse_distribution, sample_scenarios
from .io import read_scenarios, write_scenarios
from .bounds import (
    EpsilonBound,
    RiskSpec,
    binomial_tail,
    epsilon_bound,
    required_sample_size,
)
from .reduction import net_error, net_errors, reduce_scenarios

__all__ = [
    "ScenarioSet",
    "parse_distribution",
    "sample_scenarios",
    "read_scenarios",
    "write_scenarios",
    "EpsilonBound",
    "RiskSpec",
    "binomial_tail",
    "epsilon_bound",
    "required_sample_size",
    "net_error",
    "net_errors",
    "reduce_scenarios",
]
