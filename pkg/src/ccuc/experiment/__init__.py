"""
Monte Carlo experiments over the number of training scenarios.
"""

from .config import ExperimentConfig, experiment_config_from_dict, load_experiment_config
from .runner import ExperimentReport, child_seed, run_experiment, run_trial, write_report
from .tables import aggregate_tables

__all__ = [
    "ExperimentConfig",
    "experiment_config_from_dict",
    "load_experiment_config",
    "ExperimentReport",
    "child_seed",
    "run_experiment",
    "run_trial",
    "write_report",
    "aggregate_tables",
]
