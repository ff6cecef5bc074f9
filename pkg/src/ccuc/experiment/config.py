"""
Experiment configuration files.

An experiment config is a TOML document whose keys mirror the
:class:`ExperimentConfig` fields::

    distribution = "gaussian:0.05"
    n_grid = [100, 400, 1000]
    trials = 10
    beta = 0.0001
    seed = 7

    [synth]
    n_g = 10
    n_t = 24
    n_k = 10
    n_d = 20
    n_w = 3

``synth`` may also name a preset: ``synth = "ieee118"``.
"""

import logging
from dataclasses import asdict, dataclass, field, fields
from typing import Any, Dict, List, Optional, Tuple

from ..errors import DataError
from ..utils.config import load_toml
from ..utils.hashing import compute_integrity_hash

logger = logging.getLogger(__name__)

SYNTH_KEYS = ("n_g", "n_t", "n_k", "n_d", "n_w")
DESK_SCALE = (10, 24, 10, 20, 3)
# Shape of the 118-bus study, for users with the compute to match it.
IEEE118_SHAPE = (54, 24, 54, 99, 5)
SYNTH_PRESETS = {"desk": DESK_SCALE, "ieee118": IEEE118_SHAPE}


@dataclass
class ExperimentConfig:
    """Monte Carlo sweep over the number of training scenarios."""

    instance: Optional[str] = None  # instance JSON; synthetic when unset
    synth: Tuple[int, ...] = DESK_SCALE
    distribution: str = "gaussian:0.05"
    n_grid: List[int] = field(default_factory=lambda: [100, 400, 1000])
    trials: int = 10
    test_size: int = 10_000
    beta: float = 1e-4
    seed: int = 0
    mip_gap: float = 1e-4
    out: str = "experiment"
    jobs: int = 1
    reduce: bool = True
    support: bool = True

    def __post_init__(self):
        self.synth = tuple(int(v) for v in self.synth)
        self.n_grid = [int(n) for n in self.n_grid]
        if len(self.synth) != len(SYNTH_KEYS):
            raise DataError(f"synth needs {len(SYNTH_KEYS)} counts {SYNTH_KEYS}, got {self.synth}")
        if self.trials < 1:
            raise DataError(f"trials must be >= 1, got {self.trials}")
        if not self.n_grid or min(self.n_grid) < 1:
            raise DataError(f"n_grid entries must be >= 1, got {self.n_grid}")
        if self.test_size < 1:
            raise DataError(f"test_size must be >= 1, got {self.test_size}")
        if not 0.0 < self.beta < 1.0:
            raise DataError(f"beta must lie in (0, 1), got {self.beta}")
        if self.seed < 0:
            raise DataError(f"seed must be non-negative, got {self.seed}")
        if self.mip_gap < 0:
            raise DataError(f"mip_gap must be >= 0, got {self.mip_gap}")
        if self.jobs < 1:
            raise DataError(f"jobs must be >= 1, got {self.jobs}")

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["synth"] = dict(zip(SYNTH_KEYS, self.synth))
        return data

    def config_hash(self) -> str:
        """SHA3-256 of the canonical config; identifies the run."""
        return compute_integrity_hash(self.to_dict())


def _synth_from(value: Any) -> Tuple[int, ...]:
    if isinstance(value, str):
        if value not in SYNTH_PRESETS:
            raise DataError(f"unknown synth preset {value!r}, expected one of {sorted(SYNTH_PRESETS)}")
        return SYNTH_PRESETS[value]
    if isinstance(value, dict):
        unknown = set(value) - set(SYNTH_KEYS)
        if unknown:
            raise DataError(f"unknown synth keys: {sorted(unknown)}")
        merged = dict(zip(SYNTH_KEYS, DESK_SCALE))
        merged.update(value)
        return tuple(int(merged[key]) for key in SYNTH_KEYS)
    if isinstance(value, (list, tuple)):
        return tuple(int(v) for v in value)
    raise DataError(f"synth must be a preset name, a table or a list, got {value!r}")


def experiment_config_from_dict(data: Dict[str, Any]) -> ExperimentConfig:
    """
    Build a config from parsed TOML.

    Raises:
        DataError: On unknown keys or invalid values.
    """
    known = {f.name for f in fields(ExperimentConfig)}
    unknown = set(data) - known
    if unknown:
        raise DataError(f"unknown experiment config keys: {sorted(unknown)}")
    values = dict(data)
    if "synth" in values:
        values["synth"] = _synth_from(values["synth"])
    try:
        return ExperimentConfig(**values)
    except TypeError as e:
        raise DataError(f"invalid experiment config: {e}") from e


def load_experiment_config(path: str) -> ExperimentConfig:
    """
    Read an experiment config file.

    Raises:
        DataError: If the file is unreadable, unparsable or invalid.
    """
    try:
        data = load_toml(path)
    except OSError as e:
        raise DataError(f"cannot read experiment config {path}: {e}") from e
    except ValueError as e:
        raise DataError(f"cannot parse experiment config {path}: {e}") from e
    config = experiment_config_from_dict(data)
    logger.debug("Loaded experiment config from %s", path)
    return config
