"""
Forecast-error scenario sets and seeded samplers.

Scenario ``s`` of a set drawn with base seed ``seed`` always uses the numpy
stream ``SeedSequence([seed, s])``, so sets drawn in parallel chunks equal
sets drawn sequentially.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from ..core.instance import UCInstance
from ..errors import DataError

logger = logging.getLogger(__name__)

DISTRIBUTION_KINDS = ("gaussian", "uniform", "empirical")


@dataclass(frozen=True)
class ScenarioSet:
    """N joint load/wind error trajectories, each covering the whole horizon."""

    d_err: np.ndarray  # (N, n_t, n_d)
    w_err: np.ndarray  # (N, n_t, n_w)
    seed: int = 0
    descriptor: str = "file"

    def __post_init__(self):
        d_err = np.array(self.d_err, dtype=float)
        w_err = np.array(self.w_err, dtype=float)
        if d_err.ndim != 3:
            raise DataError(f"d_err must be 3-dimensional, got shape {d_err.shape}")
        if w_err.ndim != 3 and w_err.size == 0:
            w_err = np.zeros(d_err.shape[:2] + (0,))
        if w_err.ndim != 3 or w_err.shape[:2] != d_err.shape[:2]:
            raise DataError(
                f"w_err shape {w_err.shape} does not match d_err shape {d_err.shape}"
            )
        d_err.setflags(write=False)
        w_err.setflags(write=False)
        object.__setattr__(self, "d_err", d_err)
        object.__setattr__(self, "w_err", w_err)

    @property
    def N(self) -> int:
        return int(self.d_err.shape[0])

    @property
    def n_t(self) -> int:
        return int(self.d_err.shape[1])

    @property
    def n_d(self) -> int:
        return int(self.d_err.shape[2])

    @property
    def n_w(self) -> int:
        return int(self.w_err.shape[2])

    def subset(self, indices: Sequence[int]) -> "ScenarioSet":
        """Scenarios at ``indices``, in the given order."""
        idx = np.asarray(list(indices), dtype=np.int64)
        return ScenarioSet(
            d_err=self.d_err[idx],
            w_err=self.w_err[idx],
            seed=self.seed,
            descriptor=self.descriptor,
        )

    def without(self, index: int) -> "ScenarioSet":
        """All scenarios except ``index``."""
        return self.subset([i for i in range(self.N) if i != index])

    @classmethod
    def empty(cls, inst: UCInstance) -> "ScenarioSet":
        """A set with no scenarios; the scenario problem reduces to d-UC."""
        return cls(
            d_err=np.zeros((0, inst.n_t, inst.n_d)),
            w_err=np.zeros((0, inst.n_t, inst.n_w)),
            descriptor="empty",
        )


def check_compatible(inst: UCInstance, scen: ScenarioSet) -> None:
    """Raise DataError if the scenario dimensions do not fit the instance."""
    expected = (inst.n_t, inst.n_d, inst.n_w)
    actual = (scen.n_t, scen.n_d, scen.n_w)
    if actual != expected:
        raise DataError(
            f"scenario dimensions (n_t, n_d, n_w) = {actual} do not match instance {expected}"
        )


@dataclass(frozen=True)
class Distribution:
    """Parsed distribution descriptor."""

    kind: str
    scale: float = 0.0
    rho: float = 0.0
    path: Optional[str] = None

    def __str__(self) -> str:
        if self.kind == "empirical":
            return f"empirical:{self.path}"
        if self.rho:
            return f"{self.kind}:{self.scale:g},rho={self.rho:g}"
        return f"{self.kind}:{self.scale:g}"


def parse_distribution(text: str) -> Distribution:
    """
    Parse ``gaussian:<sigma_frac>[,rho=<r>]``, ``uniform:<range_frac>`` or
    ``empirical:<path>``.

    Raises:
        DataError: On an unknown kind or malformed parameters.
    """
    kind, sep, params = text.strip().partition(":")
    kind = kind.strip().lower()
    if kind not in DISTRIBUTION_KINDS or not sep or not params.strip():
        raise DataError(f"unknown distribution descriptor: {text!r}")

    if kind == "empirical":
        return Distribution(kind=kind, path=params.strip())

    parts = [p.strip() for p in params.split(",")]
    rho = 0.0
    try:
        scale = float(parts[0])
        for extra in parts[1:]:
            key, _, value = extra.partition("=")
            if key.strip() != "rho" or kind != "gaussian":
                raise DataError(f"unsupported parameter {extra!r} in {text!r}")
            rho = float(value)
    except ValueError as e:
        raise DataError(f"malformed distribution descriptor {text!r}: {e}") from e

    if scale < 0:
        raise DataError(f"distribution scale must be >= 0 in {text!r}")
    if not 0.0 <= rho < 1.0:
        raise DataError(f"rho must lie in [0, 1) in {text!r}")
    return Distribution(kind=kind, scale=scale, rho=rho)


def scenario_rng(seed: int, index: int) -> np.random.Generator:
    """Independent, order-free stream for scenario ``index``."""
    return np.random.default_rng(np.random.SeedSequence([seed, index]))


def _gaussian_trajectory(rng, forecast: np.ndarray, dist: Distribution) -> np.ndarray:
    shocks = rng.standard_normal(forecast.shape)
    if dist.rho:
        # AR(1) across snapshots with unit stationary variance.
        innovation = np.sqrt(1.0 - dist.rho**2)
        for t in range(1, shocks.shape[0]):
            shocks[t] = dist.rho * shocks[t - 1] + innovation * shocks[t]
    return dist.scale * forecast * shocks


def _uniform_trajectory(rng, forecast: np.ndarray, dist: Distribution) -> np.ndarray:
    return dist.scale * forecast * rng.uniform(-1.0, 1.0, size=forecast.shape)


def sample_scenarios(
    inst: UCInstance,
    n: int,
    dist: Union[str, Distribution],
    seed: int,
) -> ScenarioSet:
    """
    Draw ``n`` i.i.d. error trajectories.

    Gaussian and uniform errors scale with the forecast of each load and wind
    farm; empirical draws resample whole trajectories from a scenario file.

    Args:
        inst: Instance whose forecasts set the error scale
        n: Number of scenarios (>= 1)
        dist: Distribution descriptor or parsed Distribution
        seed: Non-negative base seed

    Returns:
        ScenarioSet with ``n`` trajectories

    Raises:
        DataError: On bad counts, seeds or descriptors, or an empirical file
            whose dimensions do not match the instance.
    """
    if n < 1:
        raise DataError(f"N must be >= 1, got {n}")
    if seed < 0:
        raise DataError(f"seed must be non-negative, got {seed}")
    if isinstance(dist, str):
        dist = parse_distribution(dist)

    n_d = inst.n_d
    if dist.kind == "empirical":
        from .io import read_scenarios

        pool = read_scenarios(dist.path)
        check_compatible(inst, pool)
        picks = np.array([scenario_rng(seed, s).integers(0, pool.N) for s in range(n)])
        scen = ScenarioSet(
            d_err=pool.d_err[picks],
            w_err=pool.w_err[picks],
            seed=seed,
            descriptor=str(dist),
        )
    else:
        forecast = np.hstack([inst.forecasts.d_hat, inst.forecasts.w_hat])
        draw = _gaussian_trajectory if dist.kind == "gaussian" else _uniform_trajectory
        errors = np.stack([draw(scenario_rng(seed, s), forecast, dist) for s in range(n)])
        scen = ScenarioSet(
            d_err=errors[:, :, :n_d],
            w_err=errors[:, :, n_d:],
            seed=seed,
            descriptor=str(dist),
        )

    logger.debug("Sampled %d scenarios from %s (seed %d)", n, dist, seed)
    return scen
