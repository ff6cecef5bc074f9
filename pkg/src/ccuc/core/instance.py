"""
Unit-commitment instance and solution data model.

All arrays are copied on construction and marked read-only, so instances and
solutions can be shared between worker threads without locking.
"""

import logging
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np

from ..errors import DataError

logger = logging.getLogger(__name__)

FLEET_COST_FIELDS: Tuple[str, ...] = ("c_g", "c_z", "c_r", "c_u", "c_v")
FLEET_FLOAT_FIELDS: Tuple[str, ...] = FLEET_COST_FIELDS + (
    "g_lo",
    "g_hi",
    "ramp_lo",
    "ramp_hi",
    "g0",
)
FLEET_INT_FIELDS: Tuple[str, ...] = ("min_on", "min_off", "z0")
FLEET_FIELDS: Tuple[str, ...] = FLEET_FLOAT_FIELDS + FLEET_INT_FIELDS


def _frozen(values, dtype) -> np.ndarray:
    """Copy into a read-only array."""
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class GeneratorFleet:
    """Per-generator cost vectors, technical limits and initial state."""

    c_g: np.ndarray
    c_z: np.ndarray
    c_r: np.ndarray
    c_u: np.ndarray
    c_v: np.ndarray
    g_lo: np.ndarray
    g_hi: np.ndarray
    ramp_lo: np.ndarray
    ramp_hi: np.ndarray
    min_on: np.ndarray
    min_off: np.ndarray
    z0: np.ndarray
    g0: np.ndarray

    def __post_init__(self):
        for name in FLEET_FLOAT_FIELDS:
            object.__setattr__(
                self, name, _frozen(np.atleast_1d(getattr(self, name)), float)
            )
        for name in FLEET_INT_FIELDS:
            object.__setattr__(
                self, name, _frozen(np.atleast_1d(getattr(self, name)), np.int64)
            )

    @property
    def n_g(self) -> int:
        return int(self.g_hi.shape[0])


@dataclass(frozen=True)
class ContingencySet:
    """Availability patterns ``a^k`` (row 0 is the base case) and weights."""

    availability: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        availability = np.array(self.availability, dtype=np.int64)
        if availability.ndim == 1:
            availability = availability.reshape(1, -1)
        availability.setflags(write=False)
        object.__setattr__(self, "availability", availability)
        object.__setattr__(
            self, "weights", _frozen(np.atleast_1d(self.weights), float)
        )

    @property
    def n_k(self) -> int:
        """Number of non-base contingencies."""
        return int(self.availability.shape[0]) - 1


@dataclass(frozen=True)
class ForecastSeries:
    """Load and wind forecasts, one row per snapshot."""

    d_hat: np.ndarray
    w_hat: np.ndarray

    def __post_init__(self):
        d_hat = np.array(self.d_hat, dtype=float)
        if d_hat.ndim == 1:
            d_hat = d_hat.reshape(-1, 1)
        w_hat = np.array(self.w_hat, dtype=float)
        if w_hat.size == 0:
            w_hat = np.zeros((d_hat.shape[0], 0))
        elif w_hat.ndim == 1:
            w_hat = w_hat.reshape(-1, 1)
        d_hat.setflags(write=False)
        w_hat.setflags(write=False)
        object.__setattr__(self, "d_hat", d_hat)
        object.__setattr__(self, "w_hat", w_hat)

    @property
    def n_t(self) -> int:
        return int(self.d_hat.shape[0])

    @property
    def n_d(self) -> int:
        return int(self.d_hat.shape[1])

    @property
    def n_w(self) -> int:
        return int(self.w_hat.shape[1])


@dataclass(frozen=True)
class UCInstance:
    """A complete unit-commitment instance."""

    fleet: GeneratorFleet
    contingencies: ContingencySet
    forecasts: ForecastSeries

    @property
    def n_g(self) -> int:
        return self.fleet.n_g

    @property
    def n_k(self) -> int:
        return self.contingencies.n_k

    @property
    def n_t(self) -> int:
        return self.forecasts.n_t

    @property
    def n_d(self) -> int:
        return self.forecasts.n_d

    @property
    def n_w(self) -> int:
        return self.forecasts.n_w

    def net_forecast(self) -> np.ndarray:
        """Forecast net demand per snapshot, ``1'd_hat - 1'w_hat``."""
        return self.forecasts.d_hat.sum(axis=1) - self.forecasts.w_hat.sum(axis=1)


@dataclass(frozen=True)
class UCSolution:
    """Commitment, startup, shutdown, dispatch per contingency, and reserve."""

    z: np.ndarray
    u: np.ndarray
    v: np.ndarray
    g: np.ndarray
    r: np.ndarray
    objective: float = 0.0
    mip_gap: float = 0.0

    def __post_init__(self):
        for name in ("z", "u", "v"):
            object.__setattr__(
                self, name, _frozen(np.rint(getattr(self, name)), np.int64)
            )
        object.__setattr__(self, "g", _frozen(self.g, float))
        object.__setattr__(self, "r", _frozen(self.r, float))
        object.__setattr__(self, "objective", float(self.objective))
        object.__setattr__(self, "mip_gap", float(self.mip_gap))

    @classmethod
    def zeros(cls, inst: UCInstance) -> "UCSolution":
        """All-zero solution shaped for ``inst``."""
        shape = (inst.n_t, inst.n_g)
        return cls(
            z=np.zeros(shape),
            u=np.zeros(shape),
            v=np.zeros(shape),
            g=np.zeros((inst.n_t, inst.n_k + 1, inst.n_g)),
            r=np.zeros(shape),
        )


def check_solution_shape(inst: UCInstance, sol: UCSolution) -> None:
    """Raise DataError unless ``sol`` is dimensionally consistent with ``inst``."""
    shape = (inst.n_t, inst.n_g)
    for name in ("z", "u", "v", "r"):
        actual = getattr(sol, name).shape
        if actual != shape:
            raise DataError(f"solution field {name} has shape {actual}, expected {shape}")
    g_shape = (inst.n_t, inst.n_k + 1, inst.n_g)
    if sol.g.shape != g_shape:
        raise DataError(f"solution field g has shape {sol.g.shape}, expected {g_shape}")


@dataclass(frozen=True)
class Violation:
    """One broken instance invariant."""

    field: str
    rule: str
    message: str

    def __str__(self) -> str:
        return f"{self.field}: {self.rule} ({self.message})"


def _fleet_violations(fleet: GeneratorFleet) -> List[Violation]:
    out: List[Violation] = []
    n_g = fleet.n_g
    for name in FLEET_FIELDS:
        if getattr(fleet, name).shape != (n_g,):
            out.append(
                Violation(name, "length", f"expected {n_g} entries, got {getattr(fleet, name).shape}")
            )
    if out:
        return out

    if np.any(fleet.g_lo < 0):
        out.append(Violation("g_lo", "nonnegative", "generation lower bound below zero"))
    if np.any(fleet.g_lo > fleet.g_hi):
        bad = np.flatnonzero(fleet.g_lo > fleet.g_hi).tolist()
        out.append(Violation("g_lo", "bound_order", f"g_lo > g_hi for generators {bad}"))
    if np.any(fleet.ramp_lo > fleet.ramp_hi):
        bad = np.flatnonzero(fleet.ramp_lo > fleet.ramp_hi).tolist()
        out.append(Violation("ramp_lo", "ramp_order", f"ramp_lo > ramp_hi for generators {bad}"))
    for name in ("min_on", "min_off"):
        if np.any(getattr(fleet, name) < 1):
            out.append(Violation(name, "at_least_one", "minimum durations must be >= 1 step"))
    if not np.isin(fleet.z0, (0, 1)).all():
        out.append(Violation("z0", "binary", "initial states must be 0 or 1"))
    else:
        off = fleet.z0 == 0
        if np.any(fleet.g0[off] != 0):
            out.append(Violation("g0", "off_unit_zero", "g0 must be 0 where z0 = 0"))
        on = fleet.z0 == 1
        outside = (fleet.g0 < fleet.g_lo) | (fleet.g0 > fleet.g_hi)
        if np.any(on & outside):
            out.append(
                Violation("g0", "on_unit_in_bounds", "g0 must lie in [g_lo, g_hi] where z0 = 1")
            )
    for name in FLEET_COST_FIELDS:
        if np.any(getattr(fleet, name) < 0):
            out.append(Violation(name, "nonnegative", "cost vectors must be nonnegative"))
    return out


def _contingency_violations(cont: ContingencySet, n_g: int) -> List[Violation]:
    out: List[Violation] = []
    avail = cont.availability
    if avail.ndim != 2 or avail.shape[1] != n_g:
        out.append(
            Violation("availability", "width", f"rows must have {n_g} entries, got shape {avail.shape}")
        )
        return out
    if not np.isin(avail, (0, 1)).all():
        out.append(Violation("availability", "binary", "availability entries must be 0 or 1"))
    if not np.all(avail[0] == 1):
        out.append(Violation("availability", "base_case", "a^0 must be all ones"))
    for k in range(1, avail.shape[0]):
        if np.array_equal(avail[k], avail[0]):
            out.append(
                Violation("availability", "distinct", f"contingency {k} does not differ from the base case")
            )
    if cont.weights.shape != (avail.shape[0],):
        out.append(
            Violation("weights", "length", f"expected {avail.shape[0]} weights, got {cont.weights.shape}")
        )
    elif np.any(cont.weights < 0):
        out.append(Violation("weights", "nonnegative", "contingency weights must be >= 0"))
    return out


def _forecast_violations(fc: ForecastSeries) -> List[Violation]:
    out: List[Violation] = []
    if fc.n_t < 1:
        out.append(Violation("n_t", "at_least_one", "horizon must contain a snapshot"))
    if fc.w_hat.shape[0] != fc.n_t:
        out.append(
            Violation("w_hat", "horizon", f"w_hat has {fc.w_hat.shape[0]} rows, d_hat has {fc.n_t}")
        )
    if np.any(fc.d_hat < 0):
        out.append(Violation("d_hat", "nonnegative", "load forecasts must be >= 0"))
    if np.any(fc.w_hat < 0):
        out.append(Violation("w_hat", "nonnegative", "wind forecasts must be >= 0"))
    return out


def validate_instance(inst: UCInstance) -> List[Violation]:
    """
    Check every instance invariant.

    Args:
        inst: Instance to check

    Returns:
        Empty list when the instance is well formed, otherwise one
        Violation per broken rule
    """
    violations = (
        _fleet_violations(inst.fleet)
        + _contingency_violations(inst.contingencies, inst.fleet.n_g)
        + _forecast_violations(inst.forecasts)
    )
    for violation in violations:
        logger.debug("Instance violation: %s", violation)
    return violations


def require_valid(inst: UCInstance) -> None:
    """Raise DataError listing every violation, if any."""
    violations = validate_instance(inst)
    if violations:
        raise DataError("invalid instance: " + "; ".join(str(v) for v in violations))
