"""
Seeded synthetic UC instances.

Contingency ``k`` (1-based) is the single outage of generator ``k - 1``.
Demand is scaled so that the generators left after the largest single outage
can still cover the peak forecast load, and ramp limits span the full output
range, so the deterministic problem is always feasible.
"""

import logging

import numpy as np

from ..errors import DataError
from .instance import ContingencySet, ForecastSeries, GeneratorFleet, UCInstance

logger = logging.getLogger(__name__)

# Peak forecast load as a share of post-outage capacity.
PEAK_LOAD_SHARE = 0.6


def _daily_profile(n_t: int) -> np.ndarray:
    """Load shape in (0.7, 1.0], peaking mid-horizon."""
    phase = np.linspace(0.0, 2.0 * np.pi, n_t, endpoint=False)
    return 0.85 - 0.15 * np.cos(phase)


def synth_fleet(n_g: int, rng: np.random.Generator) -> GeneratorFleet:
    """Draw a fleet of thermal units with plausible costs and limits."""
    g_hi = np.round(rng.uniform(50.0, 300.0, n_g), 1)
    g_lo = np.round(g_hi * rng.uniform(0.2, 0.4, n_g), 1)
    c_g = np.round(rng.uniform(10.0, 40.0, n_g), 2)
    z0 = rng.integers(0, 2, n_g)
    g0 = np.where(z0 == 1, np.round((g_lo + g_hi) / 2.0, 1), 0.0)
    c_u = np.round(rng.uniform(200.0, 1000.0, n_g), 1)
    return GeneratorFleet(
        c_g=c_g,
        c_z=np.round(rng.uniform(100.0, 500.0, n_g), 1),
        c_r=np.round(0.1 * c_g, 3),
        c_u=c_u,
        c_v=np.round(0.1 * c_u, 2),
        g_lo=g_lo,
        g_hi=g_hi,
        ramp_lo=-g_hi,
        ramp_hi=g_hi.copy(),
        min_on=rng.integers(1, 4, n_g),
        min_off=rng.integers(1, 4, n_g),
        z0=z0,
        g0=g0,
    )


def single_outage_contingencies(n_g: int, n_k: int) -> ContingencySet:
    """Base case plus ``n_k`` single-generator outages, weights 1 and 1/n_k."""
    availability = np.ones((n_k + 1, n_g), dtype=np.int64)
    for k in range(1, n_k + 1):
        availability[k, k - 1] = 0
    weights = np.ones(n_k + 1)
    if n_k:
        weights[1:] = 1.0 / n_k
    return ContingencySet(availability=availability, weights=weights)


def synth_instance(
    n_g: int, n_t: int, n_k: int, n_d: int, n_w: int, seed: int
) -> UCInstance:
    """
    Build a deterministic synthetic instance.

    Args:
        n_g: Number of generators (>= 1)
        n_t: Number of snapshots (>= 1)
        n_k: Number of single-outage contingencies (0 <= n_k <= n_g)
        n_d: Number of loads (>= 1)
        n_w: Number of wind farms (>= 0)
        seed: Seed for numpy's default generator

    Returns:
        UCInstance that passes validate_instance

    Raises:
        DataError: On counts out of range, including n_k > n_g.
    """
    if n_g < 1 or n_t < 1 or n_d < 1:
        raise DataError("n_g, n_t and n_d must be >= 1")
    if n_k < 0 or n_w < 0:
        raise DataError("n_k and n_w must be >= 0")
    if n_k > n_g:
        raise DataError(f"n_k = {n_k} exceeds n_g = {n_g}: one outage per generator")

    rng = np.random.default_rng(seed)
    fleet = synth_fleet(n_g, rng)

    # Any n_g - 1 units must cover the peak, with or without listed outages.
    capacity = float(fleet.g_hi.sum())
    if n_g > 1:
        capacity -= float(fleet.g_hi.max())
    peak = PEAK_LOAD_SHARE * capacity

    load_split = rng.dirichlet(np.ones(n_d))
    d_hat = np.round(np.outer(_daily_profile(n_t) * peak, load_split), 3)

    if n_w:
        wind_scale = rng.uniform(0.05, 0.2) * peak / n_w
        wind_shape = rng.uniform(0.3, 1.0, size=(n_t, n_w))
        w_hat = np.round(wind_scale * wind_shape, 3)
    else:
        w_hat = np.zeros((n_t, 0))

    inst = UCInstance(
        fleet=fleet,
        contingencies=single_outage_contingencies(n_g, n_k),
        forecasts=ForecastSeries(d_hat=d_hat, w_hat=w_hat),
    )
    logger.debug(
        "Synthesized instance n_g=%s n_t=%s n_k=%s n_d=%s n_w=%s seed=%s",
        n_g, n_t, n_k, n_d, n_w, seed,
    )
    return inst
