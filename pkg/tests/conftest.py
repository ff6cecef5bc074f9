"""
Pytest configuration and fixtures.
"""

import numpy as np
import pytest

from ccuc.core.instance import ContingencySet, ForecastSeries, GeneratorFleet, UCInstance
from ccuc.core.synthetic import synth_instance
from ccuc.scenarios.sampling import ScenarioSet, sample_scenarios


def _fleet(n_g: int = 1, **overrides) -> GeneratorFleet:
    """Identical units: 20-100 MW, c_g 10, no-load 100, startup 200."""
    values = {
        "c_g": 10.0,
        "c_z": 100.0,
        "c_r": 1.0,
        "c_u": 200.0,
        "c_v": 20.0,
        "g_lo": 20.0,
        "g_hi": 100.0,
        "ramp_lo": -100.0,
        "ramp_hi": 100.0,
        "min_on": 1,
        "min_off": 1,
        "z0": 0,
        "g0": 0.0,
    }
    values.update(overrides)
    return GeneratorFleet(
        **{
            key: np.asarray(value) if np.ndim(value) else np.full(n_g, value)
            for key, value in values.items()
        }
    )


@pytest.fixture
def make_instance():
    """
    Factory for small hand-built instances.

    ``d_hat`` is the per-snapshot load of a single bus; fleet overrides are
    scalars (broadcast) or per-generator sequences.
    """

    def _make(d_hat, n_g=1, availability=None, weights=None, w_hat=None, **fleet):
        fleet_obj = _fleet(n_g, **fleet)
        if availability is None:
            availability = np.ones((1, n_g), dtype=int)
        availability = np.asarray(availability)
        if weights is None:
            weights = np.ones(availability.shape[0])
        return UCInstance(
            fleet=fleet_obj,
            contingencies=ContingencySet(availability=availability, weights=weights),
            forecasts=ForecastSeries(
                d_hat=np.asarray(d_hat, dtype=float),
                w_hat=np.zeros((len(d_hat), 0)) if w_hat is None else np.asarray(w_hat, dtype=float),
            ),
        )

    return _make


@pytest.fixture
def tiny_instance(make_instance):
    """One generator, one snapshot, 50 MW of load."""
    return make_instance([50.0])


@pytest.fixture
def small_instance():
    """Seeded synthetic instance: 3 generators, 4 snapshots, 1 outage."""
    return synth_instance(3, 4, 1, 2, 1, seed=11)


@pytest.fixture
def oracle_instance():
    """Synthetic instance small enough for exhaustive enumeration."""
    return synth_instance(2, 3, 1, 2, 1, seed=5)


@pytest.fixture
def small_scenarios(small_instance):
    """Twenty Gaussian trajectories for ``small_instance``."""
    return sample_scenarios(small_instance, 20, "gaussian:0.05", seed=3)


@pytest.fixture
def single_bus_errors():
    """Factory turning a ``(N, n_t)`` table of load errors into a ScenarioSet."""

    def _make(errors):
        errors = np.asarray(errors, dtype=float)
        return ScenarioSet(
            d_err=errors[:, :, None],
            w_err=np.zeros(errors.shape + (0,)),
            seed=0,
            descriptor="test",
        )

    return _make


@pytest.fixture(autouse=True)
def _isolated_solver_config(monkeypatch, tmp_path):
    """Keep the user's config file and CCUC_SOLVER out of every test."""
    monkeypatch.delenv("CCUC_SOLVER", raising=False)
    monkeypatch.setattr("ccuc.utils.config.CONFIG_FILE", str(tmp_path / "no-config.toml"))
