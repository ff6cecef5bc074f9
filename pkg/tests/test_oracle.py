"""Tests for the exhaustive enumeration oracle."""

import pytest

from ccuc.core.synthetic import synth_instance
from ccuc.errors import DataError
from ccuc.milp.backends import SolveStatus
from ccuc.milp.solve import ORACLE_MAX_BINARY_CELLS, enumerate_oracle, solve_instance
from ccuc.scenarios.sampling import ScenarioSet, sample_scenarios

# (n_g, n_t, n_k) shapes with n_g * n_t <= 8
SHAPES = [(2, 3, 1), (2, 4, 2), (3, 2, 1), (1, 5, 0), (4, 2, 2)]


def _assert_oracle_agrees(inst, scen):
    oracle = enumerate_oracle(inst, scen, backend="scipy")
    result = solve_instance(inst, scen, mip_gap=1e-7, backend="scipy")
    assert oracle.status is SolveStatus.OPTIMAL
    assert result.ok
    assert result.objective == pytest.approx(oracle.objective, rel=1e-6)


class TestEnumerateOracle:
    """Test the enumeration oracle against the MILP solver."""

    def test_single_generator(self, tiny_instance):
        result = enumerate_oracle(tiny_instance, ScenarioSet.empty(tiny_instance), backend="scipy")
        assert result.objective == pytest.approx(800.0)
        assert result.info["patterns_tested"] == 2
        assert result.info["patterns_feasible"] == 1

    def test_min_up_patterns_filtered(self, make_instance):
        inst = make_instance([50.0, 0.0, 50.0], min_off=2, z0=1, g0=50.0)
        result = enumerate_oracle(inst, ScenarioSet.empty(inst), backend="scipy")
        # 8 patterns; on-off-on breaks the minimum down time
        assert result.info["patterns_tested"] == 7
        assert result.solution.z[:, 0].tolist() == [1, 1, 1]

    def test_infeasible(self, make_instance):
        inst = make_instance([150.0])
        result = enumerate_oracle(inst, ScenarioSet.empty(inst), backend="scipy")
        assert result.status is SolveStatus.INFEASIBLE
        assert result.solution is None

    def test_too_large(self):
        inst = synth_instance(4, 4, 0, 1, 0, seed=0)
        assert inst.n_g * inst.n_t > ORACLE_MAX_BINARY_CELLS
        with pytest.raises(DataError, match="oracle"):
            enumerate_oracle(inst, ScenarioSet.empty(inst))

    def test_matches_solve_with_scenarios(self, oracle_instance):
        scen = sample_scenarios(oracle_instance, 10, "gaussian:0.05", seed=1)
        _assert_oracle_agrees(oracle_instance, scen)

    @pytest.mark.slow
    @pytest.mark.parametrize("seed", range(20))
    def test_matches_solve_on_seeded_instances(self, seed):
        n_g, n_t, n_k = SHAPES[seed % len(SHAPES)]
        inst = synth_instance(n_g, n_t, n_k, 2, 1, seed=100 + seed)
        scen = sample_scenarios(inst, 10, "gaussian:0.05", seed=seed)
        _assert_oracle_agrees(inst, scen)
