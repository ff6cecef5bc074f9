"""Tests for net-demand scenario reduction."""

import numpy as np
import pytest

from ccuc.errors import DataError
from ccuc.scenarios.reduction import net_error, net_errors, reduce_scenarios
from ccuc.scenarios.sampling import ScenarioSet, sample_scenarios


class TestNetErrors:
    """Test net demand errors."""

    def test_load_minus_wind(self):
        scen = ScenarioSet(
            d_err=np.array([[[1.0, 2.0]], [[0.5, 0.5]]]),
            w_err=np.array([[[0.5]], [[2.0]]]),
        )
        np.testing.assert_allclose(net_errors(scen), [[2.5], [-1.0]])
        assert net_error(scen, 0, 0) == pytest.approx(2.5)
        assert net_error(scen, 1, 0) == pytest.approx(-1.0)

    @pytest.mark.parametrize("i,t", [(-1, 0), (2, 0), (0, 1)])
    def test_out_of_range(self, i, t):
        scen = ScenarioSet(d_err=np.zeros((2, 1, 1)), w_err=np.zeros((2, 1, 0)))
        with pytest.raises(DataError):
            net_error(scen, i, t)


class TestReduceScenarios:
    """Test candidate support scenarios."""

    def test_per_snapshot_maximizers(self, single_bus_errors):
        scen = single_bus_errors([[1.0, 5.0, 0.0], [3.0, 2.0, 0.0], [2.0, 1.0, 7.0]])
        assert reduce_scenarios(scen) == [0, 1, 2]

    def test_duplicates_collapse(self, single_bus_errors):
        scen = single_bus_errors([[9.0, 9.0], [1.0, 1.0], [2.0, 2.0]])
        assert reduce_scenarios(scen) == [0]

    def test_ties_go_to_lowest_index(self, single_bus_errors):
        scen = single_bus_errors([[1.0], [4.0], [4.0]])
        assert reduce_scenarios(scen) == [1]

    def test_empty_set(self, small_instance):
        assert reduce_scenarios(ScenarioSet.empty(small_instance)) == []

    def test_at_most_one_per_snapshot(self, small_instance):
        scen = sample_scenarios(small_instance, 500, "gaussian:0.05", seed=6)
        candidates = reduce_scenarios(scen)
        assert 1 <= len(candidates) <= small_instance.n_t
        assert candidates == sorted(set(candidates))

    def test_maximizers_dominate(self, small_instance):
        scen = sample_scenarios(small_instance, 200, "gaussian:0.05", seed=6)
        candidates = reduce_scenarios(scen)
        errors = net_errors(scen)
        np.testing.assert_allclose(errors[candidates].max(axis=0), errors.max(axis=0))
