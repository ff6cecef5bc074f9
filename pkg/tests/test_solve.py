"""Tests for the solve driver and MILP backends."""

import time

import numpy as np
import pytest

from ccuc.core.evaluation import check_deterministic_feasibility, evaluate_cost
from ccuc.core.synthetic import synth_instance
from ccuc.errors import DataError, SolverError
from ccuc.milp.backends import (
    BackendRegistry,
    BackendResult,
    BaseBackend,
    PyomoBackend,
    ScipyBackend,
    SolveStatus,
    get_backend,
)
from ccuc.milp.backends.base import classify
from ccuc.milp.formulation import build_duc, build_suc
from ccuc.milp.model import MilpModel
from ccuc.milp.solve import (
    SolveResult,
    extract_solution,
    require_solution,
    resolve_backend,
    solve,
    solve_instance,
)
from ccuc.risk.violation import empirical_violation
from ccuc.scenarios.reduction import reduce_scenarios
from ccuc.scenarios.sampling import ScenarioSet, sample_scenarios


class StubBackend(BaseBackend):
    """Backend that returns a canned result."""

    name = "stub"

    def __init__(self, result: BackendResult):
        self.result = result
        self.calls = []

    def available(self):
        return True

    def solve(self, model, mip_gap, time_limit):
        self.calls.append((model.name, mip_gap, time_limit))
        return self.result


class TestSolveSmall:
    """Test solves with known optima."""

    def test_single_generator(self, tiny_instance):
        result = solve(build_duc(tiny_instance), backend="scipy")
        assert result.ok
        assert result.status is SolveStatus.OPTIMAL
        assert result.objective == pytest.approx(800.0)
        sol = result.solution
        assert sol.z.tolist() == [[1]]
        assert sol.u.tolist() == [[1]]
        assert sol.g[0, 0, 0] == pytest.approx(50.0)
        assert result.info["backend"] == "scipy"

    def test_objective_matches_cost_of_solution(self, small_instance, small_scenarios):
        result = solve_instance(small_instance, small_scenarios, mip_gap=1e-6, backend="scipy")
        assert result.ok
        assert evaluate_cost(small_instance, result.solution) == pytest.approx(
            result.objective, rel=1e-6
        )

    def test_infeasible(self, make_instance):
        result = solve(build_duc(make_instance([150.0])), backend="scipy")
        assert result.status is SolveStatus.INFEASIBLE
        assert result.solution is None
        assert not result.ok
        with pytest.raises(SolverError, match="infeasible"):
            require_solution(result)

    def test_scenario_raises_dispatch(self, tiny_instance, single_bus_errors):
        scen = single_bus_errors([[10.0]])
        result = solve_instance(tiny_instance, scen, backend="scipy")
        assert result.objective == pytest.approx(900.0)

    def test_only_max_scenario_matters(self, tiny_instance, single_bus_errors):
        full = solve_instance(tiny_instance, single_bus_errors([[1.0], [4.0], [-2.0]]), backend="scipy")
        worst = solve_instance(tiny_instance, single_bus_errors([[4.0]]), backend="scipy")
        assert full.objective == pytest.approx(840.0)
        assert worst.objective == pytest.approx(full.objective)

    def test_solution_is_feasible(self, small_instance, small_scenarios):
        result = solve_instance(small_instance, small_scenarios, backend="scipy")
        assert check_deterministic_feasibility(small_instance, result.solution) == []

    def test_training_set_never_violated(self, small_instance, small_scenarios):
        result = solve_instance(small_instance, small_scenarios, backend="scipy")
        report = empirical_violation(small_instance, result.solution, small_scenarios)
        assert report.violated == 0

    def test_reduced_set_gives_same_objective(self, small_instance, small_scenarios):
        full = solve_instance(small_instance, small_scenarios, mip_gap=1e-9, backend="scipy")
        reduced = small_scenarios.subset(reduce_scenarios(small_scenarios))
        fast = solve_instance(small_instance, reduced, mip_gap=1e-9, backend="scipy")
        assert fast.objective == pytest.approx(full.objective, rel=1e-6)

    def test_redundant_rows_do_not_change_objective(self, small_instance, small_scenarios):
        plain = solve_instance(small_instance, small_scenarios, mip_gap=1e-9, backend="scipy")
        extra = solve_instance(
            small_instance, small_scenarios, mip_gap=1e-9, backend="scipy", include_redundant=True
        )
        assert extra.objective == pytest.approx(plain.objective, rel=1e-6)

    def test_no_scenarios_equals_deterministic(self, small_instance):
        duc = solve(build_duc(small_instance), mip_gap=1e-9, backend="scipy")
        suc = solve_instance(small_instance, ScenarioSet.empty(small_instance), mip_gap=1e-9, backend="scipy")
        assert suc.objective == pytest.approx(duc.objective, rel=1e-9)


@pytest.mark.slow
class TestSeededInstances:
    """Test solve invariants across seeded synthetic instances."""

    @pytest.mark.parametrize("seed", range(20))
    def test_redundant_rows_do_not_change_objective(self, seed):
        inst = synth_instance(3, 4, 1, 2, 1, seed=300 + seed)
        scen = sample_scenarios(inst, 20, "gaussian:0.05", seed=seed)
        plain = solve_instance(inst, scen, mip_gap=1e-9, backend="scipy")
        extra = solve_instance(inst, scen, mip_gap=1e-9, backend="scipy", include_redundant=True)
        assert plain.ok and extra.ok
        assert extra.objective == pytest.approx(plain.objective, rel=1e-6)

    def test_reduction_at_desk_scale(self):
        inst = synth_instance(10, 24, 10, 20, 3, seed=0)
        scen = sample_scenarios(inst, 1000, "gaussian:0.05", seed=1)

        start = time.perf_counter()
        full_model = build_suc(inst, scen)
        full_build = time.perf_counter() - start
        start = time.perf_counter()
        kept = reduce_scenarios(scen)
        reduced_model = build_suc(inst, scen.subset(kept))
        reduced_build = time.perf_counter() - start

        assert len(kept) <= inst.n_t
        assert full_model.n_rows > 5 * reduced_model.n_rows
        assert full_build > 5 * reduced_build

        full = solve(full_model, backend="scipy")
        fast = solve(reduced_model, backend="scipy")
        assert full.ok and fast.ok
        assert fast.objective == pytest.approx(full.objective, rel=1e-6)


class TestSolveDriver:
    """Test result handling with stubbed backends."""

    def test_default_gap_and_no_time_limit(self, tiny_instance):
        stub = StubBackend(BackendResult(status=SolveStatus.INFEASIBLE))
        solve(build_duc(tiny_instance), backend=stub)
        assert stub.calls == [("d-UC", 1e-4, None)]

    def test_zero_time_limit_means_none(self, tiny_instance):
        stub = StubBackend(BackendResult(status=SolveStatus.INFEASIBLE))
        solve(build_duc(tiny_instance), mip_gap=0.01, time_limit=0, backend=stub)
        assert stub.calls == [("d-UC", 0.01, None)]

    def test_limit_without_incumbent(self, tiny_instance):
        stub = StubBackend(BackendResult(status=SolveStatus.LIMIT, message="time limit"))
        result = solve(build_duc(tiny_instance), time_limit=1.0, backend=stub)
        assert result.status is SolveStatus.LIMIT
        assert result.solution is None
        with pytest.raises(SolverError):
            require_solution(result)

    def test_feasible_incumbent_is_usable(self, tiny_instance):
        model = build_duc(tiny_instance)
        x = np.zeros(model.n_variables)
        x[model.index("z[t=0,i=0]")] = 1.0
        x[model.index("u[t=0,i=0]")] = 1.0
        x[model.index("g[t=0,k=0,i=0]")] = 50.0
        stub = StubBackend(
            BackendResult(status=SolveStatus.FEASIBLE, x=x, objective=800.0, bound=700.0, gap=0.125)
        )
        result = solve(model, backend=stub)
        assert result.status is SolveStatus.FEASIBLE
        assert result.objective_bound == 700.0
        assert require_solution(result).objective == 800.0
        assert result.solution.mip_gap == 0.125

    def test_extract_solution_needs_dimensions(self):
        model = MilpModel()
        model.add_variable("z[t=0,i=0]")
        with pytest.raises(DataError):
            extract_solution(model, np.zeros(1), 0.0, 0.0)

    def test_extract_clears_negative_reserve_noise(self, tiny_instance):
        model = build_duc(tiny_instance)
        x = np.zeros(model.n_variables)
        x[model.index("r[t=0,i=0]")] = -1e-12
        assert extract_solution(model, x, 0.0, 0.0).r[0, 0] == 0.0

    def test_solve_result_defaults(self):
        result = SolveResult(status=SolveStatus.OPTIMAL)
        assert result.objective is None
        assert not result.ok


class TestBackends:
    """Test backend lookup and the registry."""

    def test_get_scipy(self):
        assert isinstance(get_backend("scipy"), ScipyBackend)

    def test_unknown_backend(self):
        with pytest.raises(SolverError, match="unknown"):
            get_backend("nope")

    def test_env_var_selects_backend(self, monkeypatch):
        monkeypatch.setenv("CCUC_SOLVER", "nope")
        with pytest.raises(SolverError, match="nope"):
            get_backend()

    def test_config_default_is_scipy(self):
        assert get_backend().name == "scipy"

    def test_resolve_passes_objects_through(self):
        backend = ScipyBackend()
        assert resolve_backend(backend) is backend

    def test_registry(self):
        registry = BackendRegistry()
        registry.register(ScipyBackend())
        assert registry.names() == ["scipy"]
        assert registry.available_names() == ["scipy"]
        registry.unregister("scipy")
        assert registry.get_backend("scipy") is None

    def test_classify(self):
        assert classify(False, True, 0.0, 1e-4) is SolveStatus.LIMIT
        assert classify(True, True, 1e-2, 1e-4) is SolveStatus.FEASIBLE
        assert classify(True, True, 1e-5, 1e-4) is SolveStatus.OPTIMAL
        assert classify(True, True, None, 1e-4) is SolveStatus.OPTIMAL

    def test_pyomo_matches_scipy(self, small_instance, small_scenarios):
        pytest.importorskip("pyomo")
        backend = PyomoBackend()
        if not backend.available():
            pytest.skip("no Pyomo MILP solver installed")
        model = build_suc(small_instance, small_scenarios)
        a = solve(model, mip_gap=1e-8, backend=backend)
        b = solve(model, mip_gap=1e-8, backend="scipy")
        assert a.objective == pytest.approx(b.objective, rel=1e-6)
