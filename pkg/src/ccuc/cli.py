"""
Command-line interface for ccuc.

Exit codes: 0 success, 1 usage error, 2 infeasible model or solver failure,
3 data error.
"""

import argparse
import json
import logging
import sys
from typing import Any, Dict, List, Optional

from .core.evaluation import check_deterministic_feasibility
from .core.instance import UCInstance, validate_instance
from .core.storage import (
    load_instance,
    load_solution,
    save_document,
    save_instance,
    save_solution,
)
from .core.synthetic import synth_instance
from .errors import DataError, SolverError
from .experiment.config import load_experiment_config
from .experiment.runner import run_experiment
from .milp.backends import SolveStatus
from .milp.formulation import build_suc
from .milp.solve import solve
from .milp.writers import EXPORT_FORMATS, export_model
from .risk.support import find_support_scenarios
from .risk.violation import empirical_violation
from .scenarios.bounds import RiskSpec, epsilon_bound, required_sample_size
from .scenarios.io import read_scenarios, write_scenarios
from .scenarios.reduction import reduce_scenarios
from .scenarios.sampling import ScenarioSet, sample_scenarios
from .utils.config import apply_config_to_args, init_config, load_config
from .utils.files import output_path

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_SOLVER = 2
EXIT_DATA = 3

DEFAULT_DISTRIBUTION = "gaussian:0.05"
TEST_SET_SIZE = 10_000


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _is_json_mode(args) -> bool:
    """Return True when the user requested --json output."""
    return getattr(args, "json", False)


def _emit(args, payload: Dict[str, Any], lines: List[str]) -> None:
    """Print a result as JSON or as human-readable lines."""
    if _is_json_mode(args):
        print(json.dumps({"status": "ok", **payload}, default=str))
    else:
        for line in lines:
            print(line)


def _fail(args, message: str, code: int) -> int:
    if _is_json_mode(args):
        print(json.dumps({"status": "error", "message": message}))
    else:
        print(f"Error: {message}", file=sys.stderr)
    return code


def _require_instance(path: str) -> UCInstance:
    inst = load_instance(path)
    if inst is None:
        raise DataError(f"could not load instance {path}")
    return inst


def _scenarios_from_args(args, inst: UCInstance, default_n: int = 0) -> ScenarioSet:
    """Scenario file, a fresh sample, or no scenarios at all."""
    if getattr(args, "scenarios", None):
        return read_scenarios(args.scenarios)
    n = args.n if getattr(args, "n", None) is not None else default_n
    if n:
        return sample_scenarios(inst, n, args.dist, args.seed)
    return ScenarioSet.empty(inst)


def _out(args, filename: str) -> str:
    return output_path(filename, args.out)


# -- commands ----------------------------------------------------------


def cmd_sample_size(args) -> int:
    """Scenarios needed for a risk level and confidence."""
    n = required_sample_size(RiskSpec(epsilon=args.epsilon, beta=args.beta, h=args.h))
    _emit(args, {"epsilon": args.epsilon, "beta": args.beta, "h": args.h, "N": n}, [str(n)])
    return EXIT_OK


def cmd_epsilon_bound(args) -> int:
    """Guaranteed violation level for N scenarios."""
    bound = epsilon_bound(args.n, args.beta, args.h)
    text = f"{bound.epsilon:.9g}" + (" (vacuous: N < h)" if bound.vacuous else "")
    _emit(
        args,
        {"N": args.n, "beta": args.beta, "h": args.h, "epsilon": bound.epsilon, "vacuous": bound.vacuous},
        [text],
    )
    return EXIT_OK


def cmd_generate(args) -> int:
    """Write a seeded synthetic instance."""
    inst = synth_instance(args.n_g, args.n_t, args.n_k, args.n_d, args.n_w, seed=args.seed)
    path = _out(args, args.output)
    if not save_instance(inst, path):
        return _fail(args, f"failed to save instance to {path}", EXIT_DATA)
    _emit(
        args,
        {"output": path, "n_g": inst.n_g, "n_t": inst.n_t, "n_k": inst.n_k, "n_d": inst.n_d, "n_w": inst.n_w},
        [f"Instance saved to: {path}"],
    )
    return EXIT_OK


def cmd_sample(args) -> int:
    """Write sampled error trajectories to a scenario file."""
    inst = _require_instance(args.instance)
    scen = sample_scenarios(inst, args.n, args.dist, args.seed)
    path = _out(args, args.output)
    write_scenarios(scen, path)
    _emit(
        args,
        {"output": path, "N": scen.N, "seed": args.seed, "distribution": scen.descriptor},
        [f"{scen.N} scenarios saved to: {path}"],
    )
    return EXIT_OK


def cmd_solve(args) -> int:
    """Solve the scenario UC problem and write the solution."""
    inst = _require_instance(args.instance)
    scen = _scenarios_from_args(args, inst)
    candidates = reduce_scenarios(scen)
    train = scen.subset(candidates) if args.reduce else scen

    model = build_suc(inst, train, include_redundant=args.include_redundant)
    result = solve(model, mip_gap=args.mip_gap, time_limit=args.time_limit or None, backend=args.backend)
    if result.solution is None or result.status in (SolveStatus.INFEASIBLE, SolveStatus.UNBOUNDED):
        return _fail(args, f"no solution: model is {result.status.value}", EXIT_SOLVER)

    sol = result.solution
    issues = check_deterministic_feasibility(inst, sol)
    if issues:
        logger.warning("Solution breaks %d deterministic constraints: %s", len(issues), issues[:5])
    path = _out(args, args.output)
    if not save_solution(sol, path):
        return _fail(args, f"failed to save solution to {path}", EXIT_DATA)

    _emit(
        args,
        {
            "output": path,
            "solve_status": result.status.value,
            "objective": sol.objective,
            "mip_gap": sol.mip_gap,
            "scenarios": scen.N,
            "scenarios_solved": train.N,
            "candidates": len(candidates),
            "wall_time": result.wall_time,
        },
        [
            f"Status: {result.status.value}",
            f"Objective: {sol.objective:.6f}",
            f"Scenarios: {train.N} solved of {scen.N} ({len(candidates)} candidates)",
            f"Solution saved to: {path}",
        ],
    )
    return EXIT_OK


def cmd_reduce(args) -> int:
    """List (and optionally write) the candidate support scenarios."""
    scen = read_scenarios(args.scenarios)
    candidates = reduce_scenarios(scen)
    payload: Dict[str, Any] = {"N": scen.N, "candidates": candidates}
    lines = [" ".join(str(i) for i in candidates)]
    if args.output:
        path = _out(args, args.output)
        write_scenarios(scen.subset(candidates), path)
        payload["output"] = path
        lines.append(f"{len(candidates)} of {scen.N} scenarios saved to: {path}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_validate(args) -> int:
    """Out-of-sample violation of a solution."""
    inst = _require_instance(args.instance)
    sol = load_solution(args.solution)
    if sol is None:
        raise DataError(f"could not load solution {args.solution}")
    test_set = _scenarios_from_args(args, inst, default_n=TEST_SET_SIZE)
    report = empirical_violation(inst, sol, test_set)

    document = {"seed": test_set.seed, "distribution": test_set.descriptor, **report.to_dict()}
    lines = [
        f"Violated: {report.violated} of {report.tested}",
        f"epsilon_hat: {report.epsilon_hat:.6f} (99% CI {report.ci_low:.6f} - {report.ci_high:.6f})",
        f"Worst shortfall: {report.worst_shortfall:.6f} MW",
    ]
    payload = {k: v for k, v in document.items() if k != "per_scenario"}
    if args.output:
        path = _out(args, args.output)
        if not save_document(document, path):
            return _fail(args, f"failed to save report to {path}", EXIT_DATA)
        payload["output"] = path
        lines.append(f"Report saved to: {path}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_support(args) -> int:
    """Support scenarios of a scenario set by removal."""
    inst = _require_instance(args.instance)
    scen = read_scenarios(args.scenarios)
    report = find_support_scenarios(
        inst,
        scen,
        restrict_to_candidates=not args.brute_force,
        backend=args.backend,
        jobs=args.jobs,
    )
    document = report.to_dict()
    lines = [
        f"Support scenarios ({len(report.support_indices)}): "
        + " ".join(str(i) for i in report.support_indices),
        f"Candidates: {len(report.candidate_indices)}",
        f"Nondegenerate: {report.nondegenerate}",
    ]
    if report.identical_generators:
        lines.append(f"Identical generators: {report.identical_generators}")
    if args.output:
        path = _out(args, args.output)
        if not save_document(document, path):
            return _fail(args, f"failed to save report to {path}", EXIT_DATA)
        document["output"] = path
        lines.append(f"Report saved to: {path}")
    _emit(args, document, lines)
    return EXIT_OK


def cmd_experiment(args) -> int:
    """Run a Monte Carlo experiment from a config file."""
    config = load_experiment_config(args.config)
    # Only flags given on the command line override the experiment file.
    for flag in ("seed", "mip_gap", "out"):
        if flag in args.explicit:
            setattr(config, flag, getattr(args, flag))
    config.__post_init__()
    report = run_experiment(config, jobs=args.jobs if "jobs" in args.explicit else None, backend=args.backend)

    lines = [
        f"Rows: {report.summary['rows']} ({report.failures} failed)",
        f"Max support scenarios: {report.summary['max_support']}",
        f"Report written to: {config.out}",
    ]
    _emit(args, {"summary": report.summary, "files": report.files}, lines)
    return EXIT_SOLVER if report.failures == len(report.rows) else EXIT_OK


def cmd_export(args) -> int:
    """Write the scenario UC model in MPS or LP format."""
    inst = _require_instance(args.instance)
    scen = _scenarios_from_args(args, inst)
    model = build_suc(inst, scen, include_redundant=args.include_redundant)
    path = _out(args, args.output)
    if not export_model(model, path, args.format):
        return _fail(args, f"failed to write model to {path}", EXIT_DATA)
    _emit(args, {"output": path, **model.summary()}, [f"Model saved to: {path}"])
    return EXIT_OK


def cmd_check(args) -> int:
    """Validate an instance file and report every problem."""
    inst = _require_instance(args.instance)
    problems = validate_instance(inst)
    if _is_json_mode(args):
        print(json.dumps({"status": "ok" if not problems else "invalid", "problems": [str(p) for p in problems]}))
    elif problems:
        for problem in problems:
            print(problem)
    else:
        print("Instance is valid")
    return EXIT_OK if not problems else EXIT_DATA


def cmd_init(args) -> int:
    """Create a default config file."""
    path = init_config(args.path)
    _emit(args, {"config_path": path}, [f"Config file: {path}"])
    return EXIT_OK


# -- parser ------------------------------------------------------------


def _common_args() -> argparse.ArgumentParser:
    """Flags accepted by every verb; None means 'from config'."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Base seed (default: run.seed)")
    common.add_argument("--mip-gap", type=float, default=None, help="Relative MIP gap (default: solver.mip_gap)")
    common.add_argument("--time-limit", type=float, default=None, help="Seconds per solve, 0 for none")
    common.add_argument("--jobs", type=int, default=None, help="Concurrent solves (default: run.jobs)")
    common.add_argument("--out", default=None, help="Directory for output files (default: run.out)")
    common.add_argument("--backend", default=None, help="MILP backend: scipy or pyomo")
    common.add_argument("--json", action="store_true", default=False, help="Output machine-readable JSON")
    common.add_argument("-v", "--verbose", action="store_true", default=False, help="Debug logging")
    return common


def _add_scenario_args(parser: argparse.ArgumentParser, n_help: str) -> None:
    parser.add_argument("-s", "--scenarios", help="Scenario CSV file")
    parser.add_argument("--n", type=int, default=None, help=n_help)
    parser.add_argument(
        "--dist",
        default=DEFAULT_DISTRIBUTION,
        help=f"gaussian:<sigma>[,rho=<r>], uniform:<range> or empirical:<path> (default: {DEFAULT_DISTRIBUTION})",
    )


def build_parser() -> CliParser:
    common = _common_args()
    parser = CliParser(
        prog="ccuc",
        description="ccuc - chance-constrained unit commitment with the scenario approach",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Scenarios needed for 10% risk at confidence 1 - 1e-4 over 24 snapshots
  ccuc sample-size --epsilon 0.1 --beta 1e-4 --h 24

  # Synthetic instance, 500 sampled scenarios, reduced solve
  ccuc generate -o inst.json --seed 3
  ccuc sample -i inst.json --n 500 -o scen.csv --seed 4
  ccuc solve -i inst.json -s scen.csv --reduce -o sol.json

  # Out-of-sample check on 10^4 fresh trajectories
  ccuc validate -i inst.json --solution sol.json --n 10000 --seed 99

  # Monte Carlo sweep
  ccuc experiment experiment.toml --jobs 4
""",
    )
    subparsers = parser.add_subparsers(dest="command", help="Commands")

    p = subparsers.add_parser("sample-size", parents=[common], help="Required number of scenarios")
    p.add_argument("--epsilon", type=float, required=True, help="Violation level in (0, 1)")
    p.add_argument("--beta", type=float, required=True, help="Confidence parameter in (0, 1)")
    p.add_argument("--h", type=int, required=True, help="Support-scenario bound (n_t for UC)")
    p.set_defaults(func=cmd_sample_size)

    p = subparsers.add_parser("epsilon-bound", parents=[common], help="Guaranteed violation level for N")
    p.add_argument("--n", type=int, required=True, help="Number of scenarios")
    p.add_argument("--beta", type=float, required=True, help="Confidence parameter in (0, 1)")
    p.add_argument("--h", type=int, required=True, help="Support-scenario bound")
    p.set_defaults(func=cmd_epsilon_bound)

    p = subparsers.add_parser("generate", parents=[common], help="Write a synthetic instance")
    p.add_argument("--n-g", type=int, default=10, help="Generators (default: 10)")
    p.add_argument("--n-t", type=int, default=24, help="Snapshots (default: 24)")
    p.add_argument("--n-k", type=int, default=10, help="Single-outage contingencies (default: 10)")
    p.add_argument("--n-d", type=int, default=20, help="Loads (default: 20)")
    p.add_argument("--n-w", type=int, default=3, help="Wind farms (default: 3)")
    p.add_argument("-o", "--output", default="instance.json", help="Output file (default: instance.json)")
    p.set_defaults(func=cmd_generate)

    p = subparsers.add_parser("sample", parents=[common], help="Sample error trajectories")
    p.add_argument("-i", "--instance", required=True, help="Instance file")
    p.add_argument("--n", type=int, required=True, help="Number of scenarios")
    p.add_argument("--dist", default=DEFAULT_DISTRIBUTION, help="Distribution descriptor")
    p.add_argument("-o", "--output", default="scenarios.csv", help="Output file (default: scenarios.csv)")
    p.set_defaults(func=cmd_sample)

    p = subparsers.add_parser("solve", parents=[common], help="Solve the scenario UC problem")
    p.add_argument("-i", "--instance", required=True, help="Instance file")
    _add_scenario_args(p, "Sample N scenarios instead of reading a file (default: none, d-UC)")
    p.add_argument("--reduce", action="store_true", help="Solve over the per-snapshot maximizers only")
    p.add_argument("--include-redundant", action="store_true", help="Add the implied capacity rows")
    p.add_argument("-o", "--output", default="solution.json", help="Output file (default: solution.json)")
    p.set_defaults(func=cmd_solve)

    p = subparsers.add_parser("reduce", parents=[common], help="Candidate support scenarios")
    p.add_argument("-s", "--scenarios", required=True, help="Scenario CSV file")
    p.add_argument("-o", "--output", help="Write the reduced scenario file")
    p.set_defaults(func=cmd_reduce)

    p = subparsers.add_parser("validate", parents=[common], help="Out-of-sample violation")
    p.add_argument("-i", "--instance", required=True, help="Instance file")
    p.add_argument("--solution", required=True, help="Solution file")
    _add_scenario_args(p, f"Test trajectories to sample (default: {TEST_SET_SIZE})")
    p.add_argument("-o", "--output", default="violation.json", help="Report file (default: violation.json)")
    p.set_defaults(func=cmd_validate)

    p = subparsers.add_parser("support", parents=[common], help="Support scenarios by removal")
    p.add_argument("-i", "--instance", required=True, help="Instance file")
    p.add_argument("-s", "--scenarios", required=True, help="Scenario CSV file")
    p.add_argument("--brute-force", action="store_true", help="Test every scenario, not only candidates")
    p.add_argument("-o", "--output", help="Write the support report")
    p.set_defaults(func=cmd_support)

    p = subparsers.add_parser("experiment", parents=[common], help="Monte Carlo experiment")
    p.add_argument("config", help="Experiment config (TOML)")
    p.set_defaults(func=cmd_experiment)

    p = subparsers.add_parser("export", parents=[common], help="Write the model as MPS or LP")
    p.add_argument("-i", "--instance", required=True, help="Instance file")
    _add_scenario_args(p, "Sample N scenarios instead of reading a file (default: none)")
    p.add_argument("--format", choices=EXPORT_FORMATS, default=None, help="Format (default: from extension)")
    p.add_argument("--include-redundant", action="store_true", help="Add the implied capacity rows")
    p.add_argument("-o", "--output", default="model.mps", help="Output file (default: model.mps)")
    p.set_defaults(func=cmd_export)

    p = subparsers.add_parser("check", parents=[common], help="Validate an instance file")
    p.add_argument("-i", "--instance", required=True, help="Instance file")
    p.set_defaults(func=cmd_check)

    p = subparsers.add_parser("init", parents=[common], help="Create a default config file")
    p.add_argument("--path", default=None, help="Config path (default: ~/.ccuc/config.toml)")
    p.set_defaults(func=cmd_init)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Main CLI entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)

    if not args.command:
        parser.print_help()
        return EXIT_USAGE

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )

    # Load config and apply as defaults (CLI flags override)
    args.explicit = {
        flag for flag in ("seed", "mip_gap", "time_limit", "jobs", "out", "backend")
        if getattr(args, flag, None) is not None
    }
    apply_config_to_args(args, load_config())

    try:
        return args.func(args)
    except DataError as e:
        return _fail(args, str(e), EXIT_DATA)
    except SolverError as e:
        return _fail(args, str(e), EXIT_SOLVER)
    except OSError as e:
        return _fail(args, f"file error: {e}", EXIT_DATA)


if __name__ == "__main__":
    sys.exit(main())
