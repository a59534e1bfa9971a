"""``anm`` command line.

Instances come from standard input or ``--input``; machine output is JSON
on standard output and everything meant for people goes to standard error.

Exit codes: 0 success, 1 target is not an equilibrium (``check-eq``) or an
internal numerical fault, 2 infeasible, 3 invalid input, 4 cap or mode error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import bench, generators, io, oracles
from .asym import STRATEGIES, solve_asym
from .errors import (
    AnmError,
    CapExceeded,
    ModeError,
    NumericalFailure,
    PreconditionError,
    ScaleError,
    SchemaError,
    ValidationError,
)
from .game import TOL, psne_violations
from .lp import solve_fractional
from .problem import Mode, Solution, verified_solution
from .sym import solve_sym_approx, solve_sym_usl

EXIT_OK, EXIT_NOT_EQ, EXIT_INFEASIBLE, EXIT_INVALID, EXIT_MODE = 0, 1, 2, 3, 4


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _read(args) -> bytes:
    if args.input and args.input != "-":
        with open(args.input, "rb") as fh:
            return fh.read()
    return sys.stdin.buffer.read()


def _problem(args, default_mode: Mode | None = None):
    problem = io.parse_problem(_read(args))
    mode = Mode(args.mode) if args.mode else default_mode
    return problem.with_mode(mode) if mode else problem


def _emit_solution(sol: Solution, out) -> int:
    out.write(io.emit_solution(sol))
    if not sol.feasible:
        print(f"infeasible; blocking agents: {list(sol.certificate)}", file=sys.stderr)
        return EXIT_INFEASIBLE
    print(f"{sol.status.value}: cost {sol.total_cost:.12g}", file=sys.stderr)
    return EXIT_OK


def cmd_check_eq(args, out) -> int:
    problem = _problem(args)
    bad = psne_violations(problem.inst, problem.alt_in, problem.target, args.tolerance)
    verdict = {
        "psne": not bad,
        "violations": [
            {
                "agent": v.agent,
                "invests": v.invests,
                "lhs": io.fmt(v.lhs),
                "theta": io.fmt(v.theta),
                "slack": io.fmt(v.slack),
            }
            for v in bad
        ],
    }
    out.write(_dump(verdict))
    return EXIT_OK if not bad else EXIT_NOT_EQ


def cmd_solve_frac(args, out) -> int:
    return _emit_solution(solve_fractional(_problem(args, Mode.FRACTIONAL), args.tolerance), out)


def cmd_solve_asym(args, out) -> int:
    sol = solve_asym(_problem(args), args.strategy, args.eps, args.tolerance)
    return _emit_solution(sol, out)


def cmd_solve_sym_usl(args, out) -> int:
    return _emit_solution(solve_sym_usl(_problem(args), args.tolerance), out)


def cmd_solve_sym_approx(args, out) -> int:
    return _emit_solution(solve_sym_approx(_problem(args), args.eps, args.tolerance), out)


def cmd_oracle(args, out) -> int:
    problem = _problem(args)
    if args.what == "psne":
        found = oracles.brute_psne_enum(problem.inst, problem.alt_in, tol=args.tolerance)
        out.write(_dump({"profiles": [list(p) for p in found]}))
        return EXIT_OK
    if problem.mode is not Mode.BINARY:
        raise ModeError("the oracle enumerates 0/1 spend vectors; use --mode binary")
    res = oracles.brute_anm_binary(problem, tol=args.tolerance)
    if res is None:
        return _emit_solution(Solution.infeasible(), out)
    return _emit_solution(verified_solution(problem, res.spend, tol=args.tolerance), out)


def _numbers(text: str, kind=float) -> list:
    return [kind(x) for x in text.split(",") if x.strip()]


def cmd_gen(args, out) -> int:
    if args.family == "random":
        problem = generators.gen_random(
            args.n,
            args.density,
            args.benefit_class,
            args.altruism_mode,
            args.seed,
            a=args.a,
            mode=Mode(args.mode or "binary"),
        )
    elif args.family == "knapsack":
        problem = generators.gen_knapsack_reduction(
            _numbers(args.values), _numbers(args.weights), args.C, args.W
        )
    elif args.family == "3partition":
        problem = generators.gen_3partition_reduction(_numbers(args.numbers, int))
    else:
        problem = generators.gen_feasibility_reduction(_numbers(args.numbers, int))
    out.write(io.emit_problem(problem))
    return EXIT_OK


def cmd_bench(args, out) -> int:
    result = {}
    if args.what in ("kernels", "all"):
        result["kernels"] = bench.bench_kernels(repeat=args.repeat, seed=args.seed)
    if args.what in ("solvers", "all"):
        result["solvers"] = bench.bench_ladder(args.sizes, args.seed)
    out.write(_dump(result))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH", help="instance file (default: stdin)")
    common.add_argument("--tolerance", type=float, default=TOL, help="equilibrium tolerance")
    common.add_argument("--mode", choices=[m.value for m in Mode], help="override the instance mode")

    parser = argparse.ArgumentParser(prog="anm", description="Altruism network design solvers.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-eq", parents=[common], help="is the target an equilibrium?")
    p.set_defaults(func=cmd_check_eq)
    p = sub.add_parser("solve-frac", parents=[common], help="fractional spend by LP")
    p.set_defaults(func=cmd_solve_frac)
    p = sub.add_parser("solve-asym", parents=[common], help="directed binary design")
    p.add_argument("--strategy", choices=STRATEGIES, default="weight")
    p.add_argument("--eps", type=float, default=0.1)
    p.set_defaults(func=cmd_solve_asym)
    p = sub.add_parser("solve-sym-usl", parents=[common], help="undirected design, USL benefits")
    p.set_defaults(func=cmd_solve_sym_usl)
    p = sub.add_parser("solve-sym-approx", parents=[common], help="undirected 2(1+eps) approximation")
    p.add_argument("--eps", type=float, default=0.1)
    p.set_defaults(func=cmd_solve_sym_approx)
    p = sub.add_parser("oracle", parents=[common], help="exhaustive reference answers")
    p.add_argument("what", choices=("anm", "psne"))
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="emit a generated instance")
    p.add_argument("family", choices=("random", "knapsack", "3partition", "feasibility"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--benefit-class", choices=generators.BENEFIT_CLASSES, default="general")
    p.add_argument("--altruism-mode", choices=generators.ALTRUISM_MODES, default="directed")
    p.add_argument("--a", type=float, default=1.0)
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--values", default="", help="comma-separated item values")
    p.add_argument("--weights", default="", help="comma-separated item weights")
    p.add_argument("--C", type=float, default=0.0, help="value demand")
    p.add_argument("--W", type=float, default=0.0, help="weight budget")
    p.add_argument("--numbers", default="", help="comma-separated 3-partition numbers")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="timing tables")
    p.add_argument("what", nargs="?", choices=("kernels", "solvers", "all"), default="all")
    p.add_argument("--sizes", type=int, nargs="+", default=list(bench.LADDER))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeat", type=int, default=3)
    p.set_defaults(func=cmd_bench)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except (SchemaError, ValidationError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (CapExceeded, ModeError, ScaleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_MODE
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NOT_EQ
    except AnmError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_EQ
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main() -> None:
    sys.exit(run())
