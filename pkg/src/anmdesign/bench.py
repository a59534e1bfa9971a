"""Wall-clock timing for the DP kernels and the solvers.

Nothing here checks correctness; sizes past the oracle caps are expected.
"""

from __future__ import annotations

import time
from dataclasses import replace
from typing import Callable, Sequence

import numpy as np

from . import kernels
from .asym import solve_asym
from .errors import AnmError
from .game import derive_targets
from .generators import gen_random
from .lp import solve_fractional
from .problem import Mode
from .sym import solve_sym_approx, solve_sym_usl

LADDER = (10, 50, 100, 200)
KERNEL_SIZES = ((20, 2_000), (50, 10_000), (100, 50_000))


def _best_of(fn: Callable[[], object], repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(
    sizes: Sequence[tuple[int, int]] = KERNEL_SIZES, repeat: int = 3, seed: int = 0
) -> list[dict]:
    """Time each kernel backend on random tables of ``items x cap`` cells."""
    rng = np.random.default_rng(seed)
    rows = []
    for m, cap in sizes:
        ints = rng.integers(1, max(2, cap // max(m, 1)), size=m)
        reals = rng.uniform(0.0, 10.0, size=m)
        for name, impl in kernels.implementations().items():
            for kernel in ("suffix_max_value", "suffix_min_weight"):
                fn = getattr(kernels, kernel)
                secs = _best_of(lambda: fn(ints, reals, cap, impl=impl), repeat)
                rows.append(
                    {"kernel": kernel, "backend": name, "items": m, "cap": cap, "seconds": secs}
                )
    return rows


def _solvers():
    return {
        "solve-frac": ("directed", "general", lambda p: solve_fractional(p.with_mode(Mode.FRACTIONAL))),
        "solve-asym/weight": ("directed", "general", lambda p: solve_asym(p, "weight")),
        "solve-asym/value": ("directed", "general", lambda p: solve_asym(p, "value")),
        "solve-asym/fptas": ("directed", "general", lambda p: solve_asym(p, "fptas", 0.1)),
        "solve-sym-usl": ("undirected", "usl", solve_sym_usl),
        "solve-sym-approx": ("undirected", "usl", lambda p: solve_sym_approx(p, 0.1)),
    }


def _repair(problem, probe, all_invest: bool, rounds: int = 50):
    # random targets are nearly always infeasible at scale, which would only time the early exit.
    # Flip blocking agents (or, for all-invest, zero their threshold) until the probe succeeds.
    for _ in range(rounds):
        sol = probe(problem)
        if sol.feasible or not sol.certificate:
            return problem
        if all_invest:
            marginal = derive_targets(problem.inst, problem.target).own_marginal
            costs = list(problem.inst.costs)
            for i in sol.certificate:
                costs[i] = max(0.0, float(marginal[i]))
            problem = replace(problem, inst=replace(problem.inst, costs=tuple(costs)))
        else:
            target = list(problem.target)
            for i in sol.certificate:
                target[i] ^= 1
            problem = replace(problem, target=tuple(target))
    return problem


def bench_ladder(
    sizes: Sequence[int] = LADDER, seed: int = 0, degree: float = 4.0, solvers=None
) -> list[dict]:
    """Time every solver on one seeded instance per size (mean degree ``degree``).

    Targets are repaired to feasibility before timing where the solvers can
    say which agents block.
    """
    table = _solvers()
    names = list(solvers) if solvers else list(table)
    rows = []
    for n in sizes:
        density = min(1.0, degree / max(n - 1, 1))
        for name in names:
            alt_mode, benefit, run = table[name]
            # the approximation is a fast feasibility probe for both undirected solvers
            target = None if alt_mode == "directed" else (1,) * n
            problem = gen_random(n, density, benefit, alt_mode, seed, target=target)
            if alt_mode == "directed":
                probe = lambda p: solve_asym(p, "weight")
            else:
                probe = lambda p: solve_sym_approx(p, 0.1)
            try:
                problem = _repair(problem, probe, target is not None)
            except AnmError:
                pass
            t0 = time.perf_counter()
            try:
                status = run(problem).status.value
            except AnmError as exc:
                status = f"error: {type(exc).__name__}"
            rows.append(
                {"solver": name, "n": n, "status": status, "seconds": time.perf_counter() - t0}
            )
    return rows
