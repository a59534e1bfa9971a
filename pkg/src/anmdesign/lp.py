"""Fractional altruism modification as a linear program.

The altruism variables are eliminated by substituting the modified network
``alpha = alpha_in + sum_k m_k sigma_k A^k`` into the threshold inequalities,
so the program has one variable per action and one row per agent:

* investor ``i``:      ``sum_k m_k sigma_k sum_j A^k_ij D-_j >= theta_i - phi_i``
* non-investor ``i``:  ``sum_k m_k sigma_k sum_j A^k_ij D+_j <= theta_i - phi_i``

with ``j`` ranging over ``N_H(i)`` and ``phi_i`` the same sum under ``alpha_in``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import simplex
from .errors import ModeError
from .game import TOL, altruism_sums, derive_targets
from .problem import AnmProblem, Mode, Solution, verified_solution


@dataclass(frozen=True)
class LpTableau:
    costs: np.ndarray  # (M,)
    rows: np.ndarray  # (n, M)
    senses: tuple[str, ...]
    rhs: np.ndarray  # (n,)

    @property
    def num_vars(self) -> int:
        return self.costs.size


def build_lp(problem: AnmProblem) -> LpTableau:
    if problem.mode is not Mode.FRACTIONAL:
        raise ModeError("build_lp needs a fractional-mode problem")
    inst, target = problem.inst, problem.target
    der = derive_targets(inst, target)
    n, M = inst.n, len(problem.actions)
    rows = np.zeros((n, M))
    for k, act in enumerate(problem.actions):
        for i, j, w in problem.action_entries(k):
            if not inst.graph.has_edge(i, j):
                continue
            delta = der.delta_minus[j] if target[i] else der.delta_plus[j]
            rows[i, k] += act.sign * w * delta
    phi = altruism_sums(inst, problem.alt_in, target, der)
    rhs = np.array([der.theta[i] - phi[i] for i in range(n)])
    senses = tuple(">=" if x else "<=" for x in target)
    costs = np.array([a.cost for a in problem.actions], dtype=float)
    return LpTableau(costs, rows, senses, rhs)


def solve_lp(lp: LpTableau, tol: float = simplex.LP_TOL) -> simplex.LpResult:
    """Solve the program; ``status`` is "optimal" or "infeasible".

    Raises :class:`~anmdesign.errors.NumericalFailure` when the pivot cap is hit.
    """
    if lp.num_vars == 0:
        bad = tuple(
            r
            for r, (sense, b) in enumerate(zip(lp.senses, lp.rhs))
            if (sense == ">=" and b > tol) or (sense == "<=" and b < -tol)
        )
        if bad:
            return simplex.LpResult("infeasible", infeasible_rows=bad)
        return simplex.LpResult("optimal", np.zeros(0), 0.0)
    return simplex.solve(lp.costs, lp.rows, lp.senses, lp.rhs, tol=tol)


def solve_fractional(problem: AnmProblem, tol: float = TOL) -> Solution:
    res = solve_lp(build_lp(problem))
    if res.status != "optimal":
        # costs are non-negative, so "unbounded" cannot arise from build_lp
        return Solution.infeasible(res.infeasible_rows)
    spend = [0.0 if math.isclose(v, 0.0, abs_tol=1e-12) else float(v) for v in res.x]
    return verified_solution(problem, spend, tol=tol)
