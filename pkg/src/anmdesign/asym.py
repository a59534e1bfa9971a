"""Binary modification of a directed altruism graph by per-agent knapsacks.

A directed edge ``i -> j`` only enters agent ``i``'s own inequality, so
the problem splits into one covering knapsack per agent: investors buy new
out-edges worth ``a * D-_j`` until their threshold is met, non-investors
drop existing out-edges worth ``a * D+_j`` until they fall below it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ModeError
from .game import TOL, UniformAltruism, altruism_sums, derive_targets
from .knapsack import (
    CoverKnapsack,
    Item,
    scale_factor,
    solve_dp_by_value,
    solve_dp_by_weight,
    solve_fptas,
)
from .problem import AnmProblem, Mode, Solution, Status, verified_solution

STRATEGIES = ("weight", "value", "fptas")


@dataclass(frozen=True)
class AgentSubproblem:
    agent: int
    direction: str  # "add" for investors, "remove" for non-investors
    phi: float
    theta: float
    knapsack: CoverKnapsack | None  # None when already satisfied at zero cost

    @property
    def resolved(self) -> bool:
        return self.knapsack is None


def _check_directed(problem: AnmProblem) -> UniformAltruism:
    alt = problem.alt_in
    if problem.mode is not Mode.BINARY:
        raise ModeError("the knapsack decomposition needs a binary-mode problem")
    if not isinstance(alt, UniformAltruism) or not alt.directed:
        raise ModeError("the knapsack decomposition needs a directed altruism graph")
    return alt


def decompose(problem: AnmProblem, tol: float = TOL) -> list[AgentSubproblem]:
    alt = _check_directed(problem)
    inst, target = problem.inst, problem.target
    der = derive_targets(inst, target)
    phi = altruism_sums(inst, alt, target, der)
    menu = problem.action_index()
    subs = []
    for i in range(inst.n):
        invests = bool(target[i])
        demand = der.theta[i] - phi[i] if invests else phi[i] - der.theta[i]
        kp = None
        if demand > tol:
            deltas = der.delta_minus if invests else der.delta_plus
            items = tuple(
                Item((i, j), alt.a * deltas[j], problem.actions[menu[(i, j)]].cost)
                for j in inst.graph.neighbors[i]
                if alt.has_edge(i, j) != invests and (i, j) in menu
            )
            kp = CoverKnapsack(items, demand)
        subs.append(AgentSubproblem(i, "add" if invests else "remove", phi[i], der.theta[i], kp))
    return subs


def _rescaled(kp: CoverKnapsack, field: str, factor: int) -> CoverKnapsack:
    items = []
    for it in kp.items:
        v, w = it.value, it.weight
        if field == "weight":
            w = round(w * factor)
        else:
            v = round(v * factor)
        items.append(Item(it.id, v, w))
    demand = kp.demand * factor if field == "value" else kp.demand
    return CoverKnapsack(tuple(items), demand)


def solve_subproblem(
    kp: CoverKnapsack, strategy: str = "weight", eps: float = 0.1, tol: float = TOL
):
    """Solve one agent's knapsack; weights in the result are in original units."""
    if strategy == "fptas":
        return solve_fptas(kp, eps, tol)
    if strategy == "weight":
        factor = scale_factor([it.weight for it in kp.items])
        res = solve_dp_by_weight(_rescaled(kp, "weight", factor), tol)
    elif strategy == "value":
        factor = scale_factor([it.value for it in kp.items])
        res = solve_dp_by_value(_rescaled(kp, "value", factor), tol * factor)
    else:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if res is None:
        return None
    weights = {it.id: it.weight for it in kp.items}
    return type(res)(res.subset, math.fsum(weights[i] for i in res.subset))


def solve_asym(
    problem: AnmProblem, strategy: str = "weight", eps: float = 0.1, tol: float = TOL
) -> Solution:
    subs = decompose(problem, tol)
    menu = problem.action_index()
    spend = [0] * len(problem.actions)
    failed = []
    for sub in subs:
        if sub.resolved:
            continue
        res = solve_subproblem(sub.knapsack, strategy, eps, tol)
        if res is None:
            failed.append(sub.agent)
            continue
        for pair in res.subset:
            spend[menu[pair]] = 1
    if failed:
        return Solution.infeasible(failed)
    if strategy == "fptas":
        return verified_solution(problem, spend, Status.APPROXIMATE, 1.0 + eps, tol)
    return verified_solution(problem, spend, tol=tol)
