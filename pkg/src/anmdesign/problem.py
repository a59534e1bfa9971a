"""Modification problems, action menus and solutions."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import NumericalFailure, ValidationError
from .game import (
    TOL,
    AltruismNetwork,
    BnpgInstance,
    UniformAltruism,
    WeightedAltruism,
    is_psne_ineq,
)

#: Default ceiling on the number of actions, as a multiple of n**2.
MENU_FACTOR = 4


class Mode(str, enum.Enum):
    FRACTIONAL = "fractional"
    BINARY = "binary"


class Status(str, enum.Enum):
    OPTIMAL = "optimal"
    APPROXIMATE = "approximate"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True)
class Action:
    """One lever of the principal.

    ``weights`` optionally gives per-pair entries of the action matrix
    (default all 1); it is an in-memory extension and never serialised.
    """

    edges: tuple[tuple[int, int], ...]
    sign: int
    cost: float
    weights: tuple[float, ...] | None = None


@dataclass(frozen=True)
class AnmProblem:
    inst: BnpgInstance
    alt_in: AltruismNetwork
    target: tuple[int, ...]
    actions: tuple[Action, ...]
    mode: Mode = Mode.BINARY
    budget: float | None = None
    max_actions: int | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.inst.n
        if len(self.target) != n:
            raise ValidationError(f"expected {n} entries", "target")
        for i, x in enumerate(self.target):
            if x not in (0, 1):
                raise ValidationError("entries must be 0 or 1", f"target[{i}]")
        if self.alt_in.n != n:
            raise ValidationError("dimension does not match n", "altruism")
        if isinstance(self.alt_in, WeightedAltruism):
            for i, j, w in self.alt_in.entries():
                if w < 0:
                    raise ValidationError("weight must be >= 0", f"altruism pair ({i}, {j})")
        if self.budget is not None and not (self.budget >= 0):
            raise ValidationError("budget must be >= 0", "budget")
        cap = self.max_actions if self.max_actions is not None else MENU_FACTOR * max(n, 1) ** 2
        if len(self.actions) > cap:
            raise ValidationError(f"{len(self.actions)} actions exceed the cap {cap}", "actions")
        seen: set[tuple[int, int]] = set()
        for k, act in enumerate(self.actions):
            locus = f"actions[{k}]"
            if act.sign not in (-1, 1):
                raise ValidationError("sign must be +1 or -1", locus)
            if not (math.isfinite(act.cost) and act.cost >= 0):
                raise ValidationError("cost must be finite and >= 0", locus)
            if act.weights is not None and len(act.weights) != len(act.edges):
                raise ValidationError("one weight per edge required", locus)
            for i, j in act.edges:
                if not (0 <= i < n and 0 <= j < n) or i == j:
                    raise ValidationError(f"bad pair ({i}, {j})", locus)
            if self.graph_mode:
                if len(act.edges) != 1:
                    raise ValidationError("graph altruism needs singleton actions", locus)
                i, j = act.edges[0]
                key = self.alt_in.key(i, j)
                if key in seen:
                    raise ValidationError(f"second action on pair {key}", locus)
                seen.add(key)
                expected = -1 if self.alt_in.has_edge(i, j) else 1
                if act.sign != expected:
                    raise ValidationError(
                        f"pair ({i}, {j}) {'exists' if expected < 0 else 'is absent'}; "
                        f"sign must be {expected}",
                        locus,
                    )

    @property
    def n(self) -> int:
        return self.inst.n

    @property
    def graph_mode(self) -> bool:
        return isinstance(self.alt_in, UniformAltruism)

    def action_entries(self, k: int) -> list[tuple[int, int, float]]:
        """Non-zero entries ``(i, j, A_ij)`` of action ``k``, scaled by ``a`` in graph mode."""
        act = self.actions[k]
        scale = self.alt_in.a if self.graph_mode else 1.0
        weights = act.weights or (1.0,) * len(act.edges)
        out = []
        for (i, j), w in zip(act.edges, weights):
            out.append((i, j, scale * w))
            if self.graph_mode and not self.alt_in.directed:
                out.append((j, i, scale * w))
        return out

    def action_index(self) -> dict[tuple[int, int], int]:
        """Canonical pair -> action index (graph mode only)."""
        return {self.alt_in.key(*a.edges[0]): k for k, a in enumerate(self.actions)}

    def with_mode(self, mode: Mode) -> AnmProblem:
        return replace(self, mode=mode)


def apply_spend(problem: AnmProblem, spend: Sequence[float]) -> AltruismNetwork:
    """Altruism network after spending ``spend[k]`` on every action."""
    if len(spend) != len(problem.actions):
        raise ValueError("spend vector length does not match the menu")
    alt = problem.alt_in
    if problem.graph_mode and all(s in (0, 1) for s in spend):
        pairs = [problem.actions[k].edges[0] for k, s in enumerate(spend) if s == 1]
        return alt.toggled(pairs)
    mat = alt.matrix()
    for k, s in enumerate(spend):
        if s == 0:
            continue
        sign = problem.actions[k].sign
        for i, j, w in problem.action_entries(k):
            mat[i, j] += s * sign * w
    np.fill_diagonal(mat, 1.0)
    return WeightedAltruism.from_matrix(mat)


@dataclass(frozen=True)
class Solution:
    status: Status
    spend: tuple[float, ...] | None = None
    total_cost: float | None = None
    alt_out: AltruismNetwork | None = None
    ratio_bound: float | None = None
    within_budget: bool | None = None
    # agents whose constraints cannot be met; only set for infeasible results
    certificate: tuple[int, ...] = field(default=(), compare=False)

    @classmethod
    def infeasible(cls, certificate: Sequence[int] = ()) -> Solution:
        return cls(Status.INFEASIBLE, certificate=tuple(certificate))

    @property
    def feasible(self) -> bool:
        return self.status is not Status.INFEASIBLE


def spend_cost(problem: AnmProblem, spend: Sequence[float]) -> float:
    return math.fsum(s * a.cost for s, a in zip(spend, problem.actions))


def verified_solution(
    problem: AnmProblem,
    spend: Sequence[float],
    status: Status = Status.OPTIMAL,
    ratio_bound: float | None = None,
    tol: float = TOL,
) -> Solution:
    """Apply ``spend``, check the target is an equilibrium, and package the result.

    A solver that reaches this point claims feasibility, so a failed check is
    a numerical fault rather than an infeasible instance.
    """
    spend = tuple(float(s) for s in spend)
    alt_out = apply_spend(problem, spend)
    if not is_psne_ineq(problem.inst, alt_out, problem.target, tol):
        raise NumericalFailure("solver output does not make the target an equilibrium")
    cost = spend_cost(problem, spend)
    within = None if problem.budget is None else cost <= problem.budget + tol
    return Solution(status, spend, cost, alt_out, ratio_bound, within)
