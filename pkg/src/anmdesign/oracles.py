"""Exhaustive reference solvers used as ground truth.

None of these share code with the fast solvers beyond the game model.
Each enumerates everything within a hard cap and raises
:class:`~anmdesign.errors.CapExceeded` beyond it.  Ties go to the
lexicographically smallest indicator vector (earlier items left out).
"""

from __future__ import annotations

import itertools
import math
import os
import warnings
from dataclasses import dataclass, fields

import numpy as np

from .errors import CapExceeded, NumericalFailure
from .game import (
    TOL,
    AltruismNetwork,
    BnpgInstance,
    altruism_sums,
    derive_targets,
    is_psne_deviation,
    is_psne_ineq,
)
from .knapsack import CoverKnapsack, KnapsackResult
from .matching import MatchingGraph, MatchingResult
from .ndds import NddsInstance, NddsResult
from .problem import AnmProblem, apply_spend, spend_cost

_CHUNK = 1 << 16


@dataclass(frozen=True)
class OracleBudget:
    actions: int = 22
    agents: int = 20
    pairs: int = 16
    matching_nodes: int = 12

    @classmethod
    def from_env(cls, var: str = "ANM_ORACLE_CAPS") -> OracleBudget:
        """Defaults, tightened by ``ANM_ORACLE_CAPS="actions=10,agents=8"``.

        Values above the defaults are ignored; caps never loosen.
        """
        caps = cls()
        raw = os.environ.get(var, "").strip()
        if not raw:
            return caps
        names = {f.name for f in fields(cls)}
        updates = {}
        for part in raw.split(","):
            key, _, val = part.partition("=")
            key = key.strip()
            if key not in names:
                raise ValueError(f"{var}: unknown cap {key!r}")
            updates[key] = min(int(val), getattr(caps, key))
        return cls(**{**caps.__dict__, **updates})


def _budget(budget: OracleBudget | None) -> OracleBudget:
    return budget if budget is not None else OracleBudget.from_env()


def _require(what: str, size: int, cap: int) -> None:
    if size > cap:
        raise CapExceeded(f"{what} = {size} exceeds the oracle cap {cap}")


def _masks(m: int):
    """Indicator rows for all 2**m subsets in lexicographic order, chunked.

    Column ``k`` is bit ``m - 1 - k`` so increasing integers enumerate
    indicator vectors lexicographically.
    """
    shifts = np.arange(m - 1, -1, -1, dtype=np.int64)
    total = 1 << m
    for start in range(0, total, _CHUNK):
        ids = np.arange(start, min(total, start + _CHUNK), dtype=np.int64)
        yield ids, ((ids[:, None] >> shifts) & 1).astype(np.float64)


def _argmin_lex(costs: np.ndarray, ids: np.ndarray, best):
    if costs.size == 0:
        return best
    low = costs.min()
    # chunks arrive in increasing id order, so an earlier tie wins
    if best is not None and low >= best[0] - 1e-12 * max(1.0, abs(best[0])):
        return best
    tie = np.flatnonzero(costs <= low + 1e-12 * max(1.0, abs(low)))
    return (float(low), int(ids[tie[0]]))


@dataclass(frozen=True)
class BruteResult:
    spend: tuple[int, ...]
    cost: float


def _agent_contributions(problem: AnmProblem):
    """Per-agent altruism sums under ``alpha_in`` and per-action increments."""
    inst, target = problem.inst, problem.target
    der = derive_targets(inst, target)
    n, M = inst.n, len(problem.actions)
    weights = np.zeros((n, n))
    for i in range(n):
        deltas = der.delta_minus if target[i] else der.delta_plus
        for j in inst.graph.neighbors[i]:
            weights[i, j] = deltas[j]
    base = np.array(altruism_sums(inst, problem.alt_in, target, der))
    incr = np.zeros((M, n))
    for k, act in enumerate(problem.actions):
        change = np.zeros((n, n))
        for i, j, w in problem.action_entries(k):
            change[i, j] += act.sign * w
        incr[k] = (change * weights).sum(axis=1)
    return base, incr, np.array(der.theta)


def brute_anm_binary(
    problem: AnmProblem, budget: OracleBudget | None = None, tol: float = TOL
) -> BruteResult | None:
    """Cheapest 0/1 spend vector making the target an equilibrium."""
    M = len(problem.actions)
    _require("actions", M, _budget(budget).actions)
    base, incr, theta = _agent_contributions(problem)
    invest = np.array(problem.target, dtype=bool)
    kappa = np.array([a.cost for a in problem.actions])
    best = None
    for ids, bits in _masks(M):
        lhs = base + bits @ incr
        ok = np.where(invest, lhs >= theta - tol, lhs <= theta + tol).all(axis=1)
        if ok.any():
            best = _argmin_lex((bits @ kappa)[ok], ids[ok], best)
    if best is None:
        return None
    spend = tuple(int(c) for c in format(best[1], f"0{M}b")) if M else ()
    if not is_psne_ineq(problem.inst, apply_spend(problem, spend), problem.target, tol):
        raise NumericalFailure("oracle optimum fails the scalar equilibrium check")
    return BruteResult(spend, spend_cost(problem, spend))


def milp_anm_binary(problem: AnmProblem, tol: float = TOL) -> BruteResult | None:
    """Exact 0/1 optimum by mixed-integer programming, for instances past the caps."""
    from scipy.optimize import Bounds, LinearConstraint, milp

    M = len(problem.actions)
    base, incr, theta = _agent_contributions(problem)
    invest = np.array(problem.target, dtype=bool)
    kappa = np.array([a.cost for a in problem.actions], dtype=float)
    if M == 0:
        lhs = base
        ok = np.where(invest, lhs >= theta - tol, lhs <= theta + tol).all()
        return BruteResult((), 0.0) if ok else None
    need = theta - base
    lo = np.where(invest, need - tol, -np.inf)
    hi = np.where(invest, np.inf, need + tol)
    with warnings.catch_warnings():
        # the feasibility tolerance is a HiGHS option scipy forwards with a warning
        warnings.simplefilter("ignore", RuntimeWarning)
        res = milp(
            kappa,
            constraints=[LinearConstraint(incr.T, lo, hi)],
            integrality=np.ones(M),
            bounds=Bounds(0, 1),
            options={"mip_rel_gap": 0.0, "primal_feasibility_tolerance": 1e-9},
        )
    if res.status == 2:
        return None
    if res.status != 0:
        raise NumericalFailure(f"MILP oracle failed: {res.message}")
    spend = tuple(int(round(v)) for v in res.x)
    if not is_psne_ineq(problem.inst, apply_spend(problem, spend), problem.target, tol):
        raise NumericalFailure("MILP optimum fails the scalar equilibrium check")
    return BruteResult(spend, spend_cost(problem, spend))


def brute_psne_enum(
    inst: BnpgInstance, alt: AltruismNetwork, budget: OracleBudget | None = None, tol: float = TOL
) -> list[tuple[int, ...]]:
    _require("agents", inst.n, _budget(budget).agents)
    return [
        p for p in itertools.product((0, 1), repeat=inst.n) if is_psne_deviation(inst, alt, p, tol)
    ]


def brute_cover_knapsack(
    kp: CoverKnapsack, budget: OracleBudget | None = None, tol: float = TOL
) -> KnapsackResult | None:
    items = kp.sorted_items()
    m = len(items)
    _require("items", m, _budget(budget).actions)
    values = np.array([it.value for it in items])
    weights = np.array([it.weight for it in items])
    best = None
    for ids, bits in _masks(m):
        ok = bits @ values >= kp.demand - tol
        if ok.any():
            best = _argmin_lex((bits @ weights)[ok], ids[ok], best)
    if best is None:
        return None
    chosen = [it for k, it in enumerate(items) if best[1] >> (m - 1 - k) & 1]
    return KnapsackResult(tuple(it.id for it in chosen), math.fsum(it.weight for it in chosen))


def brute_ndds(ndds: NddsInstance, budget: OracleBudget | None = None) -> NddsResult | None:
    pairs = sorted(ndds.costs)
    P = len(pairs)
    _require("candidate pairs", P, _budget(budget).pairs)
    base_deg = np.zeros(ndds.n)
    for i, j in ndds.base_edges:
        base_deg[i] += 1
        base_deg[j] += 1
    step = np.zeros((P, ndds.n))
    for k, (i, j) in enumerate(pairs):
        s = -1.0 if (i, j) in ndds.base_edges else 1.0
        step[k, i] = step[k, j] = s
    lo = np.array([iv[0] if iv else 1 for iv in ndds.intervals], dtype=float)
    hi = np.array([iv[1] if iv else 0 for iv in ndds.intervals], dtype=float)
    kappa = np.array([ndds.costs[p] for p in pairs])
    best = None
    for ids, bits in _masks(P):
        deg = base_deg + bits @ step
        ok = ((deg >= lo) & (deg <= hi)).all(axis=1)
        if ok.any():
            best = _argmin_lex((bits @ kappa)[ok], ids[ok], best)
    if best is None:
        return None
    mods = tuple(p for k, p in enumerate(pairs) if best[1] >> (P - 1 - k) & 1)
    return NddsResult(mods, math.fsum(ndds.costs[p] for p in mods))


def brute_mcpm(g: MatchingGraph, budget: OracleBudget | None = None) -> MatchingResult | None:
    _require("matching nodes", g.num_nodes, _budget(budget).matching_nodes)
    if g.num_nodes % 2:
        return None
    cost: dict[tuple[int, int], float] = {}
    for u, v, c in g.edges:
        key = (min(u, v), max(u, v))
        cost[key] = min(c, cost.get(key, math.inf))
    adj = {u: sorted(v for (a, v) in cost if a == u) for u in range(g.num_nodes)}
    best: list = [math.inf, None]

    def extend(free: list[int], chosen: list[tuple[int, int]], total: float) -> None:
        if not free:
            if total < best[0]:
                best[0], best[1] = total, tuple(chosen)
            return
        u, rest = free[0], free[1:]
        for v in adj[u]:
            if v in rest:
                chosen.append((u, v))
                extend([w for w in rest if w != v], chosen, total + cost[(u, v)])
                chosen.pop()

    extend(list(range(g.num_nodes)), [], 0.0)
    if best[1] is None:
        return None
    pairs = tuple(sorted(best[1]))
    return MatchingResult(pairs, math.fsum(cost[p] for p in pairs))
