"""Binary modification of an undirected altruism graph.

With separable linear benefits of common slope ``b`` every neighbour is
worth the same ``a * b`` to an agent, so an investor needs at least
``ceil(theta / (a b))`` altruism neighbours inside ``H`` and a
non-investor at most ``floor(theta / (a b))``.  That is a degree-interval
design problem on the altruism graph restricted to ``H``.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .asym import solve_asym
from .errors import ModeError
from .game import TOL, UniformAltruism, classify_benefits, investing_neighbors
from .ndds import NddsInstance, ndds_solve
from .problem import Action, AnmProblem, Mode, Solution, Status, verified_solution


def exact(x: float) -> Fraction:
    """Decimal reading of a float, to 12 significant digits."""
    return Fraction(f"{float(x):.12g}")


def _check_undirected(problem: AnmProblem) -> UniformAltruism:
    alt = problem.alt_in
    if problem.mode is not Mode.BINARY:
        raise ModeError("symmetric solvers need a binary-mode problem")
    if not isinstance(alt, UniformAltruism) or alt.directed:
        raise ModeError("symmetric solvers need an undirected altruism graph")
    return alt


def reduce_to_ndds(problem: AnmProblem) -> NddsInstance:
    alt = _check_undirected(problem)
    inst, target = problem.inst, problem.target
    cls = classify_benefits(inst)
    if cls.kind != "usl":
        raise ModeError("benefits are not uniform separable linear")
    if cls.value is not None and cls.value <= 0:
        raise ModeError("slope b must be strictly positive")
    n = inst.n
    # an unpinned slope means H has no edges, so any positive unit will do
    unit = exact(alt.a) * (exact(cls.value) if cls.value is not None else 1)
    counts = investing_neighbors(inst.graph, target)
    intervals = []
    for i in range(n):
        g, k = inst.benefits[i], counts[i]
        theta = exact(inst.costs[i]) - (exact(g(1, k)) - exact(g(0, k)))
        ratio = theta / unit
        if target[i]:
            lo = max(0, math.ceil(ratio))
            intervals.append((lo, n - 1) if lo <= n - 1 else None)
        elif theta < 0:
            intervals.append(None)
        else:
            intervals.append((0, min(math.floor(ratio), n - 1)))
    base = frozenset(e for e in alt.edges if inst.graph.has_edge(*e))
    costs = {}
    for act in problem.actions:
        e = alt.key(*act.edges[0])
        if inst.graph.has_edge(*e):
            costs[e] = act.cost
    return NddsInstance(n, base, costs, tuple(intervals))


def solve_sym_usl(problem: AnmProblem, tol: float = TOL) -> Solution:
    ndds = reduce_to_ndds(problem)
    res = ndds_solve(ndds)
    if res is None:
        bad = [i for i, iv in enumerate(ndds.intervals) if iv is None]
        return Solution.infeasible(bad)
    menu = problem.action_index()
    spend = [0] * len(problem.actions)
    for e in res.modifications:
        spend[menu[e]] = 1
    return verified_solution(problem, spend, tol=tol)


def directed_relaxation(problem: AnmProblem) -> tuple[AnmProblem, list[int]]:
    """Directed copy of an undirected problem.

    Every undirected edge becomes two arcs and every action two arcs of the
    same cost; the second value maps each new action back to its original.
    """
    alt = _check_undirected(problem)
    arcs = [(i, j) for i, j in alt.edges] + [(j, i) for i, j in alt.edges]
    actions, origin = [], []
    for k, act in enumerate(problem.actions):
        i, j = act.edges[0]
        for arc in ((i, j), (j, i)):
            actions.append(Action((arc,), act.sign, act.cost))
            origin.append(k)
    relaxed = AnmProblem(
        problem.inst,
        UniformAltruism(problem.n, arcs, alt.a, directed=True),
        problem.target,
        tuple(actions),
        Mode.BINARY,
        max_actions=len(actions),
    )
    return relaxed, origin


def solve_sym_approx(problem: AnmProblem, eps: float = 0.1, tol: float = TOL) -> Solution:
    """Directed FPTAS, then add the reverse of every bought arc.

    Only valid when every agent is to invest: reverse arcs then only add
    non-negative altruism.  Cost is within ``2 (1 + eps)`` of optimal.
    """
    _check_undirected(problem)
    if not all(problem.target):
        raise ModeError("the symmetric approximation needs an all-invest target")
    relaxed, origin = directed_relaxation(problem)
    sol = solve_asym(relaxed, "fptas", eps, tol)
    if not sol.feasible:
        return Solution.infeasible(sol.certificate)
    spend = [0] * len(problem.actions)
    for k, s in enumerate(sol.spend):
        if s:
            spend[origin[k]] = 1
    return verified_solution(problem, spend, Status.APPROXIMATE, 2 * (1 + eps), tol)
