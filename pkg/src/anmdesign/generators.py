"""Instance factories: hardness reductions and seeded random families.

The reductions build instances whose optimal modification cost encodes
the answer to a Knapsack or 3-Partition question, which makes them
useful cross-checks for the exact solvers.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .game import (
    BnpgInstance,
    StrategicGraph,
    TableBenefit,
    UniformAltruism,
    UslBenefit,
    WeightedAltruism,
)
from .problem import Action, AnmProblem, Mode

BENEFIT_CLASSES = ("general", "polynomial", "usl")
ALTRUISM_MODES = ("matrix", "directed", "undirected")


def _num(x) -> float:
    # 12 significant digits survive the JSON round trip exactly
    return float(f"{float(x):.12g}")


def _clique(n: int) -> StrategicGraph:
    return StrategicGraph.from_edges(n, itertools.combinations(range(n), 2))


def _pair_actions(alt: UniformAltruism, pairs, cost) -> tuple[Action, ...]:
    return tuple(
        Action((p,), -1 if alt.has_edge(*p) else 1, float(cost(p))) for p in pairs
    )


def gen_knapsack_reduction(
    values: Sequence[float], weights: Sequence[float], C: float, W: float, a: float = 1.0
) -> AnmProblem:
    """Directed instance whose optimum is <= W iff some item set has value >= C.

    Agent 0 is the special agent with threshold ``a C``; agent ``i`` stands
    for item ``i`` with marginal neighbour benefit ``v_i`` and threshold 0.
    Only arcs from agent 0 to item agents can be bought, at cost ``w_i``.
    """
    if len(values) != len(weights):
        raise PreconditionError("values and weights differ in length")
    if any(v < 0 for v in values) or any(w < 0 for w in weights) or C < 0 or W < 0:
        raise PreconditionError("knapsack data must be non-negative")
    n = len(values) + 1
    benefits = [UslBenefit(0.0, 0.0, 0.0)]
    costs = [_num(a * C)]
    for v in values:
        # own marginal 1 equals the cost, so the item agent's threshold is 0
        benefits.append(UslBenefit(0.0, 1.0, _num(v)))
        costs.append(1.0)
    inst = BnpgInstance(_clique(n), tuple(benefits), tuple(costs))
    alt = UniformAltruism(n, (), a, directed=True)
    actions = tuple(Action(((0, i + 1),), 1, _num(w)) for i, w in enumerate(weights))
    return AnmProblem(inst, alt, (1,) * n, actions, Mode.BINARY, _num(W))


def _three_partition_data(numbers: Sequence[int], strict: bool) -> tuple[int, Fraction]:
    if len(numbers) == 0 or len(numbers) % 3:
        raise PreconditionError("need 3m numbers for some m >= 1")
    m = len(numbers) // 3
    s = sum(numbers)
    lo, hi = Fraction(s, 4 * m), Fraction(s, 2 * m)
    for x in numbers:
        inside = lo < x < hi if strict else lo <= x <= hi
        if not inside:
            rel = "<" if strict else "<="
            raise PreconditionError(f"need s/(4m) {rel} x {rel} s/(2m); x = {x}, s = {s}, m = {m}")
    return m, Fraction(s)


def gen_3partition_reduction(numbers: Sequence[int], a: float = 1.0) -> AnmProblem:
    """Undirected, all-invest, unit-cost instance: optimum <= 3m iff a 3-partition exists.

    Agents ``0..3m-1`` stand for the numbers and start fully connected;
    agents ``3m..4m-1`` stand for the triples.
    """
    m, s = _three_partition_data(numbers, strict=True)
    eps = Fraction(1, 8 * m)
    n = 4 * m
    benefits, costs = [], []
    for x in numbers:
        benefits.append(UslBenefit(0.0, 0.0, float(x)))
        costs.append(_num(a * (s + eps - x)))
    for _ in range(m):
        benefits.append(UslBenefit(0.0, 0.0, _num(eps)))
        costs.append(_num(a * s / m))
    inst = BnpgInstance(_clique(n), tuple(benefits), tuple(costs))
    alt = UniformAltruism(n, itertools.combinations(range(3 * m), 2), a, directed=False)
    actions = _pair_actions(alt, itertools.combinations(range(n), 2), lambda p: 1)
    return AnmProblem(inst, alt, (1,) * n, actions, Mode.BINARY, float(3 * m))


def gen_feasibility_reduction(numbers: Sequence[int], a: float = 1.0) -> AnmProblem:
    """Undirected, zero-cost instance: feasible iff a 3-partition exists.

    The number agents must not invest, the triple agents must.
    """
    m, s = _three_partition_data(numbers, strict=False)
    n = 4 * m
    benefits, costs = [], []
    for x in numbers:
        benefits.append(UslBenefit(0.0, 0.0, float(x)))
        costs.append(float(a))
    for _ in range(m):
        benefits.append(UslBenefit(0.0, 0.0, 1.0))
        costs.append(_num(a * (s / m + m - 1)))
    inst = BnpgInstance(_clique(n), tuple(benefits), tuple(costs))
    alt = UniformAltruism(n, (), a, directed=False)
    actions = _pair_actions(alt, itertools.combinations(range(n), 2), lambda p: 0)
    target = (0,) * (3 * m) + (1,) * m
    return AnmProblem(inst, alt, target, actions, Mode.BINARY)


def _random_table(rng: random.Random, deg: int, integral: bool) -> TableBenefit:
    def step(hi: float) -> float:
        return float(rng.randint(0, int(hi))) if integral else round(rng.uniform(0, hi), 2)

    row0 = [step(3)]
    for _ in range(deg):
        row0.append(row0[-1] + step(3))
    row1 = [row0[0] + step(4)]
    for _ in range(deg):
        row1.append(row1[-1] + step(3))
    row1 = [max(u, v) for u, v in zip(row0, row1)]
    if not integral:
        row0 = [round(v, 2) for v in row0]
        row1 = [round(v, 2) for v in row1]
    return TableBenefit((tuple(row0), tuple(row1)))


def gen_random(
    n: int,
    edge_density: float,
    benefit_class: str = "general",
    altruism_mode: str = "directed",
    seed: int = 0,
    *,
    a: float = 1.0,
    alt_density: float = 0.3,
    max_cost: int = 10,
    mode: Mode = Mode.BINARY,
    target: Sequence[int] | None = None,
) -> AnmProblem:
    """Reproducible random problem.

    Edge costs are integers in ``[1, max_cost]``; thresholds are drawn so
    both satisfied and unsatisfied agents are common.  Actions cover every
    pair inside ``H`` (ordered pairs unless the altruism graph is undirected).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= edge_density <= 1:
        raise ValueError("edge_density must lie in [0, 1]")
    if benefit_class not in BENEFIT_CLASSES:
        raise ValueError(f"benefit_class must be one of {BENEFIT_CLASSES}")
    if altruism_mode not in ALTRUISM_MODES:
        raise ValueError(f"altruism_mode must be one of {ALTRUISM_MODES}")
    rng = random.Random(seed)
    graph = StrategicGraph.from_edges(
        n, [p for p in itertools.combinations(range(n), 2) if rng.random() < edge_density]
    )
    benefits = []
    slope = rng.randint(1, 3)
    for i in range(n):
        deg = graph.degree(i)
        if benefit_class == "usl":
            h0 = float(rng.randint(0, 3))
            h1 = h0 + rng.randint(0, 4)
            g = UslBenefit(h0, h1, float(slope))
            if rng.random() < 0.5:
                g = TableBenefit(tuple(tuple(g(x, k) for k in range(deg + 1)) for x in (0, 1)))
            benefits.append(g)
        else:
            benefits.append(_random_table(rng, deg, integral=benefit_class == "polynomial"))
    costs = []
    for i, g in enumerate(benefits):
        marginal = g(1, 0) - g(0, 0)
        extra = a * 1.5 * max(graph.degree(i), 1)
        if benefit_class == "general":
            costs.append(round(max(0.0, marginal + rng.uniform(-0.3, extra)), 2))
        else:
            costs.append(float(max(0, round(marginal + rng.randint(-1, int(extra))))))
    inst = BnpgInstance(graph, tuple(benefits), tuple(costs))
    if target is None:
        target = [rng.randint(0, 1) for _ in range(n)]
    ordered = [(i, j) for i in range(n) for j in graph.neighbors[i]]

    if altruism_mode == "matrix":
        entries = [
            (i, j, rng.choice((0.5, 1.0)))
            for i in range(n)
            for j in range(n)
            if i != j and rng.random() < alt_density
        ]
        alt = WeightedAltruism(n, entries)
        actions = []
        for i, j in ordered:
            actions.append(Action(((i, j),), 1, float(rng.randint(1, max_cost))))
            if alt.weight(i, j) > 0:
                actions.append(Action(((i, j),), -1, float(rng.randint(1, max_cost))))
        actions = tuple(actions)
    else:
        directed = altruism_mode == "directed"
        pool = (
            [(i, j) for i in range(n) for j in range(n) if i != j]
            if directed
            else list(itertools.combinations(range(n), 2))
        )
        alt = UniformAltruism(n, [p for p in pool if rng.random() < alt_density], a, directed)
        pairs = ordered if directed else graph.edges()
        actions = _pair_actions(alt, pairs, lambda p: rng.randint(1, max_cost))
    return AnmProblem(inst, alt, tuple(target), actions, mode)
