"""Minimum-cost perfect matching in general graphs.

Costs are scaled to integers and handed to the primal-dual blossom
algorithm in :func:`networkx.max_weight_matching` as
``K - cost`` with ``maxcardinality=True``: every perfect matching has the
same size, so the heaviest maximum-cardinality matching is the cheapest
perfect one.  Negative costs need no special handling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import networkx as nx

#: Costs are rounded to multiples of 1/COST_SCALE before matching.
COST_SCALE = 10**6


@dataclass(frozen=True)
class MatchingGraph:
    num_nodes: int
    edges: tuple[tuple[int, int, float], ...]


@dataclass(frozen=True)
class MatchingResult:
    pairs: tuple[tuple[int, int], ...]
    cost: float


def _cheapest_edges(g: MatchingGraph) -> dict[tuple[int, int], float]:
    best: dict[tuple[int, int], float] = {}
    for u, v, c in g.edges:
        if u == v:
            raise ValueError(f"self-loop at node {u}")
        key = (min(u, v), max(u, v))
        if key not in best or c < best[key]:
            best[key] = c
    return best


def mcpm(g: MatchingGraph) -> MatchingResult | None:
    """Cheapest perfect matching, or ``None`` if the graph has none."""
    if g.num_nodes % 2:
        return None
    if g.num_nodes == 0:
        return MatchingResult((), 0.0)
    costs = _cheapest_edges(g)
    scaled = {e: round(c * COST_SCALE) for e, c in costs.items()}
    top = max(scaled.values(), default=0) + 1
    graph = nx.Graph()
    graph.add_nodes_from(range(g.num_nodes))
    for (u, v), c in scaled.items():
        graph.add_edge(u, v, weight=top - c)
    mate = nx.max_weight_matching(graph, maxcardinality=True)
    if 2 * len(mate) != g.num_nodes:
        return None
    pairs = tuple(sorted((min(u, v), max(u, v)) for u, v in mate))
    return MatchingResult(pairs, math.fsum(costs[p] for p in pairs))
