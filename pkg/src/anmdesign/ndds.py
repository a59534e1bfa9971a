"""Network design for degree sets, solved through perfect matching.

Given a base graph, per-pair modification costs (pairs without a cost are
locked) and a degree interval per node, find the cheapest set of pair
toggles after which every degree lies in its interval.

Writing ``F`` for the final set of modifiable pairs that are present, the
cost is ``const + sum_{e in F} c_e`` with ``c_e = +k_e`` for a non-edge and
``-k_e`` for a base edge (``const`` sums ``k_e`` over removable base edges).
Choosing ``F`` with ``deg_F(i)`` in ``[L_i, R_i]`` is then a
degree-constrained subgraph problem, encoded as a perfect matching:

* node ``i`` gets ``R_i`` copies and ``R_i - L_i`` slack nodes; each slack
  node may absorb one copy,
* pair ``e = {i, j}`` gets two nodes ``e_i, e_j`` joined at cost 0 ("absent");
  otherwise ``e_i`` takes a copy of ``i`` at cost ``c_e`` and ``e_j`` a copy
  of ``j`` at cost 0 ("present"),
* slack nodes are pairwise joined so unused ones match each other, plus one
  parity node when ``sum L_i`` is odd.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping

from .errors import NumericalFailure
from .matching import MatchingGraph, mcpm

Pair = tuple[int, int]


@dataclass(frozen=True)
class NddsInstance:
    n: int
    base_edges: frozenset[Pair]
    costs: Mapping[Pair, float]  # modifiable pairs only; missing pairs are locked
    intervals: tuple[tuple[int, int] | None, ...]  # None is an empty interval

    def __post_init__(self):
        for i, j in itertools.chain(self.base_edges, self.costs):
            if not (0 <= i < j < self.n):
                raise ValueError(f"pairs must be sorted and in range, got ({i}, {j})")
        if len(self.intervals) != self.n:
            raise ValueError("one interval per node required")

    def fixed_degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.base_edges:
            if (i, j) not in self.costs:
                deg[i] += 1
                deg[j] += 1
        return deg

    def degrees_after(self, mods) -> list[int]:
        deg = [0] * self.n
        for i, j in self.base_edges.symmetric_difference(mods):
            deg[i] += 1
            deg[j] += 1
        return deg

    def satisfied_by(self, mods) -> bool:
        for d, iv in zip(self.degrees_after(mods), self.intervals):
            if iv is None or not iv[0] <= d <= iv[1]:
                return False
        return True


@dataclass(frozen=True)
class NddsResult:
    modifications: tuple[Pair, ...]
    cost: float


@dataclass
class Gadget:
    graph: MatchingGraph
    pair_nodes: dict[Pair, tuple[int, int]]  # e -> (e_i, e_j)
    copies: dict[int, list[int]] = field(default_factory=dict)


def build_gadget(ndds: NddsInstance) -> Gadget | None:
    """Matching gadget, or ``None`` when some node's interval is unreachable."""
    pairs = sorted(ndds.costs)
    fixed = ndds.fixed_degrees()
    cand = [0] * ndds.n
    for i, j in pairs:
        cand[i] += 1
        cand[j] += 1
    lo, hi = [], []
    for i, iv in enumerate(ndds.intervals):
        if iv is None:
            return None
        L = max(0, iv[0] - fixed[i])
        R = min(iv[1] - fixed[i], cand[i])
        if R < L:
            return None
        lo.append(L)
        hi.append(R)

    edges: list[tuple[int, int, float]] = []
    counter = itertools.count()
    copies = {i: [next(counter) for _ in range(hi[i])] for i in range(ndds.n)}
    pair_nodes = {}
    for e in pairs:
        i, j = e
        a, b = next(counter), next(counter)
        pair_nodes[e] = (a, b)
        c = -ndds.costs[e] if e in ndds.base_edges else ndds.costs[e]
        edges.append((a, b, 0.0))
        edges.extend((a, u, c) for u in copies[i])
        edges.extend((b, u, 0.0) for u in copies[j])
    slack = []
    for i in range(ndds.n):
        for _ in range(hi[i] - lo[i]):
            s = next(counter)
            slack.append(s)
            edges.extend((s, u, 0.0) for u in copies[i])
    edges.extend((s, t, 0.0) for s, t in itertools.combinations(slack, 2))
    if sum(lo) % 2:
        p = next(counter)
        edges.extend((p, s, 0.0) for s in slack)
    return Gadget(MatchingGraph(next(counter), tuple(edges)), pair_nodes, copies)


def ndds_solve(ndds: NddsInstance) -> NddsResult | None:
    gadget = build_gadget(ndds)
    if gadget is None:
        return None
    match = mcpm(gadget.graph)
    if match is None:
        return None
    matched = set(match.pairs)
    present = {
        e for e, (a, b) in gadget.pair_nodes.items() if (min(a, b), max(a, b)) not in matched
    }
    base = {e for e in ndds.costs if e in ndds.base_edges}
    mods = tuple(sorted(present.symmetric_difference(base)))
    if not ndds.satisfied_by(mods):
        raise NumericalFailure("matching gadget decoded to an infeasible degree sequence")
    return NddsResult(mods, math.fsum(ndds.costs[e] for e in mods))
