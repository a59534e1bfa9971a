"""Binary networked public goods games with an altruism network.

Agents sit on an undirected strategic graph ``H`` and choose to invest (1)
or not (0).  Agent ``i`` earns ``g_i(x_i, n_i) - c_i x_i`` where ``n_i`` is
the number of investing ``H``-neighbours, plus an altruistic term
``sum_{j in N_H(i)} alpha_ij g_j(x_j, n_j)``.

Two equilibrium checks live here: :func:`is_psne_ineq` uses the threshold
inequalities built from :func:`derive_targets`, and
:func:`is_psne_deviation` recomputes utilities under every unilateral flip.
They must always agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import ValidationError

#: Absolute tolerance for every equilibrium comparison; ties count as satisfied.
TOL = 1e-9

Profile = tuple[int, ...]


def investors(profile: Sequence[int]) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(profile) if x == 1)


@dataclass(frozen=True)
class StrategicGraph:
    """Simple, loop-free, undirected graph on agents ``0..n-1``."""

    n: int
    neighbors: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError("agent count must be non-negative", "n")
        if len(self.neighbors) != self.n:
            raise ValidationError("need one neighbour list per agent", "strategic_edges")
        for i, nbrs in enumerate(self.neighbors):
            if len(set(nbrs)) != len(nbrs):
                raise ValidationError("multi-edge", f"agent {i}")
            for j in nbrs:
                if not 0 <= j < self.n:
                    raise ValidationError("index out of range", f"pair ({i}, {j})")
                if j == i:
                    raise ValidationError("self-loop", f"pair ({i}, {i})")
                if i not in self.neighbors[j]:
                    raise ValidationError(
                        "strategic adjacency is not symmetric", f"pair ({i}, {j})"
                    )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> StrategicGraph:
        """Build from an edge list.

        Each pair may be listed once in either orientation, or the whole list
        may spell out both orientations of every edge.  A list mixing the two
        styles is an asymmetric relation and is rejected.
        """
        pairs = [tuple(int(v) for v in e) for e in edges]
        listed = set()
        for p in pairs:
            if len(p) != 2:
                raise ValidationError("edge must be a pair", f"edge {list(p)}")
            i, j = p
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError("index out of range", f"pair ({i}, {j})")
            if i == j:
                raise ValidationError("self-loop", f"pair ({i}, {j})")
            if p in listed:
                raise ValidationError("duplicate edge", f"pair ({i}, {j})")
            listed.add(p)
        doubled = {p for p in listed if (p[1], p[0]) in listed}
        if doubled and doubled != listed:
            i, j = min(listed - doubled)
            raise ValidationError(
                "strategic adjacency is not symmetric: reverse pair missing",
                f"pair ({i}, {j})",
            )
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for i, j in listed:
            nbrs[i].add(j)
            nbrs[j].add(i)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs))

    def degree(self, i: int) -> int:
        return len(self.neighbors[i])

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.neighbors[i]

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in self.neighbors[i] if i < j]


@dataclass(frozen=True)
class TableBenefit:
    """Dense benefit table: ``rows[x][k] = g(x, k)`` for ``k = 0..deg``."""

    rows: tuple[tuple[float, ...], tuple[float, ...]]

    def __call__(self, x: int, k: int) -> float:
        return self.rows[x][k]

    @property
    def columns(self) -> int:
        return len(self.rows[0])

    def validate(self, locus: str) -> None:
        if len(self.rows) != 2 or len(self.rows[0]) != len(self.rows[1]):
            raise ValidationError("table needs two rows of equal length", locus)
        for x, row in enumerate(self.rows):
            for k, v in enumerate(row):
                if not math.isfinite(v) or v < 0:
                    raise ValidationError(f"g({x},{k}) must be finite and >= 0", locus)
                if k and v < row[k - 1]:
                    raise ValidationError(f"row {x} decreases at n={k}", locus)
        for k, (lo, hi) in enumerate(zip(*self.rows)):
            if hi < lo:
                raise ValidationError(f"g(1,{k}) < g(0,{k}) (not monotone in x)", locus)


@dataclass(frozen=True)
class UslBenefit:
    """Separable linear benefit ``g(x, k) = h_x + b k``."""

    h0: float
    h1: float
    b: float

    def __call__(self, x: int, k: int) -> float:
        return (self.h1 if x else self.h0) + self.b * k

    def validate(self, locus: str) -> None:
        for name in ("h0", "h1", "b"):
            v = getattr(self, name)
            if not math.isfinite(v) or v < 0:
                raise ValidationError(f"{name} must be finite and >= 0", locus)
        if self.h1 < self.h0:
            raise ValidationError("h1 < h0 (not monotone in x)", locus)


Benefit = Union[TableBenefit, UslBenefit]


@dataclass(frozen=True)
class BnpgInstance:
    graph: StrategicGraph
    benefits: tuple[Benefit, ...]
    costs: tuple[float, ...]

    def __post_init__(self):
        n = self.graph.n
        if len(self.benefits) != n:
            raise ValidationError(f"expected {n} benefit functions", "benefits")
        if len(self.costs) != n:
            raise ValidationError(f"expected {n} costs", "costs")
        for i, (g, c) in enumerate(zip(self.benefits, self.costs)):
            g.validate(f"benefits[{i}]")
            if isinstance(g, TableBenefit) and g.columns != self.graph.degree(i) + 1:
                raise ValidationError(
                    f"table needs deg+1 = {self.graph.degree(i) + 1} columns",
                    f"benefits[{i}]",
                )
            if not math.isfinite(c) or c < 0:
                raise ValidationError("cost must be finite and >= 0", f"costs[{i}]")

    @property
    def n(self) -> int:
        return self.graph.n


class WeightedAltruism:
    """Arbitrary altruism weights; missing off-diagonal entries are zero.

    The diagonal is 1 by convention and never read by any utility.
    Negative entries are permitted here (fractional solutions may overshoot
    a removal); input parsing is where non-negativity is enforced.
    """

    def __init__(self, n: int, entries: Iterable[tuple[int, int, float]] = ()):
        self.n = n
        weights: dict[tuple[int, int], float] = {}
        for i, j, w in entries:
            i, j, w = int(i), int(j), float(w)
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError("index out of range", f"altruism pair ({i}, {j})")
            if i == j:
                continue
            if (i, j) in weights:
                raise ValidationError("duplicate entry", f"altruism pair ({i}, {j})")
            if not math.isfinite(w):
                raise ValidationError("weight must be finite", f"altruism pair ({i}, {j})")
            if w != 0.0:
                weights[(i, j)] = w
        self._weights = weights

    @classmethod
    def from_matrix(cls, mat: np.ndarray) -> WeightedAltruism:
        n = mat.shape[0]
        return cls(n, ((i, j, mat[i, j]) for i in range(n) for j in range(n) if i != j))

    def weight(self, i: int, j: int) -> float:
        if i == j:
            return 1.0
        return self._weights.get((i, j), 0.0)

    def entries(self) -> list[tuple[int, int, float]]:
        return [(i, j, w) for (i, j), w in sorted(self._weights.items())]

    def matrix(self) -> np.ndarray:
        mat = np.eye(self.n)
        for (i, j), w in self._weights.items():
            mat[i, j] = w
        return mat

    def __eq__(self, other):
        return (
            isinstance(other, WeightedAltruism)
            and self.n == other.n
            and self._weights == other._weights
        )

    def __repr__(self):
        return f"WeightedAltruism(n={self.n}, entries={self.entries()!r})"


class UniformAltruism:
    """Altruism graph whose edges all carry the same strength ``a``."""

    def __init__(self, n: int, edges: Iterable[Sequence[int]], a: float, directed: bool):
        if not (math.isfinite(a) and a > 0):
            raise ValidationError("strength a must be > 0", "altruism.a")
        self.n = n
        self.a = float(a)
        self.directed = bool(directed)
        norm = set()
        for e in edges:
            i, j = (int(v) for v in e)
            if not (0 <= i < n and 0 <= j < n):
                raise ValidationError("index out of range", f"altruism pair ({i}, {j})")
            if i == j:
                raise ValidationError("self-pair", f"altruism pair ({i}, {j})")
            p = self.key(i, j)
            if p in norm:
                raise ValidationError("duplicate edge", f"altruism pair ({i}, {j})")
            norm.add(p)
        self.edges = frozenset(norm)

    def key(self, i: int, j: int) -> tuple[int, int]:
        """Canonical pair: ordered when directed, sorted when undirected."""
        if self.directed or i < j:
            return (i, j)
        return (j, i)

    def has_edge(self, i: int, j: int) -> bool:
        return self.key(i, j) in self.edges

    def weight(self, i: int, j: int) -> float:
        if i == j:
            return 1.0
        return self.a if self.key(i, j) in self.edges else 0.0

    def toggled(self, pairs: Iterable[tuple[int, int]]) -> UniformAltruism:
        edges = set(self.edges)
        for i, j in pairs:
            edges ^= {self.key(i, j)}
        return UniformAltruism(self.n, edges, self.a, self.directed)

    def matrix(self) -> np.ndarray:
        mat = np.eye(self.n)
        for i, j in self.edges:
            mat[i, j] = self.a
            if not self.directed:
                mat[j, i] = self.a
        return mat

    def __eq__(self, other):
        return (
            isinstance(other, UniformAltruism)
            and (self.n, self.a, self.directed, self.edges)
            == (other.n, other.a, other.directed, other.edges)
        )

    def __repr__(self):
        kind = "directed" if self.directed else "undirected"
        return f"UniformAltruism(n={self.n}, a={self.a}, {kind}, edges={sorted(self.edges)})"


AltruismNetwork = Union[WeightedAltruism, UniformAltruism]


def investing_neighbors(graph: StrategicGraph, profile: Sequence[int]) -> list[int]:
    return [sum(profile[j] for j in graph.neighbors[i]) for i in range(graph.n)]


def egocentric_utility(inst: BnpgInstance, profile: Sequence[int], i: int) -> float:
    k = sum(profile[j] for j in inst.graph.neighbors[i])
    return inst.benefits[i](profile[i], k) - inst.costs[i] * profile[i]


def altruistic_utility(
    inst: BnpgInstance, alt: AltruismNetwork, profile: Sequence[int], i: int
) -> float:
    counts = investing_neighbors(inst.graph, profile)
    own = inst.benefits[i](profile[i], counts[i]) - inst.costs[i] * profile[i]
    care = math.fsum(
        alt.weight(i, j) * inst.benefits[j](profile[j], counts[j])
        for j in inst.graph.neighbors[i]
    )
    return own + care


@dataclass(frozen=True)
class TargetDerivation:
    """Per-agent constants of the threshold inequalities for one profile.

    ``delta_minus[j]`` is ``None`` when ``n_j = 0`` and ``delta_plus[j]`` is
    ``None`` when ``n_j = deg(j)``; neither is ever consumed there.
    """

    counts: tuple[int, ...]
    own_marginal: tuple[float, ...]
    delta_minus: tuple[float | None, ...]
    delta_plus: tuple[float | None, ...]
    theta: tuple[float, ...]


def derive_targets(inst: BnpgInstance, target: Sequence[int]) -> TargetDerivation:
    graph = inst.graph
    counts = investing_neighbors(graph, target)
    own, dminus, dplus, theta = [], [], [], []
    for j in range(graph.n):
        g, k, x = inst.benefits[j], counts[j], target[j]
        marginal = g(1, k) - g(0, k)
        own.append(marginal)
        theta.append(inst.costs[j] - marginal)
        if isinstance(g, UslBenefit):
            dminus.append(g.b)
            dplus.append(g.b)
            continue
        dminus.append(g(x, k) - g(x, k - 1) if k >= 1 else None)
        dplus.append(g(x, k + 1) - g(x, k) if k < graph.degree(j) else None)
    return TargetDerivation(tuple(counts), tuple(own), tuple(dminus), tuple(dplus), tuple(theta))


@dataclass(frozen=True)
class Violation:
    agent: int
    invests: bool
    lhs: float
    theta: float

    @property
    def slack(self) -> float:
        """Signed amount by which the inequality fails (always positive)."""
        return self.theta - self.lhs if self.invests else self.lhs - self.theta


def altruism_sums(
    inst: BnpgInstance, alt: AltruismNetwork, target: Sequence[int], der: TargetDerivation
) -> list[float]:
    """Left-hand sides of the threshold inequalities, one per agent."""
    out = []
    for i in range(inst.n):
        deltas = der.delta_minus if target[i] else der.delta_plus
        out.append(
            math.fsum(alt.weight(i, j) * deltas[j] for j in inst.graph.neighbors[i])
        )
    return out


def psne_violations(
    inst: BnpgInstance, alt: AltruismNetwork, target: Sequence[int], tol: float = TOL
) -> list[Violation]:
    der = derive_targets(inst, target)
    lhs = altruism_sums(inst, alt, target, der)
    bad = []
    for i in range(inst.n):
        if target[i]:
            ok = lhs[i] >= der.theta[i] - tol
        else:
            ok = lhs[i] <= der.theta[i] + tol
        if not ok:
            bad.append(Violation(i, bool(target[i]), lhs[i], der.theta[i]))
    return bad


def is_psne_ineq(
    inst: BnpgInstance, alt: AltruismNetwork, profile: Sequence[int], tol: float = TOL
) -> bool:
    return not psne_violations(inst, alt, profile, tol)


def is_psne_deviation(
    inst: BnpgInstance, alt: AltruismNetwork, profile: Sequence[int], tol: float = TOL
) -> bool:
    """No agent gains more than ``tol`` by flipping its own action."""
    profile = list(profile)
    for i in range(inst.n):
        stay = altruistic_utility(inst, alt, profile, i)
        profile[i] ^= 1
        move = altruistic_utility(inst, alt, profile, i)
        profile[i] ^= 1
        if move > stay + tol:
            return False
    return True


@dataclass(frozen=True)
class BenefitClass:
    kind: str  # "usl", "polynomial" or "general"
    # common slope b (None when no agent has a neighbour to pin it down),
    # or max g for polynomial
    value: float | None = None


def _table_slope(g: TableBenefit, tol: float) -> float | None | bool:
    """Common slope of a table, ``None`` if unconstrained, ``False`` if not linear."""
    if g.columns < 2:
        return None
    slope = g.rows[0][1] - g.rows[0][0]
    for row in g.rows:
        for k in range(1, g.columns):
            if abs((row[k] - row[k - 1]) - slope) > tol:
                return False
    return slope


def classify_benefits(
    inst: BnpgInstance, poly_degree: int | None = None, tol: float = TOL
) -> BenefitClass:
    """Report the most special benefit class the instance belongs to.

    Polynomial boundedness is an asymptotic notion, so it is only reported
    when the caller names a degree: every value must then be integral and at
    most ``n ** poly_degree``.
    """
    slope: float | None = None
    usl = True
    for g in inst.benefits:
        s = g.b if isinstance(g, UslBenefit) else _table_slope(g, tol)
        if s is False:
            usl = False
            break
        if s is None:
            continue
        if slope is None:
            slope = s
        elif abs(s - slope) > tol:
            usl = False
            break
    if usl:
        return BenefitClass("usl", slope)
    if poly_degree is not None:
        values = [
            g(x, k)
            for i, g in enumerate(inst.benefits)
            for x in (0, 1)
            for k in range(inst.graph.degree(i) + 1)
        ]
        bound = max(values, default=0.0)
        if all(float(v).is_integer() for v in values) and bound <= max(inst.n, 1) ** poly_degree:
            return BenefitClass("polynomial", bound)
    return BenefitClass("general")
