"""Minimum-weight covering knapsack: exact DPs and an FPTAS.

Every solver returns a :class:`KnapsackResult` or ``None`` when even the
full item set falls short of the demand.  Among optimal subsets the one
whose indicator vector (items sorted by id) is lexicographically smallest
is returned, i.e. earlier items are left out whenever possible.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from decimal import Decimal
from typing import Hashable, Sequence

import numpy as np

from . import kernels
from .errors import ScaleError
from .game import TOL

#: Largest number of decimal places accepted when scaling to integers.
MAX_DECIMALS = 6
#: Largest DP table (cells) the exact solvers will allocate.
MAX_CELLS = 50_000_000


@dataclass(frozen=True)
class Item:
    id: Hashable
    value: float
    weight: float


@dataclass(frozen=True)
class CoverKnapsack:
    items: tuple[Item, ...]
    demand: float

    def sorted_items(self) -> list[Item]:
        return sorted(self.items, key=lambda it: it.id)


@dataclass(frozen=True)
class KnapsackResult:
    subset: tuple[Hashable, ...]
    weight: float


def decimal_places(x: float) -> int:
    # 12 significant digits absorbs float noise such as 0.1 * 3
    exp = Decimal(f"{float(x):.12g}").normalize().as_tuple().exponent
    return max(0, -exp)


def scale_factor(xs: Sequence[float], cap: int = MAX_DECIMALS) -> int:
    """Smallest power of ten turning every ``x`` into an integer."""
    d = max((decimal_places(x) for x in xs), default=0)
    if d > cap:
        raise ScaleError(f"{d} decimal places exceed the cap of {cap}")
    return 10**d


def _integral(xs: Sequence[float], what: str) -> list[int]:
    out = []
    for x in xs:
        if x < 0 or not float(x).is_integer():
            raise ScaleError(f"{what} must be non-negative integers, got {x!r}")
        out.append(int(x))
    return out


def _empty() -> KnapsackResult:
    return KnapsackResult((), 0.0)


def _greedy_upper_bound(items: list[Item], weights: list[int], demand: float, tol: float) -> int:
    order = sorted(
        range(len(items)),
        key=lambda k: -math.inf if weights[k] == 0 else -items[k].value / weights[k],
    )
    got, total = 0.0, 0
    for k in order:
        if got >= demand - tol:
            break
        got += items[k].value
        total += weights[k]
    return total


def _check_cells(rows: int, cols: int) -> None:
    if rows * cols > MAX_CELLS:
        raise ScaleError(f"DP table of {rows}x{cols} cells is too large")


def solve_dp_by_weight(kp: CoverKnapsack, tol: float = TOL) -> KnapsackResult | None:
    """Exact DP over total weight; weights must be non-negative integers."""
    items = kp.sorted_items()
    weights = _integral([it.weight for it in items], "weights")
    if kp.demand <= tol:
        return _empty()
    if math.fsum(it.value for it in items) < kp.demand - tol:
        return None
    cap = _greedy_upper_bound(items, weights, kp.demand, tol)
    _check_cells(len(items) + 1, cap + 1)
    T = kernels.suffix_max_value(weights, [it.value for it in items], cap)
    budget = int(np.argmax(T[0] >= kp.demand - tol))
    need, chosen = kp.demand, []
    for k, it in enumerate(items):
        if T[k + 1, budget] >= need - tol:
            continue
        chosen.append(it)
        budget -= weights[k]
        need -= it.value
    return KnapsackResult(tuple(it.id for it in chosen), math.fsum(it.weight for it in chosen))


def solve_dp_by_value(kp: CoverKnapsack, tol: float = TOL) -> KnapsackResult | None:
    """Exact DP over value, capped at the demand; values must be integers."""
    items = kp.sorted_items()
    values = _integral([it.value for it in items], "values")
    need = math.ceil(kp.demand - tol)
    if need <= 0:
        return _empty()
    if sum(values) < need:
        return None
    _check_cells(len(items) + 1, need + 1)
    T = kernels.suffix_min_weight(values, [it.weight for it in items], need)
    budget = float(T[0, need])
    slack = tol * max(1.0, budget)
    chosen = []
    for k, it in enumerate(items):
        if need == 0 or T[k + 1, need] <= budget + slack:
            continue
        chosen.append(it)
        budget -= it.weight
        need = max(0, need - values[k])
    return KnapsackResult(tuple(it.id for it in chosen), math.fsum(it.weight for it in chosen))


def solve_fptas(kp: CoverKnapsack, eps: float, tol: float = TOL) -> KnapsackResult | None:
    """Subset of weight at most ``(1 + eps)`` times the optimum.

    Guess the heaviest item ``w*`` of an optimal subset, drop heavier items
    and round the rest up to multiples of ``eps * w* / m``; the rounding
    adds at most ``eps * w* <= eps * OPT``.  A binary search over the
    distinct weights finds the lightest feasible guess, larger guesses are
    tried in turn until ``w*`` alone would exceed the best subset found.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    if kp.demand <= tol:
        return _empty()
    items = kp.sorted_items()
    if math.fsum(it.value for it in items) < kp.demand - tol:
        return None
    distinct = sorted({it.weight for it in items})

    def reachable(limit: float) -> bool:
        return math.fsum(it.value for it in items if it.weight <= limit) >= kp.demand - tol

    lo = bisect.bisect_left(range(len(distinct)), True, key=lambda k: reachable(distinct[k]))
    best: KnapsackResult | None = None
    for heaviest in distinct[lo:]:
        if best is not None and heaviest >= best.weight:
            break
        sub = [it for it in items if it.weight <= heaviest]
        if heaviest == 0:
            scaled = [Item(it.id, it.value, 0) for it in sub]
        else:
            # weight / unit without forming unit, which can underflow
            per = len(sub) / eps
            scaled = [
                Item(it.id, it.value, math.ceil(it.weight / heaviest * per - 1e-9)) for it in sub
            ]
        res = solve_dp_by_weight(CoverKnapsack(tuple(scaled), kp.demand), tol)
        if res is None:
            continue
        by_id = {it.id: it for it in sub}
        weight = math.fsum(by_id[i].weight for i in res.subset)
        if best is None or weight < best.weight:
            best = KnapsackResult(res.subset, weight)
    return best
