"""Dense two-phase simplex with Bland's anti-cycling rule.

Solves ``min c.x`` subject to rows ``A_r . x (<=|>=|==) b_r`` and
``x >= 0``.  Intended for the small-to-medium programs produced by the
fractional modification LP; no sparsity, no warm starts.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NumericalFailure

LP_TOL = 1e-8


@dataclass
class LpResult:
    status: str  # "optimal", "infeasible" or "unbounded"
    x: np.ndarray | None = None
    cost: float | None = None
    infeasible_rows: tuple[int, ...] = ()
    iterations: int = 0


@dataclass
class _Tableau:
    T: np.ndarray  # rows 0..m-1 constraints, last column rhs
    basis: list[int]
    row_ids: list[int]  # original constraint index of each row
    iterations: int = 0
    cap: int = 0
    tol: float = LP_TOL
    dropped: list[int] = field(default_factory=list)

    def pivot(self, r: int, j: int) -> None:
        T = self.T
        T[r] /= T[r, j]
        col = T[:, j].copy()
        col[r] = 0.0
        T -= np.outer(col, T[r])
        T[:, j] = 0.0
        T[r, j] = 1.0
        self.basis[r] = j
        self.iterations += 1
        if self.iterations > self.cap:
            raise NumericalFailure(f"simplex exceeded {self.cap} pivots")

    def run(self, cost: np.ndarray, allowed: int) -> bool:
        """Minimise ``cost`` over columns ``< allowed``; False when unbounded."""
        T, tol = self.T, self.tol
        m = T.shape[0]
        while True:
            cb = cost[self.basis]
            reduced = cost[:allowed] - cb @ T[:, :allowed]
            entering = next((j for j in range(allowed) if reduced[j] < -tol), None)
            if entering is None:
                return True
            colj = T[:, entering]
            best, leave = None, None
            for r in range(m):
                if colj[r] > tol:
                    ratio = T[r, -1] / colj[r]
                    if (
                        best is None
                        or ratio < best - tol
                        or (ratio <= best + tol and self.basis[r] < self.basis[leave])
                    ):
                        best, leave = ratio, r
            if leave is None:
                return False
            self.pivot(leave, entering)


def solve(
    c: Sequence[float],
    A: Sequence[Sequence[float]],
    senses: Sequence[str],
    b: Sequence[float],
    tol: float = LP_TOL,
    max_iter: int | None = None,
) -> LpResult:
    c = np.asarray(c, dtype=float)
    nvar = c.size
    # copies: rows are flipped in place below
    A = np.array(A, dtype=float).reshape(len(b), nvar)
    b = np.array(b, dtype=float)
    senses = list(senses)
    m = b.size
    if max_iter is None:
        max_iter = 50 * (nvar + m) + 50

    # Flip rows so every right-hand side is non-negative; a ">=" row with a
    # zero right-hand side is flipped too, so its slack can start basic.
    for r in range(m):
        if b[r] < 0 or (b[r] == 0 and senses[r] == ">="):
            A[r], b[r] = -A[r], -b[r]
            senses[r] = {"<=": ">=", ">=": "<=", "==": "=="}[senses[r]]

    n_slack = sum(s != "==" for s in senses)
    art_rows = [r for r in range(m) if senses[r] != "<="]
    ncol = nvar + n_slack + len(art_rows)
    T = np.zeros((m, ncol + 1))
    T[:, :nvar] = A
    T[:, -1] = b
    basis = [0] * m
    s = nvar
    for r in range(m):
        if senses[r] == "<=":
            T[r, s] = 1.0
            basis[r] = s
        elif senses[r] == ">=":
            T[r, s] = -1.0
        if senses[r] != "==":
            s += 1
    art0 = nvar + n_slack
    for k, r in enumerate(art_rows):
        T[r, art0 + k] = 1.0
        basis[r] = art0 + k

    tab = _Tableau(T, basis, list(range(m)), cap=max_iter, tol=tol)

    if art_rows:
        phase1 = np.zeros(ncol)
        phase1[art0:] = 1.0
        tab.run(phase1, ncol)
        infeas = tab.T[:, -1] @ phase1[tab.basis]
        scale = max(1.0, float(np.abs(b).max(initial=0.0)))
        if infeas > tol * scale:
            rows = tuple(
                sorted(
                    tab.row_ids[r]
                    for r in range(tab.T.shape[0])
                    if tab.basis[r] >= art0 and tab.T[r, -1] > tol * scale
                )
            )
            return LpResult("infeasible", infeasible_rows=rows, iterations=tab.iterations)
        # Drive zero-level artificials out of the basis, dropping redundant rows.
        r = 0
        while r < tab.T.shape[0]:
            if tab.basis[r] >= art0:
                cand = np.flatnonzero(np.abs(tab.T[r, :art0]) > tol)
                if cand.size:
                    tab.pivot(r, int(cand[0]))
                else:
                    tab.T = np.delete(tab.T, r, axis=0)
                    del tab.basis[r]
                    tab.dropped.append(tab.row_ids.pop(r))
                    continue
            r += 1
        tab.T = np.delete(tab.T, np.s_[art0:ncol], axis=1)

    phase2 = np.zeros(art0)
    phase2[:nvar] = c
    if not tab.run(phase2, art0):
        return LpResult("unbounded", iterations=tab.iterations)

    x = np.zeros(art0)
    x[tab.basis] = tab.T[:, -1]
    x = np.where(x < 0, 0.0, x)[:nvar]
    return LpResult("optimal", x, float(c @ x), iterations=tab.iterations)
