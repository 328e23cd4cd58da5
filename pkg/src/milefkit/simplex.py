"""Exact primal simplex on an integer-preserving tableau.

The tableau is stored as integers ``T`` with a common positive denominator
``D``; the real tableau is ``T / D``.  Pivoting uses the Bareiss-style update
``T'[i][j] = (p*T[i][j] - T[i][s]*T[r][j]) // D`` whose division is exact.
Entering and leaving variables follow Bland's rule, so the method terminates
on degenerate problems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass
class SimplexOutcome:
    status: str  # "optimal" | "infeasible" | "unbounded"
    value: Fraction | None = None
    x: tuple | None = None
    ray: tuple | None = None


def _int_row(coeffs: Sequence[Fraction], rhs: Fraction) -> tuple[list[int], int]:
    L = 1
    for q in coeffs:
        L = math.lcm(L, q.denominator)
    L = math.lcm(L, rhs.denominator)
    return [int(q * L) for q in coeffs], int(rhs * L)


class _Tableau:
    def __init__(self, rows: list[list[int]], basis: list[int], ncols: int):
        # rows[i] has ncols coefficient entries followed by the rhs
        self.rows = rows
        self.basis = basis
        self.ncols = ncols
        self.D = 1
        self.obj: list[int] = [0] * (ncols + 1)

    def pivot(self, r: int, s: int) -> None:
        rows, D = self.rows, self.D
        prow = rows[r]
        p = prow[s]
        nz = [j for j, x in enumerate(prow) if x]
        for i, row in enumerate(rows):
            if i == r:
                continue
            f = row[s]
            if f == 0:
                if p != D:
                    rows[i] = [(p * x) // D for x in row]
                continue
            new = [p * x for x in row] if p != 1 else list(row)
            for j in nz:
                new[j] -= f * prow[j]
            rows[i] = [x // D for x in new] if D != 1 else new
        f = self.obj[s]
        new = [p * x for x in self.obj]
        if f:
            for j in nz:
                new[j] -= f * prow[j]
        self.obj = [x // D for x in new] if D != 1 else new
        self.D = p
        if p < 0:
            self.rows = [[-x for x in row] for row in self.rows]
            self.obj = [-x for x in self.obj]
            self.D = -p
        self.basis[r] = s

    def run(self, allowed: int) -> int | None:
        """Maximize; returns None at optimum or the entering column of an unbounded ray."""
        while True:
            s = next((j for j in range(allowed) if self.obj[j] < 0), None)
            if s is None:
                return None
            best = None
            for i, row in enumerate(self.rows):
                a = row[s]
                if a <= 0:
                    continue
                if best is None:
                    best = i
                    continue
                rb = self.rows[best]
                lhs, rhs = row[-1] * rb[s], rb[-1] * a
                if lhs < rhs or (lhs == rhs and self.basis[i] < self.basis[best]):
                    best = i
            if best is None:
                return s
            self.pivot(best, s)


def maximize(ineq_rows, ineq_rhs, eq_rows, eq_rhs, c, n) -> SimplexOutcome:
    """Maximize ``c x`` subject to ``A x <= b``, ``E x = f`` with ``x`` free.

    All data are Fractions.  Free variables are split as ``x = x+ - x-``.
    """
    nslack = len(ineq_rows)
    # columns: x+ (n), x- (n), slacks (m1), artificials (added below)
    base_cols = 2 * n + nslack
    raw: list[tuple[list[int], int, int | None]] = []  # (coeffs, rhs, slack col)
    for k, (a, b) in enumerate(zip(ineq_rows, ineq_rhs)):
        ia, ib = _int_row(a, b)
        coeffs = ia + [-x for x in ia] + [0] * nslack
        coeffs[2 * n + k] = 1
        if ib < 0:
            coeffs = [-x for x in coeffs]
            ib = -ib
            raw.append((coeffs, ib, None))
        else:
            raw.append((coeffs, ib, 2 * n + k))
    for a, b in zip(eq_rows, eq_rhs):
        ia, ib = _int_row(a, b)
        coeffs = ia + [-x for x in ia] + [0] * nslack
        if ib < 0:
            coeffs = [-x for x in coeffs]
            ib = -ib
        raw.append((coeffs, ib, None))

    art_rows = [i for i, (_, _, sc) in enumerate(raw) if sc is None]
    nart = len(art_rows)
    ncols = base_cols + nart
    rows, basis = [], []
    art_of_row = {}
    for i, (coeffs, rhs, sc) in enumerate(raw):
        row = coeffs + [0] * nart + [rhs]
        if sc is None:
            col = base_cols + len(art_of_row)
            art_of_row[i] = col
            row[col] = 1
            basis.append(col)
        else:
            basis.append(sc)
        rows.append(row)
    tab = _Tableau(rows, basis, ncols)

    if nart:
        obj = [0] * (ncols + 1)
        for col in art_of_row.values():
            obj[col] = 1
        for i in art_of_row:
            obj = [o - x for o, x in zip(obj, rows[i])]
        tab.obj = obj
        tab.run(ncols)
        if tab.obj[-1] != 0:
            # rhs slot of the objective row is D * (-sum of artificials)
            return SimplexOutcome("infeasible")
        # drive zero-level artificials out of the basis; rows where that is
        # impossible are redundant and stay inert (all base entries zero)
        for i in range(len(tab.rows)):
            if tab.basis[i] >= base_cols:
                row = tab.rows[i]
                s = next((j for j in range(base_cols) if row[j] != 0), None)
                if s is not None:
                    tab.pivot(i, s)

    cint, _ = _int_row(list(c) + [Fraction(0)] * n, Fraction(0))
    scale = 1
    for q in c:
        scale = math.lcm(scale, q.denominator)
    cfull = cint[:n] + [-x for x in cint[:n]] + [0] * (nslack + nart)
    D = tab.D
    obj = [-D * cj for cj in cfull] + [0]
    for i, bcol in enumerate(tab.basis):
        cb = cfull[bcol]
        if cb:
            obj = [o + cb * x for o, x in zip(obj, tab.rows[i])]
    tab.obj = obj
    s = tab.run(base_cols)
    if s is not None:
        d = [Fraction(0)] * ncols
        d[s] = Fraction(1)
        for i, bcol in enumerate(tab.basis):
            d[bcol] = Fraction(-tab.rows[i][s], tab.D)
        ray = tuple(d[j] - d[n + j] for j in range(n))
        return SimplexOutcome("unbounded", ray=ray)
    vals = [Fraction(0)] * ncols
    for i, bcol in enumerate(tab.basis):
        vals[bcol] = Fraction(tab.rows[i][-1], tab.D)
    x = tuple(vals[j] - vals[n + j] for j in range(n))
    value = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))
    assert value == Fraction(tab.obj[-1], tab.D * scale)
    return SimplexOutcome("optimal", value=value, x=x)
