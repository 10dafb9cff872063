"""Dense two-phase simplex over the rationals.

Small exact linear programs (a few dozen variables) are all the polyhedral
code needs, so a plain tableau with Bland's rule is enough and never cycles.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Number = int | Fraction


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    fun: Fraction | None = None

    @property
    def feasible(self) -> bool:
        return self.status != "infeasible"


def _pivot(tab: list[list[Fraction]], row: int, col: int) -> None:
    prow = tab[row]
    p = prow[col]
    if p != 1:
        inv = 1 / p
        tab[row] = prow = [v * inv for v in prow]
    for i, r in enumerate(tab):
        if i == row:
            continue
        f = r[col]
        if f:
            tab[i] = [a - f * b if b else a for a, b in zip(r, prow)]


def _run(tab: list[list[Fraction]], basis: list[int], ncols: int) -> bool:
    """Minimise the objective stored in the last row. False if unbounded."""
    m = len(tab) - 1
    while True:
        col = next((j for j in range(ncols) if tab[-1][j] < 0), None)
        if col is None:
            return True
        best = None
        for i in range(m):
            a = tab[i][col]
            if a > 0:
                ratio = tab[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, best[1], col)
        basis[best[1]] = col


def solve_lp(
    c: Sequence[Number],
    A_ub: Sequence[Sequence[Number]] = (),
    b_ub: Sequence[Number] = (),
    A_eq: Sequence[Sequence[Number]] = (),
    b_eq: Sequence[Number] = (),
) -> LPResult:
    """Minimise ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_eq x == b_eq``, ``x >= 0``.

    All arithmetic is in :class:`fractions.Fraction`; the returned optimum is exact.
    """
    nv = len(c)
    n_ub = len(A_ub)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k, (a, b) in enumerate(zip(A_ub, b_ub)):
        row = [Fraction(v) for v in a] + [Fraction(0)] * n_ub
        row[nv + k] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(b))
    for a, b in zip(A_eq, b_eq):
        rows.append([Fraction(v) for v in a] + [Fraction(0)] * n_ub)
        rhs.append(Fraction(b))
    for i, b in enumerate(rhs):
        if b < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -b

    m = len(rows)
    ns = nv + n_ub
    ncols = ns + m
    tab = []
    for i, row in enumerate(rows):
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row + art + [rhs[i]])
    # phase 1: minimise the sum of artificials
    phase1 = [Fraction(0)] * (ncols + 1)
    for row in tab:
        for j in range(ns):
            phase1[j] -= row[j]
        phase1[-1] -= row[-1]
    tab.append(phase1)
    basis = list(range(ns, ns + m))
    _run(tab, basis, ncols)
    if tab[-1][-1] != 0:
        return LPResult("infeasible")

    # drive remaining artificials out of the basis where possible
    for i in range(m):
        if basis[i] >= ns:
            col = next((j for j in range(ns) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, i, col)
                basis[i] = col
    keep = [i for i in range(m) if basis[i] < ns]
    tab = [tab[i][:ns] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]

    cost = [Fraction(v) for v in c] + [Fraction(0)] * n_ub
    obj = cost + [Fraction(0)]
    for i, bcol in enumerate(basis):
        f = obj[bcol]
        if f:
            obj = [a - f * b for a, b in zip(obj, tab[i])]
    tab.append(obj)
    if not _run(tab, basis, ns):
        return LPResult("unbounded")
    x = [Fraction(0)] * ns
    for i, bcol in enumerate(basis):
        x[bcol] = tab[i][-1]
    fun = sum((ci * xi for ci, xi in zip(cost, x)), Fraction(0))
    return LPResult("optimal", tuple(x[:nv]), fun)
