"""Exact rational linear feasibility via a Phase-1 simplex.

Every entry is a ``fractions.Fraction`` and pivoting follows Bland's
rule, so the search terminates and the answer is exact.  Problems in
this package are tiny (tens of rows and columns), which makes the
dense tableau the simplest correct tool.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

__all__ = ["feasible_nonnegative", "separating_weights"]


def feasible_nonnegative(
    rows: Sequence[Sequence[int]],
    rhs: Sequence[int],
    nvars: int,
) -> Optional[list[Fraction]]:
    """Some ``x >= 0`` with ``rows @ x >= rhs``, or None if infeasible.

    Every right-hand side must be nonnegative (callers normalise).
    """
    m = len(rows)
    if m != len(rhs):
        raise ValueError("rhs length does not match row count")
    if any(b < 0 for b in rhs):
        raise ValueError("rhs entries must be nonnegative")
    if m == 0:
        return [Fraction(0)] * nvars
    if any(len(r) != nvars for r in rows):
        raise ValueError("row length does not match nvars")

    # Columns: x (nvars) | surplus (m, coeff -1) | artificial (m, +1) | rhs.
    ncols = nvars + 2 * m + 1
    tab: list[list[Fraction]] = []
    for i, row in enumerate(rows):
        t = [Fraction(v) for v in row]
        t += [Fraction(-1) if j == i else Fraction(0) for j in range(m)]
        t += [Fraction(1) if j == i else Fraction(0) for j in range(m)]
        t.append(Fraction(rhs[i]))
        tab.append(t)
    basis = [nvars + m + i for i in range(m)]

    # Reduced costs for minimising the artificial sum: artificial
    # columns start basic at cost 1, so r_j = c_j - column sum.
    red = [Fraction(0)] * (ncols - 1)
    for j in range(nvars + m):
        red[j] = -sum(tab[i][j] for i in range(m))
    obj = -sum(tab[i][-1] for i in range(m))

    while True:
        enter = next(
            (j for j in range(ncols - 1) if red[j] < 0), None
        )
        if enter is None:
            break
        pivot_row = None
        best = None
        for i in range(m):
            if tab[i][enter] > 0:
                key = (tab[i][-1] / tab[i][enter], basis[i])
                if best is None or key < best:
                    best = key
                    pivot_row = i
        if pivot_row is None:  # pragma: no cover - phase 1 is bounded below
            raise RuntimeError("unbounded phase-1 objective")
        piv = tab[pivot_row][enter]
        tab[pivot_row] = [v / piv for v in tab[pivot_row]]
        for i in range(m):
            if i != pivot_row and tab[i][enter]:
                f = tab[i][enter]
                tab[i] = [
                    a - f * b for a, b in zip(tab[i], tab[pivot_row])
                ]
        if red[enter]:
            f = red[enter]
            red = [a - f * b for a, b in zip(red, tab[pivot_row])]
            obj -= f * tab[pivot_row][-1]
        basis[pivot_row] = enter

    if obj != 0:
        return None
    x = [Fraction(0)] * nvars
    for i, b in enumerate(basis):
        if b < nvars:
            x[b] = tab[i][-1]
    return x


def separating_weights(
    vectors: Sequence[Sequence[int]], nvars: int
) -> Optional[list[int]]:
    """Nonnegative integer ``w`` with ``v . w > 0`` for every vector.

    Returns None when no such weight exists.  An empty vector list is
    trivially satisfied by the zero weight.
    """
    vecs = [list(v) for v in vectors]
    if not vecs:
        return [0] * nvars
    x = feasible_nonnegative(vecs, [1] * len(vecs), nvars)
    if x is None:
        return None
    denom = 1
    for f in x:
        denom = denom * f.denominator // gcd(denom, f.denominator)
    ints = [int(f * denom) for f in x]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints
