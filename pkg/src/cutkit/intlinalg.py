"""Exact integer linear algebra: rank, kernel lattice bases, determinants.

Everything here works on plain Python integers (arbitrary precision), with
matrices represented as lists of lists or tuples of tuples.  These routines
back the lattice computations of the toric engine and the polytope code, so
they must be exact; no floating point is used anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = Sequence[Sequence[int]]


def _tolists(mat: Matrix) -> list[list[int]]:
    return [list(row) for row in mat]


def column_echelon_transform(mat: Matrix) -> tuple[list[list[int]], list[list[int]], int]:
    """Column-reduce an integer matrix by unimodular column operations.

    Returns ``(E, U, rank)`` where ``E = mat @ U`` is in column echelon form
    (pivot columns first, zero columns last), ``U`` is unimodular, and
    ``rank`` is the number of nonzero columns of ``E``.
    """
    E = _tolists(mat)
    nrows = len(E)
    ncols = len(E[0]) if nrows else 0
    U = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def colop(j, k, a, b, c, d):
        # (col_j, col_k) <- (a*col_j + b*col_k, c*col_j + d*col_k)
        for row in E:
            row[j], row[k] = a * row[j] + b * row[k], c * row[j] + d * row[k]
        for row in U:
            row[j], row[k] = a * row[j] + b * row[k], c * row[j] + d * row[k]

    pivot_col = 0
    for row_idx in range(nrows):
        if pivot_col >= ncols:
            break
        # Clear row_idx to a single leading entry at pivot_col using gcd steps.
        nonzero = [j for j in range(pivot_col, ncols) if E[row_idx][j] != 0]
        if not nonzero:
            continue
        lead = nonzero[0]
        for j in nonzero[1:]:
            a, b = E[row_idx][lead], E[row_idx][j]
            g, x, y = _exgcd(a, b)
            # (lead, j) <- (x*lead + y*j, -(b//g)*lead + (a//g)*j)
            colop(lead, j, x, y, -(b // g), a // g)
        if lead != pivot_col:
            colop(lead, pivot_col, 0, 1, 1, 0)
        if E[row_idx][pivot_col] < 0:
            for row in E:
                row[pivot_col] = -row[pivot_col]
            for row in U:
                row[pivot_col] = -row[pivot_col]
        pivot_col += 1
    return E, U, pivot_col


def _exgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``g = gcd(a, b) = x*a + y*b`` and ``g >= 0``."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def rank(mat: Matrix) -> int:
    """Exact rank of an integer matrix."""
    if not mat or not mat[0]:
        return 0
    return column_echelon_transform(mat)[2]


def kernel_basis(mat: Matrix) -> list[tuple[int, ...]]:
    """Lattice basis of ``{v : mat @ v = 0, v integer}``.

    The returned vectors form a basis of the full integer kernel (a saturated
    sublattice), so each basis vector is automatically primitive.
    """
    if not mat:
        return []
    ncols = len(mat[0])
    E, U, rk = column_echelon_transform(mat)
    basis = []
    for j in range(rk, ncols):
        vec = tuple(U[i][j] for i in range(ncols))
        basis.append(_normalize_sign(vec))
    return basis


def _normalize_sign(vec: tuple[int, ...]) -> tuple[int, ...]:
    for a in vec:
        if a != 0:
            return vec if a > 0 else tuple(-x for x in vec)
    return vec


def primitive(vec: Iterable[int]) -> tuple[int, ...]:
    """Divide a nonzero integer vector by the gcd of its entries."""
    v = tuple(vec)
    g = 0
    for a in v:
        g = gcd(g, a)
    if g in (0, 1):
        return v
    return tuple(a // g for a in v)


def det_bareiss(mat: Matrix) -> int:
    """Exact determinant of a square integer matrix (fraction-free Bareiss)."""
    a = _tolists(mat)
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def solve_rational(mat: Matrix, rhs: Sequence[Fraction]) -> list[Fraction] | None:
    """Solve ``mat @ x = rhs`` over the rationals; None if inconsistent.

    ``mat`` may be rectangular; when the system is underdetermined one
    solution is returned (free variables set to zero).
    """
    a = [[Fraction(x) for x in row] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    nrows = len(a)
    ncols = len(mat[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if a[i][ncols] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = a[i][ncols]
    return x


def _nearest_int(f: Fraction) -> int:
    """Nearest integer to ``f`` (ties toward +infinity)."""
    return (2 * f.numerator + f.denominator) // (2 * f.denominator)


def lll_reduce(vectors: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    """LLL-reduce a list of independent integer vectors (delta = 99/100).

    Returns a basis of the same lattice with short, nearly orthogonal
    vectors; exact rational Gram-Schmidt, no floating point.
    """
    b = [list(int(x) for x in v) for v in vectors]
    n = len(b)
    if n <= 1:
        return [tuple(v) for v in b]
    delta = Fraction(99, 100)

    def gso() -> tuple[list[list[Fraction]], list[Fraction]]:
        mu = [[Fraction(0)] * n for _ in range(n)]
        bstar: list[list[Fraction]] = []
        norms: list[Fraction] = []
        for i in range(n):
            bi = [Fraction(x) for x in b[i]]
            for j in range(i):
                if norms[j]:
                    mu[i][j] = (
                        sum(Fraction(x) * y for x, y in zip(b[i], bstar[j]))
                        / norms[j]
                    )
                bi = [x - mu[i][j] * y for x, y in zip(bi, bstar[j])]
            bstar.append(bi)
            norms.append(sum(x * x for x in bi))
        return mu, norms

    k = 1
    while k < n:
        mu, norms = gso()
        for j in range(k - 1, -1, -1):
            q = _nearest_int(mu[k][j])
            if q:
                b[k] = [x - q * y for x, y in zip(b[k], b[j])]
                mu, norms = gso()
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            k = max(k - 1, 1)
    return [tuple(v) for v in b]
