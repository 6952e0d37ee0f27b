"""Pure-Python reduction kernels for the binomial Buchberger engine.

All functions operate on exponent tuples already permuted into order
priority space (position 0 most significant; graded reverse lex scans
from the last position).  The compiled extension ``cutkit._accel``
implements the same interface; ``cutkit.engine`` picks one at import.
"""

from __future__ import annotations

from typing import Optional, Sequence

GREVLEX = 0
LEX = 1
WEIGHT = 2

BACKEND_NAME = "pure-python"


def mono_gt(
    a: Sequence[int],
    b: Sequence[int],
    kind: int,
    weight: Optional[Sequence[int]],
) -> bool:
    """True iff monomial ``a`` is strictly larger than ``b``."""
    if kind == WEIGHT:
        wa = 0
        wb = 0
        for w, x, y in zip(weight, a, b):
            wa += w * x
            wb += w * y
        if wa != wb:
            return wa > wb
        kind = GREVLEX
    if kind == GREVLEX:
        da = sum(a)
        db = sum(b)
        if da != db:
            return da > db
        for k in range(len(a) - 1, -1, -1):
            if a[k] != b[k]:
                return a[k] < b[k]
        return False
    # LEX
    for x, y in zip(a, b):
        if x != y:
            return x > y
    return False


def divides(d: Sequence[int], m: Sequence[int]) -> bool:
    for x, y in zip(d, m):
        if x > y:
            return False
    return True


def mono_lcm(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    return tuple(x if x > y else y for x, y in zip(a, b))


def coprime(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def nf_monomial(
    m: Sequence[int],
    leads: Sequence[tuple[int, ...]],
    trails: Sequence[tuple[int, ...]],
) -> tuple[int, ...]:
    """Rewrite ``m`` by lead -> trail replacements until irreducible."""
    cur = tuple(m)
    changed = True
    while changed:
        changed = False
        for i in range(len(leads)):
            if divides(leads[i], cur):
                li = leads[i]
                ti = trails[i]
                cur = tuple(x - y + z for x, y, z in zip(cur, li, ti))
                changed = True
                break
    return cur


def reduce_top(
    a: Sequence[int],
    b: Sequence[int],
    leads: Sequence[tuple[int, ...]],
    trails: Sequence[tuple[int, ...]],
    kind: int,
    weight: Optional[Sequence[int]],
) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Top-reduce the binomial ``x^a - x^b``.

    Returns ``(lead, trail)`` with ``lead`` strictly larger and
    irreducible, or ``None`` when the binomial reduces to zero.
    """
    a = tuple(a)
    b = tuple(b)
    while True:
        if a == b:
            return None
        if not mono_gt(a, b, kind, weight):
            a, b = b, a
        hit = -1
        for i in range(len(leads)):
            if divides(leads[i], a):
                hit = i
                break
        if hit < 0:
            return a, b
        li = leads[hit]
        ti = trails[hit]
        a = tuple(x - y + z for x, y, z in zip(a, li, ti))


def reduce_many(
    items: Sequence[tuple[tuple[int, ...], tuple[int, ...]]],
    leads: Sequence[tuple[int, ...]],
    trails: Sequence[tuple[int, ...]],
    kind: int,
    weight: Optional[Sequence[int]],
) -> list[Optional[tuple[tuple[int, ...], tuple[int, ...]]]]:
    return [reduce_top(a, b, leads, trails, kind, weight) for a, b in items]
