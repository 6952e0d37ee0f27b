"""Exact binomial Groebner engine: saturation, Markov bases, normal forms.

The ideal of an integer matrix ``A`` (variables = columns) is computed
as the lattice-basis ideal saturated at every variable: for each
variable, one Groebner run under a graded reverse lex order with that
variable cheapest, followed by stripping the variable's common power
from every element.  All S-pair and reduction arithmetic stays inside
pure-difference binomials, so coefficients never leave {+1, -1}.

A compiled extension (``cutkit._accel``) and a pure-Python module
(``cutkit._engine_py``) implement the same reduction kernels; the
fastest available one is chosen at import unless ``CUTKIT_PURE=1``.
"""

from __future__ import annotations

import functools
import heapq
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Iterable, Optional, Sequence

from . import intlinalg
from . import _engine_py as _ops
from .binomials import Binomial
from .orders import TermOrder

if os.environ.get("CUTKIT_PURE") == "1":
    from . import _engine_py as _backend
else:
    try:
        from . import _accel as _backend  # type: ignore[attr-defined]
    except ImportError:
        from . import _engine_py as _backend

BACKEND = _backend.BACKEND_NAME

__all__ = [
    "BACKEND",
    "BudgetExceeded",
    "GroebnerBasis",
    "MarkovBasis",
    "lattice_kernel",
    "groebner_from_binomials",
    "toric_groebner",
    "markov_basis",
    "normal_form",
    "ideal_equal",
    "initial_ideal",
    "is_squarefree",
]

_Pair = tuple[tuple[int, ...], tuple[int, ...]]


class BudgetExceeded(RuntimeError):
    """A resource cap was hit; carries the partial, still-sound state."""

    def __init__(self, message: str, partial: Optional[list] = None) -> None:
        super().__init__(message)
        self.partial = partial or []


class GroebnerBasis:
    """Marked reduced Groebner basis (or a flagged partial result).

    ``lead_sides[k]`` is +1 when ``elements[k].plus`` is the leading
    side under ``order``, else -1.  ``certified_complete`` is False for
    budget-truncated or degree-truncated runs, whose elements are still
    honest ideal members but need not generate.
    """

    __slots__ = (
        "order",
        "elements",
        "lead_sides",
        "reduced",
        "certified_complete",
        "nvars",
        "stats",
    )

    def __init__(
        self,
        order: TermOrder,
        elements: Sequence[Binomial],
        lead_sides: Sequence[int],
        nvars: int,
        reduced: bool,
        certified_complete: bool,
        stats: Optional[dict] = None,
    ) -> None:
        self.order = order
        self.elements = tuple(elements)
        self.lead_sides = tuple(lead_sides)
        self.nvars = nvars
        self.reduced = reduced
        self.certified_complete = certified_complete
        self.stats = dict(stats or {})

    def __len__(self) -> int:
        return len(self.elements)

    def leads(self) -> list[tuple[int, ...]]:
        return [
            el.plus if side > 0 else el.minus
            for el, side in zip(self.elements, self.lead_sides)
        ]

    def trails(self) -> list[tuple[int, ...]]:
        return [
            el.minus if side > 0 else el.plus
            for el, side in zip(self.elements, self.lead_sides)
        ]

    def degree_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for el in self.elements:
            hist[el.degree] = hist.get(el.degree, 0) + 1
        return dict(sorted(hist.items()))

    def metadata(self) -> dict:
        return {
            "order": self.order.describe(),
            "degreeHistogram": self.degree_histogram(),
            "certifiedComplete": self.certified_complete,
            "wallTime": self.stats.get("wall_time"),
        }

    def __repr__(self) -> str:
        flag = "" if self.certified_complete else ", INCOMPLETE"
        return f"GroebnerBasis({len(self.elements)} elements{flag})"


class MarkovBasis:
    """Minimal generating set with exact graded generator counts."""

    __slots__ = ("elements", "degree_histogram", "certified_complete", "stats")

    def __init__(
        self,
        elements: Sequence[Binomial],
        degree_histogram: dict[int, int],
        certified_complete: bool,
        stats: Optional[dict] = None,
    ) -> None:
        self.elements = tuple(elements)
        self.degree_histogram = dict(sorted(degree_histogram.items()))
        self.certified_complete = certified_complete
        self.stats = dict(stats or {})

    @property
    def mu(self) -> int:
        """Largest degree of a minimal generator (0 for the zero ideal)."""
        return max(self.degree_histogram, default=0)

    def __len__(self) -> int:
        return len(self.elements)

    def __repr__(self) -> str:
        flag = "" if self.certified_complete else ", INCOMPLETE"
        return f"MarkovBasis({self.degree_histogram}{flag})"


# ── matrix plumbing ──────────────────────────────────────────────────────────


def _matrix_rows(A) -> list[list[int]]:
    if hasattr(A, "entries"):
        return [list(r) for r in A.entries]
    return [list(r) for r in A]


def _matrix_columns(A) -> list[tuple[int, ...]]:
    rows = _matrix_rows(A)
    if not rows:
        return []
    return [tuple(r[j] for r in rows) for j in range(len(rows[0]))]


def lattice_kernel(A) -> list[tuple[int, ...]]:
    """A primitive lattice basis of the integer kernel of ``A``.

    Accepts an ExponentMatrix or any row-major integer matrix; basis
    vectors are primitive with deterministic signs.
    """
    rows = _matrix_rows(A)
    if not rows:
        return []
    return intlinalg.kernel_basis(rows)


# ── Buchberger driver (permuted coordinate space) ────────────────────────────


def _chunked_reduce(
    items: list[_Pair],
    leads: list[tuple[int, ...]],
    trails: list[tuple[int, ...]],
    kind: int,
    weight,
    threads: int,
):
    if threads <= 1 or len(items) < 2 * threads:
        return _backend.reduce_many(items, leads, trails, kind, weight)
    size = (len(items) + threads - 1) // threads
    chunks = [items[k : k + size] for k in range(0, len(items), size)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        parts = list(
            pool.map(
                lambda ch: _backend.reduce_many(ch, leads, trails, kind, weight),
                chunks,
            )
        )
    out = []
    for p in parts:
        out.extend(p)
    return out


def _gm_update(
    pairs: set[tuple[int, int]],
    leads: list[tuple[int, ...]],
    t: int,
) -> set[tuple[int, int]]:
    """Gebauer-Moeller pair update after appending element ``t``."""
    lt = leads[t]
    lcms = {i: _ops.mono_lcm(leads[i], lt) for i in range(t)}
    keep = []
    for i in range(t):
        li = lcms[i]
        drop = False
        for j in range(t):
            if j != i and lcms[j] != li and _ops.divides(lcms[j], li):
                drop = True
                break
        if not drop:
            keep.append(i)
    seen: set[tuple[int, ...]] = set()
    keep2 = []
    for i in keep:
        key = lcms[i]
        if key in seen:
            continue
        seen.add(key)
        keep2.append(i)
    keep3 = [i for i in keep2 if not _ops.coprime(leads[i], lt)]
    out = set()
    for i, j in pairs:
        lij = _ops.mono_lcm(leads[i], leads[j])
        if (
            _ops.divides(lt, lij)
            and lcms[i] != lij
            and lcms[j] != lij
        ):
            continue
        out.add((i, j))
    out.update((i, t) for i in keep3)
    return out


def _run_buchberger(
    pgens: Iterable[_Pair],
    kind: int,
    weight,
    pair_budget: Optional[int],
    threads: int,
    max_degree: Optional[int],
) -> tuple[list[_Pair], dict]:
    """Reduced Groebner basis in permuted coordinates.

    Raises BudgetExceeded past ``pair_budget`` processed S-pairs; a
    ``max_degree`` cap skips higher pairs and marks the run truncated.
    """
    leads: list[tuple[int, ...]] = []
    trails: list[tuple[int, ...]] = []
    pairs: set[tuple[int, int]] = set()
    heap: list[tuple[int, tuple[int, ...], int, int]] = []
    processed = 0
    truncated = False

    def insert(lead: tuple[int, ...], trail: tuple[int, ...]) -> None:
        nonlocal pairs
        leads.append(lead)
        trails.append(trail)
        t = len(leads) - 1
        new_pairs = _gm_update(pairs, leads, t)
        for i, j in new_pairs - pairs:
            lij = _ops.mono_lcm(leads[i], leads[j])
            heapq.heappush(heap, (sum(lij), lij, i, j))
        pairs = new_pairs

    for a, b in sorted(set(pgens)):
        r = _backend.reduce_top(a, b, leads, trails, kind, weight)
        if r is not None:
            insert(*r)

    while heap:
        d = heap[0][0]
        if max_degree is not None and d > max_degree:
            truncated = True
            break
        batch: list[tuple[int, int]] = []
        while heap and heap[0][0] == d:
            _, lij, i, j = heapq.heappop(heap)
            if (i, j) in pairs:
                pairs.discard((i, j))
                batch.append((i, j))
        if not batch:
            continue
        if pair_budget is not None and processed + len(batch) > pair_budget:
            raise BudgetExceeded(
                f"S-pair budget {pair_budget} exceeded at degree {d}",
                partial=list(zip(leads, trails)),
            )
        processed += len(batch)
        spolys: set[_Pair] = set()
        for i, j in batch:
            lij = _ops.mono_lcm(leads[i], leads[j])
            s1 = tuple(
                l - x + y for l, x, y in zip(lij, leads[i], trails[i])
            )
            s2 = tuple(
                l - x + y for l, x, y in zip(lij, leads[j], trails[j])
            )
            if s1 != s2:
                spolys.add((s1, s2) if s1 > s2 else (s2, s1))
        todo = sorted(spolys)
        results = _chunked_reduce(todo, leads, trails, kind, weight, threads)
        for r in sorted(x for x in results if x is not None):
            rr = _backend.reduce_top(r[0], r[1], leads, trails, kind, weight)
            if rr is not None:
                insert(*rr)

    # minimalize: keep leads not divisible by earlier (smaller) kept leads
    def cmp(i: int, j: int) -> int:
        if leads[i] == leads[j]:
            return 0
        return 1 if _ops.mono_gt(leads[i], leads[j], kind, weight) else -1

    order_idx = sorted(range(len(leads)), key=functools.cmp_to_key(cmp))
    kept: list[int] = []
    for idx in order_idx:
        if not any(_ops.divides(leads[k], leads[idx]) for k in kept):
            kept.append(idx)
    klead = [leads[k] for k in kept]
    ktrail = [trails[k] for k in kept]
    final = [
        (klead[p], _backend.nf_monomial(ktrail[p], klead, ktrail))
        for p in range(len(kept))
    ]
    stats = {"pairs_processed": processed, "truncated": truncated}
    return final, stats


def _to_permuted(vec: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    return tuple(vec[p] for p in perm)


def _from_permuted(vec: Sequence[int], perm: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for pos, orig in enumerate(perm):
        out[orig] = vec[pos]
    return tuple(out)


def _buchberger_natural(
    gens: Iterable[_Pair],
    nvars: int,
    order: TermOrder,
    pair_budget: Optional[int],
    threads: int,
    max_degree: Optional[int] = None,
) -> tuple[list[_Pair], dict]:
    """Run Buchberger on natural-coordinate binomial pairs."""
    perm = order.permutation(nvars)
    weight = order.permuted_weight(nvars)
    pgens = [
        (_to_permuted(a, perm), _to_permuted(b, perm)) for a, b in gens
    ]
    try:
        result, stats = _run_buchberger(
            pgens, order.kind_id, weight, pair_budget, threads, max_degree
        )
    except BudgetExceeded as exc:
        exc.partial = [
            (_from_permuted(a, perm), _from_permuted(b, perm))
            for a, b in exc.partial
        ]
        raise
    return (
        [
            (_from_permuted(a, perm), _from_permuted(b, perm))
            for a, b in result
        ],
        stats,
    )


def _pairs_to_basis(
    pairs: list[_Pair],
    order: TermOrder,
    nvars: int,
    reduced: bool,
    certified: bool,
    stats: dict,
) -> GroebnerBasis:
    elements = []
    sides = []
    for lead, trail in pairs:
        el = Binomial(lead, trail)
        elements.append(el)
        sides.append(1 if el.plus == lead else -1)
    return GroebnerBasis(
        order, elements, sides, nvars, reduced, certified, stats
    )


def groebner_from_binomials(
    gens: Iterable[Binomial],
    nvars: int,
    order: Optional[TermOrder] = None,
    pair_budget: Optional[int] = None,
    threads: int = 1,
    max_degree: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the ideal generated by ``gens``."""
    order = order or TermOrder()
    t0 = time.perf_counter()
    pair_list = []
    for g in gens:
        if g.nvars != nvars:
            raise ValueError("generator length does not match nvars")
        if not g.is_zero():
            pair_list.append((g.plus, g.minus))
    try:
        result, stats = _buchberger_natural(
            pair_list, nvars, order, pair_budget, threads, max_degree
        )
    except BudgetExceeded as exc:
        stats = {"wall_time": time.perf_counter() - t0, "budget_hit": True}
        return _pairs_to_basis(exc.partial, order, nvars, False, False, stats)
    stats["wall_time"] = time.perf_counter() - t0
    return _pairs_to_basis(
        result, order, nvars, True, not stats["truncated"], stats
    )


def _collision_quadrics(cols: list[tuple[int, ...]]) -> list[_Pair]:
    """Degree-2 kernel binomials found by a column-pair sum scan."""
    n = len(cols)
    by_sum: dict[tuple[int, ...], list[tuple[int, int]]] = {}
    for i in range(n):
        for j in range(i, n):
            s = tuple(x + y for x, y in zip(cols[i], cols[j]))
            by_sum.setdefault(s, []).append((i, j))
    out: list[_Pair] = []
    for group in by_sum.values():
        if len(group) < 2:
            continue
        i0, j0 = group[0]
        base = [0] * n
        base[i0] += 1
        base[j0] += 1
        base_t = tuple(base)
        for i, j in group[1:]:
            v = [0] * n
            v[i] += 1
            v[j] += 1
            out.append((base_t, tuple(v)))
    return out


def _strip_variable(pair: _Pair, var: int) -> _Pair:
    a, b = pair
    k = min(a[var], b[var])
    if k == 0:
        return pair
    a2 = list(a)
    b2 = list(b)
    a2[var] -= k
    b2[var] -= k
    return tuple(a2), tuple(b2)


def toric_groebner(
    A,
    order: Optional[TermOrder] = None,
    pair_budget: Optional[int] = None,
    threads: int = 1,
    max_degree: Optional[int] = None,
) -> GroebnerBasis:
    """Reduced Groebner basis of the full ideal of relations of ``A``.

    Saturation runs one Groebner pass per variable (that variable
    cheapest under graded reverse lex, then its common power stripped
    from every element); the final pass uses ``order``.  On budget
    exhaustion the returned basis is flagged incomplete — its elements
    are valid relations but need not generate.
    """
    order = order or TermOrder()
    cols = _matrix_columns(A)
    nvars = len(cols)
    if len({sum(c) for c in cols}) > 1:
        raise ValueError(
            "matrix must have equal column sums (homogeneous ideal)"
        )
    t0 = time.perf_counter()
    kern = lattice_kernel(A)
    if not kern:
        return GroebnerBasis(
            order, (), (), nvars, True, True, {"wall_time": 0.0}
        )
    kern = intlinalg.lll_reduce(kern)
    gens: list[_Pair] = []
    for v in kern:
        plus = tuple(x if x > 0 else 0 for x in v)
        minus = tuple(-x if x < 0 else 0 for x in v)
        gens.append((plus, minus))
    gens.extend(_collision_quadrics(cols))
    total_pairs = 0
    try:
        current = gens
        for var in range(nvars):
            sat_order = TermOrder.cheapest_last(var, nvars)
            result, stats = _buchberger_natural(
                current, nvars, sat_order, pair_budget, threads, None
            )
            total_pairs += stats["pairs_processed"]
            current = [_strip_variable(p, var) for p in result]
        result, stats = _buchberger_natural(
            current, nvars, order, pair_budget, threads, max_degree
        )
        total_pairs += stats["pairs_processed"]
    except BudgetExceeded as exc:
        meta = {
            "wall_time": time.perf_counter() - t0,
            "pairs_processed": total_pairs,
            "budget_hit": True,
        }
        return _pairs_to_basis(exc.partial, order, nvars, False, False, meta)
    meta = {
        "wall_time": time.perf_counter() - t0,
        "pairs_processed": total_pairs,
        "truncated": stats["truncated"],
    }
    return _pairs_to_basis(
        result, order, nvars, True, not stats["truncated"], meta
    )


# ── normal forms, ideal comparison, initial ideals ───────────────────────────


def normal_form(b: Binomial, gb: GroebnerBasis) -> Binomial:
    """Remainder of ``b`` modulo the reduced basis ``gb``.

    Zero (``result.is_zero()``) certifies ideal membership.  When ``b``
    lies outside the ideal its two reduced sides may share a monomial
    factor; that common factor is cancelled so the result stays a
    pure-difference binomial (the zero/nonzero verdict is unchanged by
    the cancellation).
    """
    if not gb.reduced:
        raise ValueError("normal form requires a reduced (complete) basis")
    if b.nvars != gb.nvars:
        raise ValueError("binomial length does not match basis")
    perm = gb.order.permutation(gb.nvars)
    pleads = [_to_permuted(l, perm) for l in gb.leads()]
    ptrails = [_to_permuted(t, perm) for t in gb.trails()]
    nf_plus = _backend.nf_monomial(
        _to_permuted(b.plus, perm), pleads, ptrails
    )
    nf_minus = _backend.nf_monomial(
        _to_permuted(b.minus, perm), pleads, ptrails
    )
    if nf_plus == nf_minus:
        zero = (0,) * gb.nvars
        return Binomial(zero, zero)
    common = [min(a, c) for a, c in zip(nf_plus, nf_minus)]
    return Binomial(
        _from_permuted([a - m for a, m in zip(nf_plus, common)], perm),
        _from_permuted([c - m for c, m in zip(nf_minus, common)], perm),
    )


def ideal_equal(gbA: GroebnerBasis, gbB: GroebnerBasis) -> bool:
    """True iff both reduced bases generate the same ideal."""
    if gbA.nvars != gbB.nvars:
        raise ValueError("bases live in different variable sets")
    return all(
        normal_form(el, gbB).is_zero() for el in gbA.elements
    ) and all(normal_form(el, gbA).is_zero() for el in gbB.elements)


def generates_same_ideal(
    gens: Iterable[Binomial],
    reference: GroebnerBasis,
    pair_budget: Optional[int] = None,
    threads: int = 1,
) -> bool:
    """True iff ``gens`` generate exactly the ideal of ``reference``.

    Unlike :func:`ideal_equal` this never builds a public basis for the
    candidate ideal.  A sub-ideal of a matrix ideal need not be spanned
    by disjoint-support differences, so its Groebner elements are kept
    as raw monomial pairs internally and only membership verdicts are
    surfaced.
    """
    if not (reference.reduced and reference.certified_complete):
        raise ValueError("reference must be a certified reduced basis")
    gen_list = [g for g in gens if not g.is_zero()]
    for g in gen_list:
        if g.nvars != reference.nvars:
            raise ValueError("generator length does not match reference")
    if not all(normal_form(g, reference).is_zero() for g in gen_list):
        return False
    if not gen_list:
        return not reference.elements
    order = reference.order
    nvars = reference.nvars
    pairs, stats = _buchberger_natural(
        [(g.plus, g.minus) for g in gen_list],
        nvars,
        order,
        pair_budget,
        threads,
    )
    if stats["truncated"]:  # pragma: no cover - no degree cap is passed
        raise RuntimeError("candidate basis truncated")
    perm = order.permutation(nvars)
    pleads = [_to_permuted(lead, perm) for lead, _ in pairs]
    ptrails = [_to_permuted(trail, perm) for _, trail in pairs]

    def member(b: Binomial) -> bool:
        nfp = _backend.nf_monomial(_to_permuted(b.plus, perm), pleads, ptrails)
        nfm = _backend.nf_monomial(
            _to_permuted(b.minus, perm), pleads, ptrails
        )
        return nfp == nfm

    return all(member(el) for el in reference.elements)


def initial_ideal(gb: GroebnerBasis) -> list[tuple[int, ...]]:
    """Minimal monomial generators of the initial ideal (exponent tuples)."""
    if not gb.reduced:
        raise ValueError("initial ideal requires a reduced basis")
    return sorted(gb.leads())


def is_squarefree(monomials: Iterable[Sequence[int]]) -> bool:
    return all(all(e <= 1 for e in m) for m in monomials)


# ── Markov bases via fiber connectivity ──────────────────────────────────────


def _enumerate_fiber(
    cols: list[tuple[int, ...]],
    value: tuple[int, ...],
    degree: int,
    node_budget: Optional[int] = None,
) -> list[tuple[int, ...]]:
    """All exponent vectors u >= 0 of total degree ``degree`` with
    sum_j u_j * cols[j] = value, by depth-first search with row bounds."""
    nvars = len(cols)
    nrows = len(value)
    out: list[tuple[int, ...]] = []
    current = [0] * nvars
    nodes = 0

    def rec(j: int, remaining: list[int], deg_left: int) -> None:
        nonlocal nodes
        nodes += 1
        if node_budget is not None and nodes > node_budget:
            raise BudgetExceeded("fiber enumeration budget exceeded")
        if deg_left == 0:
            if all(r == 0 for r in remaining):
                out.append(tuple(current))
            return
        if j == nvars:
            return
        col = cols[j]
        cap = deg_left
        for i in range(nrows):
            if col[i] > 0:
                c = remaining[i] // col[i]
                if c < cap:
                    cap = c
        for e in range(cap, -1, -1):
            if e:
                for i in range(nrows):
                    remaining[i] -= e * col[i]
            current[j] = e
            rec(j + 1, remaining, deg_left - e)
            current[j] = 0
            if e:
                for i in range(nrows):
                    remaining[i] += e * col[i]

    rec(0, list(value), degree)
    return sorted(out)


class _UnionFind:
    def __init__(self, n: int) -> None:
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


def _fiber_component_reps(
    fiber: list[tuple[int, ...]], moves: list[_Pair]
) -> list[list[tuple[int, ...]]]:
    """Connected components of the fiber graph under the given moves."""
    index = {u: k for k, u in enumerate(fiber)}
    uf = _UnionFind(len(fiber))
    for u in fiber:
        for p, q in moves:
            if all(x >= y for x, y in zip(u, p)):
                v = tuple(x - y + z for x, y, z in zip(u, p, q))
                uf.union(index[u], index[v])
    comps: dict[int, list[tuple[int, ...]]] = {}
    for u, k in index.items():
        comps.setdefault(uf.find(k), []).append(u)
    return sorted(
        (sorted(c) for c in comps.values()), key=lambda c: c[0]
    )


def markov_basis(
    A,
    pair_budget: Optional[int] = None,
    threads: int = 1,
    fiber_budget: Optional[int] = 50_000_000,
) -> MarkovBasis:
    """Minimal generating set of the ideal of ``A`` with exact graded counts.

    Degree-d generator counts come from fiber connectivity: within each
    multidegree fiber met by the Groebner basis at degree d, the number
    of minimal generators is (components under strictly-lower-degree
    moves) - 1, and one connecting binomial per extra component is
    emitted.
    """
    t0 = time.perf_counter()
    gb = toric_groebner(A, TermOrder(), pair_budget, threads)
    if not gb.certified_complete:
        return MarkovBasis(
            gb.elements,
            {},
            False,
            {"wall_time": time.perf_counter() - t0, "budget_hit": True},
        )
    cols = _matrix_columns(A)
    fibers_by_degree: dict[int, set[tuple[int, ...]]] = {}
    for el in gb.elements:
        val = tuple(
            sum(c * e for c, e in zip(col_row, el.plus))
            for col_row in _matrix_rows(A)
        )
        fibers_by_degree.setdefault(el.degree, set()).add(val)
    moves: list[_Pair] = []
    elements: list[Binomial] = []
    hist: dict[int, int] = {}
    try:
        for d in sorted(fibers_by_degree):
            connectors_at_d: list[_Pair] = []
            for val in sorted(fibers_by_degree[d]):
                fiber = _enumerate_fiber(cols, val, d, fiber_budget)
                comps = _fiber_component_reps(fiber, moves)
                if len(comps) > 1:
                    hist[d] = hist.get(d, 0) + len(comps) - 1
                    root = comps[0][0]
                    for comp in comps[1:]:
                        rep = comp[0]
                        elements.append(Binomial(root, rep))
                        connectors_at_d.append((root, rep))
            moves.extend(connectors_at_d)
    except BudgetExceeded:
        return MarkovBasis(
            elements,
            hist,
            False,
            {"wall_time": time.perf_counter() - t0, "budget_hit": True},
        )
    return MarkovBasis(
        elements,
        hist,
        True,
        {
            "wall_time": time.perf_counter() - t0,
            "groebner_size": len(gb),
        },
    )
