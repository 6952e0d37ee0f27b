"""Assembling cut ideals of clique-glued graphs from their pieces.

Two graphs that share a clique of one, two, or three vertices glue
into a larger graph.  Binomials vanishing on either piece lift to the
glued graph by distributing the other piece's private vertices over
both blocks of every factor, and determinantal quadrics tie the two
pieces together; the lifts and quadrics jointly generate the glued
kernel ideal.  With a weight order built from the factor markings the
assembled set is even a Groebner basis — ``compose_groebner``
constructs that order and then *checks* the claim by running the
completion algorithm rather than trusting it.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from . import _engine_py as _ops
from . import ratlp
from .binomials import Binomial
from .cutmodel import (
    Partition,
    VariableSet,
    all_partitions,
    cut_monomial,
    exponent_matrix,
)
from .engine import (
    GroebnerBasis,
    generates_same_ideal,
    groebner_from_binomials,
    toric_groebner,
)
from .graphs import BudgetError, Graph, GraphError
from .orders import TermOrder

__all__ = [
    "LIFT_BUDGET",
    "SumContext",
    "AlignedPair",
    "Alignment",
    "align",
    "lift",
    "lift_all",
    "quad_set",
    "compose_generating_set",
    "compose_tagged",
    "compose_groebner",
    "verify_generates",
]

LIFT_BUDGET = 1 << 20

EFEntry = Union[str, tuple]


@dataclass(frozen=True)
class SumContext:
    """Two graphs glued along a shared clique of one to three vertices.

    ``map1``/``map2`` send factor labels to glued labels: factor 1
    keeps its labels, factor 2's separator vertices land on factor 1's
    (paired by position in ``sep1``/``sep2``), and factor 2's private
    vertices take fresh labels above ``g1.n`` in ascending order.
    """

    g1: Graph
    g2: Graph
    sep1: tuple[int, ...]
    sep2: tuple[int, ...]
    g: Graph
    map1: tuple[int, ...]
    map2: tuple[int, ...]

    @classmethod
    def from_graphs(
        cls,
        g1: Graph,
        g2: Graph,
        sep1: Sequence[int],
        sep2: Optional[Sequence[int]] = None,
    ) -> "SumContext":
        s1 = tuple(int(v) for v in sep1)
        s2 = tuple(int(v) for v in sep2) if sep2 is not None else s1
        if not 1 <= len(s1) <= 3:
            raise GraphError(
                "separator must have one, two, or three vertices"
            )
        if len(s2) != len(s1):
            raise GraphError("separator specs have different lengths")
        for g, sep, name in ((g1, s1, "first"), (g2, s2, "second")):
            if len(set(sep)) != len(sep):
                raise GraphError(f"duplicate vertex in {name} separator")
            if any(not 1 <= v <= g.n for v in sep):
                raise GraphError(f"{name} separator vertex out of range")
            if not g.is_clique(sep):
                raise GraphError(
                    f"separator is not a clique in the {name} graph"
                )
        map1 = tuple(range(1, g1.n + 1))
        m2 = [0] * g2.n
        for b, a in zip(s2, s1):
            m2[b - 1] = a
        nxt = g1.n + 1
        for v in range(1, g2.n + 1):
            if m2[v - 1] == 0:
                m2[v - 1] = nxt
                nxt += 1
        map2 = tuple(m2)
        edges = set(g1.edges)
        for a, b in g2.edges:
            x, y = map2[a - 1], map2[b - 1]
            edges.add((min(x, y), max(x, y)))
        g = Graph(nxt - 1, tuple(sorted(edges)))
        return cls(g1, g2, s1, s2, g, map1, map2)

    @property
    def separator(self) -> tuple[int, ...]:
        """Separator vertices in glued labels, ascending."""
        return tuple(sorted(self.sep1))

    @property
    def private1(self) -> tuple[int, ...]:
        """Factor 1's private vertices (glued = factor-1 labels)."""
        s = set(self.sep1)
        return tuple(v for v in range(1, self.g1.n + 1) if v not in s)

    @property
    def private2(self) -> tuple[int, ...]:
        """Factor 2's private vertices in glued labels, ascending."""
        return tuple(range(self.g1.n + 1, self.g.n + 1))


def _side_graph(ctx: SumContext, side: int) -> Graph:
    if side == 1:
        return ctx.g1
    if side == 2:
        return ctx.g2
    raise ValueError("side must be 1 or 2")


def _side_map(ctx: SumContext, side: int) -> tuple[int, ...]:
    return ctx.map1 if side == 1 else ctx.map2


def _side_sep(ctx: SumContext, side: int) -> tuple[int, ...]:
    return ctx.sep1 if side == 1 else ctx.sep2


def _other_private(ctx: SumContext, side: int) -> tuple[int, ...]:
    """The *other* factor's private vertices, glued labels."""
    return ctx.private2 if side == 1 else ctx.private1


@functools.lru_cache(maxsize=64)
def _graph_vars(g: Graph) -> VariableSet:
    return VariableSet.from_graph(g)


def _in_kernel(g: Graph, vars_g: VariableSet, b: Binomial) -> bool:
    total = [0] * (2 * g.m)
    for sign, vec in ((1, b.plus), (-1, b.minus)):
        for i, e in enumerate(vec):
            if e:
                mono = cut_monomial(g, vars_g.qvars[i])
                for k, x in enumerate(mono):
                    total[k] += sign * e * x
    return all(v == 0 for v in total)


# ── alignment ────────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class AlignedPair:
    """One factor from each monomial, block-ordered to agree on the
    separator: ``plus_blocks[0]`` and ``minus_blocks[0]`` meet the
    separator in the same vertices."""

    plus_blocks: tuple[tuple[int, ...], tuple[int, ...]]
    minus_blocks: tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class Alignment:
    """A binomial's factors paired and oriented across the separator.

    The underlying binomial is unchanged — ``binomial()`` rebuilds it —
    but the pairing and block orientations carry the extra structure a
    lift needs, which the plain exponent-vector value type erases.
    """

    side: int
    n: int
    pairs: tuple[AlignedPair, ...]

    @property
    def degree(self) -> int:
        return len(self.pairs)

    def binomial(self) -> Binomial:
        parts = all_partitions(self.n)
        index = {p: i for i, p in enumerate(parts)}
        plus = [0] * len(parts)
        minus = [0] * len(parts)
        for pair in self.pairs:
            plus[index[Partition(self.n, pair.plus_blocks[0])]] += 1
            minus[index[Partition(self.n, pair.minus_blocks[0])]] += 1
        return Binomial(plus, minus)


def align(f: Binomial, ctx: SumContext, side: int = 1) -> Alignment:
    """Pair the two monomials' factors so each pair agrees on the
    separator.

    Factors of each monomial are taken in canonical variable order;
    every factor of the first monomial is matched to the unused factor
    of the second with the same separator restriction (smallest
    canonical key first), block-swapped when needed.  The pairing
    always exists for genuine kernel elements; failure raises
    ValueError.
    """
    gs = _side_graph(ctx, side)
    sep = set(_side_sep(ctx, side))
    parts = all_partitions(gs.n)
    if f.nvars != len(parts):
        raise ValueError(
            "binomial does not live on this factor's variables"
        )
    if f.is_zero():
        raise ValueError("cannot align the zero binomial")
    plus_factors = [
        p for i, e in enumerate(f.plus) for p in [parts[i]] * e
    ]
    minus_factors = [
        p for i, e in enumerate(f.minus) for p in [parts[i]] * e
    ]
    if len(plus_factors) != len(minus_factors):
        raise ValueError(
            "monomials have different degrees; not a kernel element"
        )
    used = [False] * len(minus_factors)
    pairs = []
    for p in plus_factors:
        want = set(p.blockA) & sep
        chosen = None
        for j, q in enumerate(minus_factors):
            if used[j]:
                continue
            if set(q.blockA) & sep == want:
                chosen = (j, (q.blockA, q.blockB))
                break
            if set(q.blockB) & sep == want:
                chosen = (j, (q.blockB, q.blockA))
                break
        if chosen is None:
            raise ValueError(
                "alignment impossible: separator restrictions of the "
                "two monomials do not match"
            )
        used[chosen[0]] = True
        pairs.append(AlignedPair((p.blockA, p.blockB), chosen[1]))
    return Alignment(side, gs.n, tuple(pairs))


# ── lifting ──────────────────────────────────────────────────────────────────


def _parse_block_text(text: str, n: int) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    if "," in text or n > 9:
        return tuple(int(p) for p in text.split(",") if p)
    return tuple(int(ch) for ch in text)


def _parse_ef_entry(
    entry: EFEntry, private: tuple[int, ...], n: int
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if isinstance(entry, str):
        if entry.count("|") != 1:
            raise ValueError(f"entry {entry!r} must contain one '|'")
        left, right = entry.split("|")
        e = _parse_block_text(left, n)
        f = _parse_block_text(right, n)
    else:
        e_raw, f_raw = entry
        e = tuple(sorted(int(v) for v in e_raw))
        f = tuple(sorted(int(v) for v in f_raw))
    if set(e) & set(f):
        raise ValueError(f"entry {entry!r} repeats a vertex")
    if set(e) | set(f) != set(private):
        raise ValueError(
            f"entry {entry!r} must split the private vertices {private}"
        )
    return tuple(sorted(e)), tuple(sorted(f))


def _ef_string(entry: tuple[tuple[int, ...], tuple[int, ...]], n: int) -> str:
    glue = "" if n <= 9 else ","
    return "{}|{}".format(
        glue.join(str(v) for v in entry[0]),
        glue.join(str(v) for v in entry[1]),
    )


def _apply_lift(
    alignment: Alignment,
    entries: Sequence[tuple[tuple[int, ...], tuple[int, ...]]],
    ctx: SumContext,
) -> Binomial:
    mapv = _side_map(ctx, alignment.side)
    vars_g = _graph_vars(ctx.g)
    plus = [0] * vars_g.nq
    minus = [0] * vars_g.nq
    for pair, (e, _f) in zip(alignment.pairs, entries):
        pa = [mapv[v - 1] for v in pair.plus_blocks[0]] + list(e)
        ma = [mapv[v - 1] for v in pair.minus_blocks[0]] + list(e)
        plus[vars_g.q_index(Partition(ctx.g.n, pa))] += 1
        minus[vars_g.q_index(Partition(ctx.g.n, ma))] += 1
    b = Binomial(plus, minus)
    if not _in_kernel(ctx.g, vars_g, b):  # pragma: no cover - by construction
        raise RuntimeError("lifted binomial escaped the glued kernel")
    return b


def lift(
    f: Union[Binomial, Alignment],
    ef: Sequence[EFEntry],
    ctx: SumContext,
    side: int = 1,
) -> Binomial:
    """Lift one factor binomial to the glued graph.

    ``ef`` assigns each aligned factor pair an ordered split ``E|F`` of
    the other factor's private vertices (strings like ``"5|"`` /
    ``"|5"`` or block pairs); ``E`` joins the pair's first blocks and
    ``F`` the second blocks in both monomials.  The result is checked
    to vanish on the glued graph.
    """
    alignment = f if isinstance(f, Alignment) else align(f, ctx, side)
    private = _other_private(ctx, alignment.side)
    entries = [_parse_ef_entry(e, private, ctx.g.n) for e in ef]
    if len(entries) != alignment.degree:
        raise ValueError(
            "partition list length must equal the binomial degree"
        )
    return _apply_lift(alignment, entries, ctx)


def _iter_lifts(
    F: Iterable[Binomial],
    ctx: SumContext,
    side: int,
    budget: int,
) -> Iterator[tuple[Binomial, list]]:
    private = _other_private(ctx, side)
    p = len(private)
    total = 0
    for f in sorted(F, key=lambda b: (b.plus, b.minus)):
        alignment = align(f, ctx, side)
        d = alignment.degree
        total += 1 << (p * d)
        if total > budget:
            raise BudgetError(
                f"lift enumeration needs {total} binomials; "
                f"budget is {budget}"
            )
        for masks in itertools.product(range(1 << p), repeat=d):
            entries = [
                (
                    tuple(v for k, v in enumerate(private) if m >> k & 1),
                    tuple(
                        v for k, v in enumerate(private) if not m >> k & 1
                    ),
                )
                for m in masks
            ]
            yield _apply_lift(alignment, entries, ctx), entries


def lift_all(
    F: Iterable[Binomial],
    ctx: SumContext,
    side: int = 1,
    budget: int = LIFT_BUDGET,
) -> set[Binomial]:
    """Every lift of every binomial in ``F`` over every private split.

    Each degree-d binomial yields 2^(p*d) lifts, p counting the other
    factor's private vertices; exceeding ``budget`` total raises
    BudgetError before any enumeration starts growing.
    """
    return {b for b, _ in _iter_lifts(F, ctx, side, budget)}


# ── tying quadrics ───────────────────────────────────────────────────────────


def quad_set(ctx: SumContext) -> set[Binomial]:
    """All 2x2 determinantal quadrics tying the two factors together.

    The glued variables whose separator restriction equals a fixed
    bipartition of the separator form a grid indexed by (factor-2
    private subset, factor-1 private subset); every 2x2 minor of every
    such grid vanishes on the glued graph.
    """
    vars_g = _graph_vars(ctx.g)
    sep = ctx.separator
    k = len(sep)
    p1 = ctx.private1
    p2 = ctx.private2
    out: set[Binomial] = set()
    for amask in range(1 << k):
        asize = amask.bit_count()
        if 2 * asize > k or (2 * asize == k and not amask & 1):
            continue
        a_block = [v for i, v in enumerate(sep) if amask >> i & 1]
        grid = []
        for cmask in range(1 << len(p2)):
            row = []
            for emask in range(1 << len(p1)):
                block = (
                    a_block
                    + [v for i, v in enumerate(p2) if cmask >> i & 1]
                    + [v for i, v in enumerate(p1) if emask >> i & 1]
                )
                row.append(vars_g.q_index(Partition(ctx.g.n, block)))
            grid.append(row)
        for r1, r2 in itertools.combinations(range(len(grid)), 2):
            for c1, c2 in itertools.combinations(range(len(grid[0])), 2):
                plus = [0] * vars_g.nq
                minus = [0] * vars_g.nq
                plus[grid[r1][c1]] += 1
                plus[grid[r2][c2]] += 1
                minus[grid[r1][c2]] += 1
                minus[grid[r2][c1]] += 1
                if plus != minus:
                    out.add(Binomial(plus, minus))
    return out


# ── assembly ─────────────────────────────────────────────────────────────────


def compose_generating_set(
    ctx: SumContext,
    F1: Iterable[Binomial],
    F2: Iterable[Binomial],
    budget: int = LIFT_BUDGET,
) -> set[Binomial]:
    """Lifts of both factors' binomials plus the tying quadrics.

    When ``F1`` and ``F2`` generate their factors' kernel ideals the
    result generates the glued one.  Every element is checked against
    the glued kernel.
    """
    M: set[Binomial] = set()
    for b, _ in _iter_lifts(F1, ctx, 1, budget):
        M.add(b)
    for b, _ in _iter_lifts(F2, ctx, 2, budget):
        M.add(b)
    M |= quad_set(ctx)
    vars_g = _graph_vars(ctx.g)
    for b in M:
        if not _in_kernel(ctx.g, vars_g, b):  # pragma: no cover
            raise RuntimeError("composed element escaped the glued kernel")
    return M


def compose_tagged(
    ctx: SumContext,
    F1: Iterable[Binomial],
    F2: Iterable[Binomial],
    budget: int = LIFT_BUDGET,
) -> list[tuple[Binomial, dict]]:
    """Composed elements in deterministic order with provenance tags.

    Each tag records which factor the element lifted from and the
    private split used (``side`` 1/2 with ``ef`` strings), or
    ``side="quad"`` for a tying quadric.
    """
    seen: dict[Binomial, dict] = {}
    for side, F in ((1, F1), (2, F2)):
        for b, entries in _iter_lifts(F, ctx, side, budget):
            if b not in seen:
                seen[b] = {
                    "side": side,
                    "ef": [_ef_string(e, ctx.g.n) for e in entries],
                }
    for b in sorted(quad_set(ctx), key=lambda x: (x.plus, x.minus)):
        if b not in seen:
            seen[b] = {"side": "quad", "ef": None}
    return list(seen.items())


def verify_generates(
    M: Iterable[Binomial],
    g: Graph,
    reference: Optional[GroebnerBasis] = None,
) -> bool:
    """True iff ``M`` generates the full kernel ideal of ``g``.

    ``reference`` may carry a precomputed reduced basis for ``g``'s
    ideal (it is recomputed otherwise).  An element outside the kernel
    raises ValueError.
    """
    vars_g = _graph_vars(g)
    elements = list(M)
    for b in elements:
        if b.nvars != vars_g.nq:
            raise ValueError("element lives on the wrong variables")
        if not _in_kernel(g, vars_g, b):
            raise ValueError("element is not in the kernel ideal")
    ref = (
        reference
        if reference is not None
        else toric_groebner(exponent_matrix(g))
    )
    if not (ref.reduced and ref.certified_complete):
        raise ValueError("reference basis must be reduced and complete")
    return generates_same_ideal(elements, ref)


# ── composed Groebner bases ──────────────────────────────────────────────────


def _marking_weights(gb: GroebnerBasis) -> list[int]:
    """Nonnegative integer weights realising ``gb``'s lead/trail split."""
    vectors = []
    for el, side in zip(gb.elements, gb.lead_sides):
        lead = el.plus if side > 0 else el.minus
        trail = el.minus if side > 0 else el.plus
        vectors.append([a - b for a, b in zip(lead, trail)])
    w = ratlp.separating_weights(vectors, gb.nvars)
    if w is None:  # pragma: no cover - markings of true bases are coherent
        raise RuntimeError("factor marking admits no weight vector")
    return w


def _restriction_indices(ctx: SumContext, side: int) -> list[int]:
    """For each glued variable, the factor variable it restricts to."""
    gs = _side_graph(ctx, side)
    mapv = _side_map(ctx, side)
    glued_of_side = set(mapv)
    inv = {glued: v for v, glued in enumerate(mapv, start=1)}
    findex = {p: i for i, p in enumerate(all_partitions(gs.n))}
    out = []
    for p in _graph_vars(ctx.g).qvars:
        block = [inv[v] for v in p.blockA if v in glued_of_side]
        out.append(findex[Partition(gs.n, block)])
    return out


def _tie_break_order(ctx: SumContext) -> tuple[int, ...]:
    """Variable priority grouping by separator bipartition, then
    factor-1 private content, then factor-2 private content."""
    sep = ctx.separator
    p1 = ctx.private1
    p2 = ctx.private2
    keys = []
    for p in _graph_vars(ctx.g).qvars:
        a = set(p.blockA)
        hits = [v in a for v in sep]
        if 2 * sum(hits) > len(sep) or (
            2 * sum(hits) == len(sep) and not hits[0]
        ):
            a = set(p.blockB)
            hits = [v in a for v in sep]
        sep_key = sum(1 << i for i, h in enumerate(hits) if h)
        k1 = sum(1 << i for i, v in enumerate(p1) if v in a)
        k2 = sum(1 << i for i, v in enumerate(p2) if v in a)
        keys.append((sep_key, k1, k2))
    return tuple(sorted(range(len(keys)), key=lambda i: keys[i]))


def compose_groebner(
    ctx: SumContext,
    gb1: GroebnerBasis,
    gb2: GroebnerBasis,
    threads: int = 1,
    budget: int = LIFT_BUDGET,
) -> GroebnerBasis:
    """Reduced basis of the glued ideal assembled from factor bases.

    The term order is a weight order: each factor's marking is
    realised by a nonnegative weight vector (exact rational phase-1
    search), and the two are summed through the restriction maps, so
    every lifted element keeps its factor's leading side while the
    tying quadrics tie — those are decided by a fixed variable
    priority.  The assembled set is then *verified* to be a Groebner
    basis by completion; growth during completion raises RuntimeError
    because it would disprove the construction.
    """
    for gb, side in ((gb1, 1), (gb2, 2)):
        if not (gb.reduced and gb.certified_complete):
            raise ValueError(
                f"factor {side} basis must be reduced and complete"
            )
        if gb.nvars != 1 << (_side_graph(ctx, side).n - 1):
            raise ValueError(
                f"factor {side} basis lives on the wrong variables"
            )
    vars_g = _graph_vars(ctx.g)
    w1 = _marking_weights(gb1)
    w2 = _marking_weights(gb2)
    idx1 = _restriction_indices(ctx, 1)
    idx2 = _restriction_indices(ctx, 2)
    weight = tuple(
        w1[idx1[i]] + w2[idx2[i]] for i in range(vars_g.nq)
    )
    order = TermOrder.weighted(weight, _tie_break_order(ctx))
    M = compose_generating_set(ctx, gb1.elements, gb2.elements, budget)
    elements = sorted(M, key=lambda b: (b.plus, b.minus))
    basis = groebner_from_binomials(
        elements, vars_g.nq, order, threads=threads
    )
    if not basis.certified_complete:  # pragma: no cover - no budget set
        raise RuntimeError("composed completion was truncated")
    perm = order.permutation(vars_g.nq)
    pw = order.permuted_weight(vars_g.nq)
    marked = []
    for b in elements:
        pa = tuple(b.plus[p] for p in perm)
        pb = tuple(b.minus[p] for p in perm)
        marked.append(
            b.plus if _ops.mono_gt(pa, pb, order.kind_id, pw) else b.minus
        )
    for lead in basis.leads():
        if not any(_ops.divides(m, lead) for m in marked):
            raise RuntimeError(
                "assembled set is not a Groebner basis under the "
                "composed order"
            )
    basis.stats["assembled_size"] = len(elements)
    basis.stats["verified_groebner"] = True
    return basis
