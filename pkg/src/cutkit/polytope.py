"""Exact lattice-polytope geometry for cut polytopes.

Everything here is integer/rational arithmetic — no floating point is
involved in any accept/reject decision.  The central objects are the
polytope of cut vectors of a graph, its facet description (computed by
the double-description method on the polar cone), pulling
triangulations, normalized volumes, and degree-bounded normality
certificates for the cut monomial semigroup.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from . import intlinalg
from .cutmodel import Partition, all_partitions, cut_vector
from .graphs import (
    BudgetError,
    Graph,
    contract_edge,
    induced_subgraph,
)

CUT_POLYTOPE_VERTEX_BUDGET = 12
HULL_DIM_BUDGET = 10
BRUTE_FACET_DIM_BUDGET = 7
ENUMERATION_ROW_BUDGET = 30_000_000


class PolytopeError(ValueError):
    pass


# ── value types ──────────────────────────────────────────────────────────────


class VPolytope:
    """Polytope given by its integer vertex list."""

    __slots__ = ("vertices", "ambient_dim")

    def __init__(self, vertices: Iterable[Sequence[int]]) -> None:
        verts = tuple(tuple(int(x) for x in v) for v in vertices)
        if not verts:
            raise PolytopeError("polytope needs at least one vertex")
        dim = len(verts[0])
        if any(len(v) != dim for v in verts):
            raise PolytopeError("vertices have mixed lengths")
        if len(set(verts)) != len(verts):
            raise PolytopeError("duplicate vertices")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "ambient_dim", dim)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("VPolytope is immutable")

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"VPolytope({len(self.vertices)} vertices in R^{self.ambient_dim})"


@dataclass(frozen=True)
class Facet:
    """Inequality normal . x <= offset with primitive integer normal."""

    normal: tuple[int, ...]
    offset: int

    def value(self, point: Sequence[int]) -> int:
        return sum(a * x for a, x in zip(self.normal, point))


class HPolytope:
    __slots__ = ("facets", "ambient_dim")

    def __init__(self, facets: Iterable[Facet], ambient_dim: int) -> None:
        object.__setattr__(self, "facets", tuple(facets))
        object.__setattr__(self, "ambient_dim", ambient_dim)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("HPolytope is immutable")

    def __len__(self) -> int:
        return len(self.facets)

    def __repr__(self) -> str:
        return f"HPolytope({len(self.facets)} facets in R^{self.ambient_dim})"


@dataclass(frozen=True)
class Triangulation:
    """Simplices as tuples of vertex indices into the source polytope."""

    simplices: tuple[tuple[int, ...], ...]
    method: str


# ── construction and dimension ───────────────────────────────────────────────


def cut_polytope(g: Graph) -> VPolytope:
    """Vertices are the 0/1 edge-crossing vectors of all vertex bipartitions."""
    if g.m < 1:
        raise PolytopeError("graph must have at least one edge")
    if g.n > CUT_POLYTOPE_VERTEX_BUDGET:
        raise PolytopeError(
            f"n={g.n} exceeds the {CUT_POLYTOPE_VERTEX_BUDGET}-vertex budget"
        )
    seen = []
    have = set()
    for p in all_partitions(g.n):
        v = cut_vector(g, p)
        if v not in have:
            have.add(v)
            seen.append(v)
    return VPolytope(seen)


def dimension(p: VPolytope) -> int:
    """Affine dimension, by exact integer rank of vertex differences."""
    v0 = p.vertices[0]
    diffs = [
        [x - y for x, y in zip(v, v0)] for v in p.vertices[1:]
    ]
    if not diffs:
        return 0
    return intlinalg.rank(diffs)


# ── facet enumeration: double description on the polar cone ──────────────────


def _dd_extreme_rays(ineqs: list[tuple[int, ...]], dim: int) -> list[tuple[int, ...]]:
    """Extreme rays of the cone {y : a . y <= 0 for a in ineqs} in R^dim.

    Classic double-description: maintain (lineality basis, extreme rays)
    while adding one inequality at a time.  Adjacency of rays uses the
    combinatorial zero-set test.  The final cone must be pointed.
    """
    lineality: list[tuple[int, ...]] = [
        tuple(1 if i == k else 0 for i in range(dim)) for k in range(dim)
    ]
    rays: list[tuple[int, ...]] = []
    zsets: list[int] = []  # bitmask over inequality indices, parallel to rays

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    for idx, a in enumerate(ineqs):
        lvals = [dot(a, l) for l in lineality]
        pivot = next((k for k, v in enumerate(lvals) if v != 0), None)
        if pivot is not None:
            l0 = lineality[pivot]
            v0 = lvals[pivot]
            if v0 > 0:
                l0 = tuple(-x for x in l0)
                v0 = -v0
            new_lin = []
            for k, l in enumerate(lineality):
                if k == pivot:
                    continue
                vk = lvals[k]
                new_lin.append(
                    intlinalg.primitive(tuple(v0 * x - vk * y for x, y in zip(l, l0)))
                )
            lineality = new_lin
            new_rays = []
            new_zsets = []
            for r, z in zip(rays, zsets):
                vr = dot(a, r)
                shifted = tuple(-v0 * x + vr * y for x, y in zip(r, l0))
                new_rays.append(intlinalg.primitive(shifted))
                new_zsets.append(z | (1 << idx))
            new_rays.append(l0)
            new_zsets.append((1 << idx) - 1)  # tight on every earlier inequality
            rays = new_rays
            zsets = new_zsets
            continue
        vals = [dot(a, r) for r in rays]
        if all(v <= 0 for v in vals):
            for k, v in enumerate(vals):
                if v == 0:
                    zsets[k] |= 1 << idx
            continue
        neg = [k for k, v in enumerate(vals) if v < 0]
        zero = [k for k, v in enumerate(vals) if v == 0]
        pos = [k for k, v in enumerate(vals) if v > 0]
        keep_rays = [rays[k] for k in neg + zero]
        keep_zsets = [
            zsets[k] | (0 if k in neg else 1 << idx) for k in neg + zero
        ]
        for kp in pos:
            for kn in neg:
                meet = zsets[kp] & zsets[kn]
                if any(
                    k not in (kp, kn) and (meet & ~zsets[k]) == 0
                    for k in range(len(rays))
                ):
                    continue
                combo = tuple(
                    -vals[kn] * x + vals[kp] * y
                    for x, y in zip(rays[kp], rays[kn])
                )
                keep_rays.append(intlinalg.primitive(combo))
                keep_zsets.append(meet | (1 << idx))
        rays = keep_rays
        zsets = keep_zsets
    if lineality:
        raise PolytopeError("cone is not pointed (input not full-dimensional)")
    return rays


def _pivot_coordinates(p: VPolytope) -> list[int]:
    """Coordinate subset J with projection to J bijective on the affine hull."""
    v0 = p.vertices[0]
    cols = [
        [v[i] - v0[i] for v in p.vertices[1:]] for i in range(p.ambient_dim)
    ]
    if not p.vertices[1:]:
        return []
    echelon, _, rank = intlinalg.column_echelon_transform(cols)
    pivots = []
    row = 0
    for j in range(rank):
        while row < len(echelon) and echelon[row][j] == 0:
            row += 1
        pivots.append(row)
        row += 1
    return pivots


def facets(p: VPolytope) -> HPolytope:
    """Irredundant facet list by exact double description over the rationals.

    For a lower-dimensional polytope the normals live on a pivot
    coordinate subset of the affine hull (zeros elsewhere).
    """
    d = dimension(p)
    if d > HULL_DIM_BUDGET:
        raise BudgetError(f"facet enumeration limited to dimension {HULL_DIM_BUDGET}")
    if d == 0:
        return HPolytope((), p.ambient_dim)
    piv = _pivot_coordinates(p)
    proj = [tuple(v[j] for j in piv) for v in p.vertices]
    # polar-cone inequalities: for y = (y0, a), require a . w - y0 <= 0
    ineqs = [tuple([-1] + list(w)) for w in proj]
    rays = _dd_extreme_rays(ineqs, d + 1)
    out = []
    for ray in rays:
        offset, normal = ray[0], ray[1:]
        full = [0] * p.ambient_dim
        for j, a in zip(piv, normal):
            full[j] = a
        out.append(Facet(tuple(full), offset))
    out.sort(key=lambda f: (f.normal, f.offset))
    return HPolytope(out, p.ambient_dim)


def facets_brute(p: VPolytope) -> HPolytope:
    """Oracle facet enumeration: scan all d-subsets of vertices for
    supporting hyperplanes.  Exponential; limited to dimension 7."""
    d = dimension(p)
    if d > BRUTE_FACET_DIM_BUDGET:
        raise BudgetError(
            f"brute facet enumeration limited to dimension {BRUTE_FACET_DIM_BUDGET}"
        )
    if d == 0:
        return HPolytope((), p.ambient_dim)
    piv = _pivot_coordinates(p)
    proj = [tuple(v[j] for j in piv) for v in p.vertices]
    found = set()
    for subset in itertools.combinations(range(len(proj)), d):
        rows = [list(proj[i]) + [-1] for i in subset]
        kern = intlinalg.kernel_basis(rows)
        if len(kern) != 1:
            continue
        normal, offset = kern[0][:-1], kern[0][-1]
        vals = [
            sum(a * x for a, x in zip(normal, w)) - offset for w in proj
        ]
        if all(v <= 0 for v in vals):
            found.add((normal, offset))
        elif all(v >= 0 for v in vals):
            found.add((tuple(-a for a in normal), -offset))
    out = []
    for normal, offset in sorted(found):
        full = [0] * p.ambient_dim
        for j, a in zip(piv, normal):
            full[j] = a
        out.append(Facet(tuple(full), offset))
    out.sort(key=lambda f: (f.normal, f.offset))
    return HPolytope(out, p.ambient_dim)


def incident_vertices(p: VPolytope, f: Facet) -> list[int]:
    return [k for k, v in enumerate(p.vertices) if f.value(v) == f.offset]


# ── pulling triangulation and volume ─────────────────────────────────────────


def _affine_rank(points: Sequence[Sequence[int]]) -> int:
    base = points[0]
    diffs = [[x - y for x, y in zip(q, base)] for q in points[1:]]
    if not diffs:
        return 0
    return intlinalg.rank(diffs)


def _lattice_embed(p: VPolytope) -> VPolytope:
    """Rewrite the vertices in a basis of the lattice their differences span.

    The image is full-dimensional and its reference lattice is exactly
    Z^dim, so determinant-based notions (volume, unimodularity, width,
    smoothness) are measured in the polytope's own affine lattice.
    Vertex order is preserved, so face structure and vertex indices agree
    with the source polytope.
    """
    ws, _, _ = _column_lattice_coords([tuple(v) for v in p.vertices])
    return VPolytope(ws)


def _pull_simplices(
    emb: VPolytope, order: Sequence[int]
) -> tuple[tuple[int, ...], ...]:
    rank_in_order = {v: k for k, v in enumerate(order)}
    memo: dict[frozenset, list[tuple[int, ...]]] = {}

    def tri(face: frozenset) -> list[tuple[int, ...]]:
        got = memo.get(face)
        if got is not None:
            return got
        verts = sorted(face)
        pts = [emb.vertices[k] for k in verts]
        fdim = _affine_rank(pts)
        if len(verts) == fdim + 1:
            memo[face] = [tuple(verts)]
            return memo[face]
        sub = VPolytope(pts)
        w = min(verts, key=lambda v: rank_in_order[v])
        simplices: list[tuple[int, ...]] = []
        for facet in facets(sub).facets:
            tight = [
                verts[k]
                for k in range(len(verts))
                if facet.value(sub.vertices[k]) == facet.offset
            ]
            if w in tight:
                continue
            for s in tri(frozenset(tight)):
                simplices.append(tuple(sorted(s + (w,))))
        memo[face] = simplices
        return simplices

    return tuple(sorted(tri(frozenset(range(len(emb.vertices))))))


def pulling_triangulation(
    p: VPolytope, vertex_order: Optional[Sequence[int]] = None
) -> Triangulation:
    """Recursive pulling triangulation.

    Each face is triangulated by coning its first vertex (in
    ``vertex_order``) over the triangulations of the face's facets that
    miss that vertex.  Exact, order-deterministic, no perturbation.
    """
    if dimension(p) > HULL_DIM_BUDGET:
        raise BudgetError(f"triangulation limited to dimension {HULL_DIM_BUDGET}")
    order = list(vertex_order) if vertex_order is not None else list(range(len(p)))
    if sorted(order) != list(range(len(p.vertices))):
        raise PolytopeError("vertex_order must be a permutation of vertex indices")
    top = _pull_simplices(_lattice_embed(p), order)
    return Triangulation(top, method=f"pulling:{order}")


def _simplex_volume_in(emb: VPolytope, simplex: Sequence[int]) -> int:
    base = emb.vertices[simplex[0]]
    mat = [
        [emb.vertices[k][i] - base[i] for i in range(emb.ambient_dim)]
        for k in simplex[1:]
    ]
    return abs(intlinalg.det_bareiss(mat))


def is_unimodular(t: Triangulation, p: VPolytope) -> bool:
    """True iff every simplex has determinant +-1 in the affine lattice
    spanned by the polytope's vertex differences."""
    emb = _lattice_embed(p)
    return all(_simplex_volume_in(emb, s) == 1 for s in t.simplices)


def normalized_volume(
    p: VPolytope, vertex_order: Optional[Sequence[int]] = None
) -> int:
    """Volume normalized so the unimodular simplex has volume 1 (= dim!
    times Euclidean volume), in the affine lattice spanned by vertex
    differences."""
    if dimension(p) > HULL_DIM_BUDGET:
        raise BudgetError(f"volume limited to dimension {HULL_DIM_BUDGET}")
    order = list(vertex_order) if vertex_order is not None else list(range(len(p)))
    if sorted(order) != list(range(len(p.vertices))):
        raise PolytopeError("vertex_order must be a permutation of vertex indices")
    emb = _lattice_embed(p)
    return sum(_simplex_volume_in(emb, s) for s in _pull_simplices(emb, order))


# ── compressedness, simplicity, smoothness ───────────────────────────────────


def is_compressed(p: VPolytope) -> bool:
    """True iff every facet has lattice width one: all vertices lie on the
    facet level or one level below it, in the polytope's affine lattice."""
    emb = _lattice_embed(p)
    for f in facets(emb).facets:
        for v in emb.vertices:
            if f.value(v) not in (f.offset, f.offset - 1):
                return False
    return True


def _vertex_facet_incidence(p: VPolytope, hp: HPolytope) -> list[list[int]]:
    out = []
    for v in p.vertices:
        out.append([k for k, f in enumerate(hp.facets) if f.value(v) == f.offset])
    return out


def is_simple(p: VPolytope) -> bool:
    """True iff every vertex lies on exactly dim facets."""
    emb = _lattice_embed(p)
    hp = facets(emb)
    return all(
        len(rows) == emb.ambient_dim for rows in _vertex_facet_incidence(emb, hp)
    )


def _edges_at_vertex(
    emb: VPolytope, incidence: list[list[int]], hp: HPolytope, k: int
) -> list[int]:
    """Indices of vertices joined to vertex k by an edge of the polytope."""
    d = emb.ambient_dim
    mine = set(incidence[k])
    out = []
    for j in range(len(emb.vertices)):
        if j == k:
            continue
        common = [hp.facets[i].normal for i in incidence[j] if i in mine]
        if len(common) < d - 1:
            continue
        if intlinalg.rank([list(n) for n in common]) == d - 1:
            out.append(j)
    return out


def is_smooth(p: VPolytope) -> bool:
    """Simple, and at each vertex the primitive edge directions form a
    basis of the polytope's affine lattice."""
    emb = _lattice_embed(p)
    d = emb.ambient_dim
    if d == 0:
        return True
    hp = facets(emb)
    incidence = _vertex_facet_incidence(emb, hp)
    for k, v in enumerate(emb.vertices):
        nbrs = _edges_at_vertex(emb, incidence, hp, k)
        if len(nbrs) != d:
            return False
        dirs = [
            intlinalg.primitive(tuple(x - y for x, y in zip(emb.vertices[j], v)))
            for j in nbrs
        ]
        if abs(intlinalg.det_bareiss([list(r) for r in dirs])) != 1:
            return False
    return True


# ── normality gaps of the column semigroup ───────────────────────────────────


@dataclass(frozen=True)
class GapPoint:
    """Lattice point in the dilated column polytope that is not a sum of
    ``height`` generators."""

    height: int
    point: tuple[int, ...]


def _column_lattice_coords(cols: list[tuple[int, ...]]):
    """Express columns in a basis of their difference lattice.

    Returns (w-vectors, basis matrix B, base column c0): every column
    satisfies c_i = c0 + B @ w_i with w_i integral, and the difference
    lattice is exactly B @ Z^d.
    """
    c0 = cols[0]
    nrows = len(c0)
    diff_cols = [[c[i] - c0[i] for i in range(nrows)] for c in cols[1:]]
    mat = [[col[i] for col in diff_cols] for i in range(nrows)]
    echelon, _, rank = intlinalg.column_echelon_transform(mat)
    basis = [
        tuple(echelon[i][j] for i in range(nrows)) for j in range(rank)
    ]
    pivots = []
    row = 0
    for j in range(rank):
        while echelon[row][j] == 0:
            row += 1
        pivots.append(row)
        row += 1
    ws = []
    for c in cols:
        target = [c[i] - c0[i] for i in range(nrows)]
        w = [0] * rank
        for j in range(rank):
            r = pivots[j]
            num = target[r]
            den = basis[j][r]
            if num % den != 0:
                raise PolytopeError("column does not lie in the lattice")
            w[j] = num // den
            for i in range(nrows):
                target[i] -= w[j] * basis[j][i]
        if any(x != 0 for x in target):
            raise PolytopeError("column does not lie in the lattice")
        ws.append(tuple(w))
    return ws, basis, c0


def _void_view(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr)
    return arr.view([("", arr.dtype)] * arr.shape[1]).ravel()


def _complement_row_pairs(rows: list[tuple[int, ...]]) -> Optional[list[tuple[int, int]]]:
    """Perfect matching of rows into pairs summing to the all-ones row,
    or None if no such matching exists."""
    unpaired = list(range(len(rows)))
    pairs = []
    while unpaired:
        i = unpaired.pop(0)
        mate = None
        for j in unpaired:
            if all(a + b == 1 for a, b in zip(rows[i], rows[j])):
                mate = j
                break
        if mate is None:
            return None
        unpaired.remove(mate)
        pairs.append((i, mate))
    return pairs


def _facet_closing_order(normals: np.ndarray) -> np.ndarray:
    """Coordinate order for the prefix sweep that completes facet supports
    as early as possible, so interval pruning activates sooner."""
    supports = [frozenset(np.flatnonzero(row).tolist()) for row in normals]
    k = normals.shape[1]
    fixed: set[int] = set()
    order = []
    remaining = set(range(k))
    while remaining:
        best = None
        for c in sorted(remaining):
            closes = sum(1 for s in supports if c in s and s <= fixed | {c})
            touches = sum(1 for s in supports if c in s and not s <= fixed)
            key = (closes, touches, -c)
            if best is None or key > best[0]:
                best = (key, c)
        order.append(best[1])
        fixed.add(best[1])
        remaining.discard(best[1])
    return np.array(order, dtype=np.intp)


def _parity_forms(
    basis: list[tuple[int, ...]], perm: Optional[np.ndarray] = None
) -> list[tuple[int, ...]]:
    """0/1 functionals vanishing mod 2 on the lattice spanned by ``basis``:
    an independent basis of the mod-2 dual code whose supports complete as
    early as possible in the sweep order ``perm`` (then lightest first).
    Sound for any lattice; complete exactly when every elementary divisor
    is 1 or 2."""
    k = len(basis[0])
    rows = [[v % 2 for v in b] for b in basis]
    # row-reduce over GF(2)
    pivot_of: dict[int, list[int]] = {}
    for row in rows:
        row = row[:]
        for c, prow in pivot_of.items():
            if row[c]:
                row = [a ^ b for a, b in zip(row, prow)]
        lead = next((c for c, v in enumerate(row) if v), None)
        if lead is not None:
            pivot_of[lead] = row
    # back-substitute to reduced form
    for c in list(pivot_of):
        row = pivot_of[c]
        for c2, prow in pivot_of.items():
            if c2 != c and row[c2]:
                row = [a ^ b for a, b in zip(row, prow)]
        pivot_of[c] = row
    free = [c for c in range(k) if c not in pivot_of]
    kernel = []
    for f in free:
        u = [0] * k
        u[f] = 1
        for c, prow in pivot_of.items():
            u[c] = prow[f]
        kernel.append(u)
    if not kernel:
        return []
    # all combinations, lightest first, greedily kept while independent
    combos = set()
    for bits in range(1, 1 << len(kernel)):
        u = [0] * k
        for i in range(len(kernel)):
            if bits >> i & 1:
                u = [a ^ b for a, b in zip(u, kernel[i])]
        combos.add(tuple(u))
    position = list(range(k)) if perm is None else np.argsort(perm).tolist()

    def key(u):
        activation = max(position[i] for i, v in enumerate(u) if v)
        return (activation, sum(u), u)

    chosen: list[tuple[int, ...]] = []
    span = {tuple([0] * k)}
    for u in sorted(combos, key=key):
        if u in span:
            continue
        chosen.append(u)
        span |= {tuple(a ^ b for a, b in zip(u, w)) for w in span}
        if len(chosen) == len(kernel):
            break
    return chosen


def _lattice_member_mask(
    diffs: np.ndarray, basis: list[tuple[int, ...]], pivots: list[int]
) -> np.ndarray:
    """Boolean mask of rows of ``diffs`` lying in the lattice spanned by
    ``basis`` (column-echelon vectors with the given pivot rows)."""
    y = diffs.astype(np.int64).copy()
    ok = np.ones(y.shape[0], dtype=bool)
    for j, piv in enumerate(pivots):
        den = basis[j][piv]
        q, r = np.divmod(y[:, piv], den)
        ok &= r == 0
        y -= q[:, None] * np.array(basis[j], dtype=np.int64)[None, :]
    ok &= np.all(y == 0, axis=1)
    return ok


def _enumerate_dilate(
    wverts: np.ndarray,
    hp_normals: np.ndarray,
    hp_offsets: np.ndarray,
    h: int,
    perm: Optional[np.ndarray] = None,
    congruences: Optional[tuple[np.ndarray, np.ndarray, np.ndarray]] = None,
) -> np.ndarray:
    """Integer points of the h-th dilate of conv(wverts), by a prefix sweep
    with per-facet interval pruning.

    Coordinates are processed narrow-span-first (or in the caller's
    ``perm`` order) and each extension step is chunked, so peak memory
    stays proportional to the surviving prefix count rather than to the
    raw box size.  ``congruences`` = (rows, moduli, targets) prunes
    prefixes violating ``rows @ x ≡ targets (mod moduli)`` as soon as a
    row's support is completely inside the prefix.
    """
    d = wverts.shape[1]
    if perm is None:
        spans = wverts.max(axis=0) - wverts.min(axis=0)
        perm = np.argsort(spans, kind="stable")
    V = wverts[:, perm]
    A = hp_normals[:, perm]
    offsets = hp_offsets
    lows = V.min(axis=0) * h
    highs = V.max(axis=0) * h
    nfac = A.shape[0]
    level_forms: list[list[tuple[np.ndarray, int, int]]] = [[] for _ in range(d)]
    if congruences is not None:
        crows, cmods, ctargets = congruences
        cperm = crows[:, perm]
        for i in range(cperm.shape[0]):
            support = np.flatnonzero(cperm[i])
            if support.size:
                level_forms[int(support.max())].append(
                    (cperm[i], int(cmods[i]), int(ctargets[i]))
                )
    # tail_min[k][f] = least possible contribution of coordinates >= k
    tail_min = np.zeros((d + 1, nfac), dtype=np.int64)
    for k in range(d - 1, -1, -1):
        a = A[:, k]
        tail_min[k] = tail_min[k + 1] + np.minimum(a * lows[k], a * highs[k])
    prefixes = np.zeros((1, 0), dtype=np.int64)
    for k in range(d):
        vals = np.arange(int(lows[k]), int(highs[k]) + 1, dtype=np.int64)
        span = len(vals)
        chunk = max(1, 4_000_000 // (span * (k + 1 + nfac)))
        head = A[:, : k + 1].T
        bound = h * offsets[None, :] - tail_min[k + 1][None, :]
        forms = level_forms[k]
        survivors = []
        total = 0
        for start in range(0, prefixes.shape[0], chunk):
            block = prefixes[start : start + chunk]
            n = block.shape[0]
            ext = np.concatenate(
                [
                    np.repeat(block, span, axis=0),
                    np.tile(vals, n).reshape(-1, 1),
                ],
                axis=1,
            )
            keep = np.all(ext @ head <= bound, axis=1)
            for row, mod, target in forms:
                keep &= (ext @ row[: k + 1]) % mod == target
            kept = ext[keep]
            total += kept.shape[0]
            if total * (k + 1) > ENUMERATION_ROW_BUDGET:
                raise BudgetError(
                    f"dilate enumeration exceeded {ENUMERATION_ROW_BUDGET} cells"
                )
            survivors.append(kept)
        prefixes = (
            np.concatenate(survivors)
            if survivors
            else np.zeros((0, k + 1), dtype=np.int64)
        )
    inv = np.argsort(perm)
    return prefixes[:, inv]


def _sumset_step(current: np.ndarray, wverts: np.ndarray) -> np.ndarray:
    """One Minkowski step: deduplicated sums of every row of ``current``
    with every row of ``wverts``, grouped to bound transient memory."""
    group = 4
    if current.shape[0] * (group + 1) > ENUMERATION_ROW_BUDGET:
        raise BudgetError("sumset enumeration exceeded the row budget")
    merged = None
    for start in range(0, wverts.shape[0], group):
        pieces = [current + w[None, :] for w in wverts[start : start + group]]
        if merged is not None:
            pieces.append(merged)
        merged = np.unique(np.concatenate(pieces, axis=0), axis=0)
    return merged


def normality_gaps(A, max_height: Optional[int] = None) -> list[GapPoint]:
    """Lattice points of dilates of the column polytope that are not sums
    of generators, for heights 2..max_height.

    An empty list certifies "no gaps up to max_height" — never full
    normality.  Default max_height is dim - 1, which suffices to decide
    normality for lattice polytopes of this kind.
    """
    cols = [tuple(c) for c in (A.columns() if hasattr(A, "columns") else
                               [tuple(r[j] for r in A) for j in range(len(A[0]))])]
    if len({sum(c) for c in cols}) > 1:
        raise PolytopeError("columns must share one total degree")
    ws, basis, c0 = _column_lattice_coords(cols)
    d = len(ws[0]) if ws else 0
    if d == 0:
        return []
    if max_height is None:
        max_height = max(2, d - 1)
    if max_height < 2:
        raise PolytopeError("max_height must be >= 2")
    nrows = len(cols[0])
    rows = [tuple(c[i] for c in cols) for i in range(nrows)]
    pairs = _complement_row_pairs(rows)
    if pairs is not None:
        xcols = sorted({tuple(c[i] for i, _ in pairs) for c in cols})
        if _affine_rank(xcols) == len(pairs):
            return _gaps_paired(nrows, pairs, xcols, max_height)
    return _gaps_generic(ws, basis, c0, max_height)


def _gaps_paired(
    nrows: int,
    pairs: list[tuple[int, int]],
    xcols: list[tuple[int, ...]],
    max_height: int,
) -> list[GapPoint]:
    """Gap sweep in the paired-coordinate projection, which drops one
    coordinate per complementary row pair.  There the facet normals stay
    sparse, so the prefix sweep prunes much earlier than in a generic
    lattice embedding; membership in the column lattice is restored by an
    explicit filter at the end."""
    hp = facets(VPolytope(xcols))
    normals = np.array([f.normal for f in hp.facets], dtype=np.int64)
    offsets = np.array([f.offset for f in hp.facets], dtype=np.int64)
    perm = _facet_closing_order(normals)
    _, xbasis, xc0 = _column_lattice_coords(xcols)
    pivots = [next(i for i, v in enumerate(b) if v != 0) for b in xbasis]
    forms = _parity_forms(xbasis, perm)
    if forms:
        frows = np.array(forms, dtype=np.int64)
        fmods = np.full(len(forms), 2, dtype=np.int64)
        fbase = np.array(
            [sum(u[i] * xc0[i] for i in range(len(u))) for u in forms],
            dtype=np.int64,
        )
    xverts = np.array(xcols, dtype=np.int64)
    x0 = np.array(xc0, dtype=np.int64)
    bound = int(np.abs(xverts).max()) * max_height + 1
    small = np.int16 if bound < 30_000 else np.int64
    xverts_small = xverts.astype(small)
    gaps: list[GapPoint] = []
    reach = np.unique(xverts_small, axis=0)
    for h in range(2, max_height + 1):
        congr = (frows, fmods, (h * fbase) % 2) if forms else None
        try:
            reach = _sumset_step(reach, xverts_small)
            points = _enumerate_dilate(
                xverts, normals, offsets, h, perm=perm, congruences=congr
            )
        except BudgetError as exc:
            raise BudgetError(f"height {h}: {exc}") from None
        points = points[_lattice_member_mask(points - h * x0, xbasis, pivots)]
        hit = np.isin(_void_view(points.astype(small)), _void_view(reach))
        for row in points[~hit]:
            z = [0] * nrows
            for p, (i, j) in enumerate(pairs):
                z[i] = int(row[p])
                z[j] = h - int(row[p])
            gaps.append(GapPoint(h, tuple(z)))
    return gaps


def _gaps_generic(
    ws: list[tuple[int, ...]],
    basis: list[tuple[int, ...]],
    c0: tuple[int, ...],
    max_height: int,
) -> list[GapPoint]:
    """Gap sweep in a basis of the column difference lattice, where every
    integer point is a lattice member by construction."""
    wpoly = VPolytope(sorted(set(ws)))
    hp = facets(wpoly)
    wverts = np.array(sorted(set(ws)), dtype=np.int64)
    normals = np.array([f.normal for f in hp.facets], dtype=np.int64)
    offsets = np.array([f.offset for f in hp.facets], dtype=np.int64)
    gaps: list[GapPoint] = []
    reach = np.unique(wverts, axis=0)
    for h in range(2, max_height + 1):
        try:
            reach = _sumset_step(reach, wverts)
            points = _enumerate_dilate(wverts, normals, offsets, h)
        except BudgetError as exc:
            raise BudgetError(f"height {h}: {exc}") from None
        missing = points[
            ~np.isin(_void_view(points), _void_view(reach))
        ]
        for row in missing:
            z = [h * x for x in c0]
            for j, wj in enumerate(row.tolist()):
                for i in range(len(z)):
                    z[i] += wj * basis[j][i]
            gaps.append(GapPoint(h, tuple(z)))
    return gaps


# ── faces from graph operations ──────────────────────────────────────────────


@dataclass(frozen=True)
class FaceCertificate:
    """A face of the big cut polytope isomorphic to the small one.

    ``zero_edges`` are edges of ``g`` whose coordinates are pinned to 0;
    ``vertex_map`` sends each partition of the small graph to the cut
    vector of ``g`` representing it on the face.
    """

    zero_edges: tuple[tuple[int, int], ...]
    vertex_map: dict


def face_restriction(g: Graph, h: Graph, kind: str) -> FaceCertificate:
    """Certificate that the small graph's cut polytope is a face of ``g``'s.

    kind = "contraction": ``h`` must equal ``g`` with one edge contracted;
    kind = "induced": ``h`` must equal an induced subgraph of ``g``.
    """
    if kind not in ("contraction", "induced"):
        raise PolytopeError(f"unknown kind {kind!r}")
    if g == h:
        vmap = {p: cut_vector(g, p) for p in all_partitions(g.n)}
        return FaceCertificate((), vmap)
    if kind == "contraction":
        for e in g.edges:
            if contract_edge(g, e) == h:
                return _contraction_face(g, h, e)
        raise PolytopeError("h is not a single edge contraction of g")
    for keep in itertools.combinations(g.vertices(), h.n):
        if induced_subgraph(g, keep) == h:
            return _induced_face(g, h, keep)
    raise PolytopeError("h is not an induced subgraph of g")


def _contraction_face(g: Graph, h: Graph, e: tuple[int, int]) -> FaceCertificate:
    i, j = min(e), max(e)
    # labels of g collapse onto h exactly as contract_edge does
    relabel = {}
    for v in g.vertices():
        relabel[v] = i if v == j else (v if v < j else v - 1)
    vmap = {}
    for p in all_partitions(h.n):
        block = tuple(v for v in g.vertices() if relabel[v] in p.blockA)
        vmap[p] = cut_vector(g, Partition(g.n, block))
    _check_face(g, ((i, j),), vmap)
    return FaceCertificate(((i, j),), vmap)


def _induced_face(g: Graph, h: Graph, keep: tuple[int, ...]) -> FaceCertificate:
    keep_set = set(keep)
    outside = [v for v in g.vertices() if v not in keep_set]
    zero = [e for e in g.edges if e[0] not in keep_set and e[1] not in keep_set]
    # glue every component of the removed part to one kept vertex
    sub = induced_subgraph(g, outside) if outside else None
    anchors = {}
    if sub is not None:
        for comp in sub.components():
            comp_orig = {outside[v - 1] for v in comp}
            link = sorted(
                e for e in g.edges
                if (e[0] in comp_orig) != (e[1] in comp_orig)
                and (e[0] in keep_set or e[1] in keep_set)
            )
            if link:
                zero.append(link[0])
                a, b = link[0]
                inside, out_v = (a, b) if a in keep_set else (b, a)
                for v in comp_orig:
                    anchors[v] = inside
    back = {i + 1: v for i, v in enumerate(sorted(keep))}
    vmap = {}
    for p in all_partitions(h.n):
        block = {back[v] for v in p.blockA}
        for v, anchor in anchors.items():
            if anchor in block:
                block.add(v)
        vmap[p] = cut_vector(g, Partition(g.n, tuple(sorted(block))))
    _check_face(g, tuple(sorted(set(zero))), vmap)
    return FaceCertificate(tuple(sorted(set(zero))), vmap)


def _check_face(g: Graph, zero_edges: tuple[tuple[int, int], ...], vmap: dict):
    """The mapped vertices must be exactly the cut vectors vanishing on
    the pinned edges."""
    positions = [g.edges.index(e) for e in zero_edges]
    image = set(vmap.values())
    if len(image) != len(vmap):
        raise PolytopeError("face map is not injective")
    selected = {
        v
        for v in {cut_vector(g, p) for p in all_partitions(g.n)}
        if all(v[k] == 0 for k in positions)
    }
    if image != selected:
        raise PolytopeError("face map does not match the selected face")


# ── export helpers ───────────────────────────────────────────────────────────


def vertex_csv(p: VPolytope) -> str:
    lines = [",".join(f"x{i+1}" for i in range(p.ambient_dim))]
    for v in p.vertices:
        lines.append(",".join(str(x) for x in v))
    return "\n".join(lines) + "\n"


def facet_lines(hp: HPolytope) -> str:
    lines = []
    for f in hp.facets:
        lines.append(" ".join(str(a) for a in f.normal) + f" <= {f.offset}")
    return "\n".join(lines) + "\n"


def report(p: VPolytope, gaps_checked_to: Optional[int] = None,
           gaps: Optional[list] = None) -> dict:
    hp = facets(p)
    out = {
        "dim": dimension(p),
        "nVertices": len(p.vertices),
        "nFacets": len(hp.facets),
        "volume": normalized_volume(p),
        "simple": is_simple(p),
        "smooth": is_smooth(p),
        "compressed": is_compressed(p),
    }
    if gaps_checked_to is not None:
        out["gapsUpTo"] = {
            "maxHeight": gaps_checked_to,
            "gaps": [
                {"height": gp.height, "point": list(gp.point)}
                for gp in (gaps or [])
            ],
        }
    return out
