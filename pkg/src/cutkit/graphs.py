"""Simple undirected graphs on vertex set {1..n}, with the operations the
rest of the toolkit needs: named constructors, minor testing, series-parallel
recognition, induced-cycle bounds, and clique-sum decomposition.

Vertices are always the integers ``1..n``; edges are stored as a
lexicographically sorted tuple of ``(i, j)`` pairs with ``i < j``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

MINOR_VERTEX_BUDGET = 8
INDUCED_CYCLE_VERTEX_BUDGET = 10


class GraphError(ValueError):
    pass


class BudgetError(RuntimeError):
    """A documented resource budget was exceeded."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("graph needs at least one vertex")
        norm = []
        for e in self.edges:
            if len(e) != 2:
                raise GraphError(f"bad edge {e!r}")
            i, j = e
            if i == j:
                raise GraphError(f"loop at vertex {i}")
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise GraphError(f"edge {e!r} out of range 1..{self.n}")
            norm.append((min(i, j), max(i, j)))
        if len(set(norm)) != len(norm):
            raise GraphError("duplicate edge")
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def m(self) -> int:
        return len(self.edges)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.vertices()}
        for i, j in self.edges:
            adj[i].add(j)
            adj[j].add(i)
        return adj

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in set(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def is_connected(self) -> bool:
        if self.n == 1:
            return True
        adj = self.adjacency()
        seen = {1}
        stack = [1]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def components(self) -> list[frozenset[int]]:
        adj = self.adjacency()
        remaining = set(self.vertices())
        comps = []
        while remaining:
            start = min(remaining)
            seen = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if w not in seen:
                        seen.add(w)
                        stack.append(w)
            comps.append(frozenset(seen))
            remaining -= seen
        return comps

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = sorted(set(vs))
        eset = set(self.edges)
        return all((a, b) in eset for a, b in itertools.combinations(vs, 2))

    def __str__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"


# ---------------------------------------------------------------------------
# named constructors


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(1, n + 1), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise GraphError("cycle needs >= 3 vertices")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return Graph(n, tuple(edges))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(1, n)))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Complete multipartite graph; block b occupies the next ``sizes[b]`` labels."""
    blocks = []
    start = 1
    for s in sizes:
        blocks.append(list(range(start, start + s)))
        start += s
    n = start - 1
    edges = []
    for a, b in itertools.combinations(range(len(blocks)), 2):
        for i in blocks[a]:
            for j in blocks[b]:
                edges.append((i, j))
    return Graph(n, tuple(edges))


def prism_graph() -> Graph:
    """Triangular prism: triangles 123 and 456 joined by the matching 14, 25, 36."""
    return Graph(6, ((1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (1, 4), (2, 5), (3, 6)))


def suspend(g: Graph) -> Graph:
    """Add a new vertex n+1 adjacent to every existing vertex."""
    apex = g.n + 1
    return Graph(apex, g.edges + tuple((v, apex) for v in g.vertices()))


def delete_edge(g: Graph, e: tuple[int, int]) -> Graph:
    e = (min(e), max(e))
    if e not in g.edges:
        raise GraphError(f"no edge {e}")
    return Graph(g.n, tuple(x for x in g.edges if x != e))


def contract_edge(g: Graph, e: tuple[int, int]) -> Graph:
    """Contract edge e = {i, j}: j is merged into i, labels close up in order."""
    i, j = min(e), max(e)
    if (i, j) not in g.edges:
        raise GraphError(f"no edge {(i, j)}")
    relabel = {}
    for v in g.vertices():
        if v == j:
            relabel[v] = i
        else:
            relabel[v] = v if v < j else v - 1
    relabel[j] = relabel[i]
    edges = set()
    for a, b in g.edges:
        x, y = relabel[a], relabel[b]
        if x != y:
            edges.add((min(x, y), max(x, y)))
    return Graph(g.n - 1, tuple(sorted(edges)))


def induced_subgraph(g: Graph, vs: Iterable[int]) -> Graph:
    """Induced subgraph on ``vs``, relabeled to 1..k preserving vertex order."""
    keep = sorted(set(vs))
    if not keep:
        raise GraphError("empty vertex set")
    if any(v < 1 or v > g.n for v in keep):
        raise GraphError("vertex out of range")
    relabel = {v: i + 1 for i, v in enumerate(keep)}
    edges = tuple(
        (relabel[a], relabel[b]) for a, b in g.edges if a in relabel and b in relabel
    )
    return Graph(len(keep), edges)


def delete_vertex(g: Graph, v: int) -> Graph:
    return induced_subgraph(g, [w for w in g.vertices() if w != v])


_NAME_RE = re.compile(r"^(K|C|path)(\d+(?:,\d+)*)$")


def make_named(spec: str) -> Graph:
    """Build a graph from a compact name.

    Grammar: ``K<n>``, ``C<n>``, ``K<a>,<b>``, ``K<a>,<b>,<c>``, ``prism``,
    ``path<n>``, ``suspend(<spec>)``, ``delete(<spec>, <i>-<j>)``.
    """
    s = spec.strip()
    if s == "prism":
        return prism_graph()
    if s.startswith("suspend(") and s.endswith(")"):
        return suspend(make_named(s[len("suspend(") : -1]))
    if s.startswith("delete(") and s.endswith(")"):
        inner = s[len("delete(") : -1]
        base, _, edgespec = inner.rpartition(",")
        mpair = re.match(r"^\s*(\d+)-(\d+)\s*$", edgespec)
        if not base or not mpair:
            raise GraphError(f"cannot parse {spec!r}")
        return delete_edge(make_named(base), (int(mpair.group(1)), int(mpair.group(2))))
    m = _NAME_RE.match(s)
    if not m:
        raise GraphError(f"cannot parse graph name {spec!r}")
    kind, nums = m.group(1), [int(x) for x in m.group(2).split(",")]
    if kind == "K" and len(nums) == 1:
        return complete_graph(nums[0])
    if kind == "K" and len(nums) in (2, 3):
        return complete_multipartite(nums)
    if kind == "C" and len(nums) == 1:
        return cycle_graph(nums[0])
    if kind == "path" and len(nums) == 1:
        return path_graph(nums[0])
    raise GraphError(f"cannot parse graph name {spec!r}")


# ---------------------------------------------------------------------------
# file format


def graph_to_text(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{i} {j}" for i, j in g.edges]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if parts[0] != "n" or len(parts) != 2:
                raise GraphError(f"first line must be 'n <count>', got {raw!r}")
            n = int(parts[1])
        else:
            if len(parts) != 2:
                raise GraphError(f"bad edge line {raw!r}")
            edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise GraphError("empty graph file")
    return Graph(n, tuple(edges))


# ---------------------------------------------------------------------------
# cuts


def cut_edge_set(g: Graph, block: Iterable[int]) -> tuple[tuple[int, int], ...]:
    """Edges of g with exactly one endpoint in ``block``."""
    b = set(block)
    return tuple(e for e in g.edges if (e[0] in b) != (e[1] in b))


# ---------------------------------------------------------------------------
# isomorphism-invariant canonical form (small graphs only)


def canonical_form(g: Graph) -> tuple[int, frozenset[tuple[int, int]]]:
    """Canonical representative of the isomorphism class (brute force, n <= 8)."""
    if g.n > MINOR_VERTEX_BUDGET:
        raise BudgetError(f"canonical_form limited to {MINOR_VERTEX_BUDGET} vertices")
    best = None
    verts = list(g.vertices())
    for perm in itertools.permutations(verts):
        mapping = {v: perm[i] for i, v in enumerate(verts)}
        edges = frozenset(
            (min(mapping[a], mapping[b]), max(mapping[a], mapping[b])) for a, b in g.edges
        )
        key = tuple(sorted(edges))
        if best is None or key < best[0]:
            best = (key, edges)
    return (g.n, best[1] if best else frozenset())


def has_minor(g: Graph, h: Graph) -> bool:
    """True iff ``h`` is a minor of ``g``; both graphs limited to 8 vertices.

    Searches for a branch-set model: disjoint nonempty connected sets
    ``B_1..B_k`` in ``g``, one per vertex of ``h``, with an edge of ``g``
    between ``B_a`` and ``B_b`` for every edge ``ab`` of ``h``.
    """
    if g.n > MINOR_VERTEX_BUDGET or h.n > MINOR_VERTEX_BUDGET:
        raise BudgetError(f"has_minor limited to {MINOR_VERTEX_BUDGET} vertices")
    if h.n > g.n or h.m > g.m:
        return False
    gadj = [0] * (g.n + 1)
    for a, b in g.edges:
        gadj[a] |= 1 << b
        gadj[b] |= 1 << a
    k = h.n
    assign = [0] * (g.n + 1)  # 0 = unused, else the h-vertex this g-vertex models

    def connected(mask: int) -> bool:
        low = mask & -mask
        seen = low
        frontier = low
        while frontier:
            grow = 0
            m = frontier
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                grow |= gadj[v]
            frontier = grow & mask & ~seen
            seen |= frontier
        return seen == mask

    def complete() -> bool:
        sets = [0] * (k + 1)
        for v in range(1, g.n + 1):
            if assign[v]:
                sets[assign[v]] |= 1 << v
        if any(sets[c] == 0 for c in range(1, k + 1)):
            return False
        if any(not connected(sets[c]) for c in range(1, k + 1)):
            return False
        for a, b in h.edges:
            reach = 0
            m = sets[a]
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                reach |= gadj[v]
            if not (reach & sets[b]):
                return False
        return True

    def recurse(v: int, empties: int) -> bool:
        if empties > g.n - v + 1:
            return False
        if v > g.n:
            return complete()
        first = [True] * (k + 1)
        for w in range(1, v):
            if assign[w]:
                first[assign[w]] = False
        for c in range(k + 1):
            assign[v] = c
            if recurse(v + 1, empties - (1 if c and first[c] else 0)):
                return True
        assign[v] = 0
        return False

    return recurse(1, k)


# ---------------------------------------------------------------------------
# series-parallel recognition


def is_series_parallel(g: Graph) -> bool:
    """True iff every component reduces to a single edge or vertex under
    loop removal, pendant pruning, parallel-edge merging and degree-2
    smoothing.  Agrees with K4-minor-freeness.
    """
    return all(_component_sp(g, comp) for comp in g.components())


def _component_sp(g: Graph, comp: frozenset[int]) -> bool:
    # Multigraph as an edge multiset of frozensets; loops are dropped on sight.
    edges: list[frozenset[int]] = [
        frozenset(e) for e in g.edges if e[0] in comp and e[1] in comp
    ]
    verts = set(comp)
    changed = True
    while changed:
        changed = False
        # drop parallel duplicates
        uniq = []
        seen = set()
        for e in edges:
            if e not in seen:
                seen.add(e)
                uniq.append(e)
        if len(uniq) != len(edges):
            edges = uniq
            changed = True
        deg: dict[int, int] = {v: 0 for v in verts}
        for e in edges:
            for v in e:
                deg[v] += 1
        # prune isolated and pendant vertices
        low = next((v for v in sorted(verts) if deg[v] <= 1), None)
        if low is not None:
            verts.discard(low)
            edges = [e for e in edges if low not in e]
            changed = True
            continue
        # smooth a degree-2 vertex
        mid = next((v for v in sorted(verts) if deg[v] == 2), None)
        if mid is not None:
            inc = [e for e in edges if mid in e]
            ends = [next(iter(e - {mid})) for e in inc]
            edges = [e for e in edges if mid not in e]
            verts.discard(mid)
            if ends[0] != ends[1]:
                edges.append(frozenset(ends))
            changed = True
    return not edges


# ---------------------------------------------------------------------------
# induced cycles


def max_induced_cycle(g: Graph) -> int:
    """Length of the longest chordless cycle (0 if the graph is a forest).

    Exhaustive over vertex subsets; limited to 10 vertices.
    """
    if g.n > INDUCED_CYCLE_VERTEX_BUDGET:
        raise BudgetError(f"max_induced_cycle limited to {INDUCED_CYCLE_VERTEX_BUDGET} vertices")
    best = 0
    eset = set(g.edges)
    for size in range(3, g.n + 1):
        for sub in itertools.combinations(g.vertices(), size):
            inside = [e for e in eset if e[0] in sub and e[1] in sub]
            if len(inside) != size:
                continue
            degs = {v: 0 for v in sub}
            for a, b in inside:
                degs[a] += 1
                degs[b] += 1
            if any(d != 2 for d in degs.values()):
                continue
            if induced_subgraph(g, sub).is_connected():
                best = max(best, size)
    return best


# ---------------------------------------------------------------------------
# clique-sum decomposition


@dataclass(frozen=True)
class DecompositionPiece:
    graph: Graph
    original_vertices: tuple[int, ...]  # piece label v -> original_vertices[v-1]


@dataclass
class CliqueSumDecomposition:
    pieces: list[DecompositionPiece]
    separators: list[tuple[int, ...]]  # original labels, one per internal node
    tree: object  # nested tuples over piece indices: int | (left, right, sep_idx)

    def recombine(self) -> Graph:
        """Union of all pieces mapped back to original labels."""
        n = max(max(p.original_vertices) for p in self.pieces)
        edges = set()
        for p in self.pieces:
            for a, b in p.graph.edges:
                x = p.original_vertices[a - 1]
                y = p.original_vertices[b - 1]
                edges.add((min(x, y), max(x, y)))
        return Graph(n, tuple(sorted(edges)))


def clique_sum_decompose(g: Graph) -> CliqueSumDecomposition:
    """Recursively split ``g`` along clique separators of size <= 3.

    Smaller separators are preferred, and for a given separator size the
    smallest split-off piece is taken first.  Pieces are leaves with no
    clique separator of size <= 3.
    """
    pieces: list[DecompositionPiece] = []
    separators: list[tuple[int, ...]] = []

    def recurse(vert_labels: tuple[int, ...], graph: Graph):
        found = _best_clique_separator(graph)
        if found is None:
            idx = len(pieces)
            pieces.append(DecompositionPiece(graph, vert_labels))
            return idx
        sep, comp = found
        side1 = sorted(comp | set(sep))
        side2 = sorted(set(graph.vertices()) - comp)
        g1 = induced_subgraph(graph, side1)
        g2 = induced_subgraph(graph, side2)
        lab1 = tuple(vert_labels[v - 1] for v in side1)
        lab2 = tuple(vert_labels[v - 1] for v in side2)
        left = recurse(lab1, g1)
        right = recurse(lab2, g2)
        sep_idx = len(separators)
        separators.append(tuple(vert_labels[v - 1] for v in sep))
        return (left, right, sep_idx)

    tree = recurse(tuple(g.vertices()), g)
    return CliqueSumDecomposition(pieces, separators, tree)


def _best_clique_separator(g: Graph):
    """Smallest clique separator with its smallest split-off component."""
    if g.n <= 2:
        return None
    for size in range(1, 4):
        best = None
        for sep in itertools.combinations(g.vertices(), size):
            if not g.is_clique(sep):
                continue
            rest = [v for v in g.vertices() if v not in sep]
            if not rest:
                continue
            sub = induced_subgraph(g, rest)
            comps = sub.components()
            if len(comps) < 2:
                continue
            for comp in comps:
                orig = frozenset(rest[v - 1] for v in comp)
                key = (len(orig), tuple(sorted(orig)), sep)
                if best is None or key < best[0]:
                    best = (key, sep, orig)
        if best is not None:
            return best[1], best[2]
    return None
