"""Statistical-model bridges for the cut machinery.

Two changes of coordinates connect cut ideals to families of toric
statistical models.  The covariance bijection matches the binary
graph model of a graph (edge-margin parametrization of binary tables)
with the cut model of that graph's suspension, index by index.  The
Fourier transform turns split-system phylogenetic models into toric
ideals, and for cyclic split systems a second bijection matches the
model of a split system with the cut model of an associated graph, one
edge per split.  Both bridges are *checked* here at the level of
parametrization columns and generated ideals, not assumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from .binomials import Binomial
from .cutmodel import (
    ExponentMatrix,
    MAX_PARTITION_VERTICES,
    Partition,
    VariableSet,
    all_partitions,
    exponent_matrix,
    _block_string,
)
from .engine import (
    generates_same_ideal,
    markov_basis,
    toric_groebner,
)
from .graphs import Graph, GraphError, suspend

__all__ = [
    "Split",
    "SplitSystem",
    "LeafTree",
    "binary_model_matrix",
    "covariance_partition",
    "covariance_index",
    "covariance_table",
    "verify_covariance",
    "fourier",
    "fourier_inverse",
    "split_model_point",
    "split_model_matrix",
    "split_to_edge",
    "graph_of_splits",
    "fourier_index",
    "fourier_partition",
    "split_model_table",
    "verify_split_model",
    "complete_cyclic_system",
    "parse_tree",
    "splits_of_tree",
    "parse_split_system",
]


# ── binary strings ───────────────────────────────────────────────────────────


def _check_bits(bits: str) -> str:
    if not bits or any(c not in "01" for c in bits):
        raise ValueError(f"not a binary string: {bits!r}")
    return bits


def _index_bits(value: int, n: int) -> str:
    """Length-``n`` binary string of ``value``, leftmost bit first."""
    return format(value, f"0{n}b")


def _taxon_mask(taxa: Iterable[int], n: int) -> int:
    """Bitmask matching :func:`_index_bits`: taxon k sits at bit n-k."""
    m = 0
    for k in taxa:
        m |= 1 << (n - k)
    return m


# ── split systems ────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class Split:
    """Unordered bipartition of taxa ``{1..n}``; ``blockB`` holds taxon n."""

    n: int
    blockA: tuple[int, ...]
    blockB: tuple[int, ...]

    def __init__(
        self,
        n: int,
        blockA: Iterable[int],
        blockB: Optional[Iterable[int]] = None,
    ) -> None:
        if n < 2:
            raise ValueError("a split needs at least two taxa")
        first = set()
        for v in blockA:
            v = int(v)
            if not 1 <= v <= n:
                raise ValueError(f"taxon {v} out of range 1..{n}")
            if v in first:
                raise ValueError(f"duplicate taxon {v} in block")
            first.add(v)
        second = set(range(1, n + 1)) - first
        if blockB is not None:
            given = set(int(v) for v in blockB)
            if given != second:
                raise ValueError("blockB is not the complement of blockA")
        if not first or not second:
            raise ValueError("both blocks of a split must be nonempty")
        if n in first:
            first, second = second, first
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blockA", tuple(sorted(first)))
        object.__setattr__(self, "blockB", tuple(sorted(second)))

    @property
    def is_interval(self) -> bool:
        """Whether the block without taxon n is a consecutive run."""
        a = self.blockA
        return a == tuple(range(a[0], a[-1] + 1))

    def label(self) -> str:
        return (
            f"{_block_string(self.blockA, self.n)}"
            f"|{_block_string(self.blockB, self.n)}"
        )

    def __repr__(self) -> str:
        return f"Split({self.n}, {self.label()!r})"


@dataclass(frozen=True)
class SplitSystem:
    """Distinct splits of a common taxon set, in a fixed listing order.

    The listing order is preserved because parameter pairs are numbered
    by position; two systems with the same splits in different order
    describe the same model with renumbered parameters.
    """

    n: int
    splits: tuple[Split, ...]

    def __init__(self, n: int, splits: Iterable[Split]) -> None:
        listed = tuple(splits)
        for s in listed:
            if not isinstance(s, Split):
                raise TypeError(f"not a Split: {s!r}")
            if s.n != n:
                raise ValueError("split taxon count does not match system")
        if len(set(listed)) != len(listed):
            raise ValueError("duplicate split in system")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "splits", listed)

    @property
    def r(self) -> int:
        return len(self.splits)

    @property
    def is_cyclic(self) -> bool:
        return all(s.is_interval for s in self.splits)

    def __repr__(self) -> str:
        inner = ", ".join(s.label() for s in self.splits)
        return f"SplitSystem(n={self.n}, [{inner}])"


def complete_cyclic_system(n: int) -> SplitSystem:
    """All n(n-1)/2 splits whose first block is a run ``[k..l]``, k<=l<n.

    Listed by ascending (k, l); any subset of these splits is cyclic.
    """
    splits = [
        Split(n, tuple(range(k, l + 1)))
        for k in range(1, n)
        for l in range(k, n)
    ]
    return SplitSystem(n, splits)


def parse_split_system(text: str) -> SplitSystem:
    """One split per line as ``C | D``, comma-separated taxa; n inferred."""
    splits_raw: list[tuple[tuple[int, ...], tuple[int, ...]]] = []
    ground: set[int] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if line.count("|") != 1:
            raise ValueError(f"line {lineno}: expected one '|' separator")
        left, right = line.split("|")

        def block(part: str) -> tuple[int, ...]:
            items = [p.strip() for p in part.split(",")]
            try:
                return tuple(int(p) for p in items if p)
            except ValueError:
                raise ValueError(
                    f"line {lineno}: taxa must be integers"
                ) from None

        a, b = block(left), block(right)
        splits_raw.append((a, b))
        ground.update(a)
        ground.update(b)
    if not splits_raw:
        raise ValueError("no splits in input")
    n = max(ground)
    if ground != set(range(1, n + 1)):
        raise ValueError(f"taxa do not cover 1..{n}")
    return SplitSystem(n, [Split(n, a, b) for a, b in splits_raw])


# ── binary graph models and the covariance bijection ─────────────────────────


def binary_model_matrix(g: Graph) -> ExponentMatrix:
    """Edge-margin parametrization of binary tables on ``g``'s vertices.

    The column for index string ``i`` records, for every edge {k, l},
    the pair of states (i_k, i_l) it observes: one matrix row per edge
    and state pair, 4|E| rows over 2^n columns, every entry 0 or 1.
    """
    isolated = [v for v in g.vertices() if g.degree(v) == 0]
    if isolated:
        raise GraphError(f"isolated vertex {isolated[0]}")
    if g.n >= MAX_PARTITION_VERTICES:
        raise ValueError(
            f"n={g.n} exceeds the {MAX_PARTITION_VERTICES - 1}-vertex budget"
        )
    ncols = 1 << g.n
    row_labels = [
        f"b[{k},{l}][{a}{b}]"
        for k, l in g.edges
        for a in (0, 1)
        for b in (0, 1)
    ]
    col_labels = [f"p{_index_bits(i, g.n)}" for i in range(ncols)]
    entries = []
    for eidx, (k, l) in enumerate(g.edges):
        for a in (0, 1):
            for b in (0, 1):
                row = [0] * ncols
                for i in range(ncols):
                    ik = (i >> (g.n - k)) & 1
                    il = (i >> (g.n - l)) & 1
                    if (ik, il) == (a, b):
                        row[i] = 1
                entries.append(row)
    return ExponentMatrix(row_labels, col_labels, entries, g.m)


def covariance_partition(bits: str) -> Partition:
    """Partition of ``{1..n+1}`` for an index string of length n.

    Taxon k joins the block away from the new vertex n+1 exactly when
    its index bit is 1; the new vertex anchors the other block.
    """
    bits = _check_bits(bits)
    n = len(bits)
    if n + 1 > MAX_PARTITION_VERTICES:
        raise ValueError("index string too long")
    ones = tuple(k for k in range(1, n + 1) if bits[k - 1] == "1")
    return Partition(n + 1, ones)


def covariance_index(p: Partition) -> str:
    """Inverse of :func:`covariance_partition`; works on any orientation."""
    apex = p.n
    if apex < 2:
        raise ValueError("partition ground set too small")
    _, ones_block = p.oriented(apex)
    ones = set(ones_block)
    return "".join("1" if k in ones else "0" for k in range(1, apex))


def covariance_table(n: int) -> list[tuple[str, str]]:
    """All 2^n index-to-partition rows, partition printed vertex-1 first."""
    rows = []
    for i in range(1 << n):
        bits = _index_bits(i, n)
        p = covariance_partition(bits)
        rows.append((f"p{bits}", p.oriented_label(1)))
    return rows


def verify_covariance(g: Graph, threads: int = 1) -> bool:
    """Check that the relabeled binary-model ideal is the suspension's.

    Computes a minimal generating set of the binary graph model ideal,
    relabels each generator index-by-index onto suspension partitions,
    and tests exact equality with the suspension graph's kernel ideal.
    """
    mk = markov_basis(binary_model_matrix(g), threads=threads)
    if not mk.certified_complete:  # pragma: no cover - no budget set
        raise RuntimeError("binary model computation was truncated")
    hat = suspend(g)
    vars_hat = VariableSet.from_graph(hat)
    target = [
        vars_hat.q_index(covariance_partition(_index_bits(i, g.n)))
        for i in range(1 << g.n)
    ]

    def relabel(vec: Sequence[int]) -> list[int]:
        out = [0] * vars_hat.nq
        for i, e in enumerate(vec):
            out[target[i]] = e
        return out

    relabeled = [
        Binomial(relabel(b.plus), relabel(b.minus)) for b in mk.elements
    ]
    reference = toric_groebner(exponent_matrix(hat), threads=threads)
    return generates_same_ideal(relabeled, reference, threads=threads)


# ── Fourier transform ────────────────────────────────────────────────────────

Rational = Union[int, Fraction]


def fourier(values: Sequence[Rational]) -> list[Fraction]:
    """Signed character sums of a length-2^n vector (exact rationals).

    Output entry j is the sum of input entries signed by the parity of
    the bitwise overlap of i and j; applying the transform twice
    multiplies a vector by 2^n.
    """
    out = [Fraction(v) for v in values]
    size = len(out)
    if size == 0 or size & (size - 1):
        raise ValueError("vector length must be a power of two")
    h = 1
    while h < size:
        for start in range(0, size, 2 * h):
            for k in range(start, start + h):
                a, b = out[k], out[k + h]
                out[k] = a + b
                out[k + h] = a - b
        h *= 2
    return out


def fourier_inverse(values: Sequence[Rational]) -> list[Fraction]:
    """Exact inverse of :func:`fourier` (divides by the vector length)."""
    out = fourier(values)
    size = len(out)
    return [v / size for v in out]


def split_model_point(
    split: Split, u0: Rational, u1: Rational
) -> list[Fraction]:
    """Transformed coordinates of the one-split model at (u0, u1).

    Odd-parity entries vanish; an even entry takes u0 when the index
    bits covering each block sum to an even number and u1 when both
    block sums are odd.
    """
    n = split.n
    mask_a = _taxon_mask(split.blockA, n)
    out = [Fraction(0)] * (1 << n)
    for j in range(1 << n):
        if j.bit_count() & 1:
            continue
        odd = (j & mask_a).bit_count() & 1
        out[j] = Fraction(u1 if odd else u0)
    return out


# ── split-system models ──────────────────────────────────────────────────────


def _even_indices(n: int) -> list[int]:
    return [j for j in range(1 << n) if j.bit_count() % 2 == 0]


def split_model_matrix(sigma: SplitSystem) -> ExponentMatrix:
    """Parametrization matrix of a split-system model.

    One parameter pair (u{i}_0, u{i}_1) per split, one column per
    even-parity index string: the column picks u{i}_1 exactly when the
    index bits covering the split's first block sum to an odd number.
    Every column has degree r, and the row space has rank r + 1.
    """
    if sigma.r == 0:
        raise ValueError("split system has no splits")
    n = sigma.n
    cols = _even_indices(n)
    masks = [_taxon_mask(s.blockA, n) for s in sigma.splits]
    row_labels = [
        f"u{i + 1}_{b}" for i in range(sigma.r) for b in (0, 1)
    ]
    col_labels = [f"f{_index_bits(j, n)}" for j in cols]
    entries = []
    for i in range(sigma.r):
        for b in (0, 1):
            entries.append(
                [
                    1 if (j & masks[i]).bit_count() & 1 == b else 0
                    for j in cols
                ]
            )
    return ExponentMatrix(row_labels, col_labels, entries, sigma.r)


def split_to_edge(split: Split) -> tuple[int, int]:
    """Edge {k-1, l} for the split whose first block is the run [k..l].

    Vertex 0 is read as n, so the run starting at taxon 1 attaches to
    vertex n.  Distinct interval splits give distinct edges.
    """
    if not split.is_interval:
        raise ValueError(f"not a cyclic split: {split.label()}")
    k, l = split.blockA[0], split.blockA[-1]
    a = split.n if k == 1 else k - 1
    return (min(a, l), max(a, l))


def graph_of_splits(sigma: SplitSystem) -> Graph:
    """Graph on the taxa with one edge per split of a cyclic system."""
    return Graph(sigma.n, tuple(split_to_edge(s) for s in sigma.splits))


def fourier_index(p: Partition) -> str:
    """Even-parity index string of a partition: bit k marks whether the
    consecutive pair {k-1, k} (0 read as n) is separated."""
    n = p.n
    bits = []
    for k in range(1, n + 1):
        prev = n if k == 1 else k - 1
        bits.append("1" if p.crosses((prev, k)) else "0")
    return "".join(bits)


def fourier_partition(bits: str) -> Partition:
    """Inverse of :func:`fourier_index`; rejects odd-parity strings."""
    bits = _check_bits(bits)
    n = len(bits)
    if bits.count("1") % 2:
        raise ValueError(f"odd-parity index string: {bits}")
    side = False
    block = []
    for k in range(1, n + 1):
        side ^= bits[k - 1] == "1"
        if side:
            block.append(k)
    return Partition(n, block)


def _edge_ordered_splits(sigma: SplitSystem) -> list[int]:
    """Split positions sorted by their associated edge."""
    return sorted(range(sigma.r), key=lambda i: split_to_edge(sigma.splits[i]))


def split_model_table(sigma: SplitSystem) -> list[tuple[str, str, str]]:
    """Rows (cut variable, transformed variable, parameter monomial).

    One row per partition in canonical column order; monomial factors
    are listed by ascending associated edge, numbering parameter pairs
    by the system's listing order.
    """
    n = sigma.n
    masks = [_taxon_mask(s.blockA, n) for s in sigma.splits]
    factor_order = _edge_ordered_splits(sigma)
    rows = []
    for p in all_partitions(n):
        bits = fourier_index(p)
        j = int(bits, 2)
        factors = [
            f"u{i + 1}_{(j & masks[i]).bit_count() & 1}"
            for i in factor_order
        ]
        rows.append((f"q[{p.label()}]", f"f{bits}", "*".join(factors)))
    return rows


def verify_split_model(sigma: SplitSystem) -> bool:
    """Check the split-system model against the cut model of its graph.

    Matches parametrization columns one by one: the cut-variable column
    of the associated graph must equal the model column of its index
    string under the parameter pairing u_0 = t, u_1 = s on the split's
    edge.  Column-level equality makes the kernels equal as ideals.
    """
    if sigma.r == 0:
        return True
    g = graph_of_splits(sigma)
    A = exponent_matrix(g)
    J = split_model_matrix(sigma)
    edge_to_split = {
        split_to_edge(s): i for i, s in enumerate(sigma.splits)
    }
    col_of_bits = {label[1:]: idx for idx, label in enumerate(J.col_labels)}
    for cidx, p in enumerate(all_partitions(sigma.n)):
        qcol = A.column(cidx)
        jcol = J.column(col_of_bits[fourier_index(p)])
        for eidx, edge in enumerate(g.edges):
            i = edge_to_split[edge]
            s_exp, t_exp = qcol[2 * eidx], qcol[2 * eidx + 1]
            u0, u1 = jcol[2 * i], jcol[2 * i + 1]
            if (s_exp, t_exp) != (u1, u0):
                return False
    return True


# ── trees ────────────────────────────────────────────────────────────────────

TreeNode = Union[int, tuple]


@dataclass(frozen=True)
class LeafTree:
    """Unrooted tree with leaves 1..n, written as nested leaf lists.

    The root of the written form is an internal vertex; every internal
    vertex must have degree at least three.
    """

    n: int
    root: tuple

    def __init__(self, root: TreeNode) -> None:
        if not isinstance(root, tuple):
            raise ValueError("tree root must be an internal vertex")
        labels: list[int] = []

        def walk(node: TreeNode, is_root: bool) -> None:
            if isinstance(node, tuple):
                need = 3 if is_root else 2
                if len(node) < need:
                    raise ValueError(
                        "internal vertex of degree < 3 in tree"
                    )
                for child in node:
                    walk(child, False)
            elif isinstance(node, int):
                labels.append(node)
            else:
                raise ValueError(f"bad tree node: {node!r}")

        walk(root, True)
        n = len(labels)
        if sorted(labels) != list(range(1, n + 1)):
            raise ValueError(f"leaf labels are not a permutation of 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "root", root)


def parse_tree(text: str) -> LeafTree:
    """Parse nested-parenthesis leaf lists like ``((1,2),3,(4,5))``."""
    pos = 0
    s = text.strip()

    def error(msg: str) -> ValueError:
        return ValueError(f"{msg} (position {pos})")

    def skip_ws() -> None:
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1

    def node() -> TreeNode:
        nonlocal pos
        skip_ws()
        if pos >= len(s):
            raise error("unexpected end of tree text")
        if s[pos] == "(":
            pos += 1
            children = [node()]
            while True:
                skip_ws()
                if pos >= len(s):
                    raise error("unclosed parenthesis")
                if s[pos] == ",":
                    pos += 1
                    children.append(node())
                elif s[pos] == ")":
                    pos += 1
                    return tuple(children)
                else:
                    raise error(f"unexpected character {s[pos]!r}")
        start = pos
        while pos < len(s) and s[pos].isdigit():
            pos += 1
        if pos == start:
            raise error(f"expected a leaf label, found {s[pos]!r}")
        return int(s[start:pos])

    root = node()
    skip_ws()
    if pos != len(s):
        raise error("trailing text after tree")
    return LeafTree(root)


def splits_of_tree(tree: LeafTree) -> SplitSystem:
    """One split per tree edge: leaves below the edge versus the rest.

    Splits are listed in depth-first order.  With leaves labeled in
    planar cyclic order every block below an edge is a consecutive run,
    so the resulting system is cyclic.
    """
    n = tree.n
    splits: list[Split] = []

    def leaves(node: TreeNode) -> list[int]:
        if isinstance(node, int):
            return [node]
        out: list[int] = []
        for child in node:
            out.extend(leaves(child))
        return out

    def walk(node: tuple) -> None:
        for child in node:
            splits.append(Split(n, leaves(child)))
            if isinstance(child, tuple):
                walk(child)

    walk(tree.root)
    return SplitSystem(n, splits)
