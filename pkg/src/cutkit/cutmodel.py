"""Vertex bipartitions, cut vectors, cut monomials, and the exponent matrix.

Every unordered bipartition ``A|B`` of the vertex set gives one variable
``q[A|B]``; every edge gives a variable pair ``(s_e, t_e)``.  The map
sending ``q[A|B]`` to the product of ``s_e`` over crossing edges and
``t_e`` over non-crossing edges is encoded by an integer exponent
matrix whose kernel is the ideal the rest of the package computes with.

Canonical form of a bipartition: the smaller block is ``blockA``; for
blocks of equal size the block containing vertex 1 is ``blockA``.
Printed variable names follow the same convention; parsers accept both
orientations.
"""

from __future__ import annotations

import csv
import io
import re
from typing import Iterable, Optional, Sequence

from .binomials import Binomial
from .graphs import Graph
from . import intlinalg

__all__ = [
    "Partition",
    "VariableSet",
    "ExponentMatrix",
    "ParseError",
    "all_partitions",
    "cut_vector",
    "cut_monomial",
    "exponent_matrix",
    "print_binomial",
    "parse_binomial",
    "binomial_to_json",
    "binomial_from_json",
]

MAX_PARTITION_VERTICES = 20


class ParseError(ValueError):
    """Raised on malformed binomial text; ``pos`` is the failing offset."""

    def __init__(self, message: str, pos: int) -> None:
        super().__init__(f"{message} (position {pos})")
        self.pos = pos


def _canonical_blocks(
    n: int, block: Iterable[int]
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    a = set()
    for v in block:
        v = int(v)
        if not 1 <= v <= n:
            raise ValueError(f"vertex {v} out of range 1..{n}")
        if v in a:
            raise ValueError(f"duplicate vertex {v} in block")
        a.add(v)
    b = set(range(1, n + 1)) - a
    if len(a) > len(b) or (len(a) == len(b) and 1 not in a):
        a, b = b, a
    return tuple(sorted(a)), tuple(sorted(b))


class Partition:
    """Unordered bipartition of ``{1..n}`` in canonical orientation."""

    __slots__ = ("n", "blockA", "blockB")

    n: int
    blockA: tuple[int, ...]
    blockB: tuple[int, ...]

    def __init__(
        self,
        n: int,
        blockA: Iterable[int],
        blockB: Optional[Iterable[int]] = None,
    ) -> None:
        if n < 1:
            raise ValueError("n must be >= 1")
        first = tuple(int(v) for v in blockA)
        a, b = _canonical_blocks(n, first)
        if blockB is not None:
            given = tuple(sorted(int(v) for v in blockB))
            complement = tuple(sorted(set(range(1, n + 1)) - set(first)))
            if given != complement:
                raise ValueError("blockB is not the complement of blockA")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "blockA", a)
        object.__setattr__(self, "blockB", b)

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Partition":
        """Partition whose one block is the set of bits of ``mask`` (bit v-1 = vertex v)."""
        if mask < 0 or mask >= 1 << n:
            raise ValueError("mask out of range")
        return cls(n, tuple(v for v in range(1, n + 1) if mask >> (v - 1) & 1))

    @property
    def mask(self) -> int:
        """Bitmask of ``blockA`` (bit v-1 set for vertex v)."""
        m = 0
        for v in self.blockA:
            m |= 1 << (v - 1)
        return m

    def oriented(self, v: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """The two blocks ordered so the first contains vertex ``v``."""
        if v in self.blockA:
            return self.blockA, self.blockB
        if v in self.blockB:
            return self.blockB, self.blockA
        raise ValueError(f"vertex {v} not in partition ground set")

    def crosses(self, edge: tuple[int, int]) -> bool:
        """True iff the edge has one endpoint in each block."""
        i, j = edge
        return (i in self.blockA) != (j in self.blockA)

    def label(self) -> str:
        """Printed block form ``A|B`` (digits concatenated when n <= 9)."""
        return f"{_block_string(self.blockA, self.n)}|{_block_string(self.blockB, self.n)}"

    def oriented_label(self, v: int) -> str:
        """Printed block form with vertex ``v``'s block first."""
        first, second = self.oriented(v)
        return f"{_block_string(first, self.n)}|{_block_string(second, self.n)}"

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Partition is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return self.n == other.n and self.blockA == other.blockA

    def __hash__(self) -> int:
        return hash((self.n, self.blockA))

    def __repr__(self) -> str:
        return f"Partition({self.n}, {self.label()!r})"


def _block_string(block: Sequence[int], n: int) -> str:
    if not block:
        return ""
    if n <= 9:
        return "".join(str(v) for v in block)
    return ",".join(str(v) for v in block)


def _canonical_masks(n: int) -> list[int]:
    """Masks of the canonical first blocks, ascending — the column order."""
    masks = []
    half = n / 2.0
    for mask in range(1 << n):
        size = mask.bit_count()
        if size < half or (size == half and mask & 1):
            masks.append(mask)
    return masks


def all_partitions(n: int) -> tuple[Partition, ...]:
    """All 2^(n-1) bipartitions of ``{1..n}`` in canonical column order."""
    if n > MAX_PARTITION_VERTICES:
        raise ValueError(
            f"n={n} exceeds the {MAX_PARTITION_VERTICES}-vertex budget"
        )
    return tuple(Partition.from_mask(n, m) for m in _canonical_masks(n))


class VariableSet:
    """Column variables ``q[A|B]`` and row variable pairs ``(s_e, t_e)``.

    Columns are sorted by the bitmask of the canonical first block;
    rows interleave ``s_e`` before ``t_e`` in ascending edge order.
    """

    __slots__ = ("n", "edges", "qvars", "_qindex")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]]) -> None:
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "qvars", all_partitions(n))
        object.__setattr__(
            self, "_qindex", {p: i for i, p in enumerate(self.qvars)}
        )

    @classmethod
    def from_graph(cls, g: Graph) -> "VariableSet":
        return cls(g.n, g.edges)

    @property
    def nq(self) -> int:
        return len(self.qvars)

    @property
    def nst(self) -> int:
        return 2 * len(self.edges)

    def q_index(self, p: Partition) -> int:
        if p.n != self.n:
            raise ValueError("partition ground set does not match")
        return self._qindex[p]

    def q_name(self, i: int) -> str:
        return f"q[{self.qvars[i].label()}]"

    def st_name(self, j: int) -> str:
        a, b = self.edges[j // 2]
        return f"{'s' if j % 2 == 0 else 't'}[{a},{b}]"

    def st_names(self) -> tuple[str, ...]:
        return tuple(self.st_name(j) for j in range(self.nst))

    def q_names(self) -> tuple[str, ...]:
        return tuple(self.q_name(i) for i in range(self.nq))

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("VariableSet is immutable")

    def __repr__(self) -> str:
        return f"VariableSet(n={self.n}, edges={self.edges})"


def cut_vector(g: Graph, p: Partition) -> tuple[int, ...]:
    """0/1 vector over g's edges: 1 exactly on edges crossing the partition."""
    if p.n != g.n:
        raise ValueError("partition ground set does not match graph")
    mask = p.mask
    return tuple(
        1 if ((mask >> (i - 1)) ^ (mask >> (j - 1))) & 1 else 0
        for i, j in g.edges
    )


def cut_monomial(g: Graph, p: Partition) -> tuple[int, ...]:
    """Exponent vector over (s_e, t_e) pairs: s_e on crossing edges, t_e otherwise."""
    delta = cut_vector(g, p)
    out = []
    for x in delta:
        out.append(x)
        out.append(1 - x)
    return tuple(out)


class ExponentMatrix:
    """Integer matrix with labeled rows/columns; columns share one total degree."""

    __slots__ = ("row_labels", "col_labels", "entries", "column_degree")

    def __init__(
        self,
        row_labels: Sequence[str],
        col_labels: Sequence[str],
        entries: Sequence[Sequence[int]],
        column_degree: int,
    ) -> None:
        rows = tuple(tuple(int(e) for e in r) for r in entries)
        if len(rows) != len(row_labels):
            raise ValueError("row label count does not match entries")
        if any(len(r) != len(col_labels) for r in rows):
            raise ValueError("column label count does not match entries")
        object.__setattr__(self, "row_labels", tuple(row_labels))
        object.__setattr__(self, "col_labels", tuple(col_labels))
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "column_degree", int(column_degree))

    @property
    def nrows(self) -> int:
        return len(self.row_labels)

    @property
    def ncols(self) -> int:
        return len(self.col_labels)

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(self.ncols)]

    def rank(self) -> int:
        return intlinalg.rank([list(r) for r in self.entries])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow([""] + list(self.col_labels))
        for label, row in zip(self.row_labels, self.entries):
            writer.writerow([label] + list(row))
        return buf.getvalue()

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("ExponentMatrix is immutable")

    def __repr__(self) -> str:
        return f"ExponentMatrix({self.nrows}x{self.ncols})"


def exponent_matrix(g: Graph) -> ExponentMatrix:
    """The 2|E| x 2^(n-1) matrix of all cut monomials of ``g``.

    Row j is variable s_e (even j) or t_e (odd j) for edge e = edges[j//2];
    column order follows :func:`all_partitions`.  Every column sums to
    |E| and the integer row rank is |E| + 1.
    """
    if g.m < 1:
        raise ValueError("graph must have at least one edge")
    if g.n > MAX_PARTITION_VERTICES:
        raise ValueError(
            f"n={g.n} exceeds the {MAX_PARTITION_VERTICES}-vertex budget"
        )
    vars_ = VariableSet.from_graph(g)
    cols = [cut_monomial(g, p) for p in vars_.qvars]
    entries = [
        tuple(cols[j][i] for j in range(len(cols))) for i in range(2 * g.m)
    ]
    return ExponentMatrix(vars_.st_names(), vars_.q_names(), entries, g.m)


# ── binomial text / JSON round-trip ──────────────────────────────────────────

_FACTOR_RE = re.compile(r"\s*q\[([0-9,]*)\|([0-9,]*)\]\s*(?:\^\s*(\d+)\s*)?")


def _factor_string(vars_: VariableSet, index: int, exp: int) -> str:
    return vars_.q_name(index) + (f"^{exp}" if exp > 1 else "")


def _side_string(vars_: VariableSet, side: Sequence[int]) -> str:
    factors = [
        _factor_string(vars_, i, e) for i, e in enumerate(side) if e
    ]
    return "*".join(factors) if factors else "1"


def print_binomial(b: Binomial, vars_: VariableSet) -> str:
    """Render ``b`` as ``q[A|B]^k*... - q[C|D]^m*...`` (plus side first)."""
    if b.nvars != vars_.nq:
        raise ValueError("binomial length does not match variable set")
    if b.is_zero():
        raise ValueError("zero binomial has no printed form")
    return f"{_side_string(vars_, b.plus)} - {_side_string(vars_, b.minus)}"


def _parse_block(text: str, comma_mode: bool) -> tuple[int, ...]:
    if not text:
        return ()
    if "," in text or comma_mode:
        parts = [p for p in text.split(",") if p]
        return tuple(int(p) for p in parts)
    return tuple(int(ch) for ch in text)


def _scan_side(
    s: str, start: int, end: int, comma_mode: bool
) -> list[tuple[tuple[int, ...], tuple[int, ...], int]]:
    """Parse ``q[..|..]^k * ...`` between ``start`` and ``end``."""
    if s[start:end].strip() == "1":
        return []
    factors = []
    pos = start
    while True:
        m = _FACTOR_RE.match(s, pos)
        if not m or m.start() != pos:
            raise ParseError("expected q[A|B] factor", pos)
        exp = int(m.group(3)) if m.group(3) else 1
        if exp < 1:
            raise ParseError("exponent must be positive", pos)
        factors.append(
            (
                _parse_block(m.group(1), comma_mode),
                _parse_block(m.group(2), comma_mode),
                exp,
            )
        )
        pos = m.end()
        if pos >= end:
            break
        if s[pos] != "*":
            raise ParseError("expected '*' between factors", pos)
        pos += 1
    return factors


def parse_binomial(s: str, vars_: Optional[VariableSet] = None) -> Binomial:
    """Inverse of :func:`print_binomial`; accepts either block orientation
    and any factor order.  With ``vars_`` omitted the ground set is
    inferred from the factors (every block pair covers ``1..n``)."""
    depth = 0
    sep = -1
    for i, ch in enumerate(s):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == "-" and depth == 0:
            if sep != -1:
                raise ParseError("multiple '-' separators", i)
            sep = i
    if sep == -1:
        raise ParseError("missing '-' separator", len(s))
    comma_mode = vars_ is not None and vars_.n > 9
    if vars_ is None and "," in s:
        comma_mode = True
    lhs_raw = _scan_side(s, 0, sep, comma_mode)
    rhs_raw = _scan_side(s, sep + 1, len(s), comma_mode)
    if vars_ is not None:
        n = vars_.n
    else:
        verts: set[int] = set()
        for a, b, _ in lhs_raw + rhs_raw:
            verts.update(a)
            verts.update(b)
        if not verts:
            raise ParseError("no variables found", 0)
        n = max(verts)
    qvars = vars_.qvars if vars_ is not None else all_partitions(n)
    qindex = {p: i for i, p in enumerate(qvars)}
    vec_plus = [0] * len(qvars)
    vec_minus = [0] * len(qvars)
    for target, raw in ((vec_plus, lhs_raw), (vec_minus, rhs_raw)):
        for a, b, exp in raw:
            try:
                p = Partition(n, a, b)
            except ValueError as exc:
                raise ParseError(str(exc), 0) from exc
            target[qindex[p]] += exp
    return Binomial(vec_plus, vec_minus)


def binomial_to_json(b: Binomial, vars_: VariableSet) -> dict:
    """``{"lhs": [[name, exp], ...], "rhs": [[name, exp], ...]}``."""
    if b.nvars != vars_.nq:
        raise ValueError("binomial length does not match variable set")
    return {
        "lhs": [[vars_.q_name(i), e] for i, e in enumerate(b.plus) if e],
        "rhs": [[vars_.q_name(i), e] for i, e in enumerate(b.minus) if e],
    }


def binomial_from_json(obj: dict, vars_: VariableSet) -> Binomial:
    vec_plus = [0] * vars_.nq
    vec_minus = [0] * vars_.nq
    name_index = {vars_.q_name(i): i for i in range(vars_.nq)}
    for target, key in ((vec_plus, "lhs"), (vec_minus, "rhs")):
        for name, exp in obj[key]:
            exp = int(exp)
            if exp < 1:
                raise ValueError("exponents must be positive")
            if name not in name_index:
                raise ValueError(f"unknown variable {name!r}")
            target[name_index[name]] += exp
    return Binomial(vec_plus, vec_minus)
