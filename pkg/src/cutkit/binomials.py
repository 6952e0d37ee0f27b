"""Pure-difference binomials as immutable exponent-vector pairs.

A binomial here is ``x^plus - x^minus`` with componentwise-disjoint
supports.  Orientation is normalized so that ``plus`` is the
lexicographically larger side (scanning coordinates in ascending index
order); two binomials that differ only by a global sign therefore
compare equal.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = ["Binomial"]


def _lex_ge(a: Sequence[int], b: Sequence[int]) -> bool:
    for x, y in zip(a, b):
        if x != y:
            return x > y
    return True


class Binomial:
    """Value object for ``x^plus - x^minus`` with disjoint supports."""

    __slots__ = ("plus", "minus")

    plus: tuple[int, ...]
    minus: tuple[int, ...]

    def __init__(self, plus: Iterable[int], minus: Iterable[int]) -> None:
        p = tuple(int(e) for e in plus)
        m = tuple(int(e) for e in minus)
        if len(p) != len(m):
            raise ValueError("sides must have equal length")
        for i, (a, b) in enumerate(zip(p, m)):
            if a < 0 or b < 0:
                raise ValueError(f"negative exponent at index {i}")
            if a and b:
                raise ValueError(f"supports overlap at index {i}")
        if not _lex_ge(p, m):
            p, m = m, p
        object.__setattr__(self, "plus", p)
        object.__setattr__(self, "minus", m)

    @classmethod
    def from_vector(cls, vec: Iterable[int]) -> "Binomial":
        """Build from a signed vector: positive part minus negative part."""
        v = tuple(int(e) for e in vec)
        return cls(
            tuple(e if e > 0 else 0 for e in v),
            tuple(-e if e < 0 else 0 for e in v),
        )

    def vector(self) -> tuple[int, ...]:
        return tuple(a - b for a, b in zip(self.plus, self.minus))

    @property
    def nvars(self) -> int:
        return len(self.plus)

    @property
    def degree_plus(self) -> int:
        return sum(self.plus)

    @property
    def degree_minus(self) -> int:
        return sum(self.minus)

    @property
    def degree(self) -> int:
        """Total degree of the larger side (the common degree when homogeneous)."""
        return max(self.degree_plus, self.degree_minus)

    def is_zero(self) -> bool:
        return self.plus == self.minus

    def support(self) -> tuple[int, ...]:
        return tuple(
            i for i, (a, b) in enumerate(zip(self.plus, self.minus)) if a or b
        )

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("Binomial is immutable")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Binomial):
            return NotImplemented
        return self.plus == other.plus and self.minus == other.minus

    def __hash__(self) -> int:
        return hash((self.plus, self.minus))

    def __repr__(self) -> str:
        return f"Binomial(plus={self.plus}, minus={self.minus})"
