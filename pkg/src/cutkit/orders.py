"""Term orders on monomials: graded reverse lex, lex, weight vectors.

A ``TermOrder`` names one of three comparison rules together with an
optional variable priority.  ``varorder`` lists original variable
indices from most significant to least; comparisons happen after
permuting exponent vectors into that priority space, so the engine's
inner loops never consult the permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

__all__ = ["TermOrder", "GREVLEX", "LEX", "WEIGHT"]

GREVLEX = 0
LEX = 1
WEIGHT = 2

_KIND_NAMES = {"degrevlex": GREVLEX, "lex": LEX, "weight": WEIGHT}


@dataclass(frozen=True)
class TermOrder:
    """Immutable description of a monomial order.

    kind: ``"degrevlex"``, ``"lex"``, or ``"weight"`` (weight vector
    compared first, graded reverse lex as tie-break).
    weight: required exactly when kind is ``"weight"``; nonnegative.
    varorder: permutation of variable indices, most significant first;
    ``None`` means natural order 0,1,2,...
    """

    kind: str = "degrevlex"
    weight: Optional[tuple[int, ...]] = None
    varorder: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.kind not in _KIND_NAMES:
            raise ValueError(f"unknown order kind {self.kind!r}")
        if self.kind == "weight":
            if self.weight is None:
                raise ValueError("weight order requires a weight vector")
            w = tuple(int(x) for x in self.weight)
            if any(x < 0 for x in w):
                raise ValueError("weight entries must be nonnegative")
            object.__setattr__(self, "weight", w)
        elif self.weight is not None:
            raise ValueError(f"{self.kind} order takes no weight vector")
        if self.varorder is not None:
            vo = tuple(int(x) for x in self.varorder)
            if sorted(vo) != list(range(len(vo))):
                raise ValueError("varorder must be a permutation of 0..N-1")
            object.__setattr__(self, "varorder", vo)

    @property
    def kind_id(self) -> int:
        return _KIND_NAMES[self.kind]

    def permutation(self, nvars: int) -> tuple[int, ...]:
        """Position -> original variable index, length ``nvars``."""
        if self.varorder is None:
            return tuple(range(nvars))
        if len(self.varorder) != nvars:
            raise ValueError(
                f"varorder has length {len(self.varorder)}, expected {nvars}"
            )
        return self.varorder

    def permuted_weight(self, nvars: int) -> Optional[tuple[int, ...]]:
        if self.weight is None:
            return None
        if len(self.weight) != nvars:
            raise ValueError(
                f"weight has length {len(self.weight)}, expected {nvars}"
            )
        perm = self.permutation(nvars)
        return tuple(self.weight[p] for p in perm)

    @staticmethod
    def degrevlex(varorder: Optional[Sequence[int]] = None) -> "TermOrder":
        return TermOrder(
            "degrevlex", None, tuple(varorder) if varorder is not None else None
        )

    @staticmethod
    def lex(varorder: Optional[Sequence[int]] = None) -> "TermOrder":
        return TermOrder(
            "lex", None, tuple(varorder) if varorder is not None else None
        )

    @staticmethod
    def weighted(
        weight: Sequence[int], varorder: Optional[Sequence[int]] = None
    ) -> "TermOrder":
        return TermOrder(
            "weight",
            tuple(weight),
            tuple(varorder) if varorder is not None else None,
        )

    @staticmethod
    def cheapest_last(var: int, nvars: int) -> "TermOrder":
        """Graded reverse lex with ``var`` the cheapest variable.

        Used by per-variable saturation: with ``var`` in the last
        priority position, stripping its common power from every basis
        element of a Groebner basis under this order saturates the
        ideal at that variable.
        """
        rest = [k for k in range(nvars) if k != var]
        return TermOrder("degrevlex", None, tuple(rest + [var]))

    def describe(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.weight is not None:
            out["weight"] = list(self.weight)
        if self.varorder is not None:
            out["varorder"] = list(self.varorder)
        return out
