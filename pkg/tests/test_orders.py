"""Term orders: construction, validation, permutations, comparisons."""

import pytest

from cutkit._engine_py import GREVLEX, LEX, WEIGHT, mono_gt
from cutkit.orders import TermOrder


def test_defaults():
    o = TermOrder()
    assert o.kind == "degrevlex"
    assert o.kind_id == GREVLEX
    assert o.permutation(4) == (0, 1, 2, 3)


def test_constructors():
    assert TermOrder.degrevlex().kind == "degrevlex"
    assert TermOrder.lex().kind_id == LEX
    w = TermOrder.weighted((1, 2, 3))
    assert w.kind_id == WEIGHT
    assert w.permuted_weight(3) == (1, 2, 3)


def test_varorder_permutation():
    o = TermOrder(varorder=(2, 0, 1))
    assert o.permutation(3) == (2, 0, 1)
    with pytest.raises(ValueError):
        o.permutation(4)


def test_cheapest_last():
    o = TermOrder.cheapest_last(0, 3)
    # variable 0 moves to the last (cheapest) slot under grevlex
    assert o.permutation(3)[-1] == 0
    assert o.kind == "degrevlex"


def test_validation():
    with pytest.raises(ValueError):
        TermOrder(kind="mystery")
    with pytest.raises(ValueError):
        TermOrder(kind="weight")
    with pytest.raises(ValueError):
        TermOrder(kind="weight", weight=(1, -2))
    with pytest.raises(ValueError):
        TermOrder(varorder=(0, 0, 1))
    assert TermOrder(kind="weight", weight=(1, 2)).weight == (1, 2)


def test_describe():
    assert TermOrder().describe() == {"kind": "degrevlex"}
    assert TermOrder.lex().describe()["kind"] == "lex"
    d = TermOrder.weighted((1, 2), varorder=(1, 0)).describe()
    assert d == {"kind": "weight", "weight": [1, 2], "varorder": [1, 0]}


def test_grevlex_comparison_semantics():
    # higher total degree wins
    assert mono_gt((2, 0), (1, 0), GREVLEX, None)
    # same degree: smaller entry in the last differing position wins
    assert mono_gt((1, 1, 0), (1, 0, 1), GREVLEX, None)
    assert not mono_gt((1, 0, 1), (1, 1, 0), GREVLEX, None)
    assert not mono_gt((1, 1), (1, 1), GREVLEX, None)


def test_lex_comparison_semantics():
    assert mono_gt((1, 0, 0), (0, 9, 9), LEX, None)
    assert not mono_gt((0, 9, 9), (1, 0, 0), LEX, None)


def test_weight_comparison_semantics():
    w = (5, 1)
    assert mono_gt((1, 0), (0, 4), WEIGHT, w)
    # weight tie falls back to grevlex
    assert mono_gt((2, 0), (0, 2), WEIGHT, (1, 1))
    assert not mono_gt((0, 2), (2, 0), WEIGHT, (1, 1))
