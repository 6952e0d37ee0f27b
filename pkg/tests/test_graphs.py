"""Graph construction, the named-graph grammar, minors, and clique sums."""

import random

import pytest

from cutkit.graphs import (
    BudgetError,
    Graph,
    GraphError,
    canonical_form,
    clique_sum_decompose,
    complete_graph,
    complete_multipartite,
    contract_edge,
    cut_edge_set,
    cycle_graph,
    graph_from_text,
    graph_to_text,
    has_minor,
    is_series_parallel,
    make_named,
    max_induced_cycle,
    path_graph,
    prism_graph,
)


def random_graph(rng, n, p=0.5):
    all_pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    return Graph(n, tuple(e for e in all_pairs if rng.random() < p))


def test_complete_graph():
    g = complete_graph(4)
    assert g.n == 4
    assert g.m == 6
    assert g.edges == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def test_cycle_and_path():
    c4 = cycle_graph(4)
    assert set(c4.edges) == {(1, 2), (2, 3), (3, 4), (1, 4)}
    p3 = path_graph(3)
    assert p3.edges == ((1, 2), (2, 3))
    with pytest.raises(GraphError):
        cycle_graph(2)


def test_complete_multipartite():
    k23 = complete_multipartite([2, 3])
    assert k23.n == 5
    assert k23.m == 6
    assert not k23.has_edge(1, 2)
    assert k23.has_edge(1, 3)
    k222 = complete_multipartite([2, 2, 2])
    assert k222.n == 6
    assert k222.m == 12


def test_edges_normalized_sorted():
    g = Graph(3, ((3, 2), (2, 1)))
    assert g.edges == ((1, 2), (2, 3))


def test_invalid_edges_rejected():
    with pytest.raises(GraphError):
        Graph(3, ((1, 4),))
    with pytest.raises(GraphError):
        Graph(3, ((2, 2),))
    with pytest.raises(GraphError):
        Graph(3, ((1, 2), (2, 1)))
    with pytest.raises(GraphError):
        Graph(0, ())


def test_named_grammar():
    assert make_named("K5") == complete_graph(5)
    assert make_named("C6") == cycle_graph(6)
    assert make_named("path4") == path_graph(4)
    assert make_named("K2,3") == complete_multipartite([2, 3])
    assert make_named("K2,2,2") == complete_multipartite([2, 2, 2])
    assert make_named("prism") == prism_graph()
    w = make_named("suspend(C4)")
    assert w.n == 5
    assert w.m == 8
    trimmed = make_named("delete(K5,1-5)")
    assert trimmed.n == 5
    assert not trimmed.has_edge(1, 5)
    assert trimmed.m == 9


def test_named_grammar_errors():
    with pytest.raises(GraphError):
        make_named("Q3")
    with pytest.raises(GraphError):
        make_named("K")
    with pytest.raises(GraphError):
        make_named("delete(K4,1-9)")


def test_text_round_trip():
    g = make_named("K2,3")
    text = graph_to_text(g)
    assert graph_from_text(text) == g
    assert graph_from_text("# parts of sizes 2 and 3\n" + text) == g
    with pytest.raises(GraphError):
        graph_from_text("")


def test_cut_edge_set():
    g = complete_graph(4)
    assert cut_edge_set(g, {1, 2}) == ((1, 3), (1, 4), (2, 3), (2, 4))
    assert cut_edge_set(g, set()) == ()
    assert cut_edge_set(g, {1, 2, 3, 4}) == ()


def test_contract_edge():
    g = contract_edge(cycle_graph(4), (3, 4))
    assert canonical_form(g) == canonical_form(cycle_graph(3))


def test_connected():
    assert cycle_graph(5).is_connected()
    assert not Graph(4, ((1, 2), (3, 4))).is_connected()
    assert Graph(1, ()).is_connected()


def test_canonical_form_is_isomorphism_invariant():
    rng = random.Random(7)
    for _ in range(30):
        n = rng.randint(2, 6)
        g = random_graph(rng, n)
        perm = list(range(1, n + 1))
        rng.shuffle(perm)
        relabeled = Graph(n, tuple((perm[a - 1], perm[b - 1]) for a, b in g.edges))
        assert canonical_form(g) == canonical_form(relabeled)
    assert canonical_form(path_graph(3)) != canonical_form(Graph(3, ((1, 2),)))


def test_has_minor_examples():
    k4 = complete_graph(4)
    assert has_minor(complete_graph(5), k4)
    assert not has_minor(cycle_graph(5), k4)
    assert has_minor(cycle_graph(5), cycle_graph(4))
    assert not has_minor(path_graph(4), cycle_graph(3))
    assert has_minor(complete_multipartite([2, 3]), cycle_graph(4))
    assert has_minor(complete_graph(5), complete_graph(5))
    assert not has_minor(complete_graph(4), complete_graph(5))
    assert has_minor(prism_graph(), k4)
    assert not has_minor(complete_multipartite([2, 3]), k4)


def test_has_minor_budget():
    with pytest.raises(BudgetError):
        has_minor(complete_graph(9), complete_graph(4))


def test_series_parallel_known():
    assert is_series_parallel(cycle_graph(5))
    assert is_series_parallel(path_graph(6))
    assert is_series_parallel(complete_multipartite([2, 3]))
    assert not is_series_parallel(complete_graph(4))
    assert not is_series_parallel(prism_graph())


def test_series_parallel_matches_minor_freeness():
    rng = random.Random(23)
    k4 = complete_graph(4)
    for _ in range(200):
        g = random_graph(rng, rng.randint(2, 7), 0.55)
        assert is_series_parallel(g) == (not has_minor(g, k4))


def test_max_induced_cycle():
    assert max_induced_cycle(cycle_graph(5)) == 5
    assert max_induced_cycle(complete_graph(4)) == 3
    assert max_induced_cycle(path_graph(4)) == 0
    assert max_induced_cycle(make_named("suspend(C4)")) == 4
    # every 6-cycle of K3,3 has a chord, so only squares are chordless
    assert max_induced_cycle(complete_multipartite([3, 3])) == 4
    assert max_induced_cycle(prism_graph()) == 4


def test_clique_sum_decompose_path():
    dec = clique_sum_decompose(path_graph(3))
    assert len(dec.pieces) == 2
    assert all(p.graph.m == 1 for p in dec.pieces)
    assert dec.separators == [(2,)]
    assert dec.recombine() == path_graph(3)


def test_clique_sum_decompose_two_sum():
    g = make_named("delete(K5,1-5)")
    dec = clique_sum_decompose(g)
    assert len(dec.pieces) == 2
    assert dec.separators == [(2, 3, 4)]
    assert all(p.graph == complete_graph(4) for p in dec.pieces)
    assert {p.original_vertices for p in dec.pieces} == {(1, 2, 3, 4), (2, 3, 4, 5)}
    assert dec.recombine() == g


def test_clique_sum_decompose_irreducible():
    dec = clique_sum_decompose(complete_graph(5))
    assert len(dec.pieces) == 1
    assert dec.separators == []
    assert dec.recombine() == complete_graph(5)


def test_clique_sum_recombine_random():
    rng = random.Random(41)
    for _ in range(25):
        g = random_graph(rng, rng.randint(1, 7), 0.5)
        dec = clique_sum_decompose(g)
        if g.m == 0:
            continue
        assert dec.recombine().edges == g.edges
