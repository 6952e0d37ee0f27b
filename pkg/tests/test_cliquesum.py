"""Gluing contexts, lifts, tying quadrics, and composed Groebner bases.

The frozen strings below (the one-edge-overlap quartet f1..f4, the
path determinant, the two determinants of the square with one
diagonal) are the module's ground truth; composed output is also
cross-checked against the direct engine computation.
"""

from collections import Counter

import pytest

from cutkit.binomials import Binomial
from cutkit.cutmodel import (
    exponent_matrix,
    parse_binomial,
    print_binomial,
)
from cutkit.cliquesum import (
    Alignment,
    SumContext,
    align,
    compose_generating_set,
    compose_groebner,
    compose_tagged,
    lift,
    lift_all,
    quad_set,
    verify_generates,
)
from cutkit.engine import (
    GroebnerBasis,
    ideal_equal,
    markov_basis,
    toric_groebner,
)
from cutkit.graphs import (
    BudgetError,
    Graph,
    GraphError,
    complete_graph,
    cycle_graph,
)
from cutkit.orders import TermOrder

K2 = complete_graph(2)
K3 = complete_graph(3)
K4 = complete_graph(4)

K4_QUARTIC = (
    "q[|1234]*q[12|34]*q[13|24]*q[14|23]"
    " - q[1|234]*q[2|134]*q[3|124]*q[4|123]"
)
PATH3_DET = "q[|123]*q[2|13] - q[1|23]*q[12|3]"
SQUARE_DIAG_DETS = (
    "q[|1234]*q[14|23] - q[1|234]*q[4|123]",
    "q[2|134]*q[3|124] - q[12|34]*q[13|24]",
)

# the five-vertex graph missing one edge, glued from two K4's over a
# shared triangle: four tying quadrics and four named lifted quartics
K5E_QUADS = (
    "q[15|234]*q[|12345] - q[1|2345]*q[5|1234]",
    "q[34|125]*q[2|1345] - q[12|345]*q[25|134]",
    "q[24|135]*q[3|1245] - q[13|245]*q[35|124]",
    "q[23|145]*q[4|1235] - q[14|235]*q[45|123]",
)
MONO_A = "q[|12345]*q[34|125]*q[24|135]*q[23|145]"
MONO_B = "q[1|2345]*q[25|134]*q[35|124]*q[45|123]"
MONO_C = "q[5|1234]*q[12|345]*q[13|245]*q[14|235]"
MONO_D = "q[15|234]*q[2|1345]*q[3|1245]*q[4|1235]"


def k5e_context() -> SumContext:
    return SumContext.from_graphs(K4, K4, (2, 3, 4), (1, 2, 3))


def gb_of(g: Graph) -> GroebnerBasis:
    return toric_groebner(exponent_matrix(g))


def named_lifts(ctx):
    f1 = parse_binomial(f"{MONO_A} - {MONO_B}")
    f2 = parse_binomial(f"{MONO_C} - {MONO_D}")
    f3 = parse_binomial(f"{MONO_B} - {MONO_D}")
    f4 = parse_binomial(f"{MONO_A} - {MONO_C}")
    return f1, f2, f3, f4


def assert_kernel(g: Graph, binomials):
    cols = exponent_matrix(g).columns()
    for b in binomials:
        image = [
            sum(col[i] * (p - m) for col, p, m in zip(cols, b.plus, b.minus))
            for i in range(len(cols[0]))
        ]
        assert all(v == 0 for v in image)


# ── contexts ─────────────────────────────────────────────────────────────────


def test_context_gluing_and_maps():
    ctx = k5e_context()
    assert ctx.g.n == 5
    assert ctx.g.edges == tuple(
        e for e in complete_graph(5).edges if e != (1, 5)
    )
    assert ctx.map1 == (1, 2, 3, 4)
    assert ctx.map2 == (2, 3, 4, 5)
    assert ctx.separator == (2, 3, 4)
    assert ctx.private1 == (1,)
    assert ctx.private2 == (5,)

    path = SumContext.from_graphs(K2, K2, (2,), (1,))
    assert path.g == Graph(3, ((1, 2), (2, 3)))
    assert path.map2 == (2, 3)


def test_context_validation_errors():
    with pytest.raises(GraphError):
        SumContext.from_graphs(K4, K4, ())
    with pytest.raises(GraphError):
        SumContext.from_graphs(K4, K4, (1, 2, 3, 4))
    with pytest.raises(GraphError):
        SumContext.from_graphs(K4, K4, (1, 2), (1, 2, 3))
    with pytest.raises(GraphError):
        SumContext.from_graphs(K4, K4, (1, 1))
    with pytest.raises(GraphError):
        SumContext.from_graphs(K4, K4, (1, 5))
    with pytest.raises(GraphError):
        SumContext.from_graphs(cycle_graph(4), K4, (1, 3))  # not an edge


# ── tying quadrics ───────────────────────────────────────────────────────────


def test_quad_path_determinant():
    ctx = SumContext.from_graphs(K2, K2, (2,), (1,))
    assert quad_set(ctx) == {parse_binomial(PATH3_DET)}


def test_quad_square_with_diagonal():
    ctx = SumContext.from_graphs(K3, K3, (2, 3), (1, 2))
    assert ctx.g == Graph(4, ((1, 2), (1, 3), (2, 3), (2, 4), (3, 4)))
    assert quad_set(ctx) == {parse_binomial(s) for s in SQUARE_DIAG_DETS}


def test_quad_one_edge_overlap_quartet():
    ctx = k5e_context()
    assert quad_set(ctx) == {parse_binomial(s) for s in K5E_QUADS}
    assert_kernel(ctx.g, quad_set(ctx))


def test_quad_empty_when_one_side_has_no_private_vertices():
    # factor 1 is exactly the separator clique: the variable grids have
    # a single column, so there is no 2x2 minor to take
    ctx = SumContext.from_graphs(K3, K4, (1, 2, 3), (1, 2, 3))
    assert ctx.g.n == 4
    assert quad_set(ctx) == set()


def test_quad_count_one_vertex_gluing_matches_minimal_basis():
    # triangle plus pendant edge: all six 2x2 minors of the 2x4 grid
    # are needed -- the histogram of the minimal generating set agrees
    ctx = SumContext.from_graphs(K3, K2, (1,), (1,))
    quads = quad_set(ctx)
    assert len(quads) == 6
    assert all(b.degree == 2 for b in quads)
    mb = markov_basis(exponent_matrix(ctx.g))
    assert mb.degree_histogram == {2: 6}
    assert verify_generates(quads, ctx.g)


# ── alignment ────────────────────────────────────────────────────────────────


def test_align_quartic_pairs_and_roundtrip():
    ctx = k5e_context()
    f = parse_binomial(K4_QUARTIC)
    al = align(f, ctx, 1)
    assert al.degree == 4
    got = [
        (pair.plus_blocks[0], pair.minus_blocks[0]) for pair in al.pairs
    ]
    assert got == [
        ((), (1,)),
        ((1, 2), (2,)),
        ((1, 3), (3,)),
        ((1, 4), (4,)),
    ]
    for pair in al.pairs:
        sep = {2, 3, 4}
        assert set(pair.plus_blocks[0]) & sep == set(
            pair.minus_blocks[0]
        ) & sep
    assert al.binomial() == f


def test_align_single_factor_is_trivial():
    # a degree-1 kernel element needs a factor with two partitions
    # cutting the same edges; an isolated vertex provides one
    g1 = Graph(3, ((1, 2),))
    ctx = SumContext.from_graphs(g1, K2, (1,), (1,))
    f = Binomial((0, 0, 0, 1), (1, 0, 0, 0))  # far block 3 vs empty block
    al = align(f, ctx, 1)
    assert al.degree == 1
    assert al.binomial() == f


def test_align_block_swap_for_cycle_quadric():
    # one monomial's factor meets the separator with its other block,
    # so alignment must swap exactly that factor's blocks
    ctx = SumContext.from_graphs(cycle_graph(4), K2, (1, 2), (1, 2))
    f = parse_binomial("q[|1234]*q[13|24] - q[12|34]*q[14|23]")
    al = align(f, ctx, 1)
    sep = {1, 2}
    for pair in al.pairs:
        assert set(pair.plus_blocks[0]) & sep == set(
            pair.minus_blocks[0]
        ) & sep
    assert al.binomial() == f


def test_align_errors():
    ctx = k5e_context()
    with pytest.raises(ValueError):
        align(parse_binomial(PATH3_DET), ctx, 1)  # wrong variable count
    mismatched = parse_binomial(
        "q[|1234]*q[1|234] - q[2|134]*q[12|34]"
    )
    with pytest.raises(ValueError):
        align(mismatched, ctx, 1)
    zero = Binomial((0,) * 8, (0,) * 8)
    with pytest.raises(ValueError):
        align(zero, ctx, 1)


# ── lifting ──────────────────────────────────────────────────────────────────


def test_lift_named_quartics():
    ctx = k5e_context()
    f = parse_binomial(K4_QUARTIC)
    f1, f2, _, _ = named_lifts(ctx)
    assert lift(f, ["|5", "5|", "5|", "5|"], ctx, 1) == f1
    assert lift(f, ["5|", "|5", "|5", "|5"], ctx, 1) == f2
    # block-pair entries mean the same as strings
    assert lift(f, [((), (5,)), ((5,), ()), ((5,), ()), ((5,), ())], ctx, 1) == f1
    # an alignment can be passed instead of the raw binomial
    assert lift(align(f, ctx, 1), ["|5", "5|", "5|", "5|"], ctx) == f1


def test_lift_with_empty_private_side_is_identity():
    ctx = SumContext.from_graphs(K4, K3, (2, 3, 4), (1, 2, 3))
    assert ctx.g == K4
    f = parse_binomial(K4_QUARTIC)
    assert lift(f, ["|", "|", "|", "|"], ctx, 1) == f


def test_lift_entry_errors():
    ctx = k5e_context()
    f = parse_binomial(K4_QUARTIC)
    with pytest.raises(ValueError):
        lift(f, ["|5", "5|"], ctx, 1)  # wrong length
    with pytest.raises(ValueError):
        lift(f, ["|", "5|", "5|", "5|"], ctx, 1)  # missing vertex
    with pytest.raises(ValueError):
        lift(f, ["5|5", "5|", "5|", "5|"], ctx, 1)  # repeated vertex
    with pytest.raises(ValueError):
        lift(f, ["4|5", "5|", "5|", "5|"], ctx, 1)  # not a private vertex


def test_lift_all_counts_and_membership():
    ctx = k5e_context()
    f = parse_binomial(K4_QUARTIC)
    lifts1 = lift_all({f}, ctx, 1)
    lifts2 = lift_all({f}, ctx, 2)
    assert len(lifts1) == 16
    assert len(lifts2) == 16
    f1, f2, f3, f4 = named_lifts(ctx)
    assert f1 in lifts1 and f2 in lifts1
    assert f3 in lifts2 and f4 in lifts2
    assert_kernel(ctx.g, lifts1 | lifts2)
    assert lift_all(set(), ctx, 1) == set()


def test_lift_all_budget():
    ctx = k5e_context()
    f = parse_binomial(K4_QUARTIC)
    with pytest.raises(BudgetError):
        lift_all({f}, ctx, 1, budget=8)


# ── assembled generating sets ────────────────────────────────────────────────


def test_compose_generating_set_structure():
    ctx = k5e_context()
    f = parse_binomial(K4_QUARTIC)
    M = compose_generating_set(ctx, {f}, {f})
    assert len(M) == 36
    assert M == lift_all({f}, ctx, 1) | lift_all({f}, ctx, 2) | quad_set(ctx)
    assert_kernel(ctx.g, M)


def test_syzygy_of_named_lifts_by_expansion():
    # as signed polynomials: (A-B) - (C-D) + (B-D) - (A-C) == 0
    monos = {}
    for name, s in (("A", MONO_A), ("B", MONO_B), ("C", MONO_C), ("D", MONO_D)):
        monos[name] = parse_binomial(f"{s} - 1").plus
    total: Counter = Counter()
    for sign, name in ((1, "A"), (-1, "B"), (-1, "C"), (1, "D"),
                       (1, "B"), (-1, "D"), (-1, "A"), (1, "C")):
        total[monos[name]] += sign
    assert not [k for k, v in total.items() if v != 0]


def test_compose_tagged_provenance():
    ctx = k5e_context()
    f = parse_binomial(K4_QUARTIC)
    tagged = compose_tagged(ctx, {f}, {f})
    assert len(tagged) == 36
    sides = Counter(tag["side"] for _, tag in tagged)
    assert sides == {1: 16, 2: 16, "quad": 4}
    for b, tag in tagged:
        if tag["side"] == "quad":
            assert tag["ef"] is None
        else:
            assert len(tag["ef"]) == 4
            assert all("|" in e for e in tag["ef"])
    # deterministic: same call, same order
    again = compose_tagged(ctx, {f}, {f})
    assert [b for b, _ in tagged] == [b for b, _ in again]


# ── generation checks ────────────────────────────────────────────────────────


def test_verify_generates_square_with_diagonal():
    ctx = SumContext.from_graphs(K3, K3, (2, 3), (1, 2))
    M = compose_generating_set(ctx, set(), set())
    assert M == quad_set(ctx)
    assert verify_generates(M, ctx.g)
    for b in M:
        assert not verify_generates(M - {b}, ctx.g)


def test_verify_generates_rejects_non_kernel_elements():
    ctx = SumContext.from_graphs(K2, K2, (2,), (1,))
    bad = Binomial((1, 0, 0, 0), (0, 1, 0, 0))
    with pytest.raises(ValueError):
        verify_generates({bad}, ctx.g)
    with pytest.raises(ValueError):
        verify_generates({parse_binomial(K4_QUARTIC)}, ctx.g)


def test_verify_generates_one_edge_overlap_suite():
    ctx = k5e_context()
    f = parse_binomial(K4_QUARTIC)
    M = compose_generating_set(ctx, {f}, {f})
    reference = gb_of(ctx.g)
    assert verify_generates(M, ctx.g, reference=reference)
    # dropping any one of the four named lifts keeps a generating set
    for fi in named_lifts(ctx):
        assert fi in M
        assert verify_generates(M - {fi}, ctx.g, reference=reference)
    # dropping a tying quadric loses the ideal
    quad = parse_binomial(K5E_QUADS[0])
    assert not verify_generates(M - {quad}, ctx.g, reference=reference)


# ── composed Groebner bases ──────────────────────────────────────────────────


def test_compose_groebner_paths_are_determinantal():
    ctx = SumContext.from_graphs(K2, K2, (2,), (1,))
    r1 = compose_groebner(ctx, gb_of(K2), gb_of(K2))
    assert r1.degree_histogram() == {2: 1}
    assert r1.stats["verified_groebner"]
    assert set(r1.elements) == {parse_binomial(PATH3_DET)}

    ctx2 = SumContext.from_graphs(ctx.g, K2, (3,), (1,))
    r2 = compose_groebner(ctx2, r1, gb_of(K2))
    assert r2.degree_histogram() == {2: 9}
    assert ideal_equal(r2, gb_of(ctx2.g))


def test_compose_groebner_triangulated_pentagon_quadratic():
    c1 = SumContext.from_graphs(K3, K3, (1, 3), (1, 2))
    r = compose_groebner(c1, gb_of(K3), gb_of(K3))
    assert r.degree_histogram() == {2: 2}
    assert ideal_equal(r, gb_of(c1.g))
    c2 = SumContext.from_graphs(c1.g, K3, (1, 4), (1, 2))
    r = compose_groebner(c2, r, gb_of(K3))
    assert set(r.degree_histogram()) == {2}
    assert ideal_equal(r, gb_of(c2.g))


def test_compose_groebner_one_edge_overlap():
    ctx = k5e_context()
    gk4 = gb_of(K4)
    assert gk4.degree_histogram() == {4: 1}
    r = compose_groebner(ctx, gk4, gk4)
    assert r.stats["assembled_size"] == 36
    assert r.degree_histogram() == {2: 4, 4: 31}
    assert ideal_equal(r, gb_of(ctx.g))
    assert markov_basis(exponent_matrix(ctx.g)).degree_histogram == {
        2: 4,
        4: 31,
    }


def test_compose_groebner_input_validation():
    ctx = SumContext.from_graphs(K2, K2, (2,), (1,))
    good = gb_of(K2)
    stale = GroebnerBasis(
        TermOrder(), (), (), nvars=2, reduced=True, certified_complete=False
    )
    with pytest.raises(ValueError):
        compose_groebner(ctx, stale, good)
    wrong_vars = gb_of(K3)
    with pytest.raises(ValueError):
        compose_groebner(ctx, wrong_vars, good)


def test_compose_groebner_star_trees_segre():
    # iterated one-vertex gluings of single edges: every basis element
    # stays a quadric with four distinct variables (a 2x2 determinant)
    g = K2
    r = gb_of(K2)
    for _ in range(3):
        ctx = SumContext.from_graphs(g, K2, (1,), (1,))
        r = compose_groebner(ctx, r, gb_of(K2))
        g = ctx.g
    assert g.edges == ((1, 2), (1, 3), (1, 4), (1, 5))
    assert set(r.degree_histogram()) == {2}
    for b in r.elements:
        assert sum(b.plus) == 2 and sum(b.minus) == 2
        assert max(b.plus) == 1 and max(b.minus) == 1
    assert ideal_equal(r, gb_of(g))
