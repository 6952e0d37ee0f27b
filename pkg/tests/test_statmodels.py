"""Statistical-model bridges: covariance and split-system coordinates."""

import itertools
import random
from fractions import Fraction

import pytest

from cutkit.binomials import Binomial
from cutkit.cutmodel import all_partitions, exponent_matrix
from cutkit.engine import markov_basis, toric_groebner
from cutkit.graphs import (
    Graph,
    GraphError,
    complete_graph,
    cycle_graph,
    path_graph,
    suspend,
)
from cutkit.statmodels import (
    LeafTree,
    Split,
    SplitSystem,
    binary_model_matrix,
    complete_cyclic_system,
    covariance_index,
    covariance_partition,
    covariance_table,
    fourier,
    fourier_index,
    fourier_inverse,
    fourier_partition,
    graph_of_splits,
    parse_split_system,
    parse_tree,
    split_model_matrix,
    split_model_point,
    split_model_table,
    split_to_edge,
    splits_of_tree,
    verify_covariance,
    verify_split_model,
)

# Frozen mapping of index strings to suspension partitions for three
# vertices, partition blocks printed with vertex 1's block first.
COVARIANCE_TABLE_3 = [
    ("p000", "1234|"),
    ("p001", "124|3"),
    ("p010", "134|2"),
    ("p011", "14|23"),
    ("p100", "1|234"),
    ("p101", "13|24"),
    ("p110", "12|34"),
    ("p111", "123|4"),
]

# The triangle's binary model ideal is principal, one degree-4 binomial;
# column positions are index strings read as binary numbers.
K3_MODEL_PLUS = (0b000, 0b011, 0b101, 0b110)
K3_MODEL_MINUS = (0b001, 0b010, 0b100, 0b111)


def sigma4() -> SplitSystem:
    """The six splits of four taxa whose blocks are consecutive runs,
    in the listing order the frozen table below numbers them by."""
    return SplitSystem(
        4,
        [
            Split(4, (1, 2)),
            Split(4, (2, 3)),
            Split(4, (1,)),
            Split(4, (2,)),
            Split(4, (3,)),
            Split(4, (1, 2, 3)),
        ],
    )


# Frozen: cut variable -> even index string -> parameter monomial, the
# monomial's factors ordered by the associated edge of each split.
SIGMA4_TABLE = {
    "q[|1234]": ("f0000", "u4_0*u2_0*u3_0*u5_0*u1_0*u6_0"),
    "q[4|123]": ("f1001", "u4_0*u2_0*u3_1*u5_0*u1_1*u6_1"),
    "q[3|124]": ("f0011", "u4_0*u2_1*u3_0*u5_1*u1_0*u6_1"),
    "q[2|134]": ("f0110", "u4_1*u2_0*u3_0*u5_1*u1_1*u6_0"),
    "q[1|234]": ("f1100", "u4_1*u2_1*u3_1*u5_0*u1_0*u6_0"),
    "q[12|34]": ("f1010", "u4_0*u2_1*u3_1*u5_1*u1_1*u6_0"),
    "q[13|24]": ("f1111", "u4_1*u2_0*u3_1*u5_1*u1_0*u6_1"),
    "q[14|23]": ("f0101", "u4_1*u2_1*u3_0*u5_0*u1_1*u6_1"),
}

# The model ideal of the full four-taxon system is one quartic; these
# are positions in the even-column order f0000 < f0011 < ... < f1111.
SIGMA4_QUARTIC_PLUS = (0, 2, 5, 7)  # f0000 f0101 f1010 f1111
SIGMA4_QUARTIC_MINUS = (1, 3, 4, 6)  # f0011 f0110 f1001 f1100


def vec(n, positions):
    out = [0] * n
    for p in positions:
        out[p] += 1
    return tuple(out)


# ── splits and systems ───────────────────────────────────────────────────────


def test_split_canonicalization_and_validation():
    s = Split(4, (3, 4))
    assert s.blockA == (1, 2) and s.blockB == (3, 4)
    assert s == Split(4, (1, 2), (3, 4))
    assert s.label() == "12|34"
    assert Split(4, (1,)).label() == "1|234"
    with pytest.raises(ValueError):
        Split(4, ())
    with pytest.raises(ValueError):
        Split(4, (1, 2, 3, 4))
    with pytest.raises(ValueError):
        Split(4, (1, 1))
    with pytest.raises(ValueError):
        Split(4, (5,))
    with pytest.raises(ValueError):
        Split(4, (1, 2), (3,))
    with pytest.raises(ValueError):
        Split(1, (1,))


def test_split_intervals():
    assert Split(4, (2, 3)).is_interval
    assert Split(4, (1, 2, 3)).is_interval
    assert Split(5, (4, 5)).is_interval  # canonical block is [1..3]
    assert not Split(4, (1, 3)).is_interval
    assert not Split(5, (1, 3, 4)).is_interval


def test_split_system_order_and_validation():
    s1, s2 = Split(3, (1,)), Split(3, (2,))
    sys_a = SplitSystem(3, [s1, s2])
    sys_b = SplitSystem(3, [s2, s1])
    assert sys_a.splits == (s1, s2) and sys_b.splits == (s2, s1)
    assert sys_a != sys_b  # parameter numbering differs
    assert sys_a.r == 2 and sys_a.is_cyclic
    with pytest.raises(ValueError):
        SplitSystem(3, [s1, s1])
    with pytest.raises(ValueError):
        SplitSystem(4, [s1])
    with pytest.raises(TypeError):
        SplitSystem(3, [(1, 2)])
    assert not SplitSystem(4, [Split(4, (1, 3))]).is_cyclic


def test_complete_cyclic_system_counts():
    for n in range(3, 7):
        sys_n = complete_cyclic_system(n)
        assert sys_n.r == n * (n - 1) // 2
        assert sys_n.is_cyclic
        assert graph_of_splits(sys_n) == complete_graph(n)
    assert set(complete_cyclic_system(4).splits) == set(sigma4().splits)


def test_parse_split_system():
    sys_p = parse_split_system("1,2 | 3,4\n# comment\n\n4 | 1,2,3\n")
    assert sys_p.n == 4
    assert sys_p.splits == (Split(4, (1, 2)), Split(4, (1, 2, 3)))
    with pytest.raises(ValueError):
        parse_split_system("1,2,3,4\n")
    with pytest.raises(ValueError):
        parse_split_system("1,x | 2,3\n")
    with pytest.raises(ValueError):
        parse_split_system("1 | 3\n")  # taxon 2 missing
    with pytest.raises(ValueError):
        parse_split_system("")
    with pytest.raises(ValueError):
        parse_split_system("1 | 2 | 3\n")


# ── binary graph models ──────────────────────────────────────────────────────


def test_binary_model_matrix_shape_and_columns():
    A = binary_model_matrix(complete_graph(3))
    assert (A.nrows, A.ncols, A.column_degree) == (12, 8, 3)
    assert A.row_labels[:4] == (
        "b[1,2][00]",
        "b[1,2][01]",
        "b[1,2][10]",
        "b[1,2][11]",
    )
    assert A.col_labels[0] == "p000" and A.col_labels[7] == "p111"
    ones = [A.row_labels[r] for r, e in enumerate(A.column(0)) if e]
    assert ones == ["b[1,2][00]", "b[1,3][00]", "b[2,3][00]"]
    # index 101 reads bit pairs (1,0), (1,1), (0,1) on edges 12, 13, 23
    ones = [A.row_labels[r] for r, e in enumerate(A.column(0b101)) if e]
    assert ones == ["b[1,2][10]", "b[1,3][11]", "b[2,3][01]"]


def test_binary_model_matrix_k2_is_permutation():
    A = binary_model_matrix(path_graph(2))
    assert (A.nrows, A.ncols) == (4, 4)
    cols = A.columns()
    assert sorted(cols) == sorted(
        vec(4, (i,)) for i in range(4)
    )
    assert len(markov_basis(A).elements) == 0


def test_binary_model_matrix_rejects_isolated_vertex():
    with pytest.raises(GraphError):
        binary_model_matrix(Graph(3, ((1, 2),)))


def test_triangle_model_ideal_is_one_quartic():
    mk = markov_basis(binary_model_matrix(complete_graph(3)))
    assert mk.degree_histogram == {4: 1}
    expected = Binomial(vec(8, K3_MODEL_PLUS), vec(8, K3_MODEL_MINUS))
    assert mk.elements[0] == expected


# ── covariance bijection ─────────────────────────────────────────────────────


def test_covariance_bijection_roundtrip():
    for n in range(1, 7):
        seen = set()
        for i in range(1 << n):
            bits = format(i, f"0{n}b")
            p = covariance_partition(bits)
            assert p.n == n + 1
            assert covariance_index(p) == bits
            seen.add(p)
        assert seen == set(all_partitions(n + 1))


def test_covariance_partition_validation():
    with pytest.raises(ValueError):
        covariance_partition("01x")
    with pytest.raises(ValueError):
        covariance_partition("")


def test_covariance_table_three_vertices():
    table = covariance_table(3)
    assert table == COVARIANCE_TABLE_3


def test_verify_covariance_small_graphs():
    assert verify_covariance(path_graph(2))
    assert verify_covariance(complete_graph(3))
    assert verify_covariance(path_graph(3))


def test_verify_covariance_square_and_histogram():
    g = cycle_graph(4)
    assert verify_covariance(g)
    # the model ideal's graded counts match the suspension's
    mk = markov_basis(binary_model_matrix(g))
    hat = markov_basis(exponent_matrix(suspend(g)))
    assert mk.degree_histogram == hat.degree_histogram == {2: 8, 4: 8}


# ── Fourier transform ────────────────────────────────────────────────────────


def test_fourier_roundtrip_exact():
    rng = random.Random(11)
    for n in range(1, 7):
        p = [
            Fraction(rng.randint(-60, 60), rng.randint(1, 12))
            for _ in range(1 << n)
        ]
        f = fourier(p)
        assert all(isinstance(x, Fraction) for x in f)
        assert fourier_inverse(f) == p
        assert fourier(fourier(p)) == [x * (1 << n) for x in p]


def test_fourier_point_mass_and_validation():
    p = [Fraction(0)] * 8
    p[0] = Fraction(1)
    assert fourier(p) == [Fraction(1)] * 8
    assert fourier_inverse([1] * 8) == p
    with pytest.raises(ValueError):
        fourier([1, 2, 3])
    with pytest.raises(ValueError):
        fourier([])


def test_fourier_two_taxa_single_split():
    u0, u1 = Fraction(1), Fraction(1, 3)
    f = split_model_point(Split(2, (1,)), u0, u1)
    assert f == [u0, 0, 0, u1]
    p = fourier_inverse(f)
    assert p == [
        (u0 + u1) / 4,
        (u0 - u1) / 4,
        (u0 - u1) / 4,
        (u0 + u1) / 4,
    ]


def test_split_model_point_three_taxa():
    u0, u1 = Fraction(7, 2), Fraction(1, 5)
    s = Split(3, (1, 2))
    p = fourier_inverse(split_model_point(s, u0, u1))
    expected = [Fraction(0)] * 8
    expected[0b000] = (u0 + u1) / 4
    expected[0b111] = (u0 + u1) / 4
    expected[0b110] = (u0 - u1) / 4  # block {1,2} on, block {3} off
    expected[0b001] = (u0 - u1) / 4
    assert p == expected
    # equal parameters concentrate on the two constant strings
    p = fourier_inverse(split_model_point(s, u0, u0))
    assert p[0b000] == p[0b111] == u0 / 2
    assert all(x == 0 for i, x in enumerate(p) if i not in (0, 7))
    # u1 = 0 spreads uniformly over the four patterns above
    p = fourier_inverse(split_model_point(s, 1, 0))
    assert [p[i] for i in (0b000, 0b001, 0b110, 0b111)] == [
        Fraction(1, 4)
    ] * 4


# ── split-system model matrices ──────────────────────────────────────────────


def test_split_model_matrix_sigma4():
    J = split_model_matrix(sigma4())
    assert (J.nrows, J.ncols, J.column_degree) == (12, 8, 6)
    assert J.rank() == 7
    # transliterate the frozen table into columns and compare exactly
    row_pos = {label: i for i, label in enumerate(J.row_labels)}
    col_pos = {label: i for i, label in enumerate(J.col_labels)}
    for fname, monomial in SIGMA4_TABLE.values():
        expected = [0] * J.nrows
        for factor in monomial.split("*"):
            expected[row_pos[factor]] = 1
        assert list(J.column(col_pos[fname])) == expected


def test_split_model_matrix_rank_is_r_plus_one():
    rng = random.Random(23)
    for _ in range(50):
        n = rng.randint(3, 6)
        masks = rng.sample(
            range(1, 1 << (n - 1)), rng.randint(1, min(6, (1 << (n - 1)) - 1))
        )
        splits = [
            Split(n, tuple(k for k in range(1, n) if m >> (k - 1) & 1))
            for m in masks
        ]
        sigma = SplitSystem(n, splits)
        assert split_model_matrix(sigma).rank() == sigma.r + 1


def test_split_model_matrix_single_split_has_zero_kernel():
    sigma = SplitSystem(2, [Split(2, (1,))])
    J = split_model_matrix(sigma)
    assert (J.nrows, J.ncols) == (2, 2)
    assert len(toric_groebner(J).elements) == 0
    with pytest.raises(ValueError):
        split_model_matrix(SplitSystem(4, []))


def test_sigma4_model_ideal_is_the_frozen_quartic():
    mk = markov_basis(split_model_matrix(sigma4()))
    assert mk.degree_histogram == {4: 1}
    expected = Binomial(
        vec(8, SIGMA4_QUARTIC_PLUS), vec(8, SIGMA4_QUARTIC_MINUS)
    )
    assert mk.elements[0] == expected


def test_sigma4_without_diagonals_is_the_square_model():
    full = sigma4()
    sub = SplitSystem(4, full.splits[2:])  # drop the two two-run splits
    assert graph_of_splits(sub) == cycle_graph(4)
    mk = markov_basis(split_model_matrix(sub))
    assert mk.degree_histogram == {2: 3}


# ── the split/cut bijection ──────────────────────────────────────────────────


def test_split_to_edge():
    assert split_to_edge(Split(4, (1, 2))) == (2, 4)
    assert split_to_edge(Split(4, (1,))) == (1, 4)
    assert split_to_edge(Split(4, (2,))) == (1, 2)
    assert split_to_edge(Split(4, (1, 2, 3))) == (3, 4)
    with pytest.raises(ValueError):
        split_to_edge(Split(4, (1, 3)))
    # run-to-edge correspondence is a bijection onto all edges
    edges = {split_to_edge(s) for s in complete_cyclic_system(5).splits}
    assert edges == set(complete_graph(5).edges)


def test_graph_of_splits_sigma4():
    assert graph_of_splits(sigma4()) == complete_graph(4)
    with pytest.raises(ValueError):
        graph_of_splits(SplitSystem(4, [Split(4, (1, 3))]))


def test_fourier_index_bijection():
    for n in range(3, 7):
        images = {}
        for p in all_partitions(n):
            bits = fourier_index(p)
            assert bits.count("1") % 2 == 0
            assert fourier_partition(bits) == p
            images[bits] = p
        assert len(images) == 1 << (n - 1)
    assert fourier_index(fourier_partition("1001")) == "1001"
    with pytest.raises(ValueError):
        fourier_partition("100")
    with pytest.raises(ValueError):
        fourier_partition("10a0")


def test_fourier_index_frozen_values():
    parts = {p.label(): p for p in all_partitions(4)}
    assert fourier_index(parts["|1234"]) == "0000"
    assert fourier_index(parts["13|24"]) == "1111"
    assert fourier_index(parts["4|123"]) == "1001"


def test_split_model_table_sigma4_verbatim():
    rows = split_model_table(sigma4())
    assert len(rows) == 8
    assert {q: (f, m) for q, f, m in rows} == SIGMA4_TABLE


def test_verify_split_model_exhaustive_sigma4_subsets():
    full = sigma4()
    for k in range(full.r + 1):
        for sub in itertools.combinations(full.splits, k):
            assert verify_split_model(SplitSystem(4, sub))


def test_verify_split_model_random_five_taxa():
    pool = complete_cyclic_system(5).splits
    rng = random.Random(31)
    for _ in range(20):
        chosen = rng.sample(pool, rng.randint(0, len(pool)))
        assert verify_split_model(SplitSystem(5, chosen))


def test_verify_split_model_rejects_non_cyclic():
    with pytest.raises(ValueError):
        verify_split_model(SplitSystem(4, [Split(4, (1, 3))]))


def test_cut_binomials_vanish_under_split_parametrization():
    systems = [
        sigma4(),
        SplitSystem(4, sigma4().splits[2:]),
        SplitSystem(5, complete_cyclic_system(5).splits[:6]),
    ]
    for sigma in systems:
        g = graph_of_splits(sigma)
        J = split_model_matrix(sigma)
        col_pos = {label: i for i, label in enumerate(J.col_labels)}
        gb = toric_groebner(exponent_matrix(g))
        parts = all_partitions(sigma.n)
        for b in gb.elements:
            plus = [0] * J.nrows
            minus = [0] * J.nrows
            for qidx, e in enumerate(b.plus):
                if e:
                    col = J.column(col_pos[f"f{fourier_index(parts[qidx])}"])
                    plus = [a + e * c for a, c in zip(plus, col)]
            for qidx, e in enumerate(b.minus):
                if e:
                    col = J.column(col_pos[f"f{fourier_index(parts[qidx])}"])
                    minus = [a + e * c for a, c in zip(minus, col)]
            assert plus == minus


# ── trees ────────────────────────────────────────────────────────────────────


def test_parse_tree_and_validation():
    t = parse_tree(" ( ( 1 , 2 ) , 3 , ( 4 , 5 ) ) ")
    assert t.root == ((1, 2), 3, (4, 5)) and t.n == 5
    assert t == LeafTree(((1, 2), 3, (4, 5)))
    for bad in [
        "((1,2),3",  # unclosed
        "(1,2,3))",  # trailing
        "(1,2,x)",  # bad leaf
        "(1,2)",  # root of degree two
        "((1,2),(3,4))",  # root of degree two
        "((1),2,3)",  # internal vertex of degree two
        "(1,2,2)",  # labels not a permutation
        "(1,3,4)",  # labels not a permutation
        "5",  # no internal vertex
        "",
    ]:
        with pytest.raises(ValueError):
            parse_tree(bad)


def test_splits_of_tree_star_and_triangle():
    star = splits_of_tree(parse_tree("(1,2,3,4)"))
    assert star.r == 4 and star.is_cyclic
    assert all(len(s.blockA) in (1, 3) for s in star.splits)
    assert graph_of_splits(star) == cycle_graph(4)
    tri = splits_of_tree(parse_tree("(1,2,3)"))
    assert tri.r == 3
    assert graph_of_splits(tri) == complete_graph(3)


def test_splits_of_tree_caterpillar_is_triangulated_pentagon():
    sys_t = splits_of_tree(parse_tree("((1,2),3,(4,5))"))
    assert sys_t.r == 7 and sys_t.is_cyclic
    labels = [s.label() for s in sys_t.splits]
    assert labels == [
        "12|345",
        "1|2345",
        "2|1345",
        "3|1245",
        "123|45",
        "4|1235",
        "1234|5",
    ]
    g = graph_of_splits(sys_t)
    assert g == Graph(
        5, ((1, 2), (2, 3), (3, 4), (4, 5), (1, 5), (2, 5), (3, 5))
    )
    assert verify_split_model(sys_t)


def test_splits_of_tree_six_leaves():
    sys_t = splits_of_tree(parse_tree("((1,2),3,(4,5),6)"))
    assert sys_t.r == 8 and sys_t.is_cyclic
    g = graph_of_splits(sys_t)
    hexagon = [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)]
    assert g == Graph(6, tuple(hexagon + [(2, 6), (3, 5)]))


def test_splits_of_tree_nonplanar_labeling_is_not_cyclic():
    sys_t = splits_of_tree(parse_tree("((1,3),2,(4,5))"))
    assert not sys_t.is_cyclic
    with pytest.raises(ValueError):
        graph_of_splits(sys_t)
