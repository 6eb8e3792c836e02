import pytest
import sympy
from hypothesis import given, strategies as st

from linetrees.arborescence import (GenPoly, SpanningTree, bareiss_determinant,
                                    count_trees, count_trees_rooted,
                                    enumerate_trees, kappa_edge, kappa_vertex,
                                    knuth_check, rhs_product, trees_by_root,
                                    validate_tree, verify_identity,
                                    weighted_tree_sum)
from linetrees.digraph import DiGraph, build_graph, debruijn, kautz, line_graph
from linetrees.errors import EnumerationBound, InvalidTreeError

TWO_CYCLE = build_graph([(0, 1), (1, 0)])
SELF_LOOP = build_graph([(0, 0)])


@st.composite
def digraphs_with_indeg(draw, max_n=4, max_m=7):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(n, max_m))
    targets = list(range(n)) + [draw(st.integers(0, n - 1)) for _ in range(m - n)]
    edges = [(draw(st.integers(0, n - 1)), t) for t in targets]
    return DiGraph(n, edges)


def test_enumerate_two_cycle():
    trees = enumerate_trees(TWO_CYCLE)
    assert trees == [SpanningTree(0, (None, 1)), SpanningTree(1, (0, None))]


def test_enumerate_self_loop():
    assert enumerate_trees(SELF_LOOP) == [SpanningTree(0, (None,))]


def test_enumerate_db21():
    trees = enumerate_trees(debruijn(2, 1))
    assert len(trees) == 2  # kappa = m^(m-1)


def test_enumerate_respects_bound():
    with pytest.raises(EnumerationBound):
        enumerate_trees(debruijn(2, 2), bound=3)


def test_validate_tree_rejects_cycles():
    g = build_graph([(0, 1), (1, 0), (2, 0)])
    with pytest.raises(InvalidTreeError):
        validate_tree(g, SpanningTree(2, (0, 1, None)))  # 0 and 1 chase each other
    with pytest.raises(InvalidTreeError):
        validate_tree(g, SpanningTree(0, (1, None, None)))  # vertex 2 missing an edge


def test_count_rooted_kautz21():
    g = kautz(2, 1)
    assert [count_trees_rooted(g, r) for r in range(3)] == [3, 3, 3]
    assert count_trees(g) == 9  # (m+1)^m


def test_count_rooted_self_loop():
    assert count_trees_rooted(SELF_LOOP, 0) == 1  # empty determinant


def test_count_db22_by_roots():
    g = debruijn(2, 2)
    assert sum(count_trees_rooted(g, r) for r in range(g.n)) == 8  # m^(m^n - 1)


def test_count_zero_when_unreachable():
    g = build_graph([(0, 1), (1, 0), (0, 2)])  # nothing leaves vertex 2
    assert count_trees_rooted(g, 0) == 0
    assert count_trees_rooted(g, 2) == 1


@given(digraphs_with_indeg())
def test_determinant_matches_enumeration(g):
    trees = enumerate_trees(g, bound=10 ** 6)
    by_root = trees_by_root(trees)
    for r in range(g.n):
        assert count_trees_rooted(g, r) == by_root.get(r, 0)


@given(st.lists(st.lists(st.integers(-6, 6), min_size=4, max_size=4),
                min_size=4, max_size=4))
def test_bareiss_against_sympy(rows):
    assert bareiss_determinant(rows) == sympy.Matrix(rows).det()


def test_kappa_polys_two_cycle():
    assert kappa_edge(TWO_CYCLE).terms == {(0,): 1, (1,): 1}
    assert kappa_vertex(TWO_CYCLE).terms == {(0,): 1, (1,): 1}


def test_kappa_self_loop_is_constant_one():
    assert kappa_edge(SELF_LOOP).terms == {(): 1}
    assert kappa_vertex(SELF_LOOP).terms == {(): 1}


@given(digraphs_with_indeg())
def test_kappa_at_ones_is_tree_count(g):
    trees = enumerate_trees(g, bound=10 ** 6)
    ones_e = [1] * g.m
    ones_v = [1] * g.n
    assert kappa_edge(g).evaluate(ones_e) == len(trees)
    assert kappa_vertex(g).evaluate(ones_v) == len(trees)


@given(digraphs_with_indeg())
def test_kappa_monomial_degree(g):
    for mon in kappa_edge(g).terms:
        assert len(mon) == g.n - 1


def test_rhs_product_trivial_cases():
    # both indegrees 1: the degree product is empty
    assert rhs_product(TWO_CYCLE) == kappa_edge(TWO_CYCLE)
    assert rhs_product(SELF_LOOP).terms == {(): 1}


def test_rhs_product_requires_positive_indegree():
    with pytest.raises(InvalidTreeError):
        rhs_product(build_graph([(0, 1)], n_vertices=2))


def test_rhs_product_db21_total():
    poly = rhs_product(debruijn(2, 1))
    assert poly.total_coefficient() == 8  # = kappa(DB_2(2))


def test_verify_identity_two_cycle():
    report = verify_identity(TWO_CYCLE)
    assert report.holds and report.lhs_terms == report.rhs_terms == 2


def test_verify_identity_db21():
    report = verify_identity(debruijn(2, 1))
    assert report.holds
    lg, lgm = line_graph(debruijn(2, 1))
    assert kappa_vertex(lg).rename(lgm.backward, "edge").total_coefficient() == 8


def test_verify_identity_kautz21():
    report = verify_identity(kautz(2, 1))
    assert report.holds
    assert rhs_product(kautz(2, 1)).total_coefficient() == 72


def test_verify_identity_reports_witness(monkeypatch):
    # the identity itself always holds, so skew one side to see the witness
    import linetrees.arborescence as arb
    real = arb.rhs_product

    def skewed(g, bound=arb.DEFAULT_BOUND):
        poly = real(g, bound=bound)
        mon = next(iter(poly.terms))
        poly.terms[mon] += 1
        return poly

    monkeypatch.setattr(arb, "rhs_product", skewed)
    report = arb.verify_identity(TWO_CYCLE)
    assert not report.holds
    assert report.witness is not None and report.witness["lhs"] != report.witness["rhs"]


@given(digraphs_with_indeg())
def test_verify_identity_random_graphs(g):
    assert verify_identity(g, bound=10 ** 7).holds


@given(digraphs_with_indeg())
def test_evaluate_method_agrees(g):
    assert verify_identity(g, method="evaluate", seed=11).holds


def test_weighted_tree_sum_matches_enumeration():
    g = kautz(2, 1)
    weights = [2, 3, 5, 7, 11, 13]
    expected = 0
    for t in enumerate_trees(g):
        prod = 1
        for e in t.out_edge:
            if e is not None:
                prod *= weights[e]
        expected += prod
    assert weighted_tree_sum(g, weights) == expected


@pytest.mark.parametrize("g,line_count,base,prod", [
    (TWO_CYCLE, 2, 2, 1),
    (debruijn(2, 1), 8, 2, 4),
    (kautz(2, 1), 72, 9, 8),
])
def test_knuth_examples(g, line_count, base, prod):
    report = knuth_check(g)
    assert report.holds
    assert (report.kappa_line, report.kappa_base, report.degree_product) == \
        (line_count, base, prod)


def test_genpoly_arithmetic():
    p = GenPoly.linear("edge", [0, 1])
    sq = p * p
    assert sq.terms == {(0, 0): 1, (0, 1): 2, (1, 1): 1}
    assert p.power(3).total_coefficient() == 8
    with pytest.raises(ValueError):
        p * GenPoly.linear("vertex", [0])
