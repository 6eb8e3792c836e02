import pytest
from hypothesis import given, settings, strategies as st

from linetrees.arborescence import SpanningTree, enumerate_trees
from linetrees.digraph import DiGraph, build_graph, debruijn, kautz
from linetrees.errors import InvalidTreeArrayError
from linetrees.line_bijection import (LineContext, OMEGA, TreeArray,
                                      enumerate_tree_arrays, make_tree_array,
                                      pi, shuffled_order, sigma,
                                      tree_array_count, validate_tree_array)

TWO_CYCLE = build_graph([(0, 1), (1, 0)])
SELF_LOOP = build_graph([(0, 0)])


@st.composite
def digraphs_positive_indeg(draw, max_n=3, max_m=6):
    n = draw(st.integers(1, max_n))
    m = draw(st.integers(n, max_m))
    targets = list(range(n)) + [draw(st.integers(0, n - 1)) for _ in range(m - n)]
    edges = [(draw(st.integers(0, n - 1)), t) for t in targets]
    g = DiGraph(n, edges)
    return g


def test_make_tree_array_two_cycle():
    t = SpanningTree(0, (None, 1))
    a = make_tree_array(TWO_CYCLE, t, [[], []])
    assert a == TreeArray(0, ((OMEGA,), (1,)))


def test_make_tree_array_self_loop():
    a = make_tree_array(SELF_LOOP, SpanningTree(0, (None,)), [[]])
    assert a == TreeArray(0, ((OMEGA,),))


def test_make_tree_array_rejects_bad_proto():
    t = SpanningTree(0, (None, 1))
    with pytest.raises(InvalidTreeArrayError):
        make_tree_array(TWO_CYCLE, t, [[0], []])  # wrong length
    g = debruijn(2, 1)
    tree = enumerate_trees(g)[0]
    with pytest.raises(InvalidTreeArrayError):
        make_tree_array(g, tree, [[2], [2]])  # edge 2 has source 1, not 0


def test_tree_array_count_examples():
    assert tree_array_count(TWO_CYCLE) == 2
    assert tree_array_count(debruijn(2, 1)) == 8   # kappa * prod outdeg^(indeg-1)
    assert tree_array_count(kautz(2, 1)) == 72


def test_enumerate_tree_arrays_counts():
    assert len(list(enumerate_tree_arrays(TWO_CYCLE))) == 2
    assert len(list(enumerate_tree_arrays(debruijn(2, 1)))) == 8
    assert len(list(enumerate_tree_arrays(kautz(2, 1)))) == 72


def test_sigma_two_cycle_hand_trace():
    a = TreeArray(0, ((OMEGA,), (1,)))
    t = sigma(TWO_CYCLE, a)
    # edge 0 starts outside the lists, pops edge 1 from vertex 1's list,
    # then edge 1 pops OMEGA: tree {(e0,e1)} rooted at e1
    assert t.root == 1
    assert t.out_edge[0] is not None and t.out_edge[1] is None


def test_sigma_self_loop():
    t = sigma(SELF_LOOP, TreeArray(0, ((OMEGA,),)))
    assert t == SpanningTree(0, (None,))


def test_pi_inverts_hand_trace():
    a = TreeArray(0, ((OMEGA,), (1,)))
    assert pi(TWO_CYCLE, sigma(TWO_CYCLE, a)) == a


def test_db21_bijection_exhaustive():
    g = debruijn(2, 1)
    ctx = LineContext(g)
    arrays = list(enumerate_tree_arrays(g))
    images = {ctx.sigma(a) for a in arrays}
    assert len(images) == 8
    assert images == set(enumerate_trees(ctx.line))
    for a in arrays:
        assert ctx.pi(ctx.sigma(a)) == a


def test_sigma_term_counts_match():
    # the output tree's indegrees equal the list counts, per edge
    g = kautz(2, 1)
    ctx = LineContext(g)
    for a in enumerate_tree_arrays(g):
        t = ctx.sigma(a)
        indeg = [0] * g.m
        for e, j in enumerate(t.out_edge):
            if j is not None:
                indeg[ctx.line.target(j)] += 1
        for e in range(g.m):
            assert indeg[e] == sum(1 for x in a.lists[g.source(e)] if x == e)


@settings(max_examples=30)
@given(digraphs_positive_indeg(), st.integers(0, 3))
def test_roundtrip_random_graphs_and_orders(g, seed):
    if tree_array_count(g) > 400:
        return
    ctx = LineContext(g)
    order = None if seed == 0 else shuffled_order(g, seed)
    arrays = list(enumerate_tree_arrays(g))
    images = set()
    for a in arrays:
        t = ctx.sigma(a, order)
        images.add(t)
        assert ctx.pi(t, order) == a
    line_trees = set(enumerate_trees(ctx.line, bound=10 ** 7))
    assert images == line_trees
    for t in line_trees:
        assert ctx.sigma(ctx.pi(t, order), order) == t


def test_validate_rejects_wrong_lengths():
    with pytest.raises(InvalidTreeArrayError):
        validate_tree_array(TWO_CYCLE, TreeArray(0, ((OMEGA, 0), (1,))))


def test_validate_rejects_missing_omega():
    with pytest.raises(InvalidTreeArrayError):
        validate_tree_array(TWO_CYCLE, TreeArray(0, ((0,), (1,))))


def test_validate_rejects_omega_not_last():
    g = debruijn(2, 1)
    bad = TreeArray(0, ((OMEGA, 0), (2, 3)))
    with pytest.raises(InvalidTreeArrayError):
        validate_tree_array(g, bad)


def test_validate_rejects_wrong_source():
    # entry 0 has source 0 but sits in vertex 1's list
    with pytest.raises(InvalidTreeArrayError):
        validate_tree_array(TWO_CYCLE, TreeArray(0, ((OMEGA,), (0,))))


def test_validate_rejects_non_tree_last_entries():
    # edges of DB_1(2): 0 = 0->0, 1 = 0->1, 2 = 1->0, 3 = 1->1
    g = debruijn(2, 1)
    validate_tree_array(g, TreeArray(0, ((0, OMEGA), (3, 2))))  # sane baseline
    with pytest.raises(InvalidTreeArrayError):
        # vertex 1's last entry is its self-loop, which never reaches the root
        validate_tree_array(g, TreeArray(0, ((0, OMEGA), (2, 3))))


def test_sigma_rejects_invalid_array():
    with pytest.raises(InvalidTreeArrayError):
        sigma(TWO_CYCLE, TreeArray(0, ((0,), (1,))))


def test_order_must_be_permutation():
    a = TreeArray(0, ((OMEGA,), (1,)))
    with pytest.raises(ValueError):
        sigma(TWO_CYCLE, a, order=[0, 0])
