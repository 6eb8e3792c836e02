"""Tree arrays and the mutually inverse maps between them and spanning
trees of the directed line graph.

A *tree array* of G assigns to each vertex v an ordered list of length
indeg(v) whose entries are out-edges of v, except for a single sentinel
OMEGA which terminates the root's list.  The last entries of the non-root
lists must form a spanning tree of G.  Tree arrays are exactly the data
"spanning tree + one extra out-edge list entry per surplus indegree", so
there are kappa(G) * prod_v outdeg(v)^(indeg(v)-1) of them.

The forward map (here ``sigma``) consumes a tree array and emits a spanning
tree of the line graph LG; the inverse (``pi``) peels a spanning tree of LG
leaf by leaf and reconstructs the array.  Both depend on a total order on
the edges of G; any order works, as long as the same one is used in both
directions.

sigma, given array <l_v> and an empty subgraph T' of LG:
  1. among edges e with no remaining copy in l_{s(e)} and no out-edge in
     T' yet, pick the smallest, f;
  2. pop the head g of l_{t(f)}; if g is OMEGA stop, returning T' rooted
     at f;
  3. otherwise add the line edge (f, g) to T' and repeat.

pi, given a spanning tree T' of LG and empty lists:
  1. among the indegree-0 vertices of the remaining tree (the root counts
     only once it is the sole survivor), pick the smallest, f;
  2. if f is not the root, remove f and its out-edge (f, g) and append g
     to l_{t(f)}, then repeat from 1;
  3. if f is the root, append OMEGA to l_{t(f)} and return the lists.

The two invariants that make the loop in sigma well-defined (the candidate
set and the popped list are never empty) are asserted, and every sigma run
checks that indeg of e in the output tree equals the initial count of e in
l_{s(e)} - the per-monomial statement behind the generating-function
identity.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .arborescence import (SpanningTree, count_trees, enumerate_trees,
                           iter_proto_lists, validate_tree, DEFAULT_BOUND)
from .digraph import DiGraph, line_graph
from .errors import EnumerationBound, InvalidTreeArrayError, InvalidTreeError


class _OmegaType:
    """Sentinel terminating the root's list; distinct from every edge id."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "OMEGA"


OMEGA = _OmegaType()

ArrayEntry = object  # int edge id or OMEGA


@dataclass(frozen=True)
class TreeArray:
    """Per-vertex entry lists; `root` is the vertex whose list ends in OMEGA."""
    root: int
    lists: tuple[tuple[ArrayEntry, ...], ...]


def validate_tree_array(g: DiGraph, a: TreeArray) -> None:
    if len(a.lists) != g.n or not (0 <= a.root < g.n):
        raise InvalidTreeArrayError("array shape does not match the graph")
    omegas = 0
    for v, entries in enumerate(a.lists):
        if len(entries) != g.indeg[v]:
            raise InvalidTreeArrayError(
                f"list of vertex {v} has length {len(entries)}, expected indeg {g.indeg[v]}")
        for pos, entry in enumerate(entries):
            if entry is OMEGA:
                omegas += 1
                if v != a.root or pos != len(entries) - 1:
                    raise InvalidTreeArrayError("OMEGA must be the last entry of the root's list")
            elif isinstance(entry, int) and 0 <= entry < g.m:
                if g.source(entry) != v:
                    raise InvalidTreeArrayError(
                        f"entry {entry} in list of vertex {v} has source {g.source(entry)}")
            else:
                raise InvalidTreeArrayError(f"entry {entry!r} is not an edge id")
    if omegas != 1:
        raise InvalidTreeArrayError(f"expected exactly one OMEGA, found {omegas}")
    out: list[int | None] = [None] * g.n
    for v, entries in enumerate(a.lists):
        if v != a.root:
            out[v] = entries[-1]
    try:
        validate_tree(g, SpanningTree(a.root, tuple(out)))
    except InvalidTreeError as exc:
        raise InvalidTreeArrayError(f"last entries do not form a spanning tree: {exc}") from None


def make_tree_array(g: DiGraph, tree: SpanningTree,
                    proto: Sequence[Sequence[int]]) -> TreeArray:
    """Append the tree's out-edge (OMEGA at the root) to each proto list."""
    validate_tree(g, tree)
    if len(proto) != g.n:
        raise InvalidTreeArrayError("need one proto list per vertex")
    lists = []
    for v in range(g.n):
        entries = list(proto[v])
        if len(entries) != g.indeg[v] - 1:
            raise InvalidTreeArrayError(
                f"proto list of vertex {v} must have indeg-1 = {g.indeg[v] - 1} entries")
        if any(not (isinstance(e, int) and 0 <= e < g.m and g.source(e) == v)
               for e in entries):
            raise InvalidTreeArrayError(f"proto list of vertex {v} contains a non-out-edge")
        entries.append(OMEGA if v == tree.root else tree.out_edge[v])
        lists.append(tuple(entries))
    a = TreeArray(tree.root, tuple(lists))
    validate_tree_array(g, a)
    return a


def array_tree(g: DiGraph, a: TreeArray) -> SpanningTree:
    """The spanning tree formed by the last entries of the non-root lists."""
    out: list[int | None] = [None] * g.n
    for v, entries in enumerate(a.lists):
        if v != a.root:
            out[v] = entries[-1]
    return SpanningTree(a.root, tuple(out))


def _edge_ranks(g: DiGraph, order: Sequence[int] | None) -> list[int]:
    if order is None:
        return list(range(g.m))
    if sorted(order) != list(range(g.m)):
        raise ValueError("edge order must be a permutation of all edge ids")
    ranks = [0] * g.m
    for rank, e in enumerate(order):
        ranks[e] = rank
    return ranks


def shuffled_order(g: DiGraph, seed: int) -> list[int]:
    order = list(range(g.m))
    random.Random(seed).shuffle(order)
    return order


class LineContext:
    """A graph together with one concrete realization of its line graph.

    The line graph may be supplied explicitly (e.g. the next de Bruijn
    graph, whose vertex and edge indices are already aligned); by default
    it is constructed.  Vertex i of the line graph must be edge i of g.
    """

    def __init__(self, g: DiGraph, line: DiGraph | None = None):
        if line is None:
            line, _ = line_graph(g)
        if line.n != g.m:
            raise InvalidTreeError("line graph must have one vertex per edge of g")
        pair_edge: dict[tuple[int, int], int] = {}
        for j, (e, f) in enumerate(line.edges):
            if g.target(e) != g.source(f):
                raise InvalidTreeError(f"line edge {j} does not join consecutive edges of g")
            if (e, f) in pair_edge:
                raise InvalidTreeError(f"duplicate line edge for pair ({e},{f})")
            pair_edge[(e, f)] = j
        expected = sum(g.indeg[v] * g.outdeg[v] for v in range(g.n))
        if line.m != expected:
            raise InvalidTreeError("line graph edge count does not match sum of indeg*outdeg")
        self.g = g
        self.line = line
        self.pair_edge = pair_edge

    # -- forward map ----------------------------------------------------

    def sigma(self, a: TreeArray, order: Sequence[int] | None = None) -> SpanningTree:
        """Map a tree array of g to a spanning tree of the line graph."""
        g = self.g
        validate_tree_array(g, a)
        rank = _edge_ranks(g, order)
        count = [0] * g.m              # remaining copies of e in l_{s(e)}
        for entries in a.lists:
            for entry in entries:
                if entry is not OMEGA:
                    count[entry] += 1
        initial_count = list(count)
        heads = [0] * g.n              # next unpopped position per list
        out_edge: list[int | None] = [None] * g.m
        ready = [(rank[e], e) for e in range(g.m) if count[e] == 0]
        heapq.heapify(ready)
        added = 0
        while True:
            # Step 1: smallest edge with no remaining list copies and no
            # out-edge chosen yet.  Non-emptiness is the well-definedness
            # guarantee for valid arrays.
            assert ready, "candidate set empty: tree-array invariant violated"
            _, f = heapq.heappop(ready)
            # Step 2: pop the head of l_{t(f)}.
            v = g.target(f)
            assert heads[v] < len(a.lists[v]), "popped an exhausted list"
            entry = a.lists[v][heads[v]]
            heads[v] += 1
            if entry is OMEGA:
                tree = SpanningTree(f, tuple(out_edge))
                assert added == g.m - 1
                self._check_term_counts(a, tree, initial_count)
                return tree
            # Step 3: record the line edge (f, entry).
            out_edge[f] = self.pair_edge[(f, entry)]
            added += 1
            count[entry] -= 1
            if count[entry] == 0:
                heapq.heappush(ready, (rank[entry], entry))

    def _check_term_counts(self, a: TreeArray, tree: SpanningTree,
                           initial_count: list[int]) -> None:
        # indeg of e in the output tree == initial copies of e in l_{s(e)}:
        # both sides contribute the same monomial to the identity.
        indeg = [0] * self.g.m
        for e, j in enumerate(tree.out_edge):
            if j is not None:
                indeg[self.line.target(j)] += 1
        assert indeg == initial_count, "output tree indegrees disagree with list counts"

    # -- inverse map ----------------------------------------------------

    def pi(self, tree: SpanningTree, order: Sequence[int] | None = None) -> TreeArray:
        """Map a spanning tree of the line graph back to a tree array of g."""
        g = self.g
        validate_tree(self.line, tree)
        rank = _edge_ranks(g, order)
        indeg = [0] * g.m
        for e, j in enumerate(tree.out_edge):
            if j is not None:
                indeg[self.line.target(j)] += 1
        lists: list[list[ArrayEntry]] = [[] for _ in range(g.n)]
        leaves = [(rank[e], e) for e in range(g.m) if indeg[e] == 0 and e != tree.root]
        heapq.heapify(leaves)
        remaining = g.m
        while True:
            if remaining == 1:
                # Only the root is left; close its target's list with OMEGA.
                f = tree.root
                lists[g.target(f)].append(OMEGA)
                break
            assert leaves, "no removable leaf: not a spanning tree of the line graph"
            _, f = heapq.heappop(leaves)
            j = tree.out_edge[f]
            succ = self.line.target(j)
            lists[g.target(f)].append(succ)
            remaining -= 1
            indeg[succ] -= 1
            if indeg[succ] == 0 and succ != tree.root:
                heapq.heappush(leaves, (rank[succ], succ))
        a = TreeArray(g.target(tree.root), tuple(tuple(entries) for entries in lists))
        validate_tree_array(g, a)
        return a


def sigma(g: DiGraph, a: TreeArray, order: Sequence[int] | None = None) -> SpanningTree:
    return LineContext(g).sigma(a, order)


def pi(g: DiGraph, tree: SpanningTree, order: Sequence[int] | None = None) -> TreeArray:
    return LineContext(g).pi(tree, order)


def tree_array_count(g: DiGraph) -> int:
    """kappa(G) * prod_v outdeg(v)^(indeg(v)-1), via determinants."""
    prod = 1
    for v in range(g.n):
        prod *= g.outdeg[v] ** (g.indeg[v] - 1)
    return count_trees(g) * prod


def enumerate_tree_arrays(g: DiGraph, bound: int = DEFAULT_BOUND) -> Iterator[TreeArray]:
    """Yield every tree array exactly once, deterministically.

    Outer order: spanning trees in enumerate_trees order; inner order:
    proto lists in lexicographic slot order, vertex by vertex.
    """
    if any(d == 0 for d in g.indeg):
        raise InvalidTreeArrayError("tree arrays need every indegree to be positive")
    expected = tree_array_count(g)
    if expected > bound:
        raise EnumerationBound(f"{expected} tree arrays exceed bound {bound}")
    protos = [list(iter_proto_lists(g, v)) for v in range(g.n)]
    if any(not p for p in protos):
        # some vertex has surplus indegree but no out-edges: the proto-list
        # product is empty, matching the zero factor in the array count
        return
    for tree in enumerate_trees(g, bound=bound):
        idx = [0] * g.n
        while True:
            proto = [protos[v][idx[v]] for v in range(g.n)]
            yield make_tree_array(g, tree, proto)
            v = g.n - 1
            while v >= 0 and idx[v] == len(protos[v]) - 1:
                idx[v] = 0
                v -= 1
            if v < 0:
                break
            idx[v] += 1
