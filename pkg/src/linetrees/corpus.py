"""Deterministic corpus of small digraphs for exhaustive verification.

The sampler draws multigraphs with at most 4 vertices and 8 edges in which
every vertex has positive indegree (the precondition of the line-graph
identity), deduplicated up to vertex relabelling via a canonical form, with
a fixed seed so every run sees the same corpus.
"""

from __future__ import annotations

import random
from itertools import permutations

from .digraph import DiGraph, debruijn, kautz

CORPUS_SEED = 271828


def canonical_form(n: int, edges: list[tuple[int, int]]) -> tuple:
    """Lexicographically least sorted edge list over all vertex relabellings."""
    best = None
    for perm in permutations(range(n)):
        relabelled = tuple(sorted((perm[s], perm[t]) for s, t in edges))
        if best is None or relabelled < best:
            best = relabelled
    return (n, best)


def random_small_graphs(count: int = 200, max_vertices: int = 4,
                        max_edges: int = 8, seed: int = CORPUS_SEED) -> list[DiGraph]:
    """`count` pairwise non-isomorphic digraphs with min indeg >= 1."""
    rng = random.Random(seed)
    seen: set[tuple] = set()
    graphs: list[DiGraph] = []
    while len(graphs) < count:
        n = rng.randint(1, max_vertices)
        m = rng.randint(n, max_edges)  # need at least n edges for indeg >= 1
        edges = [(rng.randrange(n), rng.randrange(n)) for _ in range(m)]
        indeg = [0] * n
        for _, t in edges:
            indeg[t] += 1
        if any(d == 0 for d in indeg):
            continue
        key = canonical_form(n, edges)
        if key in seen:
            continue
        seen.add(key)
        graphs.append(DiGraph(n, edges))
    return graphs


def identity_corpus() -> list[DiGraph]:
    """The verification corpus: 200 sampled graphs plus three family graphs."""
    return random_small_graphs() + [debruijn(2, 1), debruijn(2, 2), kautz(2, 1)]
