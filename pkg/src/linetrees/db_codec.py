"""Bijective codec between binary de Bruijn sequences of degree n and bit
strings of length 2^(n-1).

A de Bruijn sequence of degree n is a cyclic bit string of length 2^n whose
2^n cyclic windows of length n are pairwise distinct; read as a vertex
sequence those windows form a Hamiltonian path in DB_n(2), which is also an
oriented spanning tree of DB_n(2) rooted at its final vertex.  Since
DB_n(2) is the line graph of DB_{n-1}(2), the inverse tree-array map turns
that path into a tree array A_{n-1} of DB_{n-1}(2), whose last entries form
a spanning tree T_{n-1}; peeling repeatedly produces arrays A_k and trees
T_k all the way down to DB_1(2).  All orders are lexicographic on the edge
strings (which is edge-index order for the generators here).

Every list in these arrays has exactly two entries, because every vertex of
DB_k(2) has indegree 2.  The second entry is forced (the tree edge, or the
OMEGA sentinel at the root), so each array contributes one free bit per
vertex: whether the first entry is the vertex's "zero edge" (the out-edge
appending 0) or its "one edge".  The encoding is:

  bit 1                 root of T_1 (0 iff rooted at vertex "0");
  bits 2^k .. 2^(k+1)-1 first entries of A_k, vertices in lex order,
                        for 1 <= k <= n-2;
  bit 2^(n-1)           first entry of the root list of A_{n-1}.

That is 1 + (2 + 4 + ... + 2^(n-2)) + 1 = 2^(n-1) bits.  At the top level
only the root's bit is free: in a tree array whose image is a Hamiltonian
path every non-root list must contain two distinct edges, so the first
entry is forced to be the non-tree out-edge.  The root of A_{n-1} is the
vertex where the Eulerian walk of DB_{n-1}(2) described by the sequence
starts and ends, and its free bit records which of its two out-edges the
walk leaves by, which is exactly the remaining degree of freedom.

Decoding reverses the levels with the forward map: rebuild T_1 from bit 1,
assemble each A_k from its bits and T_k, apply the forward map to get
T_{k+1}, and finally assemble A_{n-1} (non-root lists [non-tree edge, tree
edge], root list [chosen edge, OMEGA]) whose image is the Hamiltonian path.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arborescence import SpanningTree
from .digraph import debruijn
from .errors import InvalidSequenceError
from .line_bijection import LineContext, OMEGA, TreeArray


@dataclass(frozen=True)
class HamPath:
    """Hamiltonian path in DB_degree(2), as a vertex-id sequence."""
    degree: int
    vertices: tuple[int, ...]


def validate(bits: str, degree: int) -> bool:
    """True iff bits is a de Bruijn sequence of the given degree."""
    if degree < 1:
        raise InvalidSequenceError("degree must be at least 1")
    if len(bits) != 2 ** degree:
        raise InvalidSequenceError(
            f"sequence of degree {degree} must have length {2 ** degree}, got {len(bits)}")
    if any(c not in "01" for c in bits):
        raise InvalidSequenceError("sequence must consist of 0s and 1s")
    size = len(bits)
    seen = set()
    for i in range(size):
        window = 0
        for j in range(degree):
            window = 2 * window + (bits[(i + j) % size] == "1")
        seen.add(window)
    return len(seen) == size


def seq_to_path(bits: str, degree: int) -> HamPath:
    """Window i of the sequence becomes vertex i of the path."""
    if not validate(bits, degree):
        raise InvalidSequenceError("not a de Bruijn sequence")
    size = len(bits)
    vertices = []
    for i in range(size):
        v = 0
        for j in range(degree):
            v = 2 * v + (bits[(i + j) % size] == "1")
        vertices.append(v)
    return HamPath(degree, tuple(vertices))


def path_to_seq(path: HamPath) -> str:
    """Inverse of seq_to_path: read one bit per window."""
    size = 2 ** path.degree
    if len(path.vertices) != size or len(set(path.vertices)) != size:
        raise InvalidSequenceError("path must visit every vertex exactly once")
    top = 2 ** (path.degree - 1)
    bits = "".join("1" if v >= top else "0" for v in path.vertices)
    if not validate(bits, path.degree):
        raise InvalidSequenceError("vertex sequence is not a Hamiltonian path")
    return bits


@lru_cache(maxsize=None)
def _context(k: int) -> LineContext:
    # DB_{k+1}(2) is the line graph of DB_k(2), with vertex i of the upper
    # graph equal to edge i of the lower one (both are the label read as a
    # binary number), so the pair is already index-aligned.
    return LineContext(debruijn(2, k), line=debruijn(2, k + 1))


def _zero_edge(v: int) -> int:
    # out-edges of vertex v in DB_k(2) are the (k+1)-bit strings v0 and v1
    return 2 * v


def _path_tree(path: HamPath) -> SpanningTree:
    """The path as a spanning tree of DB_n(2) = L(DB_{n-1}(2))."""
    ctx = _context(path.degree - 1)
    out: list[int | None] = [None] * ctx.line.n
    for a, b in zip(path.vertices, path.vertices[1:]):
        out[a] = ctx.pair_edge[(a, b)]
    return SpanningTree(path.vertices[-1], tuple(out))


def _tree_path(tree: SpanningTree, degree: int) -> HamPath:
    ctx = _context(degree - 1)
    succ: dict[int, int] = {}
    has_pred = set()
    for e, j in enumerate(tree.out_edge):
        if j is not None:
            succ[e] = ctx.line.target(j)
            has_pred.add(ctx.line.target(j))
    starts = [v for v in range(ctx.line.n) if v not in has_pred]
    if len(starts) != 1:
        raise InvalidSequenceError("tree is not a path")
    vertices = [starts[0]]
    while vertices[-1] in succ:
        vertices.append(succ[vertices[-1]])
    return HamPath(degree, tuple(vertices))


def encode(bits: str, degree: int | None = None) -> str:
    """Map a de Bruijn sequence of degree n to a bit string of length 2^(n-1)."""
    if degree is None:
        degree = (len(bits) - 1).bit_length()
    if degree < 2:
        raise InvalidSequenceError("encoding requires degree >= 2")
    path = seq_to_path(bits, degree)
    out = ["?"] * 2 ** (degree - 1)

    array = _context(degree - 1).pi(_path_tree(path))
    # Top level: only the root's first entry is a free bit.
    out[2 ** (degree - 1) - 1] = "0" if array.lists[array.root][0] == _zero_edge(array.root) else "1"

    for k in range(degree - 2, 0, -1):
        array = _context(k).pi(_last_entry_tree(array))
        for i, entries in enumerate(array.lists):
            out[2 ** k - 1 + i] = "0" if entries[0] == _zero_edge(i) else "1"

    out[0] = "0" if _last_entry_tree(array).root == 0 else "1"
    return "".join(out)


def _last_entry_tree(array: TreeArray) -> SpanningTree:
    out: list[int | None] = [None] * len(array.lists)
    for v, entries in enumerate(array.lists):
        if v != array.root:
            out[v] = entries[-1]
    return SpanningTree(array.root, tuple(out))


def decode(code: str, degree: int) -> str:
    """Inverse of encode: bit string of length 2^(n-1) -> de Bruijn sequence."""
    if degree < 2:
        raise InvalidSequenceError("decoding requires degree >= 2")
    if len(code) != 2 ** (degree - 1) or any(c not in "01" for c in code):
        raise InvalidSequenceError(
            f"code for degree {degree} must be a bit string of length {2 ** (degree - 1)}")
    root = 0 if code[0] == "0" else 1
    # In DB_1(2) the non-root vertex's tree edge is forced: it must point
    # at the root, and edge 2v+w runs from v to w.
    other = 1 - root
    out: list[int | None] = [None, None]
    out[other] = 2 * other + root
    tree = SpanningTree(root, tuple(out))

    for k in range(1, degree - 1):
        lists = []
        for v in range(2 ** k):
            first = _zero_edge(v) + (code[2 ** k - 1 + v] == "1")
            second = OMEGA if v == tree.root else tree.out_edge[v]
            lists.append((first, second))
        array = TreeArray(tree.root, tuple(lists))
        tree = _context(k).sigma(array)

    lists = []
    for v in range(2 ** (degree - 1)):
        if v == tree.root:
            first = _zero_edge(v) + (code[-1] == "1")
            lists.append((first, OMEGA))
        else:
            # two distinct entries, the second being the tree edge
            lists.append((tree.out_edge[v] ^ 1, tree.out_edge[v]))
    array = TreeArray(tree.root, tuple(lists))
    path = _tree_path(_context(degree - 1).sigma(array), degree)
    return path_to_seq(path)


def enumerate_db_sequences(degree: int) -> list[str]:
    """All de Bruijn sequences of the given degree, lexicographically.

    Exhaustive filter over all 2^(2^degree) candidates, so capped at
    degree 4 (65536 candidates).
    """
    if degree < 1:
        raise InvalidSequenceError("degree must be at least 1")
    if degree > 4:
        raise InvalidSequenceError("enumeration is capped at degree 4")
    size = 2 ** degree
    result = []
    for x in range(2 ** size):
        bits = format(x, f"0{size}b")
        if validate(bits, degree):
            result.append(bits)
    return result
