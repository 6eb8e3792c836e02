"""Directed multigraphs, line graphs, and the de Bruijn / Kautz families.

A :class:`DiGraph` is a finite directed multigraph: parallel edges and
self-loops are allowed, and every edge is a first-class record with its own
index.  The edge indices 0..m-1 are the default total order on edges, which
the tree-array machinery depends on; the family generators therefore insert
edges in lexicographic label order so that "edge index order" and
"lexicographic order on edge strings" coincide for those graphs.

The de Bruijn graph DB_n(m) has one vertex per length-n string over m
symbols and one edge per length-(n+1) string, the edge s0..sn running from
s0..s{n-1} to s1..sn.  The Kautz graph Kautz_n(m) is the same shift
construction restricted to strings over m+1 symbols with no two equal
adjacent symbols.  Both families are closed under the directed line graph:
the length-(n+1) strings labelling the edges of the level-n graph are
exactly the vertex labels of the level-(n+1) graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphError, UnsupportedFamilyError

SYMBOLS = "0123456789abcdefghijklmnopqrstuvwxyz"


class DiGraph:
    """Immutable directed multigraph with an ordered edge list."""

    __slots__ = ("n", "edges", "vertex_labels", "edge_labels",
                 "_out", "_in", "indeg", "outdeg")

    def __init__(self, n: int, edges: Sequence[tuple[int, int]],
                 vertex_labels: Sequence[str] | None = None,
                 edge_labels: Sequence[str] | None = None):
        if n <= 0:
            raise GraphError("graph must have at least one vertex")
        edges = tuple((int(s), int(t)) for s, t in edges)
        for s, t in edges:
            if not (0 <= s < n and 0 <= t < n):
                raise GraphError(f"edge endpoint out of range: ({s},{t}) with {n} vertices")
        if vertex_labels is not None:
            vertex_labels = tuple(vertex_labels)
            if len(vertex_labels) != n:
                raise GraphError("vertex label count does not match vertex count")
            if len(set(vertex_labels)) != n:
                raise GraphError("vertex labels must be unique")
        if edge_labels is not None:
            edge_labels = tuple(edge_labels)
            if len(edge_labels) != len(edges):
                raise GraphError("edge label count does not match edge count")
        self.n = n
        self.edges = edges
        self.vertex_labels = vertex_labels
        self.edge_labels = edge_labels
        out: list[list[int]] = [[] for _ in range(n)]
        inn: list[list[int]] = [[] for _ in range(n)]
        for i, (s, t) in enumerate(edges):
            out[s].append(i)
            inn[t].append(i)
        self._out = tuple(tuple(es) for es in out)
        self._in = tuple(tuple(es) for es in inn)
        self.outdeg = tuple(len(es) for es in self._out)
        self.indeg = tuple(len(es) for es in self._in)

    @property
    def m(self) -> int:
        return len(self.edges)

    def source(self, e: int) -> int:
        return self.edges[e][0]

    def target(self, e: int) -> int:
        return self.edges[e][1]

    def out_edges(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_edges(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def vertex_label(self, v: int) -> str:
        return self.vertex_labels[v] if self.vertex_labels else str(v)

    def edge_label(self, e: int) -> str:
        return self.edge_labels[e] if self.edge_labels else str(e)

    def __repr__(self) -> str:
        return f"DiGraph(n={self.n}, m={self.m})"


def build_graph(edge_list: Iterable[tuple[int, int]], n_vertices: int | None = None,
                vertex_labels: Sequence[str] | None = None,
                edge_labels: Sequence[str] | None = None) -> DiGraph:
    """Build a graph from (source, target) pairs, inferring |V| if not given."""
    edges = [(int(s), int(t)) for s, t in edge_list]
    if n_vertices is None:
        if not edges and vertex_labels is None:
            raise GraphError("cannot infer vertex count from an empty edge list")
        n_vertices = max((max(s, t) for s, t in edges), default=-1) + 1
        if vertex_labels is not None:
            n_vertices = max(n_vertices, len(vertex_labels))
    return DiGraph(n_vertices, edges, vertex_labels, edge_labels)


@dataclass(frozen=True)
class LineGraphMap:
    """Bijection between edges of G and vertices of its line graph."""
    forward: tuple[int, ...]   # edge of G  -> vertex of LG
    backward: tuple[int, ...]  # vertex of LG -> edge of G


def line_graph(g: DiGraph) -> tuple[DiGraph, LineGraphMap]:
    """Directed line graph: one vertex per edge of g, one edge per 2-path.

    Vertex i of the result is edge i of g (so the map is the identity on
    indices, but is returned explicitly).  Line edges are emitted in
    (e, then out-edges of t(e)) order, giving a deterministic edge list.
    """
    if g.m == 0:
        raise GraphError("line graph of an edgeless graph has no vertices")
    lg_edges = []
    for e in range(g.m):
        for f in g.out_edges(g.target(e)):
            lg_edges.append((e, f))
    labels = tuple(g.edge_label(e) for e in range(g.m)) if g.edge_labels else None
    lg = DiGraph(g.m, lg_edges, vertex_labels=labels)
    ident = tuple(range(g.m))
    return lg, LineGraphMap(forward=ident, backward=ident)


def _strings(m: int, length: int, kautz: bool) -> list[str]:
    """All length-`length` strings over the first alphabet symbols, lex order.

    With kautz=True the alphabet has m+1 symbols and adjacent symbols must
    differ; otherwise the alphabet has m symbols and strings are unrestricted.
    """
    k = m + 1 if kautz else m
    if k > len(SYMBOLS):
        raise GraphError(f"alphabet size {k} exceeds supported maximum {len(SYMBOLS)}")
    alphabet = SYMBOLS[:k]
    out = [""]
    for _ in range(length):
        out = [s + c for s in out for c in alphabet if not (kautz and s and s[-1] == c)]
    return out


def _shift_graph(vertices: list[str], edge_strings: list[str]) -> DiGraph:
    index = {lbl: i for i, lbl in enumerate(vertices)}
    edges = [(index[w[:-1]], index[w[1:]]) for w in edge_strings]
    return DiGraph(len(vertices), edges, vertex_labels=vertices, edge_labels=edge_strings)


def debruijn(m: int, n: int) -> DiGraph:
    """de Bruijn graph DB_n(m): m^n string vertices, m^(n+1) string edges."""
    if m < 1 or n < 1:
        raise GraphError("de Bruijn graph requires m >= 1 and n >= 1")
    return _shift_graph(_strings(m, n, kautz=False), _strings(m, n + 1, kautz=False))


def kautz(m: int, n: int) -> DiGraph:
    """Kautz graph Kautz_n(m): (m+1)m^(n-1) vertices, no self-loops."""
    if m < 1 or n < 1:
        raise GraphError("Kautz graph requires m >= 1 and n >= 1")
    return _shift_graph(_strings(m, n, kautz=True), _strings(m, n + 1, kautz=True))


def is_eulerian(g: DiGraph) -> bool:
    """True iff indeg(v) == outdeg(v) for every vertex."""
    return all(g.indeg[v] == g.outdeg[v] for v in range(g.n))


def _reachable(n: int, adj: Sequence[Sequence[int]], start: int) -> int:
    seen = bytearray(n)
    seen[start] = 1
    stack = [start]
    count = 1
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = 1
                count += 1
                stack.append(w)
    return count


def is_strongly_connected(g: DiGraph) -> bool:
    fwd = [[] for _ in range(g.n)]
    bwd = [[] for _ in range(g.n)]
    for s, t in g.edges:
        fwd[s].append(t)
        bwd[t].append(s)
    return _reachable(g.n, fwd, 0) == g.n and _reachable(g.n, bwd, 0) == g.n


def similarity_classes(g: DiGraph) -> list[list[int]]:
    """Partition vertices by the last n-1 characters of their labels.

    Defined for string-labelled graphs with uniform label length >= 2
    (the DB/Kautz families for n >= 2).  Classes are returned in
    lexicographic order of the shared suffix, each sorted by vertex id.
    """
    if g.vertex_labels is None:
        raise GraphError("similarity classes need string vertex labels")
    length = len(g.vertex_labels[0])
    if length < 2 or any(len(lbl) != length for lbl in g.vertex_labels):
        raise GraphError("similarity classes need uniform label length >= 2")
    classes: dict[str, list[int]] = {}
    for v, lbl in enumerate(g.vertex_labels):
        classes.setdefault(lbl[1:], []).append(v)
    return [sorted(classes[key]) for key in sorted(classes)]


def detect_family(g: DiGraph) -> tuple[str, int, int]:
    """Recognize g as debruijn(m, n) or kautz(m, n) by its labels.

    Returns ("db"|"kautz", m, n) or raises UnsupportedFamilyError.  The
    comparison is exact: same vertex labels in the same order and the same
    edge list, i.e. the graph must be generator output (or equal to it).
    """
    if g.vertex_labels is None:
        raise UnsupportedFamilyError("graph has no vertex labels")
    length = len(g.vertex_labels[0])
    alphabet = sorted(set("".join(g.vertex_labels)))
    k = len(alphabet)
    if alphabet != list(SYMBOLS[:k]):
        raise UnsupportedFamilyError("labels do not use the canonical alphabet")
    for name, make, m in (("db", debruijn, k), ("kautz", kautz, k - 1)):
        if m < 1:
            continue
        try:
            cand = make(m, length)
        except GraphError:
            continue
        if cand.vertex_labels == g.vertex_labels and cand.edges == g.edges:
            return name, m, length
    raise UnsupportedFamilyError("graph is not a de Bruijn or Kautz graph")


def eulerian_circuit(g: DiGraph) -> list[int]:
    """Edge sequence of an Eulerian circuit starting at vertex 0 (Hierholzer).

    Deterministic: at each vertex the unused out-edge with the smallest
    index is taken first.  Consecutive edges satisfy t(e_i) = s(e_{i+1}),
    cyclically.
    """
    if not is_eulerian(g) or not is_strongly_connected(g):
        raise GraphError("Eulerian circuit requires a balanced, strongly connected graph")
    ptr = [0] * g.n
    stack: list[tuple[int, int | None]] = [(0, None)]
    circuit: list[int] = []
    while stack:
        v, via = stack[-1]
        if ptr[v] < g.outdeg[v]:
            e = g.out_edges(v)[ptr[v]]
            ptr[v] += 1
            stack.append((g.target(e), e))
        else:
            stack.pop()
            if via is not None:
                circuit.append(via)
    circuit.reverse()
    if len(circuit) != g.m:
        raise GraphError("graph has no Eulerian circuit")  # unreachable after the guards
    return circuit


def class_cycle(g: DiGraph) -> list[int]:
    """A cycle of length c = |V|/m through one vertex of each similarity class.

    g must be debruijn(m, n+1) or kautz(m, n+1) for some n >= 1.  The cycle
    comes from a Hamiltonian cycle of the predecessor graph (level n): the
    canonical rotation cycle of the complete graph when n = 1, otherwise the
    cycle induced by an Eulerian circuit of the level-(n-1) graph.  Writing
    the Hamiltonian cycle as a cyclic string and taking all length-(n+1)
    windows yields the cycle; the output is edge-validated before returning.
    """
    family, m, length = detect_family(g)
    if length < 2:
        raise UnsupportedFamilyError("class_cycle needs string length >= 2")
    make = debruijn if family == "db" else kautz
    pred = make(m, length - 1)
    if length - 1 == 1:
        ham = list(range(pred.n))  # rotation cycle of the complete graph
    else:
        grand = make(m, length - 2)
        # Edges of the level-(n-1) graph are the vertices of the level-n
        # graph, so an Eulerian circuit below is a Hamiltonian cycle here.
        ham = eulerian_circuit(grand)
    c = len(ham)
    assert c == g.n // m
    s = pred.vertex_label(ham[0]) + "".join(pred.vertex_label(u)[-1] for u in ham[1:])
    # The cyclic string has period c; indices past c wrap around.
    cyc = lambda i: s[i % c]
    width = length
    windows = ["".join(cyc(i + j) for j in range(width)) for i in range(c)]
    index = {lbl: v for v, lbl in enumerate(g.vertex_labels)}
    try:
        cycle = [index[w] for w in windows]
    except KeyError as missing:
        raise GraphError(f"window {missing} is not a vertex of the graph") from None
    _check_class_cycle(g, m, cycle)
    return cycle


def _check_class_cycle(g: DiGraph, m: int, cycle: list[int]) -> None:
    pairs = {(s, t) for s, t in g.edges}
    for a, b in zip(cycle, cycle[1:] + cycle[:1]):
        if (a, b) not in pairs:
            raise GraphError(f"class cycle step {a}->{b} is not an edge")
    suffixes = {g.vertex_label(v)[1:] for v in cycle}
    if len(suffixes) != len(cycle) or len(cycle) != g.n // m:
        raise GraphError("class cycle does not cover each similarity class once")


def label_isomorphic(a: DiGraph, b: DiGraph) -> bool:
    """Same vertex labels and the same multiset of labelled edges.

    This is identity up to reordering, not graph isomorphism: the label
    correspondence is forced.  It is exactly what the family identities
    (the level-(n+1) graph is the line graph of the level-n graph) assert.
    """
    if a.vertex_labels is None or b.vertex_labels is None:
        raise GraphError("label isomorphism needs vertex labels on both graphs")
    if sorted(a.vertex_labels) != sorted(b.vertex_labels):
        return False
    pairs_a = sorted((a.vertex_label(s), a.vertex_label(t)) for s, t in a.edges)
    pairs_b = sorted((b.vertex_label(s), b.vertex_label(t)) for s, t in b.edges)
    return pairs_a == pairs_b


# --- text / JSON / DOT interfaces -------------------------------------------

def parse_edge_list(text: str) -> DiGraph:
    """Parse the one-edge-per-line format "SRC DST [LABEL]".

    '#' starts a comment.  Vertex names are arbitrary tokens and are
    numbered in order of first appearance; the names become vertex labels
    unless every name is its own appearance index, in which case the graph
    is left unlabelled.
    """
    names: list[str] = []
    index: dict[str, int] = {}
    edges: list[tuple[int, int]] = []
    labels: list[str | None] = []

    def vid(tok: str) -> int:
        if tok not in index:
            index[tok] = len(names)
            names.append(tok)
        return index[tok]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise GraphError(f"line {lineno}: expected 'SRC DST [LABEL]'")
        edges.append((vid(parts[0]), vid(parts[1])))
        labels.append(parts[2] if len(parts) == 3 else None)
    if not names:
        raise GraphError("edge list is empty")
    edge_labels = None
    if any(lbl is not None for lbl in labels):
        edge_labels = tuple(lbl if lbl is not None else str(i) for i, lbl in enumerate(labels))
    vertex_labels = None if names == [str(i) for i in range(len(names))] else names
    return DiGraph(len(names), edges, vertex_labels=vertex_labels, edge_labels=edge_labels)


def format_edge_list(g: DiGraph) -> str:
    lines = []
    for e in range(g.m):
        s, t = g.edges[e]
        fields = [g.vertex_label(s), g.vertex_label(t)]
        if g.edge_labels:
            fields.append(g.edge_label(e))
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"


def to_json_dict(g: DiGraph) -> dict:
    return {
        "vertices": [g.vertex_label(v) for v in range(g.n)],
        "edges": [[g.vertex_label(s), g.vertex_label(t), g.edge_label(e)]
                  for e, (s, t) in enumerate(g.edges)],
    }


def from_json_dict(data: dict) -> DiGraph:
    names = [str(v) for v in data["vertices"]]
    index = {name: i for i, name in enumerate(names)}
    edges = []
    edge_labels = []
    for s, t, lbl in data["edges"]:
        edges.append((index[str(s)], index[str(t)]))
        edge_labels.append(str(lbl))
    vertex_labels = None if names == [str(i) for i in range(len(names))] else names
    return DiGraph(len(names), edges, vertex_labels=vertex_labels, edge_labels=edge_labels)


def to_dot(g: DiGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v in range(g.n):
        lines.append(f'  v{v} [label="{g.vertex_label(v)}"];')
    for e, (s, t) in enumerate(g.edges):
        lines.append(f'  v{s} -> v{t} [label="{g.edge_label(e)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
