"""Simple connected graphs, oriented incidence matrices, automorphisms.

Vertices are numbered 1..m and the edge list order fixes the column order of
every incidence matrix built from the graph, so downstream results are
reproducible for the pinned constructors below.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import Disconnected, InvalidGraph, TooLarge
from .exactmat import IntMatrix

AUTOMORPHISM_VERTEX_GUARD = 8


@dataclass(frozen=True)
class Graph:
    """A simple loop-free graph with an ordered, oriented edge list."""

    num_vertices: int
    edges: tuple  # tuple of (k, j) pairs, 1-based, k -> j

    def __post_init__(self):
        m = self.num_vertices
        if m < 2:
            raise InvalidGraph("need at least two vertices")
        seen = set()
        for k, j in self.edges:
            if not (1 <= k <= m and 1 <= j <= m):
                raise InvalidGraph(f"edge ({k},{j}) out of range")
            if k == j:
                raise InvalidGraph("loops are not allowed")
            key = frozenset((k, j))
            if key in seen:
                raise InvalidGraph(f"duplicate edge ({k},{j})")
            seen.add(key)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def adjacency_set(self) -> frozenset:
        return frozenset(frozenset(e) for e in self.edges)


def cycle_graph(n: int) -> Graph:
    """The n-cycle with edges 1->2, 2->3, ..., n->1."""
    if n < 3:
        raise InvalidGraph("cycle needs at least 3 vertices")
    edges = tuple((k, k + 1) for k in range(1, n)) + ((n, 1),)
    return Graph(n, edges)


def complete_graph(m: int) -> Graph:
    """The complete graph with lexicographic edges oriented k -> j for k < j."""
    if m < 2:
        raise InvalidGraph("complete graph needs at least 2 vertices")
    edges = tuple((k, j) for k in range(1, m + 1) for j in range(k + 1, m + 1))
    return Graph(m, edges)


def from_edges(m: int, edges) -> Graph:
    return Graph(m, tuple((int(k), int(j)) for k, j in edges))


def _connected(graph: Graph) -> bool:
    m = graph.num_vertices
    adj = {v: set() for v in range(1, m + 1)}
    for k, j in graph.edges:
        adj[k].add(j)
        adj[j].add(k)
    seen = {1}
    stack = [1]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == m


def incidence(graph: Graph):
    """Full and reduced oriented incidence matrices of a connected graph.

    The column of edge k -> j is e_k - e_j; the reduced matrix drops the last
    row and has rank m - 1.
    """
    if not _connected(graph):
        raise Disconnected("graph is not connected")
    m = graph.num_vertices
    cols = []
    for k, j in graph.edges:
        col = [0] * m
        col[k - 1] = 1
        col[j - 1] = -1
        cols.append(col)
    full = IntMatrix(tuple(zip(*cols)))
    reduced = IntMatrix(full.rows[:-1])
    return full, reduced


def automorphisms(graph: Graph) -> list:
    """All adjacency-preserving vertex permutations, brute force.

    Each permutation is returned as a tuple ``sigma`` with ``sigma[k-1]`` the
    image of vertex k (1-based).
    """
    m = graph.num_vertices
    if m > AUTOMORPHISM_VERTEX_GUARD:
        raise TooLarge(f"{m} vertices exceeds guard {AUTOMORPHISM_VERTEX_GUARD}")
    adj = graph.adjacency_set()
    out = []
    for perm in permutations(range(1, m + 1)):
        mapped = frozenset(frozenset((perm[k - 1], perm[j - 1])) for k, j in graph.edges)
        if mapped == adj:
            out.append(perm)
    return out


def graph_to_json(graph: Graph) -> dict:
    return {"vertices": graph.num_vertices, "edges": [list(e) for e in graph.edges]}


def graph_from_json(doc: dict) -> Graph:
    try:
        m = int(doc["vertices"])
        edges = [(int(k), int(j)) for k, j in doc["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidGraph(f"bad graph document: {exc}") from exc
    return from_edges(m, edges)
