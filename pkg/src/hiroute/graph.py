"""Directed graph storage in compressed adjacency form.

Weights are non-negative integer milliseconds. ``INF`` is a reserved
sentinel small enough that a single addition never wraps into another
valid weight's range.
"""

from __future__ import annotations

from dataclasses import dataclass, field

INF = 1 << 60


class MalformedInputError(ValueError):
    """Raised when an edge list or table references invalid indices."""


@dataclass
class Graph:
    """Compressed adjacency: ``first_out`` has n+1 offsets into ``head``/``weight``.

    Optional per-edge boolean tag arrays mark tunnels and highways.
    Instances are treated as immutable after construction.
    """

    first_out: list[int]
    head: list[int]
    weight: list[int]
    tunnel: list[bool] | None = None
    highway: list[bool] | None = None
    tail: list[int] = field(default=None, repr=False)  # filled in __post_init__

    def __post_init__(self):
        if self.tail is None:
            tail = [0] * len(self.head)
            for u in range(self.n):
                for i in range(self.first_out[u], self.first_out[u + 1]):
                    tail[i] = u
            self.tail = tail

    @property
    def n(self) -> int:
        return len(self.first_out) - 1

    @property
    def m(self) -> int:
        return len(self.head)

    def out_range(self, u: int) -> range:
        return range(self.first_out[u], self.first_out[u + 1])

    def edges(self):
        """Yield (tail, head, weight, edge_id) grouped by tail."""
        for e in range(self.m):
            yield self.tail[e], self.head[e], self.weight[e], e


def build_graph(n: int, edge_list, *, tags=None) -> Graph:
    """Build a graph from (tail, head, weight) triples.

    Adjacency is grouped by tail, stable within a tail group; parallel
    edges are preserved. ``tags`` is an optional parallel sequence of
    strings containing 't' (tunnel) and/or 'h' (highway).
    """
    edge_list = list(edge_list)
    m = len(edge_list)
    count = [0] * (n + 1)
    for tail, head, weight in edge_list:
        if not (0 <= tail < n) or not (0 <= head < n):
            raise MalformedInputError(f"edge ({tail},{head}) out of range for n={n}")
        if weight < 0:
            raise MalformedInputError(f"negative weight on edge ({tail},{head})")
        count[tail + 1] += 1
    for i in range(n):
        count[i + 1] += count[i]
    first_out = list(count)
    heads = [0] * m
    weights = [0] * m
    perm = [0] * m  # new position per input edge
    pos = list(first_out)
    for eid, (tail, head, weight) in enumerate(edge_list):
        i = pos[tail]
        pos[tail] = i + 1
        heads[i] = head
        weights[i] = weight
        perm[eid] = i
    tunnel = highway = None
    if tags is not None:
        tunnel = [False] * m
        highway = [False] * m
        for eid, tag in enumerate(tags):
            tunnel[perm[eid]] = "t" in tag
            highway[perm[eid]] = "h" in tag
    return Graph(first_out, heads, weights, tunnel, highway)


def reverse(g: Graph) -> Graph:
    """Graph with every edge flipped; node count preserved."""
    edges = [(v, u, w) for u, v, w, _ in g.edges()]
    tags = None
    if g.tunnel is not None:
        tags = [
            ("t" if g.tunnel[e] else "") + ("h" if g.highway[e] else "")
            for e in range(g.m)
        ]
    return build_graph(g.n, edges, tags=tags)


def undirected_degree(g: Graph, x: int) -> int:
    """Number of distinct neighbors of x over out- and in-adjacency.

    Self-loops are ignored; a node that is both in- and out-neighbor
    counts once.
    """
    return undirected_degrees(g)[x]


def undirected_degrees(g: Graph) -> list[int]:
    """Undirected neighbor-set degree for every node."""
    neighbors = [set() for _ in range(g.n)]
    for u, v, _, _ in g.edges():
        if u != v:
            neighbors[u].add(v)
            neighbors[v].add(u)
    return [len(s) for s in neighbors]
