"""Largest-biconnected-component core decomposition of the underlying graph."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graph import Graph

CORE = -1  # component id of core nodes


@dataclass
class CoreDecomposition:
    """Core membership plus attachment/cut-node data for dead-end pieces.

    Core nodes attach to themselves and carry component id ``CORE``.
    Every non-core node belongs to one connected piece hanging off the
    core through a single attachment node (``None`` if the piece is not
    connected to the core at all).
    """

    is_core: list[bool]
    attachment: list[int | None]
    component_id: list[int]

    def allowed_with(self, source: int) -> list[bool]:
        comp = self.component_id[source]
        if comp == CORE:
            return list(self.is_core)
        is_core, component_id = self.is_core, self.component_id
        return [
            is_core[v] or component_id[v] == comp for v in range(len(is_core))
        ]


def _undirected_adjacency(g: Graph) -> list[list[int]]:
    neighbors = [set() for _ in range(g.n)]
    for u, v, _, _ in g.edges():
        if u != v:
            neighbors[u].add(v)
            neighbors[v].add(u)
    return [sorted(s) for s in neighbors]


def _biconnected_components(adj) -> list[set[int]]:
    """Node sets of the biconnected components, in discovery order.

    Iterative Hopcroft-Tarjan with an explicit edge stack.
    """
    n = len(adj)
    disc = [0] * n
    low = [0] * n
    visited = [False] * n
    timer = 1
    components: list[set[int]] = []
    edge_stack: list[tuple[int, int]] = []

    for root in range(n):
        if visited[root] or not adj[root]:
            continue
        # frame: (node, parent, iterator index)
        stack = [(root, -1, 0)]
        visited[root] = True
        disc[root] = low[root] = timer
        timer += 1
        while stack:
            v, parent, idx = stack.pop()
            if idx < len(adj[v]):
                stack.append((v, parent, idx + 1))
                w = adj[v][idx]
                if not visited[w]:
                    edge_stack.append((v, w))
                    visited[w] = True
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, 0))
                elif w != parent and disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            else:
                if parent < 0:
                    continue
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if low[v] >= disc[parent]:
                    # (parent, v) closes a biconnected component
                    comp: set[int] = set()
                    while edge_stack:
                        a, b = edge_stack.pop()
                        comp.add(a)
                        comp.add(b)
                        if (a, b) == (parent, v):
                            break
                    components.append(comp)
    return components


def compute_bcc_core(g: Graph) -> CoreDecomposition:
    """Mark the largest biconnected component (by node count) as the core.

    Ties go to the earliest-discovered component. Graphs without any
    edges degenerate to an all-core decomposition.
    """
    n = g.n
    adj = _undirected_adjacency(g)
    components = _biconnected_components(adj)
    if not components:
        return CoreDecomposition([True] * n, list(range(n)), [CORE] * n)
    core = max(components, key=len)  # max() keeps the first maximal one
    is_core = [False] * n
    for v in core:
        is_core[v] = True
    attachment: list[int | None] = [v if is_core[v] else None for v in range(n)]
    component_id = [CORE if is_core[v] else -2 for v in range(n)]

    next_comp = 0
    for start in range(n):
        if is_core[start] or component_id[start] != -2:
            continue
        comp = next_comp
        next_comp += 1
        attach: int | None = None
        queue = deque([start])
        component_id[start] = comp
        members = [start]
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if is_core[w]:
                    # A piece can only touch the core in one cut node;
                    # two distinct contacts would merge it into the core.
                    attach = w
                elif component_id[w] == -2:
                    component_id[w] = comp
                    members.append(w)
                    queue.append(w)
        for v in members:
            attachment[v] = attach
    return CoreDecomposition(is_core, attachment, component_id)
