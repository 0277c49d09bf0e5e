"""Contraction hierarchy construction and point-to-point hierarchy queries."""

from __future__ import annotations

import pickle
from dataclasses import dataclass
from heapq import heappop, heappush

from .graph import INF, Graph, build_graph, reverse

CH_DUMP_MAGIC = b"HRCH1\n"

# Witness searches are capped; exceeding the cap inserts the candidate
# shortcut, which over-approximates but preserves exactness.
WITNESS_SETTLE_LIMIT = 400


@dataclass
class ContractionHierarchy:
    """Ranks, levels, and the up/down edge partition of the augmented graph.

    ``edges`` holds every augmented-graph edge as (tail, head, weight);
    ``meta[i]`` is either ``("o", original_edge_id)`` or
    ``("s", first_part, second_part)`` referencing other augmented edges.
    ``up``/``down``/``down_rev`` are adjacency views over those edges and
    ``up_ref``/``down_ref`` map their positions back to edge ids.
    """

    rank: list[int]
    level: list[int]
    edges: list[tuple[int, int, int]]
    meta: list[tuple]
    up: Graph
    up_ref: list[int]
    down: Graph
    down_ref: list[int]
    down_rev: Graph
    nodes_by_level_desc: list[int]

    @property
    def n(self) -> int:
        return len(self.rank)

    def unpack_edge(self, edge_id: int) -> list[int]:
        """Recursively expand an augmented edge into original edge ids."""
        out: list[int] = []
        stack = [edge_id]
        while stack:
            e = stack.pop()
            m = self.meta[e]
            if m[0] == "o":
                out.append(m[1])
            else:
                stack.append(m[1])  # first part expanded last: stack reverses
                stack.append(m[2])
        out.reverse()
        return out

    def shortcut_edge_ids(self) -> list[int]:
        return [i for i, m in enumerate(self.meta) if m[0] == "s"]


def _witness_distances(adj_out, u, targets, skip, limit, settle_limit):
    """Bounded Dijkstra from u in the overlay, avoiding ``skip``.

    Returns distances to the requested targets (missing = not reached
    within the weight bound ``limit`` and the settle budget).
    """
    dist = {u: 0}
    found = {}
    heap = [(0, u)]
    remaining = set(targets)
    remaining.discard(u)
    settled = set()
    while heap and remaining and len(settled) < settle_limit:
        d, x = heappop(heap)
        if x in settled:
            continue
        if d > limit:
            break
        settled.add(x)
        if x in remaining:
            found[x] = d
            remaining.discard(x)
            if not remaining:
                break
        for y, (w, _) in adj_out[x].items():
            if y == skip or y in settled:
                continue
            nd = d + w
            if nd <= limit and nd < dist.get(y, INF):
                dist[y] = nd
                heappush(heap, (nd, y))
    return found


def build_ch(
    g: Graph,
    *,
    order: list[int] | None = None,
    witness_settle_limit: int = WITNESS_SETTLE_LIMIT,
) -> ContractionHierarchy:
    """Contract every node and record the augmented up/down edge sets.

    Without an explicit ``order``, nodes are contracted by lazily updated
    priority edge_difference + contracted_neighbors with ties broken by
    node id, so identical input yields an identical hierarchy.
    """
    n = g.n
    # Overlay adjacency: node -> {neighbor: (weight, meta)}. Self-loops
    # are irrelevant for shortest paths and skipped outright.
    out: list[dict] = [dict() for _ in range(n)]
    inc: list[dict] = [dict() for _ in range(n)]
    for u, v, w, e in g.edges():
        if u == v:
            continue
        cur = out[u].get(v)
        if cur is None or w < cur[0]:
            out[u][v] = (w, ("o", e))
            inc[v][u] = (w, ("o", e))

    rank = [0] * n
    level = [0] * n
    contracted = [False] * n
    deleted_neighbors = [0] * n
    edges: list[tuple[int, int, int]] = []
    meta: list[tuple] = []

    def shortcuts_for(v):
        """Candidate shortcuts (u, w2, weight, meta) needed to remove v."""
        result = []
        in_items = [(u, wm) for u, wm in inc[v].items() if not contracted[u]]
        out_items = [(x, wm) for x, wm in out[v].items() if not contracted[x]]
        if not in_items or not out_items:
            return result
        for u, (w_in, _) in in_items:
            targets = {}
            for x, (w_out, _) in out_items:
                if x != u:
                    targets[x] = w_in + w_out
            if not targets:
                continue
            limit = max(targets.values())
            witness = _witness_distances(
                out, u, targets, v, limit, witness_settle_limit
            )
            for x, cand in targets.items():
                if witness.get(x, INF) > cand:
                    result.append((u, x, cand))
        return result

    def contract(v, shortcuts):
        # Finalize v's incident overlay edges: in-edges become down-edges,
        # out-edges become up-edges of the augmented graph.
        in_ids = {}
        for u, (w, m) in inc[v].items():
            if contracted[u]:
                continue
            edges.append((u, v, w))
            meta.append(m)
            in_ids[u] = len(edges) - 1
            del out[u][v]
            deleted_neighbors[u] += 1
            if level[u] <= level[v]:
                level[u] = level[v] + 1
        out_ids = {}
        for x, (w, m) in out[v].items():
            if contracted[x]:
                continue
            edges.append((v, x, w))
            meta.append(m)
            out_ids[x] = len(edges) - 1
            del inc[x][v]
            deleted_neighbors[x] += 1
            if level[x] <= level[v]:
                level[x] = level[v] + 1
        for u, x, w in shortcuts:
            m = ("s", in_ids[u], out_ids[x])
            cur = out[u].get(x)
            if cur is None or w < cur[0]:
                out[u][x] = (w, m)
                inc[x][u] = (w, m)
        inc[v].clear()
        out[v].clear()
        contracted[v] = True

    if order is not None:
        if sorted(order) != list(range(n)):
            raise ValueError("order must be a permutation of the node ids")
        for pos, v in enumerate(order):
            rank[v] = pos
            contract(v, shortcuts_for(v))
    else:
        def priority(v, shortcuts):
            degree = sum(1 for u in inc[v] if not contracted[u]) + sum(
                1 for x in out[v] if not contracted[x]
            )
            return len(shortcuts) - degree + deleted_neighbors[v]

        heap = []
        for v in range(n):
            sc = shortcuts_for(v)
            heappush(heap, (priority(v, sc), v))
        pos = 0
        while heap:
            _, v = heappop(heap)
            if contracted[v]:
                continue
            sc = shortcuts_for(v)
            p = priority(v, sc)
            if heap and p > heap[0][0]:
                heappush(heap, (p, v))
                continue
            rank[v] = pos
            pos += 1
            contract(v, sc)

    up_edges = []
    up_meta_ids = []
    down_edges = []
    down_meta_ids = []
    for i, (u, v, w) in enumerate(edges):
        if rank[u] < rank[v]:
            up_edges.append((u, v, w))
            up_meta_ids.append(i)
        else:
            down_edges.append((u, v, w))
            down_meta_ids.append(i)

    def csr_with_refs(edge_triples, ids):
        keyed = sorted(range(len(edge_triples)), key=lambda j: edge_triples[j][0])
        graph = build_graph(n, [edge_triples[j] for j in keyed])
        return graph, [ids[j] for j in keyed]

    up, up_ref = csr_with_refs(up_edges, up_meta_ids)
    down, down_ref = csr_with_refs(down_edges, down_meta_ids)
    down_rev = reverse(down)
    by_level = sorted(range(n), key=lambda v: (-level[v], v))
    return ContractionHierarchy(
        rank, level, edges, meta, up, up_ref, down, down_ref, down_rev, by_level
    )


def _upward_distances(graph: Graph, s: int) -> dict[int, int]:
    dist = {s: 0}
    heap = [(0, s)]
    settled = set()
    first_out, head, weight = graph.first_out, graph.head, graph.weight
    while heap:
        d, x = heappop(heap)
        if x in settled:
            continue
        settled.add(x)
        for i in range(first_out[x], first_out[x + 1]):
            y = head[i]
            nd = d + weight[i]
            if nd < dist.get(y, INF):
                dist[y] = nd
                heappush(heap, (nd, y))
    return dist


def ch_query(ch: ContractionHierarchy, s: int, t: int) -> int:
    """Minimum up-down path distance between s and t; INF if unreachable."""
    if s == t:
        return 0
    fwd = _upward_distances(ch.up, s)
    bwd = _upward_distances(ch.down_rev, t)
    best = INF
    if len(fwd) > len(bwd):
        fwd, bwd = bwd, fwd
    for x, d in fwd.items():
        other = bwd.get(x)
        if other is not None and d + other < best:
            best = d + other
    return best


def dump_ch(ch: ContractionHierarchy, stream):
    stream.write(CH_DUMP_MAGIC)
    pickle.dump(ch, stream, protocol=pickle.HIGHEST_PROTOCOL)


def load_ch(stream) -> ContractionHierarchy:
    magic = stream.read(len(CH_DUMP_MAGIC))
    if magic != CH_DUMP_MAGIC:
        raise ValueError("not a hierarchy dump (bad magic)")
    return pickle.load(stream)
