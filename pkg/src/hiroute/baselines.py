"""Comparison heuristics: landmark triangle-inequality bounds and an oracle table."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass

from .graph import INF, Graph, reverse
from .verify import dijkstra


@dataclass
class LandmarkSet:
    landmarks: list[int]
    dist_from: list[list[int]]  # per landmark: exact distances from it
    dist_to: list[list[int]]    # per landmark: exact distances towards it


def _dijkstra_tree(g: Graph, root: int):
    """Distances plus parent links of the shortest path tree from root."""
    from heapq import heappop, heappush

    n = g.n
    dist = [INF] * n
    parent = [-1] * n
    dist[root] = 0
    heap = [(0, root)]
    done = [False] * n
    while heap:
        d, x = heappop(heap)
        if done[x]:
            continue
        done[x] = True
        for i in g.out_range(x):
            y = g.head[i]
            nd = d + g.weight[i]
            if nd < dist[y]:
                dist[y] = nd
                parent[y] = x
                heappush(heap, (nd, y))
    return dist, parent


def select_landmarks_avoid(g: Graph, k: int = 16, *, seed: int = 0) -> LandmarkSet:
    """Landmark placement by the avoid strategy, with exact distance tables.

    Each round grows a shortest-path tree from a random root, weights
    nodes by how badly the current landmarks underestimate them, sums
    those weights over subtrees (zeroing any subtree that already holds
    a landmark), and descends from the heaviest node to a leaf, which
    becomes the next landmark. Deterministic for a fixed seed.
    """
    n = g.n
    if k > n:
        warnings.warn(f"requested {k} landmarks on {n} nodes; clamping")
        k = n
    rng = random.Random(seed)
    rev = reverse(g)
    landmarks: list[int] = []
    dist_from: list[list[int]] = []
    dist_to: list[list[int]] = []
    is_landmark = [False] * n

    for _ in range(k):
        root = rng.randrange(n)
        dist, parent = _dijkstra_tree(g, root)
        weight = [0] * n
        for v in range(n):
            if dist[v] >= INF:
                continue
            lb = 0
            for li in range(len(landmarks)):
                dt, df = dist_to[li], dist_from[li]
                if dt[root] < INF and dt[v] < INF:
                    lb = max(lb, dt[v] - dt[root], dt[root] - dt[v])
                if df[root] < INF and df[v] < INF:
                    lb = max(lb, df[v] - df[root], df[root] - df[v])
            weight[v] = max(dist[v] - lb, 0)
        children: list[list[int]] = [[] for _ in range(n)]
        order = sorted(
            (v for v in range(n) if dist[v] < INF), key=lambda v: dist[v]
        )
        for v in order:
            if parent[v] >= 0:
                children[parent[v]].append(v)
        size = [0] * n
        blocked = [False] * n
        for v in reversed(order):  # leaves first
            total = weight[v]
            bad = is_landmark[v]
            for c in children[v]:
                total += size[c]
                bad = bad or blocked[c]
            size[v] = 0 if bad else total
            blocked[v] = bad
        candidates = [v for v in order if size[v] > 0]
        if candidates:
            v = max(candidates, key=lambda u: (size[u], -u))
            while True:
                best_child = None
                for c in children[v]:
                    if size[c] > 0 and (
                        best_child is None or size[c] > size[best_child]
                    ):
                        best_child = c
                if best_child is None:
                    break
                v = best_child
        else:
            free = [u for u in range(n) if not is_landmark[u]]
            v = rng.choice(free)
        landmarks.append(v)
        is_landmark[v] = True
        dist_from.append(dijkstra(g, v, weights=g.weight))
        dist_to.append(dijkstra(rev, v, weights=rev.weight))
    return LandmarkSet(landmarks, dist_from, dist_to)


def alt_potential(ls: LandmarkSet, x: int, t: int) -> int:
    """Triangle-inequality lower bound on dist(x, t); never an overestimate."""
    best = 0
    for li in range(len(ls.landmarks)):
        dt = ls.dist_to[li]
        df = ls.dist_from[li]
        if dt[x] < INF and dt[t] < INF:
            d = dt[x] - dt[t]
            if d > best:
                best = d
        if df[t] < INF and df[x] < INF:
            d = df[t] - df[x]
            if d > best:
                best = d
    return best


def oracle_context(g: Graph, t: int) -> list[int]:
    """Exact lower-bound distances to t, filled by one reverse search.

    The benchmark harness excludes this fill from query timing: it stands
    in for a heuristic with free access to exact estimates.
    """
    rev = reverse(g)
    return dijkstra(rev, t, weights=rev.weight)
