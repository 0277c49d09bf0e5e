"""Shared helpers: independent reference searches and random instances.

The reference implementations here are deliberately written from scratch
(plain binary-heap Dijkstra, brute-force path enumeration) so they share
no code with the package under test.
"""

from __future__ import annotations

import heapq
import random

from hiroute.fileio import InstanceBundle, TurnModel
from hiroute.graph import INF, Graph, build_graph
from hiroute.ttf import PERIOD_MS, TravelTimeFunction


def ref_dijkstra(g: Graph, s: int, weights=None, weight_fn=None, tau_start=0):
    """Reference single-source shortest paths; supports entry-time weights."""
    dist = [INF] * g.n
    dist[s] = 0
    heap = [(0, s)]
    while heap:
        d, x = heapq.heappop(heap)
        if d > dist[x]:
            continue
        for e in range(g.first_out[x], g.first_out[x + 1]):
            y = g.head[e]
            if y == x:
                continue
            w = weights[e] if weight_fn is None else weight_fn(e, tau_start + d)
            if w >= INF:
                continue
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def random_graph(rng: random.Random, n: int, *, density: float = 2.0) -> Graph:
    """Random digraph: a random spine for likely connectivity plus noise arcs."""
    edges = []
    order = list(range(n))
    rng.shuffle(order)
    for a, b in zip(order, order[1:]):
        w = rng.randint(1, 1000)
        edges.append((a, b, w))
        if rng.random() < 0.8:
            edges.append((b, a, rng.randint(1, 1000)))
    extra = int(density * n)
    for _ in range(extra):
        u = rng.randrange(n)
        v = rng.randrange(n)
        edges.append((u, v, rng.randint(1, 1000)))
    return build_graph(n, edges)


def random_ttf(rng: random.Random, freeflow: int) -> TravelTimeFunction:
    """Random FIFO function anchored at the freeflow value."""
    k = rng.randint(1, 5)
    times = sorted(rng.sample(range(0, PERIOD_MS, 60_000), k))
    values = [freeflow + rng.randint(0, freeflow)] * k
    anchor = rng.randrange(k)
    values[anchor] = freeflow
    ttf = TravelTimeFunction(times, values)
    ttf.validate()
    return ttf


def random_bundle(
    seed: int,
    n: int,
    *,
    td: bool = False,
    live: bool = False,
    turns: bool = False,
    density: float = 2.0,
) -> InstanceBundle:
    rng = random.Random(seed)
    g = random_graph(rng, n, density=density)
    tags = [
        ("t" if rng.random() < 0.1 else "") + ("h" if rng.random() < 0.1 else "")
        for _ in range(g.m)
    ]
    g = build_graph(
        n, [(g.tail[e], g.head[e], g.weight[e]) for e in range(g.m)], tags=tags
    )
    ttfs = None
    if td:
        ttfs = [random_ttf(rng, g.weight[e]) for e in range(g.m)]
    live_table = None
    if live:
        live_table = [g.weight[e] + rng.randint(0, 500) for e in range(g.m)]
    tm = None
    if turns:
        tm = random_turn_model(rng, g)
    return InstanceBundle(
        graph=g,
        coordinates=None,
        turn_table=tm,
        ttf_table=ttfs,
        live_table=live_table,
    )


def random_turn_model(rng: random.Random, g: Graph) -> TurnModel:
    costs = {}
    for pivot in range(g.n):
        incoming = [e for e in range(g.m) if g.head[e] == pivot]
        outgoing = list(g.out_range(pivot))
        for e_in in incoming:
            for e_out in outgoing:
                r = rng.random()
                if r < 0.1:
                    costs[(e_in, e_out)] = None
                elif r < 0.3:
                    costs[(e_in, e_out)] = rng.randint(1, 300)
    return TurnModel(costs)


def enumerate_turn_paths(g: Graph, tm: TurnModel, e_start: int, e_end: int):
    """Brute-force minimum turn-aware weight over simple edge sequences.

    Weight convention matches the expanded graph: the first edge's travel
    time is excluded, every subsequent step adds turn cost plus edge weight.
    """
    best = [INF]

    def walk(e, used, acc):
        if e == e_end:
            best[0] = min(best[0], acc)
            return
        pivot = g.head[e]
        for e_out in g.out_range(pivot):
            if e_out in used:
                continue
            c = tm.cost(e, e_out, g)
            if c is None:
                continue
            walk(e_out, used | {e_out}, acc + c + g.weight[e_out])

    walk(e_start, {e_start}, 0)
    return best[0]
