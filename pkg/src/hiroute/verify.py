"""Plain Dijkstra reference search, kept independent of the A* engine."""

from __future__ import annotations

from heapq import heappop, heappush

from .graph import INF, Graph


class VerificationError(AssertionError):
    """An engine answer disagreed with the reference search."""


def dijkstra(
    graph: Graph,
    s: int,
    *,
    weights: list[int] | None = None,
    weight_fn=None,
    t: int | None = None,
    tau_start: int = 0,
) -> list[int] | int:
    """Shortest distances from s; time-dependent when given a weight callable.

    Returns the full distance array, or a single distance when ``t`` is
    given (stopping once t is settled).
    """
    if (weights is None) == (weight_fn is None):
        raise ValueError("provide exactly one of weights / weight_fn")
    n = graph.n
    dist = [INF] * n
    dist[s] = 0
    heap = [(0, s)]
    done = [False] * n
    first_out, head = graph.first_out, graph.head
    while heap:
        d, x = heappop(heap)
        if done[x]:
            continue
        done[x] = True
        if t is not None and x == t:
            return d
        for i in range(first_out[x], first_out[x + 1]):
            y = head[i]
            if y == x:
                continue
            w = weights[i] if weights is not None else weight_fn(i, tau_start + d)
            if w >= INF:
                continue
            nd = d + w
            if nd < dist[y]:
                dist[y] = nd
                heappush(heap, (nd, y))
    if t is not None:
        return dist[t]
    return dist


def resimulate_path(
    graph: Graph,
    path: list[int],
    s: int,
    *,
    weights: list[int] | None = None,
    weight_fn=None,
    tau_start: int = 0,
) -> int:
    """Forward-accumulate a path's travel time from the departure epoch.

    Each edge is evaluated at the arrival time of its tail, mirroring the
    label recursion of the time-dependent search. Also checks the path is
    connected and starts at s.
    """
    at = s
    d = 0
    for e in path:
        if graph.tail[e] != at:
            raise VerificationError(f"path edge {e} does not start at node {at}")
        w = weights[e] if weights is not None else weight_fn(e, tau_start + d)
        if w >= INF:
            return INF
        d += w
        at = graph.head[e]
    return d
