"""Exact lower-bound distance heuristic extracted lazily from a hierarchy."""

from __future__ import annotations

from heapq import heappop, heappush

from .ch import ContractionHierarchy
from .graph import INF


class PotentialContext:
    """Per-target state: down-path distances B and memoized potentials P.

    Arrays are generation-stamped, so re-targeting costs O(1) per node
    logically and no per-node clearing happens at query time.
    """

    def __init__(self, ch: ContractionHierarchy):
        self.ch = ch
        n = ch.n
        self._b = [INF] * n
        self._p = [INF] * n
        self._b_gen = [0] * n
        self._p_gen = [0] * n
        self._gen = 0
        self.target: int | None = None

    def init_target(self, t: int):
        """Backward search from t over reversed down-edges (fills B)."""
        ch = self.ch
        if not (0 <= t < ch.n):
            raise ValueError(f"target {t} out of range")
        self._gen += 1
        gen = self._gen
        self.target = t
        b, b_gen = self._b, self._b_gen
        rev = ch.down_rev
        first_out, head, weight = rev.first_out, rev.head, rev.weight
        b[t] = 0
        b_gen[t] = gen
        heap = [(0, t)]
        settled = set()
        while heap:
            d, y = heappop(heap)
            if y in settled:
                continue
            settled.add(y)
            for i in range(first_out[y], first_out[y + 1]):
                x = head[i]
                nd = d + weight[i]
                if b_gen[x] != gen or nd < b[x]:
                    b[x] = nd
                    b_gen[x] = gen
                    heappush(heap, (nd, x))

    def backward_distance(self, x: int) -> int:
        """Minimum down-path distance from x to the current target, or INF."""
        if self._gen == 0:
            raise RuntimeError("init_target must be called first")
        return self._b[x] if self._b_gen[x] == self._gen else INF

    def potential(self, x: int) -> int:
        """Exact lower-bound distance from x to the current target.

        Memoized; follows up-edges only, with an explicit stack instead of
        recursion so deep hierarchies cannot hit the call-depth limit.
        """
        gen = self._gen
        if gen == 0:
            raise RuntimeError("init_target must be called first")
        p, p_gen = self._p, self._p_gen
        if p_gen[x] == gen:
            return p[x]
        b, b_gen = self._b, self._b_gen
        up = self.ch.up
        first_out, head, weight = up.first_out, up.head, up.weight
        stack = [x]
        while stack:
            v = stack[-1]
            if p_gen[v] == gen:
                stack.pop()
                continue
            ready = True
            for i in range(first_out[v], first_out[v + 1]):
                y = head[i]
                if p_gen[y] != gen:
                    stack.append(y)
                    ready = False
            if not ready:
                continue
            best = b[v] if b_gen[v] == gen else INF
            for i in range(first_out[v], first_out[v + 1]):
                cand = weight[i] + p[head[i]]
                if cand < best:
                    best = cand
            p[v] = best if best < INF else INF
            p_gen[v] = gen
            stack.pop()
        return p[x]

    def memoized_count(self) -> int:
        """How many potentials the current target has materialized."""
        gen = self._gen
        return sum(1 for g in self._p_gen if g == gen)


def init_target(ch: ContractionHierarchy, t: int) -> PotentialContext:
    ctx = PotentialContext(ch)
    ctx.init_target(t)
    return ctx


def phast_all_to_one(ch: ContractionHierarchy, t: int) -> list[int]:
    """Distances from every node to t via a top-to-bottom level sweep.

    Runs the backward search, then relaxes reversed up-edges level by
    level from most to least important.
    """
    ctx = init_target(ch, t)
    gen = ctx._gen
    dist = [
        ctx._b[v] if ctx._b_gen[v] == gen else INF for v in range(ch.n)
    ]
    up = ch.up
    first_out, head, weight = up.first_out, up.head, up.weight
    for x in ch.nodes_by_level_desc:
        dx = dist[x]
        for i in range(first_out[x], first_out[x + 1]):
            cand = weight[i] + dist[head[i]]
            if cand < dx:
                dx = cand
        dist[x] = dx
    return dist
