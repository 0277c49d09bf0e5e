"""Goal-directed query engine: A* with pluggable heuristic and weight function.

Supports static per-edge weights or a time-dependent weight callable,
lazy skipping of degree-2 chains and qualifying degree-3 nodes, and the
two-step query over a biconnected-component core decomposition.
"""

from __future__ import annotations

from dataclasses import dataclass
from heapq import heappop, heappush

from .bcc import CORE, CoreDecomposition
from .graph import INF, Graph, undirected_degrees


class InfeasibleHeuristicError(ValueError):
    """A relaxation exposed a negative reduced cost."""


@dataclass
class QueryResult:
    distance: int
    path: list[int]  # edge ids, source to target
    queue_pushes: int
    settled: int

    @property
    def reachable(self) -> bool:
        return self.distance < INF


class QueryContext:
    """Mutable state of a single query: tentative distances, parent links,
    priority queue (lazy-deletion binary heap keyed by D[x]+h(x)), and
    push/settle counters."""

    def __init__(
        self,
        graph: Graph,
        *,
        weights: list[int] | None = None,
        weight_fn=None,
        heuristic=None,
        degrees: list[int] | None = None,
        allowed: list[bool] | None = None,
        deg2: bool = False,
        deg3: bool = False,
        tau_start: int = 0,
        check_feasibility: bool = False,
    ):
        if deg3 and not deg2:
            raise ValueError("degree-3 skipping builds on degree-2 chains")
        if (weights is None) == (weight_fn is None):
            raise ValueError("provide exactly one of weights / weight_fn")
        self.graph = graph
        self.weights = weights
        self.weight_fn = weight_fn
        self.heuristic = heuristic
        self.allowed = allowed
        self.deg2 = deg2
        self.deg3 = deg3
        self.tau_start = tau_start
        self.check_feasibility = check_feasibility
        n = graph.n
        if (deg2 or deg3) and degrees is None:
            degrees = undirected_degrees(graph)
        self.degrees = degrees
        self.dist = [INF] * n
        self.parent_node = [-1] * n
        self.parent_edge = [-1] * n
        self.settled_flag = [False] * n
        self.in_queue = [False] * n
        self.heap: list[tuple[int, int]] = []
        self.queue_pushes = 0
        self.settled = 0

    # -- helpers -----------------------------------------------------------

    def _edge_weight(self, e: int, d_tail: int) -> int:
        if self.weights is not None:
            return self.weights[e]
        return self.weight_fn(e, self.tau_start + d_tail)

    def _h(self, v: int) -> int:
        h = self.heuristic
        return 0 if h is None else h(v)

    def _push(self, v: int):
        hv = self._h(v)
        if hv >= INF:
            # target unreachable in the lower-bound graph, hence here too
            return
        heappush(self.heap, (self.dist[v] + hv, v))
        self.in_queue[v] = True
        self.queue_pushes += 1

    def _check_edge(self, x: int, y: int, w: int):
        hx, hy = self._h(x), self._h(y)
        if hx >= INF or hy >= INF:
            return
        if w - hx + hy < 0:
            raise InfeasibleHeuristicError(
                f"edge ({x},{y}) weight {w}: reduced cost {w - hx + hy}"
            )

    # -- chain relaxation --------------------------------------------------

    def relax_degree2_chain(self, seeds: list[int], allow_deg3: bool):
        """Relax onward from improved low-degree nodes without queueing them.

        ``seeds`` hold nodes whose tentative distance was just lowered and
        whose undirected degree is at most 2. The walk is bounded by n
        steps so pure degree-2 cycles terminate (improvements strictly
        decrease D, so the bound is a safety net, not a semantics change).
        """
        g = self.graph
        first_out, head = g.first_out, g.head
        dist = self.dist
        degrees = self.degrees
        allowed = self.allowed
        pending = list(seeds)
        steps = 0
        bound = g.n
        while pending:
            cur = pending.pop()
            steps += 1
            if steps > bound:
                break
            d_cur = dist[cur]
            for i in range(first_out[cur], first_out[cur + 1]):
                y = head[i]
                if y == cur or (allowed is not None and not allowed[y]):
                    continue
                w = self._edge_weight(i, d_cur)
                if w >= INF:
                    continue
                if self.check_feasibility:
                    self._check_edge(cur, y, w)
                nd = d_cur + w
                if nd < dist[y]:
                    dist[y] = nd
                    self.parent_node[y] = cur
                    self.parent_edge[y] = i
                    dy = degrees[y]
                    if dy <= 2:
                        pending.append(y)
                    elif (
                        allow_deg3
                        and dy == 3
                        and not self.in_queue[y]
                        and not self.settled_flag[y]
                    ):
                        self.relax_degree3(y, cur)
                    else:
                        self._push(y)

    def relax_degree3(self, z: int, came_from: int):
        """Continue through a degree-3 chain terminal instead of queueing it.

        Walks the up-to-two chains leaving z away from ``came_from`` and
        queues only their terminals; branch walks never skip further
        degree-3 nodes.
        """
        g = self.graph
        dist = self.dist
        d_z = dist[z]
        branch_seeds = []
        for i in range(g.first_out[z], g.first_out[z + 1]):
            v = g.head[i]
            if v == z or v == came_from:
                continue
            if self.allowed is not None and not self.allowed[v]:
                continue
            w = self._edge_weight(i, d_z)
            if w >= INF:
                continue
            if self.check_feasibility:
                self._check_edge(z, v, w)
            nd = d_z + w
            if nd < dist[v]:
                dist[v] = nd
                self.parent_node[v] = z
                self.parent_edge[v] = i
                if self.degrees[v] <= 2:
                    branch_seeds.append(v)
                else:
                    self._push(v)
        if branch_seeds:
            self.relax_degree2_chain(branch_seeds, allow_deg3=False)

    # -- main loop ---------------------------------------------------------

    def run(self, s: int, t: int) -> QueryResult:
        if s == t:
            return QueryResult(0, [], 0, 0)
        if self.allowed is not None and not (self.allowed[s] and self.allowed[t]):
            return QueryResult(INF, [], 0, 0)
        dist = self.dist
        dist[s] = 0
        if self._h(s) >= INF:
            return QueryResult(INF, [], 0, 0)
        self._push(s)
        g = self.graph
        first_out, head = g.first_out, g.head
        degrees = self.degrees
        allowed = self.allowed
        deg2 = self.deg2
        deg3 = self.deg3
        heap = self.heap
        settled_flag = self.settled_flag
        while heap:
            key, x = heappop(heap)
            if settled_flag[x]:
                continue
            if dist[t] < key:
                break  # stopping rule: D[t] below the minimum queue key
            settled_flag[x] = True
            self.in_queue[x] = False
            self.settled += 1
            d_x = dist[x]
            for i in range(first_out[x], first_out[x + 1]):
                y = head[i]
                if y == x or (allowed is not None and not allowed[y]):
                    continue
                w = self._edge_weight(i, d_x)
                if w >= INF:
                    continue
                if self.check_feasibility:
                    self._check_edge(x, y, w)
                nd = d_x + w
                if nd < dist[y]:
                    dist[y] = nd
                    self.parent_node[y] = x
                    self.parent_edge[y] = i
                    if deg2 and degrees[y] <= 2:
                        self.relax_degree2_chain([y], allow_deg3=deg3)
                    elif (
                        deg3
                        and degrees[y] == 3
                        and not self.in_queue[y]
                        and not settled_flag[y]
                    ):
                        self.relax_degree3(y, x)
                    else:
                        self._push(y)
        return QueryResult(
            dist[t], self.extract_path(s, t), self.queue_pushes, self.settled
        )

    def extract_path(self, s: int, t: int) -> list[int]:
        """Walk parent links from t back to s; empty if t is unreachable."""
        if self.dist[t] >= INF:
            return []
        path = []
        v = t
        hops = 0
        while v != s:
            e = self.parent_edge[v]
            if e < 0 or hops > self.graph.n:
                raise RuntimeError("broken parent chain during path unpacking")
            path.append(e)
            v = self.parent_node[v]
            hops += 1
        path.reverse()
        return path


def _shifted_heuristic(h, offset: int):
    if h is None:
        return None

    def shifted(v):
        hv = h(v)
        if hv >= INF:
            return INF
        return max(hv - offset, 0)

    return shifted


def run_query(
    graph: Graph,
    s: int,
    t: int,
    *,
    weights: list[int] | None = None,
    weight_fn=None,
    heuristic=None,
    degrees: list[int] | None = None,
    core: CoreDecomposition | None = None,
    deg2: bool = False,
    deg3: bool = False,
    tau_start: int = 0,
    check_feasibility: bool = False,
) -> QueryResult:
    """Answer one point-to-point query, optionally via the two-step core search."""
    kwargs = dict(
        weights=weights,
        weight_fn=weight_fn,
        degrees=degrees,
        deg2=deg2,
        deg3=deg3,
        check_feasibility=check_feasibility,
    )
    if core is None or s == t:
        ctx = QueryContext(
            graph, heuristic=heuristic, tau_start=tau_start, **kwargs
        )
        return ctx.run(s, t)
    return two_step_query(
        graph, core, s, t, heuristic=heuristic, tau_start=tau_start, **kwargs
    )


def two_step_query(
    graph: Graph,
    core: CoreDecomposition,
    s: int,
    t: int,
    *,
    heuristic=None,
    tau_start: int = 0,
    **kwargs,
) -> QueryResult:
    """Search the core plus s's component first, then descend into t's piece.

    The concatenated result equals a plain query on the full graph: the
    attachment node of t's component separates it from everything else.
    """
    allowed1 = core.allowed_with(s)
    if core.component_id[t] == CORE or allowed1[t]:
        ctx = QueryContext(
            graph,
            heuristic=heuristic,
            allowed=allowed1,
            tau_start=tau_start,
            **kwargs,
        )
        return ctx.run(s, t)
    a_t = core.attachment[t]
    if a_t is None:
        return QueryResult(INF, [], 0, 0)
    # Step 1 targets the attachment node; shift the heuristic so it is
    # zero there (feasibility is preserved, the standard stopping rule
    # applies).
    offset = 0 if heuristic is None else heuristic(a_t)
    if offset >= INF:
        return QueryResult(INF, [], 0, 0)
    ctx1 = QueryContext(
        graph,
        heuristic=_shifted_heuristic(heuristic, offset),
        allowed=allowed1,
        tau_start=tau_start,
        **kwargs,
    )
    r1 = ctx1.run(s, a_t)
    if not r1.reachable:
        return QueryResult(
            INF, [], r1.queue_pushes, r1.settled
        )
    comp_t = core.component_id[t]
    component_id = core.component_id
    allowed2 = [component_id[v] == comp_t for v in range(graph.n)]
    allowed2[a_t] = True
    ctx2 = QueryContext(
        graph,
        heuristic=heuristic,
        allowed=allowed2,
        tau_start=tau_start + r1.distance,
        **kwargs,
    )
    r2 = ctx2.run(a_t, t)
    distance = r1.distance + r2.distance if r2.reachable else INF
    return QueryResult(
        distance,
        r1.path + r2.path if r2.reachable else [],
        r1.queue_pushes + r2.queue_pushes,
        r1.settled + r2.settled,
    )
