"""Scenario layer: query graph, query weights, and node mapping per application.

Every scenario keeps the contract that each query-graph edge weighs at
least the lower-bound distance between its mapped endpoints, so the
shared preprocessing stays a feasible heuristic source.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fileio import InstanceBundle, TurnModel
from .graph import INF, Graph, build_graph, undirected_degrees
from .ttf import DEFAULT_TAU_SOON_MS, TravelTimeFunction, blend_live_predicted

SCENARIO_NAMES = (
    "base",
    "scaled",
    "avoid",
    "turns",
    "td",
    "td-live",
    "td-live-turns",
)


class ContractViolationError(ValueError):
    """A query weight dropped below the preprocessing lower bound."""


@dataclass
class Scenario:
    """Everything a query needs: graph view, weights, mapping, lower bounds."""

    name: str
    graph: Graph                      # query graph (may be turn-expanded)
    static_weights: list[int] | None  # exactly one of these two is set
    weight_fn: object | None          # callable(edge_id, tau) -> weight
    phi: list[int] | None             # query node -> lower-bound-graph node
    time_dependent: bool
    base_graph: Graph                 # preprocessing graph
    lower_bounds: list[int]           # per base_graph edge
    degrees: list[int]                # undirected degrees of the query graph
    use_bcc: bool                     # core restriction is pointless under turns

    def map_node(self, v: int) -> int:
        return v if self.phi is None else self.phi[v]

    def weight_at(self, e: int, tau: int) -> int:
        if self.static_weights is not None:
            return self.static_weights[e]
        return self.weight_fn(e, tau)


@dataclass
class TurnExpandedGraph:
    """Expanded view whose nodes are the edges of the input graph."""

    graph: Graph
    phi: list[int]              # expanded node -> head of the original edge
    exp_turn_cost: list[int]    # per expanded edge
    exp_out_edge: list[int]     # per expanded edge: the traversed original edge


def scenario_scaled(g: Graph, alpha) -> list[int]:
    """w_q = ceil(alpha * w); rounding up keeps w_q >= w_l exactly."""
    frac = Fraction(str(alpha))
    if frac < 1:
        raise ContractViolationError(f"alpha={alpha} would undercut the lower bound")
    num, den = frac.numerator, frac.denominator
    return [-((-w * num) // den) for w in g.weight]


def scenario_avoid(g: Graph, *, tunnels: bool = False, highways: bool = False) -> list[int]:
    """Tagged edges become infinite; everything else keeps its freeflow time."""
    if (tunnels and g.tunnel is None) or (highways and g.highway is None):
        raise ValueError("graph carries no tags for the requested avoidance")
    out = list(g.weight)
    for e in range(g.m):
        if (tunnels and g.tunnel[e]) or (highways and g.highway[e]):
            out[e] = INF
    return out


def expand_turns(g: Graph, tm: TurnModel) -> TurnExpandedGraph:
    """Build the turn-expanded graph.

    An expanded edge joins edge (x,y) to an incident edge (y,z) unless the
    turn is forbidden; its weight is turn cost plus the weight of (y,z).
    The leading weight of a path's first input edge is deliberately not
    represented: it is constant for a fixed source edge.
    """
    for e_in, e_out in tm.costs:
        if not (0 <= e_in < g.m) or not (0 <= e_out < g.m):
            raise ValueError(f"turn pair ({e_in},{e_out}) references unknown edges")
        if g.head[e_in] != g.tail[e_out]:
            raise ValueError(f"turn pair ({e_in},{e_out}) is not incident")
    in_edges: list[list[int]] = [[] for _ in range(g.n)]
    for e in range(g.m):
        in_edges[g.head[e]].append(e)
    exp_edges = []
    exp_turn_cost = []
    exp_out_edge = []
    for y in range(g.n):
        for e_in in in_edges[y]:
            for e_out in g.out_range(y):
                cost = tm.cost(e_in, e_out, g)
                if cost is None:
                    continue
                exp_edges.append((e_in, e_out, cost + g.weight[e_out]))
                exp_turn_cost.append(cost)
                exp_out_edge.append(e_out)
    expanded = build_graph(g.m, exp_edges)
    # build_graph regrouped the edges; reorder the side tables to match
    order = sorted(
        range(len(exp_edges)), key=lambda j: exp_edges[j][0]
    )
    exp_turn_cost = [exp_turn_cost[j] for j in order]
    exp_out_edge = [exp_out_edge[j] for j in order]
    phi = [g.head[e] for e in range(g.m)]
    return TurnExpandedGraph(expanded, phi, exp_turn_cost, exp_out_edge)


def td_weight_fn(ttfs: list[TravelTimeFunction]):
    def weight(e: int, tau: int) -> int:
        return ttfs[e].eval(tau)

    return weight


def blend_weight_fn(
    live: list[int], ttfs: list[TravelTimeFunction], tau_soon: int
):
    def weight(e: int, tau: int) -> int:
        return blend_live_predicted(live[e], ttfs[e], tau_soon, tau)

    return weight


def lower_bound_weights(
    g: Graph,
    *,
    ttfs: list[TravelTimeFunction] | None = None,
    live: list[int] | None = None,
) -> list[int]:
    """Per-edge lower bounds for preprocessing.

    Static scenarios use the freeflow weight; a purely time-dependent
    scenario may tighten it to the per-edge function minimum; anything
    involving a live snapshot falls back to freeflow. Raises when an
    input could undercut the bound.
    """
    if ttfs is not None and live is None:
        bounds = [ttf.minimum() for ttf in ttfs]
    else:
        bounds = list(g.weight)
    if ttfs is not None:
        for e, ttf in enumerate(ttfs):
            if ttf.minimum() < bounds[e]:
                raise ContractViolationError(
                    f"edge {e}: predicted travel time dips below the lower bound"
                )
    if live is not None:
        for e, w in enumerate(live):
            if w < bounds[e]:
                raise ContractViolationError(
                    f"edge {e}: live weight {w} below lower bound {bounds[e]}"
                )
    return bounds


def build_scenario(
    bundle: InstanceBundle,
    name: str,
    *,
    alpha=None,
    avoid_tunnels: bool = False,
    avoid_highways: bool = False,
    tau_soon: int = DEFAULT_TAU_SOON_MS,
) -> Scenario:
    """Assemble one of the named scenarios from an instance bundle."""
    if name not in SCENARIO_NAMES:
        raise ValueError(f"unknown scenario {name!r}")
    g = bundle.graph
    turns = name in ("turns", "td-live-turns")
    td = name in ("td", "td-live", "td-live-turns")
    live = name in ("td-live", "td-live-turns")

    static = None
    weight_fn = None
    if td:
        if bundle.ttf_table is None:
            raise ValueError(f"scenario {name!r} needs a travel time table")
        if live:
            if bundle.live_table is None:
                raise ValueError(f"scenario {name!r} needs a live snapshot")
            lower = lower_bound_weights(
                g, ttfs=bundle.ttf_table, live=bundle.live_table
            )
            weight_fn = blend_weight_fn(bundle.live_table, bundle.ttf_table, tau_soon)
        else:
            lower = lower_bound_weights(g, ttfs=bundle.ttf_table)
            weight_fn = td_weight_fn(bundle.ttf_table)
    elif name == "scaled":
        if alpha is None:
            raise ValueError("scaled scenario needs alpha")
        static = scenario_scaled(g, alpha)
        lower = list(g.weight)
    elif name == "avoid":
        static = scenario_avoid(g, tunnels=avoid_tunnels, highways=avoid_highways)
        lower = list(g.weight)
    else:
        static = list(g.weight)
        lower = list(g.weight)

    if not turns:
        graph = g
        if static is not None:
            query_graph = graph
            return Scenario(
                name, query_graph, static, None, None, False, g, lower,
                undirected_degrees(query_graph), True,
            )
        return Scenario(
            name, g, None, weight_fn, None, True, g, lower,
            undirected_degrees(g), True,
        )

    if bundle.turn_table is None:
        raise ValueError(f"scenario {name!r} needs a turn table")
    teg = expand_turns(g, bundle.turn_table)
    if weight_fn is None:
        return Scenario(
            name, teg.graph, teg.graph.weight, None, teg.phi, False, g, lower,
            undirected_degrees(teg.graph), False,
        )
    inner = weight_fn
    turn_cost = teg.exp_turn_cost
    out_edge = teg.exp_out_edge

    def expanded_weight(exp_e: int, tau: int) -> int:
        c = turn_cost[exp_e]
        return c + inner(out_edge[exp_e], tau + c)

    return Scenario(
        name, teg.graph, None, expanded_weight, teg.phi, True, g, lower,
        undirected_degrees(teg.graph), False,
    )
