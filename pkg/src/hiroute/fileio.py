"""Parsers and writers for instance files and benchmark CSV.

Graphs use the 9th DIMACS Implementation Challenge ``.gr``/``.co``
formats. Travel time functions, edge tags, live weights, and turn
tables use line-oriented whitespace-separated formats with a versioned
header line. All times are integer milliseconds.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

from .graph import Graph, build_graph
from .ttf import TravelTimeFunction

TTF_HEADER = "ttf 1"
TAGS_HEADER = "tags 1"
LIVE_HEADER = "live 1"
TURNS_HEADER = "turns 1"

CSV_COLUMNS = [
    "query_id",
    "source",
    "target",
    "algorithm",
    "scenario",
    "distance",
    "queue_pushes",
    "settled_nodes",
    "running_time_ns",
    "lower_bound_distance",
]


class ParseError(ValueError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass
class TurnModel:
    """Turn costs between ordered pairs of incident edges.

    Unlisted pairs cost 0, except U-turns (an edge followed by one of
    its reversals), which are forbidden unless explicitly listed.
    ``None`` encodes a forbidden turn.
    """

    costs: dict[tuple[int, int], int | None] = field(default_factory=dict)

    def cost(self, e_in: int, e_out: int, g: Graph) -> int | None:
        if (e_in, e_out) in self.costs:
            return self.costs[(e_in, e_out)]
        if g.head[e_out] == g.tail[e_in] and g.tail[e_out] == g.head[e_in]:
            return None  # default-forbidden U-turn
        return 0


@dataclass
class InstanceBundle:
    graph: Graph
    coordinates: list[tuple[float, float]] | None = None
    turn_table: TurnModel | None = None
    ttf_table: list[TravelTimeFunction] | None = None
    live_table: list[int] | None = None


def _records(stream):
    for line_no, raw in enumerate(stream, start=1):
        line = raw.strip()
        if line:
            yield line_no, line


def read_dimacs_gr(stream) -> Graph:
    """Parse a DIMACS ``.gr`` shortest path instance (1-based node ids)."""
    n = m = None
    edges = []
    for line_no, line in _records(stream):
        kind = line[0]
        if kind == "c":
            continue
        parts = line.split()
        if kind == "p":
            if len(parts) != 4 or parts[1] != "sp":
                raise ParseError(line_no, f"malformed problem line: {line!r}")
            n, m = int(parts[2]), int(parts[3])
        elif kind == "a":
            if n is None:
                raise ParseError(line_no, "arc line before problem header")
            if len(parts) != 4:
                raise ParseError(line_no, f"malformed arc line: {line!r}")
            try:
                u, v, w = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(line_no, f"non-integer field in: {line!r}") from None
            if not (1 <= u <= n) or not (1 <= v <= n):
                raise ParseError(line_no, f"node id out of range in: {line!r}")
            if w < 0:
                raise ParseError(line_no, f"negative weight in: {line!r}")
            edges.append((u - 1, v - 1, w))
        else:
            raise ParseError(line_no, f"unknown line type {kind!r}")
    if n is None:
        raise ParseError(0, "missing problem header")
    if len(edges) != m:
        raise ParseError(0, f"header declares {m} arcs, found {len(edges)}")
    return build_graph(n, edges)


def write_dimacs_gr(g: Graph, stream):
    stream.write(f"p sp {g.n} {g.m}\n")
    for u, v, w, _ in g.edges():
        stream.write(f"a {u + 1} {v + 1} {w}\n")


def read_dimacs_co(stream, n: int) -> list[tuple[float, float]]:
    coords: list[tuple[float, float]] = [(0.0, 0.0)] * n
    seen = 0
    for line_no, line in _records(stream):
        if line[0] in "cp":
            continue
        parts = line.split()
        if parts[0] != "v" or len(parts) != 4:
            raise ParseError(line_no, f"malformed coordinate line: {line!r}")
        ident = int(parts[1])
        if not (1 <= ident <= n):
            raise ParseError(line_no, f"node id out of range: {ident}")
        coords[ident - 1] = (float(parts[2]), float(parts[3]))
        seen += 1
    if seen != n:
        raise ParseError(0, f"expected {n} coordinate lines, found {seen}")
    return coords


def write_dimacs_co(coords, stream):
    stream.write(f"p aux sp co {len(coords)}\n")
    for i, (x, y) in enumerate(coords):
        stream.write(f"v {i + 1} {x:.6f} {y:.6f}\n")


def read_ttf_file(stream, g: Graph) -> list[TravelTimeFunction]:
    """Parse per-edge travel time functions.

    Records are ``edge k t1 v1 ... tk vk``. Edges without a record get
    the constant function of their scalar weight. Every parsed function
    is validated for monotone breakpoint times and the FIFO property.
    """
    it = _records(stream)
    _check_header_iter(it, TTF_HEADER, "ttf")
    ttfs: list[TravelTimeFunction | None] = [None] * g.m
    for line_no, line in it:
        parts = line.split()
        try:
            fields = [int(p) for p in parts]
        except ValueError:
            raise ParseError(line_no, f"non-integer field in: {line!r}") from None
        if len(fields) < 2:
            raise ParseError(line_no, f"truncated record: {line!r}")
        e, k = fields[0], fields[1]
        if not (0 <= e < g.m):
            raise ParseError(line_no, f"unknown edge index {e}")
        if len(fields) != 2 + 2 * k:
            raise ParseError(line_no, f"edge {e}: expected {k} breakpoint pairs")
        times = fields[2::2]
        values = fields[3::2]
        try:
            ttfs[e] = TravelTimeFunction(times, values)
        except ValueError as exc:
            raise ParseError(line_no, f"edge {e}: {exc}") from None
    return [
        ttf if ttf is not None else TravelTimeFunction.constant(g.weight[e])
        for e, ttf in enumerate(ttfs)
    ]


def _check_header_iter(it, expected, what):
    try:
        line_no, line = next(it)
    except StopIteration:
        raise ParseError(0, f"empty {what} file") from None
    if line != expected:
        raise ParseError(line_no, f"expected {what} header {expected!r}")


def read_tags_file(stream, g: Graph) -> tuple[list[bool], list[bool]]:
    """Parse per-edge tag letters; returns (tunnel, highway) flag arrays."""
    it = _records(stream)
    _check_header_iter(it, TAGS_HEADER, "tags")
    tunnel = [False] * g.m
    highway = [False] * g.m
    for line_no, line in it:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, f"malformed tag line: {line!r}")
        e = int(parts[0])
        if not (0 <= e < g.m):
            raise ParseError(line_no, f"unknown edge index {e}")
        letters = parts[1]
        if set(letters) - {"t", "h"}:
            raise ParseError(line_no, f"unknown tag letters in {letters!r}")
        tunnel[e] = "t" in letters
        highway[e] = "h" in letters
    return tunnel, highway


def read_live_file(stream, g: Graph) -> list[int]:
    """Parse a live snapshot; unlisted edges keep their freeflow weight."""
    it = _records(stream)
    _check_header_iter(it, LIVE_HEADER, "live")
    live = list(g.weight)
    for line_no, line in it:
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(line_no, f"malformed live line: {line!r}")
        e, w = int(parts[0]), int(parts[1])
        if not (0 <= e < g.m):
            raise ParseError(line_no, f"unknown edge index {e}")
        if w < 0:
            raise ParseError(line_no, f"negative live weight on edge {e}")
        live[e] = w
    return live


def read_turns_file(stream, g: Graph) -> TurnModel:
    """Parse turn records ``e_in e_out cost`` with ``X`` for forbidden."""
    it = _records(stream)
    _check_header_iter(it, TURNS_HEADER, "turns")
    tm = TurnModel()
    for line_no, line in it:
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(line_no, f"malformed turn line: {line!r}")
        e_in, e_out = int(parts[0]), int(parts[1])
        if not (0 <= e_in < g.m) or not (0 <= e_out < g.m):
            raise ParseError(line_no, f"unknown edge index in: {line!r}")
        if g.head[e_in] != g.tail[e_out]:
            raise ParseError(
                line_no, f"edges {e_in} and {e_out} do not share a pivot node"
            )
        if parts[2] == "X":
            tm.costs[(e_in, e_out)] = None
        else:
            cost = int(parts[2])
            if cost < 0:
                raise ParseError(line_no, f"negative turn cost in: {line!r}")
            tm.costs[(e_in, e_out)] = cost
    return tm


def write_turns_file(tm: TurnModel, stream):
    stream.write(TURNS_HEADER + "\n")
    for (e_in, e_out), cost in sorted(tm.costs.items()):
        stream.write(f"{e_in} {e_out} {'X' if cost is None else cost}\n")


def write_results_csv(rows, stream):
    """Write query records as RFC-4180-style CSV with a header row."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(
            [
                row.query_id,
                row.source,
                row.target,
                row.algorithm,
                row.scenario,
                row.distance if row.distance is not None else "inf",
                row.queue_pushes,
                row.settled_nodes,
                row.running_time_ns,
                row.lower_bound_distance
                if row.lower_bound_distance is not None
                else "inf",
            ]
        )
