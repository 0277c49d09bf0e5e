"""Benchmark harness: instance generation, query workloads, and summaries."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import fileio
from .astar import run_query
from .baselines import LandmarkSet, alt_potential, oracle_context, select_landmarks_avoid
from .bcc import compute_bcc_core
from .ch import build_ch
from .fileio import InstanceBundle, TurnModel
from .graph import INF, Graph, build_graph
from .potentials import PotentialContext
from .scenarios import Scenario, build_scenario
from .ttf import DEFAULT_TAU_SOON_MS, PERIOD_MS, TravelTimeFunction
from .verify import VerificationError, dijkstra

ALGORITHMS = ("zero", "alt", "chpot", "oracle")


@dataclass
class ExperimentPlan:
    scenario: str = "base"
    algorithms: tuple[str, ...] = ("chpot",)
    alpha: object = None
    avoid_tunnels: bool = False
    avoid_highways: bool = False
    tau_soon: int = DEFAULT_TAU_SOON_MS
    bcc: bool = True
    deg2: bool = True
    deg3: bool = True
    query_count: int = 10_000
    seed: int = 1
    verify: bool = False
    landmark_count: int = 16

    def __post_init__(self):
        if self.deg3 and not self.deg2:
            raise ValueError("degree-3 skipping requires degree-2 skipping")
        for algo in self.algorithms:
            if algo not in ALGORITHMS:
                raise ValueError(f"unknown algorithm {algo!r}")


@dataclass
class QueryRecord:
    query_id: int
    source: int
    target: int
    algorithm: str
    scenario: str
    distance: int | None
    queue_pushes: int
    settled_nodes: int
    running_time_ns: int
    lower_bound_distance: int | None

    @property
    def length_increase(self) -> float | None:
        if self.distance is None or not self.lower_bound_distance:
            return 0.0 if self.distance == 0 else None
        return self.distance / self.lower_bound_distance - 1.0


@dataclass
class ExperimentResult:
    records: list[QueryRecord]
    summary: dict[str, dict[str, float]]


def _summarize(records: list[QueryRecord]) -> dict[str, dict[str, float]]:
    by_algo: dict[str, list[QueryRecord]] = {}
    for r in records:
        by_algo.setdefault(r.algorithm, []).append(r)
    summary = {}
    for algo, rows in by_algo.items():
        n = len(rows)
        incr = [r.length_increase for r in rows if r.length_increase is not None]
        summary[algo] = {
            "queries": n,
            "mean_running_time_ns": sum(r.running_time_ns for r in rows) / n,
            "mean_queue_pushes": sum(r.queue_pushes for r in rows) / n,
            "mean_settled": sum(r.settled_nodes for r in rows) / n,
            "mean_length_increase": sum(incr) / len(incr) if incr else 0.0,
        }
    if "zero" in summary:
        base = summary["zero"]["mean_running_time_ns"]
        for algo in summary:
            mine = summary[algo]["mean_running_time_ns"]
            summary[algo]["speedup"] = base / mine if mine else float("inf")
    return summary


def run_experiment(
    bundle: InstanceBundle,
    plan: ExperimentPlan,
    *,
    scenario: Scenario | None = None,
) -> ExperimentResult:
    """Run the planned query workload and collect per-query records."""
    if scenario is None:
        scenario = build_scenario(
            bundle,
            plan.scenario,
            alpha=plan.alpha,
            avoid_tunnels=plan.avoid_tunnels,
            avoid_highways=plan.avoid_highways,
            tau_soon=plan.tau_soon,
        )
    base = Graph(
        scenario.base_graph.first_out,
        scenario.base_graph.head,
        scenario.lower_bounds,
        tail=scenario.base_graph.tail,
    )
    ch = build_ch(base)
    pot = PotentialContext(ch)
    core = None
    if plan.bcc and scenario.use_bcc:
        core = compute_bcc_core(scenario.graph)
    landmarks: LandmarkSet | None = None
    if "alt" in plan.algorithms:
        landmarks = select_landmarks_avoid(
            base, plan.landmark_count, seed=plan.seed
        )

    rng = random.Random(plan.seed)
    nq = scenario.graph.n
    queries = []
    for qid in range(plan.query_count):
        s = rng.randrange(nq)
        t = rng.randrange(nq)
        tau = rng.randrange(PERIOD_MS) if scenario.time_dependent else 0
        queries.append((qid, s, t, tau))

    phi = scenario.phi
    records: list[QueryRecord] = []
    for qid, s, t, tau in queries:
        phi_s = s if phi is None else phi[s]
        phi_t = t if phi is None else phi[t]
        pot.init_target(phi_t)
        lb = pot.potential(phi_s)
        for algo in plan.algorithms:
            started = time.perf_counter_ns()
            if algo == "zero":
                heuristic = None
            elif algo == "alt":
                if phi is None:
                    heuristic = lambda v: alt_potential(landmarks, v, phi_t)
                else:
                    heuristic = lambda v: alt_potential(landmarks, phi[v], phi_t)
            elif algo == "chpot":
                # the backward hierarchy search is part of the measured query
                pot.init_target(phi_t)
                if phi is None:
                    heuristic = pot.potential
                else:
                    heuristic = lambda v: pot.potential(phi[v])
            else:  # oracle: table fill deliberately outside the timer
                table = oracle_context(base, phi_t)
                started = time.perf_counter_ns()
                if phi is None:
                    heuristic = table.__getitem__
                else:
                    heuristic = lambda v: table[phi[v]]
            result = run_query(
                scenario.graph,
                s,
                t,
                weights=scenario.static_weights,
                weight_fn=scenario.weight_fn,
                heuristic=heuristic,
                degrees=scenario.degrees,
                core=core,
                deg2=plan.deg2,
                deg3=plan.deg3,
                tau_start=tau,
            )
            elapsed = time.perf_counter_ns() - started
            if plan.verify:
                expected = dijkstra(
                    scenario.graph,
                    s,
                    t=t,
                    weights=scenario.static_weights,
                    weight_fn=scenario.weight_fn,
                    tau_start=tau,
                )
                if expected != result.distance:
                    raise VerificationError(
                        f"query {qid} ({algo}): {result.distance} != {expected}"
                    )
            records.append(
                QueryRecord(
                    qid,
                    s,
                    t,
                    algo,
                    scenario.name,
                    result.distance if result.reachable else None,
                    result.queue_pushes,
                    result.settled,
                    elapsed,
                    lb if lb < INF else None,
                )
            )
    return ExperimentResult(records, _summarize(records))


# ---------------------------------------------------------------------------
# Synthetic instances


def generate_synthetic_instance(
    kind: str,
    n: int,
    seed: int,
    *,
    td: bool = False,
    live: bool = False,
) -> InstanceBundle:
    """Build a connected bidirected instance with length-correlated weights.

    ``grid`` resembles a road network: a junction lattice with deleted
    links (T-junctions), subdivided segments (degree-2 chains), and
    pendant dead-end streets. ``random-geometric`` connects nearest
    neighbors in the unit square. Deterministic per seed.
    """
    if n < 1:
        raise ValueError("need at least one node")
    rng = random.Random(f"{seed}:{kind}")
    if kind == "grid":
        nodes, edges, coords = _grid_skeleton(n, rng)
    elif kind == "random-geometric":
        nodes, edges, coords = _geometric_skeleton(n, rng)
    else:
        raise ValueError(f"unknown instance kind {kind!r}")

    tags = []
    tag_rng = random.Random(f"{seed}:tags")
    for _ in edges:
        letters = ""
        if tag_rng.random() < 0.05:
            letters += "t"
        if tag_rng.random() < 0.08:
            letters += "h"
        tags.append(letters)
    graph = build_graph(nodes, edges, tags=tags)

    turn_rng = random.Random(f"{seed}:turns")
    tm = TurnModel()
    in_edges: list[list[int]] = [[] for _ in range(graph.n)]
    for e in range(graph.m):
        in_edges[graph.head[e]].append(e)
    for y in range(graph.n):
        for e_in in in_edges[y]:
            for e_out in graph.out_range(y):
                if graph.head[e_out] == graph.tail[e_in]:
                    continue  # leave U-turns to the default
                r = turn_rng.random()
                if r < 0.03:
                    tm.costs[(e_in, e_out)] = None
                elif r < 0.13:
                    tm.costs[(e_in, e_out)] = turn_rng.randrange(1000, 20_000)

    ttfs = None
    if td:
        ttf_rng = random.Random(f"{seed}:ttf")
        ttfs = []
        for e in range(graph.m):
            free = graph.weight[e]
            if ttf_rng.random() < 0.4:
                ttfs.append(_rush_hour_ttf(free, ttf_rng))
            else:
                ttfs.append(TravelTimeFunction.constant(free))

    live_table = None
    if live:
        live_rng = random.Random(f"{seed}:live")
        snapshot_at = 8 * 3_600_000
        live_table = []
        for e in range(graph.m):
            base_w = ttfs[e].eval(snapshot_at) if ttfs else graph.weight[e]
            w = int(base_w * live_rng.uniform(1.0, 1.4))
            live_table.append(max(w, graph.weight[e]))

    return InstanceBundle(graph, coords, tm, ttfs, live_table)


def _rush_hour_ttf(free: int, rng: random.Random) -> TravelTimeFunction:
    """Freeflow-anchored commuter profile; never dips below freeflow."""
    morning = rng.uniform(6.5, 9.5) * 3_600_000
    evening = rng.uniform(15.5, 18.5) * 3_600_000
    severity = rng.uniform(0.3, 2.0)
    spread = rng.uniform(1.0, 2.5) * 3_600_000
    times = sorted(rng.sample(range(0, PERIOD_MS, 300_000), rng.randint(5, 10)))
    values = []
    for t in times:
        bump = 0.0
        for peak in (morning, evening):
            x = (t - peak) / spread
            bump = max(bump, severity * max(0.0, 1.0 - x * x))
        values.append(max(free, int(free * (1.0 + bump))))
    return TravelTimeFunction(times, values)


def _grid_skeleton(n: int, rng: random.Random):
    """Junction lattice + subdivided segments + pendant dead-ends."""
    k = max(1, int((n / 10) ** 0.5))
    side = 1.0 / max(k - 1, 1)
    coords = []
    node_of = {}

    def new_node(x, y):
        node_of_id = len(coords)
        coords.append((x, y))
        return node_of_id

    for r in range(k):
        for c in range(k):
            node_of[(r, c)] = new_node(c * side, r * side)

    lattice = []
    for r in range(k):
        for c in range(k):
            if c + 1 < k:
                lattice.append(((r, c), (r, c + 1)))
            if r + 1 < k:
                lattice.append(((r, c), (r + 1, c)))
    # Delete some links but keep the lattice connected: a random spanning
    # tree is always retained.
    rng.shuffle(lattice)
    parent = list(range(k * k))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    kept = []
    optional = []
    for a, b in lattice:
        ia, ib = node_of[a], node_of[b]
        ra, rb = find(ia), find(ib)
        if ra != rb:
            parent[ra] = rb
            kept.append((a, b))
        else:
            optional.append((a, b))
    for link in optional:
        if rng.random() < 0.80:
            kept.append(link)

    edges = []

    def road(u, v, segments):
        """Bidirected chain of ``segments`` pieces between existing nodes."""
        (x0, y0), (x1, y1) = coords[u], coords[v]
        prev = u
        for i in range(1, segments):
            node = new_node(
                x0 + (x1 - x0) * i / segments, y0 + (y1 - y0) * i / segments
            )
            w = rng.randrange(300, 1500)
            edges.append((prev, node, w))
            edges.append((node, prev, w))
            prev = node
        w = rng.randrange(300, 1500)
        edges.append((prev, v, w))
        edges.append((v, prev, w))

    budget = n - len(coords)
    links = []
    for a, b in kept:
        segments = rng.randint(2, 6)
        if budget < segments - 1:
            segments = max(1, budget + 1)
        links.append((node_of[a], node_of[b], segments))
        budget -= segments - 1
    # pendant dead-end streets consume the remaining node budget
    pendants = []
    while budget > 0:
        length = min(rng.randint(1, 5), budget)
        anchor = node_of[(rng.randrange(k), rng.randrange(k))]
        pendants.append((anchor, length))
        budget -= length
    for u, v, segments in links:
        road(u, v, segments)
    for anchor, length in pendants:
        prev = anchor
        ax, ay = coords[anchor]
        for i in range(length):
            node = new_node(ax + rng.uniform(-side, side), ay + rng.uniform(-side, side))
            w = rng.randrange(300, 1500)
            edges.append((prev, node, w))
            edges.append((node, prev, w))
            prev = node
    return len(coords), edges, coords


def _geometric_skeleton(n: int, rng: random.Random):
    coords = [(rng.random(), rng.random()) for _ in range(n)]
    edges = []
    seen = set()

    def connect(a, b):
        if a == b or (a, b) in seen:
            return
        (x0, y0), (x1, y1) = coords[a], coords[b]
        w = max(1, int(((x0 - x1) ** 2 + (y0 - y1) ** 2) ** 0.5 * 100_000))
        w = int(w * rng.uniform(1.0, 1.3))
        seen.add((a, b))
        seen.add((b, a))
        edges.append((a, b, w))
        edges.append((b, a, w))

    if n > 1:
        k_near = min(3, n - 1)
        for a in range(n):
            byd = sorted(
                (b for b in range(n) if b != a),
                key=lambda b: (coords[a][0] - coords[b][0]) ** 2
                + (coords[a][1] - coords[b][1]) ** 2,
            )
            for b in byd[:k_near]:
                connect(a, b)
        order = sorted(range(n), key=lambda v: coords[v])
        for a, b in zip(order, order[1:]):  # guarantees connectivity
            connect(a, b)
    return n, edges, coords


# ---------------------------------------------------------------------------
# Instance files

GRAPH_FILE = "graph.gr"
COORDS_FILE = "coords.co"
TAGS_FILE = "edges.tags"
TTF_FILE = "edges.ttf"
LIVE_FILE = "edges.live"
TURNS_FILE = "turns.turns"


def write_instance(bundle: InstanceBundle, directory) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    g = bundle.graph
    with open(directory / GRAPH_FILE, "w") as f:
        fileio.write_dimacs_gr(g, f)
    if bundle.coordinates is not None:
        with open(directory / COORDS_FILE, "w") as f:
            fileio.write_dimacs_co(bundle.coordinates, f)
    if g.tunnel is not None:
        with open(directory / TAGS_FILE, "w") as f:
            f.write(fileio.TAGS_HEADER + "\n")
            for e in range(g.m):
                letters = ("t" if g.tunnel[e] else "") + (
                    "h" if g.highway[e] else ""
                )
                if letters:
                    f.write(f"{e} {letters}\n")
    if bundle.turn_table is not None:
        with open(directory / TURNS_FILE, "w") as f:
            fileio.write_turns_file(bundle.turn_table, f)
    if bundle.ttf_table is not None:
        with open(directory / TTF_FILE, "w") as f:
            f.write(fileio.TTF_HEADER + "\n")
            for e, ttf in enumerate(bundle.ttf_table):
                if ttf.is_constant() and ttf.values[0] == g.weight[e]:
                    continue
                pairs = " ".join(
                    f"{t} {v}" for t, v in zip(ttf.times, ttf.values)
                )
                f.write(f"{e} {len(ttf.times)} {pairs}\n")
    if bundle.live_table is not None:
        with open(directory / LIVE_FILE, "w") as f:
            f.write(fileio.LIVE_HEADER + "\n")
            for e, w in enumerate(bundle.live_table):
                if w != g.weight[e]:
                    f.write(f"{e} {w}\n")


def load_instance(path) -> InstanceBundle:
    """Load an instance directory (or a bare .gr file)."""
    path = Path(path)
    if path.is_file():
        with open(path) as f:
            return InstanceBundle(fileio.read_dimacs_gr(f))
    with open(path / GRAPH_FILE) as f:
        graph = fileio.read_dimacs_gr(f)
    tags_path = path / TAGS_FILE
    if tags_path.exists():
        with open(tags_path) as f:
            tunnel, highway = fileio.read_tags_file(f, graph)
        graph.tunnel = tunnel
        graph.highway = highway
    coords = None
    if (path / COORDS_FILE).exists():
        with open(path / COORDS_FILE) as f:
            coords = fileio.read_dimacs_co(f, graph.n)
    turn_table = None
    if (path / TURNS_FILE).exists():
        with open(path / TURNS_FILE) as f:
            turn_table = fileio.read_turns_file(f, graph)
    ttfs = None
    if (path / TTF_FILE).exists():
        with open(path / TTF_FILE) as f:
            ttfs = fileio.read_ttf_file(f, graph)
    live = None
    if (path / LIVE_FILE).exists():
        with open(path / LIVE_FILE) as f:
            live = fileio.read_live_file(f, graph)
    return InstanceBundle(graph, coords, turn_table, ttfs, live)
