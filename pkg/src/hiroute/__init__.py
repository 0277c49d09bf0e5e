"""Route planning on directed road networks.

Exact point-to-point queries via A* guided by lower-bound distances
extracted lazily from a contraction hierarchy, with support for turn
costs, avoided road classes, time-dependent travel times, and blended
live/predicted traffic.
"""

from .astar import InfeasibleHeuristicError, QueryContext, QueryResult, run_query
from .baselines import LandmarkSet, alt_potential, select_landmarks_avoid
from .bcc import CoreDecomposition, compute_bcc_core
from .ch import ContractionHierarchy, build_ch, ch_query
from .fileio import InstanceBundle, ParseError, TurnModel
from .graph import INF, Graph, MalformedInputError, build_graph
from .harness import (
    ExperimentPlan,
    ExperimentResult,
    generate_synthetic_instance,
    load_instance,
    run_experiment,
    write_instance,
)
from .potentials import PotentialContext, phast_all_to_one
from .scenarios import SCENARIO_NAMES, ContractViolationError, Scenario, build_scenario
from .ttf import FifoViolationError, TravelTimeFunction, blend_live_predicted

__all__ = [
    "INF",
    "SCENARIO_NAMES",
    "ContractViolationError",
    "ContractionHierarchy",
    "CoreDecomposition",
    "ExperimentPlan",
    "ExperimentResult",
    "FifoViolationError",
    "Graph",
    "InfeasibleHeuristicError",
    "InstanceBundle",
    "LandmarkSet",
    "MalformedInputError",
    "ParseError",
    "PotentialContext",
    "QueryContext",
    "QueryResult",
    "Scenario",
    "TravelTimeFunction",
    "TurnModel",
    "alt_potential",
    "blend_live_predicted",
    "build_ch",
    "build_graph",
    "build_scenario",
    "ch_query",
    "compute_bcc_core",
    "generate_synthetic_instance",
    "load_instance",
    "phast_all_to_one",
    "run_experiment",
    "run_query",
    "select_landmarks_avoid",
    "write_instance",
]
