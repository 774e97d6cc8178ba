"""Find rooted grid immersions in graphs through walls, fins and lifts"""
from __future__ import annotations

import logging

from . import exceptions
from ._configs import active_config, custom_forge_config
from ._models import (
    DEFAULT_CONFIG,
    Budget,
    LogEvent,
    LogLevel,
    PipelineConfig,
    SearchResult,
    SearchStatus,
    StrategyFailure,
    Verdict,
    Violation,
)
from ._reports._models import PipelineOutcome, PipelineReport, StageRecord
from ._reports._printers import print_report
from .connectivity import (
    EdgeDisjointBundle,
    Infeasible,
    augment_with_prescribed_ends,
    disjoint_paths_to_set,
    edge_connectivity,
    minimum_edge_cut,
    pairwise_k_connected,
)
from .generators import (
    FinAttachment,
    elementary_wall,
    grid,
    quad_star,
    subdivide,
    subdivide_uniformly,
    subdivided_wall,
    wall_with_fins,
)
from .immersion import ImmersionMap, find_immersion, is_rooted, is_subdivision_map, verify
from .lifting import (
    LiftRecord,
    ReductionResult,
    lift_pair,
    pull_back,
    pull_back_history,
    pull_back_with_reroute,
    reduce_immersed_wall,
)
from .multigraph import MultiGraph, Walk, build, degree, delete_edges
from .pipeline import (
    find_grid_immersion,
    fins_dispatch,
    grow_rooted_wall,
    partition_fins,
    route_disjoint_paths,
    strategy_external_blob,
    strategy_internal_blob,
    strategy_long_jumps,
    strategy_short_jumps,
)
from .treedecomp import (
    TreeDecomposition,
    decomposition_from_elimination_order,
    exact_treewidth,
    verify_decomposition,
    width,
)
from .wallgeom import (
    Fin,
    FinSystem,
    Wall,
    branches,
    check_wall,
    diagonal_vertices,
    find_wall,
    perimeter,
    subwall,
    surround,
    validate_fin,
    validate_fin_system,
    wall_distance,
)

logging.basicConfig(level=logging.INFO, format="%(asctime)s %(message)s")

__version__ = "0.1.0"

__all__ = [
    "exceptions",
    # Graphs
    "MultiGraph",
    "Walk",
    "build",
    "degree",
    "delete_edges",
    # Generators
    "FinAttachment",
    "elementary_wall",
    "grid",
    "quad_star",
    "subdivide",
    "subdivide_uniformly",
    "subdivided_wall",
    "wall_with_fins",
    # Immersions
    "ImmersionMap",
    "find_immersion",
    "is_rooted",
    "is_subdivision_map",
    "verify",
    # Tree decompositions
    "TreeDecomposition",
    "decomposition_from_elimination_order",
    "exact_treewidth",
    "verify_decomposition",
    "width",
    # Connectivity
    "EdgeDisjointBundle",
    "Infeasible",
    "augment_with_prescribed_ends",
    "disjoint_paths_to_set",
    "edge_connectivity",
    "minimum_edge_cut",
    "pairwise_k_connected",
    # Walls
    "Fin",
    "FinSystem",
    "Wall",
    "branches",
    "check_wall",
    "diagonal_vertices",
    "find_wall",
    "perimeter",
    "subwall",
    "surround",
    "validate_fin",
    "validate_fin_system",
    "wall_distance",
    # Lifting
    "LiftRecord",
    "ReductionResult",
    "lift_pair",
    "pull_back",
    "pull_back_history",
    "pull_back_with_reroute",
    "reduce_immersed_wall",
    # Pipeline
    "find_grid_immersion",
    "fins_dispatch",
    "grow_rooted_wall",
    "partition_fins",
    "route_disjoint_paths",
    "strategy_external_blob",
    "strategy_internal_blob",
    "strategy_long_jumps",
    "strategy_short_jumps",
    # Models
    "Budget",
    "DEFAULT_CONFIG",
    "LogEvent",
    "LogLevel",
    "PipelineConfig",
    "SearchResult",
    "SearchStatus",
    "StrategyFailure",
    "Verdict",
    "Violation",
    # Configs
    "active_config",
    "custom_forge_config",
    # Reports
    "PipelineOutcome",
    "PipelineReport",
    "StageRecord",
    "print_report",
]
