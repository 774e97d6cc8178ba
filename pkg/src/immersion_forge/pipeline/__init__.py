from __future__ import annotations

from ._core import find_grid_immersion, run_attempt
from ._dispatch import (
    FinPartition,
    PlannedAttempt,
    StrategyKind,
    StrategyPlan,
    fins_dispatch,
    partition_fins,
    select_separated,
)
from ._growth import AugmentationStep, GrowthResult, grow_rooted_wall, surround_image, wall_immersion
from ._routing import route_disjoint_paths, route_disjoint_paths_in
from ._strategies import (
    CarvedSite,
    carve_site,
    grid_rotation,
    pair_roots_in_tree,
    perfect_matching_of_grid,
    strategy_external_blob,
    strategy_internal_blob,
    strategy_long_jumps,
    strategy_short_jumps,
)

__all__ = [
    # Orchestration
    "find_grid_immersion",
    "run_attempt",
    # Growth
    "AugmentationStep",
    "GrowthResult",
    "grow_rooted_wall",
    "surround_image",
    "wall_immersion",
    # Dispatch
    "FinPartition",
    "PlannedAttempt",
    "StrategyKind",
    "StrategyPlan",
    "fins_dispatch",
    "partition_fins",
    "select_separated",
    # Routing
    "route_disjoint_paths",
    "route_disjoint_paths_in",
    # Strategies
    "CarvedSite",
    "carve_site",
    "grid_rotation",
    "pair_roots_in_tree",
    "perfect_matching_of_grid",
    "strategy_external_blob",
    "strategy_internal_blob",
    "strategy_long_jumps",
    "strategy_short_jumps",
]
