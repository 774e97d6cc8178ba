"""
Choosing which strategies to try on a fin system, and in what order.
"""
from __future__ import annotations

import typing as t
from dataclasses import dataclass
from enum import Enum

from .._configs import active_config
from .._models import PipelineConfig
from .._types import VertexId
from ..exceptions import HypothesisViolated, ParameterError
from ..multigraph import MultiGraph
from ..wallgeom import Fin, FinSystem, Wall, validate_fin_system, wall_distance


class StrategyKind(str, Enum):
    LONG_JUMPS = "long-jumps"
    EXTERNAL_BLOB = "external-blob"
    INTERNAL_BLOB = "internal-blob"
    SHORT_JUMPS = "short-jumps"


@dataclass(frozen=True)
class FinPartition:
    hub: t.Tuple[Fin, ...]
    """Fins whose interior meets the interior of another fin"""

    far: t.Tuple[Fin, ...]
    near: t.Tuple[Fin, ...]

    def __len__(self) -> int:
        return len(self.hub) + len(self.far) + len(self.near)


@dataclass(frozen=True)
class PlannedAttempt:
    strategy: StrategyKind
    fins: FinSystem
    blob: MultiGraph | None = None
    """The connected subgraph external-blob pairs roots through"""


@dataclass(frozen=True)
class StrategyPlan:
    selected: t.Tuple[VertexId, ...]
    partition: FinPartition
    attempts: t.Tuple[PlannedAttempt, ...]

    @property
    def strategies(self) -> t.Tuple[StrategyKind, ...]:
        return tuple(attempt.strategy for attempt in self.attempts)


def _label_key(wall: Wall, v: VertexId) -> t.Tuple[t.Tuple[int, int], VertexId]:
    return wall.label_of.get(v, (wall.height + 2, 0)), v


def select_separated(wall: Wall, points: t.Iterable[VertexId], threshold: int) -> t.Tuple[VertexId, ...]:
    """
    Greedy farthest-point selection: start from the first point in labeling
    order, then keep adding the point farthest from everything chosen while
    that distance reaches `threshold`. Ties go to labeling order.
    """
    pool = sorted(set(points), key=lambda v: _label_key(wall, v))
    if not pool:
        return ()

    chosen = [pool[0]]
    nearest = {v: wall_distance(wall, pool[0], v) for v in pool[1:]}
    while nearest:
        best = max(nearest.values())
        if best < threshold:
            break

        pick = next(v for v in pool if nearest.get(v) == best)
        chosen.append(pick)
        del nearest[pick]
        for v in nearest:
            nearest[v] = min(nearest[v], wall_distance(wall, pick, v))

    return tuple(sorted(chosen, key=lambda v: _label_key(wall, v)))


def _touching(fins: t.Sequence[Fin]) -> t.Dict[VertexId, t.List[Fin]]:
    """For every fin, the other fins running through one of its internal vertices"""
    interiors = {fin.root: set(fin.path.internal_vertices) for fin in fins}
    return {
        fin.root: [
            other
            for other in fins
            if other.root != fin.root and interiors[fin.root] & other.path.vertex_set
        ]
        for fin in fins
    }


def partition_fins(fs: FinSystem, config: PipelineConfig | None = None) -> FinPartition:
    """Hub fins first, the rest split by whether the target is at least `a2` from the root"""
    cfg = active_config(config)
    touching = _touching(fs.fins)

    hub: t.List[Fin] = []
    far: t.List[Fin] = []
    near: t.List[Fin] = []
    for fin in fs.fins:
        if touching[fin.root] or any(fin in others for others in touching.values()):
            hub.append(fin)
        elif wall_distance(fs.wall, fin.root, fin.target) >= cfg.a2:
            far.append(fin)
        else:
            near.append(fin)

    return FinPartition(tuple(hub), tuple(far), tuple(near))


def _long_jump_family(fs: FinSystem, fins: t.Sequence[Fin], cfg: PipelineConfig) -> t.List[Fin]:
    """Greedy edge-disjoint sub-family whose roots and targets stay `a1` apart"""
    family: t.List[Fin] = []
    used_edges: t.Set[int] = set()
    points: t.List[VertexId] = []
    for fin in fins:
        if used_edges & set(fin.path.edges):
            continue

        mine = (fin.root, fin.target)
        if wall_distance(fs.wall, *mine) < cfg.a1:
            continue
        if any(wall_distance(fs.wall, p, q) < cfg.a1 for p in points for q in mine):
            continue

        family.append(fin)
        used_edges.update(fin.path.edges)
        points.extend(mine)

    return family


def _hub_blob(fs: FinSystem, fins: t.Sequence[Fin], cfg: PipelineConfig) -> PlannedAttempt | None:
    touching = _touching(fins)
    for fin in fins:
        others = touching[fin.root]
        if len(others) < cfg.hub_threshold:
            continue

        members = (fin, *others)
        blob = fs.wall.host.edge_subgraph({e for member in members for e in member.path.edges})
        return PlannedAttempt(StrategyKind.EXTERNAL_BLOB, fs.restricted(m.root for m in members), blob)

    return None


def fins_dispatch(fs: FinSystem, config: PipelineConfig | None = None) -> StrategyPlan:
    cfg = active_config(config)
    if not len(fs):
        raise ParameterError("fs", fs, "the fin system is empty")

    verdict = validate_fin_system(fs)
    if not verdict:
        raise HypothesisViolated("fins do not form a fin system", (str(verdict.violations[0]),))

    selected = select_separated(fs.wall, fs.roots, cfg.separation)
    chosen = fs.restricted(selected)
    partition = partition_fins(chosen, cfg)

    attempts: t.List[PlannedAttempt] = []
    family = _long_jump_family(chosen, chosen.fins, cfg)
    if len(family) >= cfg.long_fins_needed:
        attempts.append(PlannedAttempt(StrategyKind.LONG_JUMPS, chosen.restricted(f.root for f in family)))

    hub_attempt = _hub_blob(chosen, chosen.fins, cfg)
    if hub_attempt is not None:
        attempts.append(hub_attempt)

    if partition.far:
        attempts.append(PlannedAttempt(StrategyKind.INTERNAL_BLOB, chosen.restricted(f.root for f in partition.far)))

    if partition.near:
        attempts.append(PlannedAttempt(StrategyKind.SHORT_JUMPS, chosen.restricted(f.root for f in partition.near)))

    return StrategyPlan(selected, partition, tuple(attempts))
