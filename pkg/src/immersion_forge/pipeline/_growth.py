"""
Growing fins for every root of a wall.

The wall is read as an immersion of the elementary wall. Roots that already
reach the rest of the wall without wall edges keep that path as their fin;
every other root is rewired by augmenting its three branches to four
edge-disjoint paths, the fourth one becoming its fin.
"""
from __future__ import annotations

import typing as t
from collections import deque
from dataclasses import dataclass

from .. import _elementary as elem
from .._configs import active_config
from .._loggers import process_log_augment, resolve_event
from .._models import DEFAULT_LOG_EVENTS, PipelineConfig
from .._types import EdgeId, VertexId
from ..connectivity import Infeasible, augment_with_prescribed_ends, pairwise_k_connected
from ..exceptions import HypothesisViolated, ParameterError
from ..generators import elementary_wall
from ..immersion import ImmersionMap, verify
from ..lifting import crossing_pairs, first_contact_prefix, wall_image_without
from ..multigraph import MultiGraph, Walk
from ..wallgeom import Wall, diagonal_vertices


@dataclass(frozen=True)
class AugmentationStep:
    root: VertexId
    """Pattern vertex that was rewired"""

    ok: bool
    reason: str = ""
    fin: Walk | None = None


@dataclass(frozen=True)
class GrowthResult:
    immersion: ImmersionMap
    """The elementary wall immersed in the host"""

    pattern_roots: t.Tuple[VertexId, ...]
    rooted: t.Tuple[VertexId, ...]
    """Pattern roots that carry a fin, in labeling order"""

    fins: t.Mapping[VertexId, Walk]
    steps: t.Tuple[AugmentationStep, ...]

    @property
    def complete(self) -> bool:
        return len(self.rooted) == len(self.pattern_roots)

    @property
    def failures(self) -> t.Tuple[AugmentationStep, ...]:
        return tuple(step for step in self.steps if not step.ok)


def wall_immersion(wall: Wall) -> ImmersionMap:
    """The subdivision map from the elementary wall of the same height onto `wall`"""
    pattern, _ = elementary_wall(wall.height)
    labels = elem.wall_labels(wall.height)
    label_edges = elem.wall_edges(wall.height)

    vertex_map = {idx: wall.labels[label] for idx, label in enumerate(labels)}
    edge_map = {eid: wall.branch(a, b) for eid, (a, b) in enumerate(label_edges)}
    return ImmersionMap(pattern, wall.host, vertex_map, edge_map)


def _pattern_surround(pattern: MultiGraph, s: VertexId) -> t.Set[VertexId]:
    found = {s}
    frontier = [s]
    while frontier:
        current = frontier.pop()
        for u in pattern.neighbours(current):
            if u not in found and pattern.degree(u) == 2:
                found.add(u)
                frontier.append(u)

    return found


def surround_image(m: ImmersionMap, s: VertexId) -> t.Set[VertexId]:
    """
    Host vertices that end up in the surround of the image of `s` once the
    image is a wall, leaving out the branches at `s` themselves.
    """
    around = _pattern_surround(m.pattern, s) - {s}
    found = {m.vertex_map[u] for u in around}
    for e, (a, b) in m.pattern.edges.items():
        if s in (a, b):
            continue
        if a in around or b in around:
            found.update(m.edge_map[e].internal_vertices)

    return found


def _wall_edge_ids(m: ImmersionMap) -> t.FrozenSet[EdgeId]:
    return m.used_edges


def _search_fin(
    graph: MultiGraph,
    start: VertexId,
    stop: t.AbstractSet[VertexId],
    good: t.AbstractSet[VertexId],
    wall_edges: t.AbstractSet[EdgeId],
    avoid: t.AbstractSet[VertexId],
) -> Walk | None:
    """Shortest path from `start` into `good` off the wall edges, meeting `stop` only at its end"""
    parent: t.Dict[VertexId, t.Tuple[EdgeId, VertexId]] = {}
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for e in graph.incident_edges(x):
            if e in wall_edges or graph.is_loop(e):
                continue

            y = graph.other_end(e, x)
            if y in seen or y in avoid:
                continue

            if y in stop:
                if y not in good:
                    continue

                parent[y] = (e, x)
                vertices = [y]
                edges: t.List[EdgeId] = []
                while vertices[-1] != start:
                    edge, back = parent[vertices[-1]]
                    edges.append(edge)
                    vertices.append(back)
                return Walk(tuple(reversed(vertices)), tuple(reversed(edges)))

            seen.add(y)
            parent[y] = (e, x)
            queue.append(y)

    return None


class _Grower:
    def __init__(self, graph: MultiGraph, m: ImmersionMap, pattern_roots: t.Sequence[VertexId]) -> None:
        self.graph = graph
        self.m = m
        self.pattern_roots = tuple(pattern_roots)
        self.root_images = frozenset(m.vertex_map[s] for s in pattern_roots)
        self.fins: t.Dict[VertexId, Walk] = {}

    def good_targets(self, m: ImmersionMap, s: VertexId) -> t.Set[VertexId]:
        return wall_image_without(m, s) - self.root_images - surround_image(m, s)

    def existing_fin(self, s: VertexId) -> Walk | None:
        image = self.m.vertex_map[s]
        return _search_fin(
            self.graph,
            image,
            wall_image_without(self.m, s),
            self.good_targets(self.m, s),
            _wall_edge_ids(self.m),
            self.root_images - {image},
        )

    def augment(self, s: VertexId) -> AugmentationStep:
        m = self.m
        image = m.vertex_map[s]
        pattern = m.pattern

        ends = list(pattern.neighbours(s))
        branch_ids = [min(pattern.edges_between(s, x)) for x in ends]
        seeds = [m.edge_map[e].oriented_from(image) for e in branch_ids]
        prescribed = [m.vertex_map[x] for x in ends]

        around = surround_image(m, s)
        targets = (wall_image_without(m, s) - self.root_images - around) | set(prescribed)
        forbidden = (self.root_images - {image}) | (around - set(prescribed))

        try:
            bundle = augment_with_prescribed_ends(self.graph, image, targets, prescribed, seeds, forbidden)
        except HypothesisViolated as exc:
            return AugmentationStep(s, False, exc.reason)

        if isinstance(bundle, Infeasible):
            return AugmentationStep(
                s, False, f"only {bundle.flow_value} edge-disjoint paths reach the wall (cut {list(bundle.cut)})"
            )

        fourth = bundle.paths[3]
        if fourth.end in around:
            return AugmentationStep(s, False, f"the fourth path ends at {fourth.end} inside the surround")

        updated = m.with_edges(dict(zip(branch_ids, bundle.paths[:3])))
        for e, f in crossing_pairs(updated):
            if not set(pattern.ends(e)) & set(pattern.ends(f)) & set(self.pattern_roots):
                raise HypothesisViolated("rewiring crossed two branches away from every root", (s, e, f))

        repaired: t.Dict[VertexId, Walk] = {}
        old_branches = [m.edge_map[e].oriented_from(image) for e in branch_ids]
        for other, fin in self.fins.items():
            fixed = self._repair(updated, other, fin, old_branches)
            if fixed is None:
                return AugmentationStep(s, False, f"the fin of root {m.vertex_map[other]} could not be repaired")
            repaired[other] = fixed

        self.m = updated
        self.fins.update(repaired)
        self.fins[s] = fourth
        return AugmentationStep(s, True, fin=fourth)

    def _repair(
        self, m: ImmersionMap, s: VertexId, fin: Walk, old_branches: t.Sequence[Walk]
    ) -> Walk | None:
        stop = wall_image_without(m, s)
        walk = fin
        if fin.end not in stop:
            # the target sat inside a replaced branch: follow that branch away from the rewired root
            for branch in old_branches:
                if fin.end in branch.internal_vertices:
                    walk = fin.concat(branch.suffix(branch.vertices.index(fin.end)))
                    break

        prefix = first_contact_prefix(walk, set(stop))
        if prefix is None:
            return None

        prefix = prefix.simplified()
        if prefix.end in self.root_images or prefix.end not in self.good_targets(m, s):
            return None
        if prefix.edge_set & _wall_edge_ids(m):
            return None

        return prefix


def grow_rooted_wall(
    graph: MultiGraph,
    wall: Wall,
    roots: t.Iterable[VertexId],
    config: PipelineConfig | None = None,
    reuse_fins: bool = True,
) -> GrowthResult:
    """
    `roots` are diagonal vertices of `wall`, pairwise 4-edge-connected in
    `graph`. With `reuse_fins` off every root is rewired, even the ones that
    already have a way out.
    """
    cfg = active_config(config)
    log_augment = resolve_event(cfg.log_augment, DEFAULT_LOG_EVENTS.augment)

    chosen = sorted(set(roots))
    if len(chosen) < 2:
        raise ParameterError("roots", tuple(chosen), "at least two roots are needed")

    diagonal = set(diagonal_vertices(wall))
    for s in chosen:
        if s not in diagonal:
            raise ParameterError("roots", s, "is not a diagonal vertex of the wall")

    connectivity = pairwise_k_connected(graph, chosen, 4)
    if not connectivity:
        raise HypothesisViolated("roots are not pairwise 4-edge-connected", t.cast(tuple, connectivity.failing_pair))

    m = wall_immersion(wall).with_host(graph)
    labels = elem.wall_labels(wall.height)
    pattern_roots = sorted(labels.index(wall.label_of[s]) for s in chosen)
    grower = _Grower(graph, m, pattern_roots)

    if reuse_fins:
        for s in pattern_roots:
            fin = grower.existing_fin(s)
            if fin is not None:
                grower.fins[s] = fin

    steps: t.List[AugmentationStep] = []
    for s in pattern_roots:
        if s in grower.fins:
            continue

        step = grower.augment(s)
        steps.append(step)
        process_log_augment(
            log_augment,
            m.vertex_map[s],
            len(grower.fins),
            len(pattern_roots),
            None if step.ok else step.reason,
        )

    verdict = verify(grower.m)
    if not verdict:
        raise HypothesisViolated("the grown wall map stopped being an immersion", (str(verdict.violations[0]),))

    rooted = tuple(s for s in pattern_roots if s in grower.fins)
    return GrowthResult(grower.m, tuple(pattern_roots), rooted, dict(grower.fins), tuple(steps))
