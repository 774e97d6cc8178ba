"""Grids, elementary walls, subdivisions and the synthetic fin fixtures"""
from __future__ import annotations

import random
import typing as t
from dataclasses import dataclass

from . import _elementary as elem
from ._types import EdgeId, Label, VertexId
from .exceptions import GenerationError, ParameterError
from .multigraph import MultiGraph, Walk
from .wallgeom import Fin, FinSystem, Wall, surround, validate_fin_system, wall_distance


@dataclass(frozen=True)
class GridLabeling:
    side: int
    vertex_of: t.Mapping[Label, VertexId]

    def vertex(self, i: int, j: int) -> VertexId:
        return self.vertex_of[(i, j)]

    def label_of(self, v: VertexId) -> Label:
        for label, vertex in self.vertex_of.items():
            if vertex == v:
                return label

        raise ParameterError("vertex", v, "is not a grid vertex")


@dataclass(frozen=True)
class SubdivisionRecord:
    original: MultiGraph
    graph: MultiGraph
    vertex_map: t.Mapping[VertexId, VertexId]
    edge_paths: t.Mapping[EdgeId, Walk]
    """Every original edge to the path (or cycle, for loops) that replaced it"""


def grid(g: int) -> t.Tuple[MultiGraph, GridLabeling]:
    if g < 2:
        raise ParameterError("g", g, "grids have side at least 2")

    vertex_of = {(i, j): (i - 1) * g + (j - 1) for i in range(1, g + 1) for j in range(1, g + 1)}
    edges: t.List[t.Tuple[int, int]] = []
    for (i, j), v in vertex_of.items():
        if j < g:
            edges.append((v, vertex_of[(i, j + 1)]))
        if i < g:
            edges.append((v, vertex_of[(i + 1, j)]))

    return MultiGraph.build(g * g, edges), GridLabeling(g, vertex_of)


def elementary_wall(h: int) -> t.Tuple[MultiGraph, Wall]:
    elem.check_height(h)

    labels = elem.wall_labels(h)
    vertex_of = {label: idx for idx, label in enumerate(labels)}
    label_edges = elem.wall_edges(h)
    graph = MultiGraph.build(
        len(labels), [(vertex_of[a], vertex_of[b]) for a, b in label_edges]
    )

    branch_paths = {
        (a, b): Walk((vertex_of[a], vertex_of[b]), (eid,))
        for eid, (a, b) in enumerate(label_edges)
    }
    return graph, Wall(graph, h, vertex_of, branch_paths)


def subdivide(
    graph: MultiGraph, plan: t.Mapping[EdgeId, int]
) -> t.Tuple[MultiGraph, SubdivisionRecord]:
    """
    Replaces each planned edge by a path through that many new vertices. Original
    vertex ids are kept, new vertices are numbered after them and edges that are
    not subdivided keep their ids.
    """
    for eid, count in plan.items():
        if not graph.has_edge(eid):
            raise ParameterError("plan", eid, "is not an edge of the graph")
        if count < 0:
            raise ParameterError("plan", (eid, count), "subdivision counts are nonnegative")

    result = graph
    edge_paths: t.Dict[EdgeId, Walk] = {}
    for eid in graph.edge_ids:
        count = plan.get(eid, 0)
        u, v = graph.ends(eid)
        if count == 0:
            edge_paths[eid] = Walk((u, v), (eid,))
            continue

        result = result.delete_edges([eid])
        result, fresh = result.add_vertices(count)
        route = (u, *fresh, v)
        new_edges: t.List[EdgeId] = []
        for a, b in zip(route, route[1:]):
            result, added = result.add_edge(a, b)
            new_edges.append(added)

        edge_paths[eid] = Walk(route, tuple(new_edges))

    record = SubdivisionRecord(
        graph, result, {v: v for v in graph.vertices}, edge_paths
    )
    return result, record


def subdivide_uniformly(graph: MultiGraph, k: int) -> t.Tuple[MultiGraph, SubdivisionRecord]:
    return subdivide(graph, {eid: k for eid in graph.edge_ids})


def subdivided_wall(h: int, k: int = 0) -> t.Tuple[MultiGraph, Wall]:
    """Elementary wall of height `h` with every branch subdivided `k` times"""
    base, wall = elementary_wall(h)
    if k == 0:
        return base, wall

    graph, record = subdivide_uniformly(base, k)
    return graph, wall_through_record(wall, record)


def wall_through_record(wall: Wall, record: SubdivisionRecord) -> Wall:
    branch_paths: t.Dict[t.Tuple[Label, Label], Walk] = {}
    for key, path in wall.branch_paths.items():
        walk = Walk((record.vertex_map[path.start],))
        for edge, vertex in zip(path.edges, path.vertices[1:]):
            walk = walk.concat(record.edge_paths[edge].oriented_from(walk.end))
            assert walk.end == record.vertex_map[vertex]
        branch_paths[key] = walk

    labels = {label: record.vertex_map[v] for label, v in wall.labels.items()}
    return Wall(record.graph, wall.height, labels, branch_paths, wall.anchor)


def quad_star(leaves: int) -> MultiGraph:
    if leaves < 1:
        raise ParameterError("leaves", leaves, "a star needs at least one leaf")

    edges = [(0, leaf) for leaf in range(1, leaves + 1) for _ in range(4)]
    return MultiGraph.build(leaves + 1, edges)


FAR: t.Final = "far"
NEAR: t.Final = "near"


@dataclass(frozen=True)
class FinAttachment:
    target: t.Union[Label, str] = FAR
    """A wall label, or `"far"` / `"near"` to let the generator pick one"""

    via: int = 1
    """New vertices inside the fin. `0` joins root and target by one edge."""

    hub: str | None = None
    """Fins naming the same hub all run through one shared vertex"""


def wall_with_fins(
    h: int,
    attachments: t.Sequence[t.Tuple[int, FinAttachment]],
    subdivide: int = 0,
    seed: int = 0,
) -> t.Tuple[MultiGraph, FinSystem]:
    """
    A wall of height `h` plus one fin per entry of `attachments`. Entries are
    `(i, attachment)` with the root at the diagonal label `(i, 2i)`.
    """
    elem.check_height(h)
    if len(attachments) > h - 1:
        raise GenerationError(f"{len(attachments)} fins requested but a height {h} wall has {h - 1} diagonal vertices")

    indices = [i for i, _ in attachments]
    if len(set(indices)) != len(indices):
        raise GenerationError(f"diagonal indices repeat in {indices}")
    for i in indices:
        if not 2 <= i <= h:
            raise GenerationError(f"diagonal index {i} outside 2..{h}")

    graph, wall = subdivided_wall(h, subdivide)
    rng = random.Random(seed)
    roots = [wall.vertex_at((i, 2 * i)) for i in indices]
    taken: t.Set[VertexId] = set()

    targets: t.List[VertexId] = []
    for root, (_, attachment) in zip(roots, attachments):
        target = _pick_target(wall, root, attachment, set(roots), taken, rng)
        taken.add(target)
        targets.append(target)

    hubs: t.Dict[str, VertexId] = {}
    for attachment in (a for _, a in attachments):
        if attachment.hub is not None and attachment.hub not in hubs:
            graph, (hub_vertex,) = graph.add_vertices(1)
            hubs[attachment.hub] = hub_vertex

    fins: t.List[Fin] = []
    for root, target, (_, attachment) in zip(roots, targets, attachments):
        if attachment.via < 0:
            raise GenerationError(f"fin at {root} asks for {attachment.via} interior vertices")

        fresh_count = attachment.via
        if attachment.hub is not None:
            if attachment.via < 1:
                raise GenerationError(f"fin at {root} runs through a hub and needs via >= 1")
            fresh_count -= 1

        graph, fresh = graph.add_vertices(fresh_count)
        interior = list(fresh)
        if attachment.hub is not None:
            interior.append(hubs[attachment.hub])

        route = (root, *interior, target)
        edges: t.List[EdgeId] = []
        for a, b in zip(route, route[1:]):
            graph, added = graph.add_edge(a, b)
            edges.append(added)
        fins.append(Fin(root, Walk(route, tuple(edges))))

    final_wall = Wall(graph, wall.height, wall.labels, wall.branch_paths, wall.anchor)
    fs = FinSystem(final_wall, tuple(fins))
    verdict = validate_fin_system(fs)
    if not verdict:
        raise GenerationError(f"generated fins do not form a fin system: {verdict.violations[0]}")

    return graph, fs


def _pick_target(
    wall: Wall,
    root: VertexId,
    attachment: FinAttachment,
    roots: t.Set[VertexId],
    taken: t.Set[VertexId],
    rng: random.Random,
) -> VertexId:
    blocked = surround(wall, root)

    if not isinstance(attachment.target, str):
        target = wall.vertex_at(attachment.target)
        if target in roots:
            raise GenerationError(f"target {attachment.target} is the root of another fin")
        if target in blocked:
            raise GenerationError(f"target {attachment.target} lies in the surround of {root}")
        return target

    if attachment.target not in (FAR, NEAR):
        raise GenerationError(f"unknown target keyword {attachment.target!r}")

    pool = sorted(
        v
        for v in wall.labels.values()
        if v not in roots and v not in blocked and v not in taken
    )
    if not pool:
        raise GenerationError(f"no target left for the fin at {root}")

    distance = {v: wall_distance(wall, root, v) for v in pool}
    best = max(distance.values()) if attachment.target == FAR else min(distance.values())
    return rng.choice([v for v in pool if distance[v] == best])
