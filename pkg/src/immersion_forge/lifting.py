"""
Edge lifting and the reduction of an immersed wall to a genuine one.

Lifting at `v` deletes two edges `d1 = u1v`, `d2 = u2v` and adds `d0 = u1u2`.
Immersions found after a lift are pulled back by replacing `d0` with the detour
through `v`.
"""
from __future__ import annotations

import typing as t
from dataclasses import dataclass

from . import _elementary as elem
from ._configs import active_config
from ._loggers import process_log_lift, resolve_event
from ._models import DEFAULT_LOG_EVENTS, Budget, BudgetExhausted, PipelineConfig
from ._types import EdgeId, VertexId
from .exceptions import HypothesisViolated, ParameterError, PullBackFailed
from .immersion import ImmersionMap, cycles_through, simple_paths, verify
from .multigraph import MultiGraph, Walk
from .wallgeom import Fin, FinSystem, Wall, validate_fin_system


@dataclass(frozen=True)
class LiftRecord:
    lifted_at: VertexId
    d1: EdgeId
    d2: EdgeId
    u1: VertexId
    u2: VertexId
    d0: EdgeId

    @property
    def removed(self) -> t.Tuple[EdgeId, EdgeId]:
        return (self.d1, self.d2)

    def __str__(self) -> str:
        return f"lift {self.lifted_at}: -{self.d1} -{self.d2} +{self.d0}({self.u1},{self.u2})"


def lift_pair(
    graph: MultiGraph, v: VertexId, d1: EdgeId, d2: EdgeId
) -> t.Tuple[MultiGraph, LiftRecord]:
    if d1 == d2:
        raise ParameterError("d2", d2, "lifting needs two distinct edges")

    for d in (d1, d2):
        if v not in graph.ends(d):
            raise ParameterError("edge", d, f"is not incident with vertex {v}")

    u1 = graph.other_end(d1, v)
    u2 = graph.other_end(d2, v)
    lifted, d0 = graph.delete_edges([d1, d2]).add_edge(u1, u2)
    return lifted, LiftRecord(v, d1, d2, u1, u2, d0)


def unlift(graph: MultiGraph, record: LiftRecord) -> MultiGraph:
    """The graph `record` was lifted from"""
    edges = {e: ends for e, ends in graph.edges.items() if e != record.d0}
    edges[record.d1] = (record.u1, record.lifted_at)
    edges[record.d2] = (record.u2, record.lifted_at)
    return MultiGraph(graph.vertices, edges, record.d0)


def _detour(walk: Walk, record: LiftRecord) -> Walk:
    """`walk` with its `d0` step replaced by `d1, v, d2` (or the reverse)"""
    idx = walk.edges.index(record.d0)
    x = walk.vertices[idx]
    if x == record.u1:
        middle = ((record.d1, record.lifted_at), (record.d2, record.u2))
    else:
        middle = ((record.d2, record.lifted_at), (record.d1, record.u1))

    vertices = list(walk.vertices[: idx + 1])
    edges = list(walk.edges[:idx])
    for edge, vertex in middle:
        edges.append(edge)
        vertices.append(vertex)

    return Walk(tuple(vertices) + walk.vertices[idx + 2 :], tuple(edges) + walk.edges[idx + 1 :])


def _shortcut(walk: Walk) -> Walk:
    if not walk.is_closed:
        return walk.simplified()

    # keep the closing edge so the result is still a cycle through the start
    body = Walk(walk.vertices[:-1], walk.edges[:-1]).simplified()
    return Walk(body.vertices + (walk.end,), body.edges + (walk.edges[-1],))


def _user_of(m: ImmersionMap, edge: EdgeId) -> EdgeId | None:
    for e, walk in m.edge_map.items():
        if edge in walk.edges:
            return e

    return None


def pull_back(m: ImmersionMap, record: LiftRecord) -> ImmersionMap:
    """
    Moves `m` from the lifted graph to the graph before the lift. Raises
    `PullBackFailed` when the detour through the lifted vertex would break the
    image it lands in.
    """
    original = unlift(m.host, record)
    e = _user_of(m, record.d0)
    if e is None:
        return m.with_host(original)

    v = record.lifted_at
    walk = m.edge_map[e]
    if v in walk.vertex_set:
        raise PullBackFailed(e, PullBackFailed.PATH_BROKEN)

    incident = set(m.pattern.ends(e))
    for x, image in m.vertex_map.items():
        if image == v and x not in incident:
            raise PullBackFailed(e, PullBackFailed.IMAGE_CONFLICT)

    return m.with_host(original).with_edges({e: _detour(walk, record)})


def pull_back_with_reroute(
    m: ImmersionMap, record: LiftRecord, budget: int = 10**6
) -> ImmersionMap:
    """
    `pull_back` plus one repair attempt: a detour revisiting the lifted vertex is
    shortcut, and an image conflict re-searches the one offending edge in the
    original graph.
    """
    try:
        return pull_back(m, record)
    except PullBackFailed as failure:
        e = failure.pattern_edge
        original = unlift(m.host, record)
        base = m.with_host(original)

        if failure.reason == PullBackFailed.PATH_BROKEN:
            return base.with_edges({e: _shortcut(_detour(m.edge_map[e], record))})

        rerouted = _reroute(base, e, budget)
        if rerouted is None:
            raise PullBackFailed(e, PullBackFailed.REROUTE_FAILED) from failure

        return base.with_edges({e: rerouted})


def _reroute(m: ImmersionMap, e: EdgeId, budget: int) -> Walk | None:
    taken = {x for f, walk in m.edge_map.items() if f != e for x in walk.edges}
    u, v = m.pattern.ends(e)
    blocked = {image for x, image in m.vertex_map.items() if x not in (u, v)}
    counter = Budget(budget)

    def usable(x: EdgeId) -> bool:
        return x not in taken

    try:
        if u == v:
            routes = list(cycles_through(m.host, m.vertex_map[u], usable, blocked, counter))
        else:
            routes = list(simple_paths(m.host, m.vertex_map[u], m.vertex_map[v], usable, blocked, counter))
    except BudgetExhausted:
        return None

    if not routes:
        return None

    return min(routes, key=lambda walk: (walk.length, walk.edges))


def pull_back_history(m: ImmersionMap, history: t.Sequence[LiftRecord]) -> ImmersionMap:
    """Replays a whole lift history backwards"""
    for record in reversed(history):
        m = pull_back_with_reroute(m, record)

    return m


# Reduction of an immersed wall


@dataclass(frozen=True)
class ReductionResult:
    history: t.Tuple[LiftRecord, ...]
    graph: MultiGraph
    immersion: ImmersionMap
    fin_system: FinSystem
    measures: t.Tuple[t.Tuple[int, int], ...]
    """(primary, secondary) before the first lift and after every step"""


def crossing_pairs(m: ImmersionMap) -> t.Dict[t.Tuple[EdgeId, EdgeId], t.Tuple[VertexId, ...]]:
    """Pairs of pattern edges whose images share an internal vertex, with those vertices"""
    interiors = {e: set(m.edge_map[e].internal_vertices) for e in m.pattern.edge_ids}
    found: t.Dict[t.Tuple[EdgeId, EdgeId], t.Tuple[VertexId, ...]] = {}
    edges = m.pattern.edge_ids
    for idx, e in enumerate(edges):
        for f in edges[idx + 1 :]:
            shared = interiors[e] & interiors[f]
            if shared:
                found[(e, f)] = tuple(sorted(shared))

    return found


def _height_of(pattern: MultiGraph) -> int:
    h = 2
    while (h + 1) * (2 * h + 2) - 2 < pattern.vertex_count:
        h += 2

    return h


def wall_image_without(m: ImmersionMap, root: VertexId) -> t.Set[VertexId]:
    """Vertices of the image of the wall minus pattern vertex `root`"""
    found = {image for x, image in m.vertex_map.items() if x != root}
    incident = set(m.pattern.incident_edges(root))
    for e, walk in m.edge_map.items():
        if e not in incident:
            found.update(walk.vertices)

    return found


def first_contact_prefix(fin: Walk, stop: t.Set[VertexId]) -> Walk | None:
    for idx, vertex in enumerate(fin.vertices[1:], start=1):
        if vertex in stop:
            return fin.prefix(idx)

    return None


def reduce_immersed_wall(
    graph: MultiGraph,
    m0: ImmersionMap,
    s0: t.Iterable[VertexId],
    fins: t.Mapping[VertexId, Walk],
    config: PipelineConfig | None = None,
) -> ReductionResult:
    """
    `m0` immerses the elementary wall in `graph`; `s0` are diagonal pattern
    vertices and `fins[s]` leaves the image of `s` without using wall-image edges.
    Lifts one crossing at a time until the image of the wall is a wall.
    """
    cfg = active_config(config)
    log_lift = resolve_event(cfg.log_lift, DEFAULT_LOG_EVENTS.lift)

    pattern = m0.pattern
    h = _height_of(pattern)
    labels = elem.wall_labels(h)
    if pattern.vertex_count != len(labels) or pattern.edge_count != len(elem.wall_edges(h)):
        raise ParameterError("m0", pattern, "the pattern is not an elementary wall")

    roots = sorted(set(s0))
    diagonal = {labels.index(label) for label in elem.diagonal_labels(h)}
    for s in roots:
        if s not in diagonal:
            raise ParameterError("s0", s, "is not a diagonal vertex of the elementary wall")
        if s not in fins:
            raise HypothesisViolated("root carries no fin", (s,))

    for e, (a, b) in pattern.edges.items():
        if a in roots and b in roots:
            raise HypothesisViolated("a wall edge has both ends among the roots", (e,))

    m = m0.with_host(graph)
    verdict = verify(m)
    if not verdict:
        raise HypothesisViolated("the wall map is not an immersion", (str(verdict.violations[0]),))

    root_set = set(roots)
    for (e, f), _ in crossing_pairs(m).items():
        if not set(pattern.ends(e)) & set(pattern.ends(f)) & root_set:
            raise HypothesisViolated("images cross away from every root", (e, f))

    wall_edges = m.used_edges
    normalized: t.Dict[VertexId, Walk] = {}
    for s in roots:
        fin = fins[s]
        if fin.incidence_error(graph) or fin.start != m.vertex_map[s]:
            raise HypothesisViolated("fin does not leave its root", (s,))
        if set(fin.edges) & wall_edges:
            raise HypothesisViolated("fin uses an edge of the wall image", (s,))

        stop = wall_image_without(m, s)
        truncated = first_contact_prefix(fin, stop)
        if truncated is None:
            raise HypothesisViolated("fin never reaches the rest of the wall", (s,))
        if truncated.end in {m.vertex_map[r] for r in roots if r != s}:
            raise HypothesisViolated("fin ends at another root", (s, truncated.end))
        normalized[s] = truncated.simplified()

    def measure(current: ImmersionMap) -> t.Tuple[int, int]:
        primary = sum(len(shared) for shared in crossing_pairs(current).values())
        return primary, sum(fin.length for fin in normalized.values())

    history: t.List[LiftRecord] = []
    measures = [measure(m)]
    current_graph = graph
    while True:
        pairs = crossing_pairs(m)
        if not pairs:
            break

        v = min(vertex for shared in pairs.values() for vertex in shared)
        e1, e2 = min(pair for pair, shared in pairs.items() if v in shared)
        walk = m.edge_map[e1]
        idx = walk.vertices.index(v)
        d1, d2 = walk.edges[idx - 1], walk.edges[idx]

        current_graph, record = lift_pair(current_graph, v, d1, d2)
        shortened = Walk(
            walk.vertices[:idx] + walk.vertices[idx + 1 :],
            walk.edges[: idx - 1] + (record.d0,) + walk.edges[idx + 1 :],
        )
        m = m.with_host(current_graph).with_edges({e1: shortened})
        history.append(record)

        step = measure(m)
        if step >= measures[-1]:
            raise HypothesisViolated("lift did not decrease the crossing measure", (v, e1, e2))
        measures.append(step)
        process_log_lift(log_lift, v, (d1, d2), record.d0, *step)

        _check_fins(m, normalized, e1, e2)

    wall = _wall_of(m, h, labels)
    fin_system = FinSystem(
        wall, tuple(Fin(m.vertex_map[s], normalized[s]) for s in roots)
    )
    verdict = validate_fin_system(fin_system)
    if not verdict:
        raise HypothesisViolated("reduced fins do not form a fin system", (str(verdict.violations[0]),))

    return ReductionResult(tuple(history), current_graph, m, fin_system, tuple(measures))


def _check_fins(m: ImmersionMap, fins: t.Mapping[VertexId, Walk], e1: EdgeId, e2: EdgeId) -> None:
    wall_edges = m.used_edges
    for s, fin in fins.items():
        if fin.incidence_error(m.host) or set(fin.edges) & wall_edges:
            raise HypothesisViolated("fin broke during the reduction", (s, e1, e2))
        if fin.end not in wall_image_without(m, s):
            raise HypothesisViolated("fin lost its target during the reduction", (s, e1, e2))


def _wall_of(m: ImmersionMap, h: int, labels: t.List[t.Tuple[int, int]]) -> Wall:
    """Reads a crossing-free image of the elementary wall as a wall"""
    vertex_labels = {label: m.vertex_map[idx] for idx, label in enumerate(labels)}
    branch_paths = {}
    for e, (a, b) in m.pattern.edges.items():
        key = (labels[a], labels[b])
        walk = m.edge_map[e].oriented_from(m.vertex_map[a])
        branch_paths[key] = walk

    return Wall(m.host, h, vertex_labels, branch_paths)
