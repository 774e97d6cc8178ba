"""
Immersion maps, their verifier and the exhaustive finder used as the oracle
everywhere else.

A map sends pattern vertices injectively to host vertices and pattern edges to
host paths (cycles for loops) that are pairwise edge-disjoint, with no vertex
image sitting on the image of an edge it is not incident with.
"""
from __future__ import annotations

import logging
import typing as t
from dataclasses import dataclass

from ._models import Budget, BudgetExhausted, SearchResult, SearchStatus, Verdict, Violation
from ._types import EdgeId, VertexId
from .exceptions import PartialImmersionMap, PreconditionFailed
from .multigraph import MultiGraph, Walk

if t.TYPE_CHECKING:  # pragma: no cover
    from .generators import SubdivisionRecord

logger = logging.getLogger(__name__)

INJECTIVE: t.Final = 1
EDGE_TO_PATH: t.Final = 2
LOOP_TO_CYCLE: t.Final = 3
AVOIDS_FOREIGN_IMAGES: t.Final = 4
EDGE_DISJOINT: t.Final = 5


@dataclass(frozen=True, eq=False)
class ImmersionMap:
    pattern: MultiGraph
    host: MultiGraph
    vertex_map: t.Mapping[VertexId, VertexId]
    edge_map: t.Mapping[EdgeId, Walk]

    @classmethod
    def identity(cls, graph: MultiGraph) -> ImmersionMap:
        return cls(
            graph,
            graph,
            {v: v for v in graph.vertices},
            {e: Walk((a, b), (e,)) for e, (a, b) in graph.edges.items()},
        )

    @classmethod
    def from_subgraph(
        cls,
        pattern: MultiGraph,
        host: MultiGraph,
        vertex_map: t.Mapping[VertexId, VertexId],
        edge_ids: t.Mapping[EdgeId, EdgeId],
    ) -> ImmersionMap:
        """Turns a subgraph inclusion (pattern edge to host edge) into a map"""
        edge_map: t.Dict[EdgeId, Walk] = {}
        for e, host_edge in edge_ids.items():
            u, v = pattern.ends(e)
            edge_map[e] = Walk((vertex_map[u], vertex_map[v]), (host_edge,))

        return cls(pattern, host, dict(vertex_map), edge_map)

    @classmethod
    def from_subdivision(cls, record: SubdivisionRecord) -> ImmersionMap:
        return cls(record.original, record.graph, dict(record.vertex_map), dict(record.edge_paths))

    def with_host(self, host: MultiGraph) -> ImmersionMap:
        return ImmersionMap(self.pattern, host, self.vertex_map, self.edge_map)

    def with_edges(self, changes: t.Mapping[EdgeId, Walk]) -> ImmersionMap:
        edge_map = dict(self.edge_map)
        edge_map.update(changes)
        return ImmersionMap(self.pattern, self.host, self.vertex_map, edge_map)

    @property
    def image_vertices(self) -> t.FrozenSet[VertexId]:
        return frozenset(self.vertex_map.values())

    @property
    def used_edges(self) -> t.FrozenSet[EdgeId]:
        return frozenset(e for walk in self.edge_map.values() for e in walk.edges)

    def image_of(self, e: EdgeId) -> Walk:
        """The image of pattern edge `e`, oriented from the image of its first end"""
        start = self.vertex_map[self.pattern.ends(e)[0]]
        return self.edge_map[e].oriented_from(start)

    def rooted_at(self, roots: t.Iterable[VertexId]) -> bool:
        return is_rooted(self, roots)


def check_total(m: ImmersionMap) -> None:
    """Raises when the map is not a complete question about the host"""
    missing_vertices = tuple(v for v in m.pattern.vertices if v not in m.vertex_map)
    missing_edges = tuple(e for e in m.pattern.edge_ids if e not in m.edge_map)
    if missing_vertices or missing_edges:
        raise PartialImmersionMap(missing_vertices, missing_edges)

    for v, image in m.vertex_map.items():
        if not m.host.has_vertex(image):
            raise PartialImmersionMap(detail=f"vertex {v} maps to {image}, not a host vertex")

    for e, walk in m.edge_map.items():
        for x in walk.vertices:
            if not m.host.has_vertex(x):
                raise PartialImmersionMap(detail=f"edge {e} walks through {x}, not a host vertex")
        for x in walk.edges:
            if not m.host.has_edge(x):
                raise PartialImmersionMap(detail=f"edge {e} walks along {x}, not a host edge")


def verify(m: ImmersionMap) -> Verdict:
    check_total(m)
    violations: t.List[Violation] = []

    seen: t.Dict[VertexId, VertexId] = {}
    for v in m.pattern.vertices:
        image = m.vertex_map[v]
        if image in seen:
            violations.append(Violation(INJECTIVE, "two pattern vertices share an image", (seen[image], v, image)))
        seen.setdefault(image, v)

    for e in m.pattern.edge_ids:
        walk = m.edge_map[e]
        u, v = m.pattern.ends(e)
        problem = walk.incidence_error(m.host)

        if u != v:
            ends = {m.vertex_map[u], m.vertex_map[v]}
            if problem or not walk.is_path or walk.length == 0 or {walk.start, walk.end} != ends:
                violations.append(
                    Violation(EDGE_TO_PATH, problem or "edge image is not a path between the end images", (e,))
                )
        elif problem or not walk.is_cycle or walk.start != m.vertex_map[v]:
            violations.append(
                Violation(LOOP_TO_CYCLE, problem or "loop image is not a cycle through the vertex image", (e,))
            )

    for v in m.pattern.vertices:
        image = m.vertex_map[v]
        incident = set(m.pattern.incident_edges(v))
        for e in m.pattern.edge_ids:
            if e not in incident and image in m.edge_map[e].vertex_set:
                violations.append(
                    Violation(AVOIDS_FOREIGN_IMAGES, "vertex image lies on a non-incident edge image", (v, e, image))
                )

    owner: t.Dict[EdgeId, EdgeId] = {}
    for e in m.pattern.edge_ids:
        for host_edge in m.edge_map[e].edges:
            if host_edge in owner and owner[host_edge] != e:
                violations.append(
                    Violation(EDGE_DISJOINT, "edge images share a host edge", (owner[host_edge], e, host_edge))
                )
            owner.setdefault(host_edge, e)

    return Verdict.of(violations)


def is_subdivision_map(m: ImmersionMap) -> bool:
    verdict = verify(m)
    if not verdict:
        raise PreconditionFailed("is_subdivision_map", f"the map does not verify: {verdict.violations[0]}")

    edges = m.pattern.edge_ids
    for idx, e in enumerate(edges):
        for f in edges[idx + 1 :]:
            shared = m.edge_map[e].vertex_set & m.edge_map[f].vertex_set
            common = set(m.pattern.ends(e)) & set(m.pattern.ends(f))
            if shared - {m.vertex_map[x] for x in common}:
                return False

    return True


def is_rooted(m: ImmersionMap, roots: t.Iterable[VertexId]) -> bool:
    allowed = set(roots)
    return all(m.vertex_map[v] in allowed for v in m.pattern.vertices)


def simple_paths(
    host: MultiGraph,
    start: VertexId,
    end: VertexId,
    usable: t.Callable[[EdgeId], bool],
    blocked: t.Container[VertexId],
    budget: Budget,
) -> t.Iterator[Walk]:
    """
    Every simple `start`-`end` path over usable edges whose inner vertices avoid
    `blocked`, depth first in edge-id order. `start == end` yields nothing.
    """
    vertices = [start]
    edges: t.List[EdgeId] = []
    on_path = {start}

    def extend(x: VertexId) -> t.Iterator[Walk]:
        for e in host.incident_edges(x):
            if not usable(e) or host.is_loop(e):
                continue

            budget.spend()
            y = host.other_end(e, x)
            if y in on_path:
                continue

            if y == end:
                yield Walk((*vertices, y), (*edges, e))
                continue

            if y in blocked:
                continue

            vertices.append(y)
            edges.append(e)
            on_path.add(y)
            yield from extend(y)
            on_path.discard(y)
            edges.pop()
            vertices.pop()

    if start != end:
        yield from extend(start)


def cycles_through(
    host: MultiGraph,
    v: VertexId,
    usable: t.Callable[[EdgeId], bool],
    blocked: t.Container[VertexId],
    budget: Budget,
) -> t.Iterator[Walk]:
    """Cycles through `v`, each reported once, loops at `v` included"""
    for e in host.incident_edges(v):
        if not usable(e):
            continue

        budget.spend()
        if host.is_loop(e):
            yield Walk((v, v), (e,))
            continue

        w = host.other_end(e, v)
        if w in blocked:
            continue

        def rest_usable(x: EdgeId, first: EdgeId = e) -> bool:
            return x != first and usable(x)

        for back in simple_paths(host, w, v, rest_usable, blocked, budget):
            # each cycle is found once per direction; keep the one entering on the larger edge
            if back.edges[-1] > e:
                yield Walk((v,) + back.vertices, (e,) + back.edges)


def _sorted_routes(routes: t.Iterable[Walk]) -> t.List[Walk]:
    return sorted(routes, key=lambda walk: (walk.length, walk.edges))


def find_immersion(
    host: MultiGraph,
    pattern: MultiGraph,
    roots: t.Iterable[VertexId] | None = None,
    budget: int = 10**7,
) -> SearchResult[ImmersionMap]:
    """
    Exhaustive search. Pattern vertices are placed first (most demanding first),
    then pattern edges are routed one at a time, shortest candidates first, over
    host edges not yet used and around the images of non-incident vertices.
    `NOT_FOUND` is only returned after the whole space was explored.
    """
    counter = Budget(budget)
    allowed = set(roots) if roots is not None else None
    order = sorted(pattern.vertices, key=lambda v: (-pattern.degree(v), v))
    edges = list(pattern.edge_ids)

    vertex_map: t.Dict[VertexId, VertexId] = {}
    edge_map: t.Dict[EdgeId, Walk] = {}
    taken_edges: t.Set[EdgeId] = set()

    def route(idx: int) -> bool:
        if idx == len(edges):
            return True

        e = edges[idx]
        u, v = pattern.ends(e)
        incident = {u, v}
        blocked = {vertex_map[x] for x in pattern.vertices if x not in incident}

        def usable(x: EdgeId) -> bool:
            return x not in taken_edges

        if u == v:
            candidates = _sorted_routes(cycles_through(host, vertex_map[u], usable, blocked, counter))
        else:
            candidates = _sorted_routes(
                simple_paths(host, vertex_map[u], vertex_map[v], usable, blocked, counter)
            )

        for walk in candidates:
            counter.spend()
            edge_map[e] = walk
            taken_edges.update(walk.edges)
            if route(idx + 1):
                return True
            taken_edges.difference_update(walk.edges)
            del edge_map[e]

        return False

    def place(idx: int) -> bool:
        if idx == len(order):
            return route(0)

        x = order[idx]
        need = pattern.degree(x)
        used = set(vertex_map.values())
        for y in host.vertices:
            if y in used or host.degree(y) < need:
                continue
            if allowed is not None and y not in allowed:
                continue

            counter.spend()
            vertex_map[x] = y
            if place(idx + 1):
                return True
            del vertex_map[x]

        return False

    try:
        found = place(0)
    except BudgetExhausted:
        logger.debug("Immersion search stopped after %s expansions", counter.spent)
        return SearchResult(SearchStatus.BUDGET_EXHAUSTED, expansions=counter.spent)

    if not found:
        return SearchResult(SearchStatus.NOT_FOUND, expansions=counter.spent)

    result = ImmersionMap(pattern, host, dict(vertex_map), dict(edge_map))
    return SearchResult(SearchStatus.FOUND, result, counter.spent)
