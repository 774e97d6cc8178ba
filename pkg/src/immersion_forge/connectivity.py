"""
Edge connectivity and edge-disjoint path bundles.

Pairwise values go through networkx flows. Bundles towards a target set use a
small unit-capacity flow of our own, where every parallel edge is its own unit
of capacity and the target set acts as one contracted sink; it needs control
over which flow may be cancelled, and lowest-edge-id-first exploration keeps its
answers deterministic.
"""
from __future__ import annotations

import typing as t
from collections import deque
from dataclasses import dataclass

import networkx as nx

from ._models import Verdict, Violation
from ._types import EdgeId, VertexId
from .exceptions import HypothesisViolated, ParameterError
from .multigraph import MultiGraph, Walk


@dataclass(frozen=True)
class EdgeDisjointBundle:
    source: VertexId
    paths: t.Tuple[Walk, ...]

    @property
    def targets(self) -> t.Tuple[VertexId, ...]:
        return tuple(path.end for path in self.paths)

    def validate(self, graph: MultiGraph) -> Verdict:
        """Replays every path against `graph`"""
        violations: t.List[Violation] = []
        owner: t.Dict[EdgeId, int] = {}
        for idx, path in enumerate(self.paths):
            problem = path.incidence_error(graph)
            if problem:
                violations.append(Violation("walk", problem, (idx,)))
                continue
            if not path.is_path:
                violations.append(Violation("path", "walk repeats a vertex", (idx,)))
            if path.start != self.source:
                violations.append(Violation("source", "path does not leave the source", (idx, path.start)))
            for e in path.edges:
                if e in owner:
                    violations.append(Violation("disjoint", "paths share an edge", (owner[e], idx, e)))
                owner.setdefault(e, idx)

        return Verdict.of(violations)

    def __len__(self) -> int:
        return len(self.paths)


@dataclass(frozen=True)
class Infeasible:
    cut: t.Tuple[EdgeId, ...]
    """Edges separating the source from the targets in the restricted graph"""

    flow_value: int

    def __bool__(self) -> bool:
        return False


@dataclass(frozen=True)
class PairwiseConnectivity:
    ok: bool
    failing_pair: t.Tuple[VertexId, VertexId] | None = None
    value: int | None = None
    """Connectivity of the failing pair"""

    def __bool__(self) -> bool:
        return self.ok


def _capacity_graph(graph: MultiGraph) -> nx.Graph:
    network = nx.Graph()
    network.add_nodes_from(graph.vertices)
    for a, b in graph.edges.values():
        if a == b:
            continue
        if network.has_edge(a, b):
            network[a][b]["capacity"] += 1
        else:
            network.add_edge(a, b, capacity=1)

    return network


def _check_pair(graph: MultiGraph, u: VertexId, v: VertexId) -> None:
    graph.degree(u)
    graph.degree(v)
    if u == v:
        raise ParameterError("v", v, "edge connectivity needs two distinct vertices")


def edge_connectivity(graph: MultiGraph, u: VertexId, v: VertexId) -> int:
    _check_pair(graph, u, v)
    return int(nx.maximum_flow_value(_capacity_graph(graph), u, v, capacity="capacity"))


def minimum_edge_cut(graph: MultiGraph, u: VertexId, v: VertexId) -> t.Tuple[EdgeId, ...]:
    _check_pair(graph, u, v)
    _, (side, _) = nx.minimum_cut(_capacity_graph(graph), u, v, capacity="capacity")
    return tuple(e for e, (a, b) in graph.edges.items() if (a in side) != (b in side))


def pairwise_k_connected(
    graph: MultiGraph, vertices: t.Iterable[VertexId], k: int
) -> PairwiseConnectivity:
    chosen = sorted(set(vertices))
    if len(chosen) < 2:
        raise ParameterError("vertices", tuple(chosen), "need at least two vertices")
    if k <= 0:
        return PairwiseConnectivity(True)

    for idx, u in enumerate(chosen):
        for v in chosen[idx + 1 :]:
            value = edge_connectivity(graph, u, v)
            if value < k:
                return PairwiseConnectivity(False, (u, v), value)

    return PairwiseConnectivity(True)


class _UnitFlow:
    """
    Undirected unit-capacity flow from `source` into the target set. Target
    vertices are sinks and never expanded, the source is never re-entered and
    removed vertices do not exist.
    """

    def __init__(
        self,
        graph: MultiGraph,
        source: VertexId,
        targets: t.FrozenSet[VertexId],
        removed: t.FrozenSet[VertexId],
    ) -> None:
        self.graph = graph
        self.source = source
        self.targets = targets
        self.removed = removed
        self.heading: t.Dict[EdgeId, VertexId] = {}
        """Edge to the vertex its unit of flow runs into"""

    def push(self, walk: Walk) -> None:
        for e, head in zip(walk.edges, walk.vertices[1:]):
            self.heading[e] = head

    def _residual_steps(self, x: VertexId) -> t.Iterator[t.Tuple[EdgeId, VertexId]]:
        for e in self.graph.incident_edges(x):
            if self.graph.is_loop(e):
                continue

            y = self.graph.other_end(e, x)
            if y == self.source or y in self.removed:
                continue

            head = self.heading.get(e)
            if head is None or head == x:
                yield e, y

    def _search(self) -> t.Tuple[t.Dict[VertexId, t.Tuple[EdgeId, VertexId]], VertexId | None]:
        parent: t.Dict[VertexId, t.Tuple[EdgeId, VertexId]] = {}
        seen = {self.source}
        queue = deque([self.source])
        while queue:
            x = queue.popleft()
            for e, y in self._residual_steps(x):
                if y in seen:
                    continue

                seen.add(y)
                parent[y] = (e, x)
                if y in self.targets:
                    return parent, y

                queue.append(y)

        return parent, None

    def augment(self) -> Walk | None:
        parent, end = self._search()
        if end is None:
            return None

        vertices = [end]
        edges: t.List[EdgeId] = []
        while vertices[-1] != self.source:
            e, x = parent[vertices[-1]]
            edges.append(e)
            vertices.append(x)
        vertices.reverse()
        edges.reverse()

        for e, tail, head in zip(edges, vertices, vertices[1:]):
            if self.heading.get(e) == tail:
                del self.heading[e]
            else:
                self.heading[e] = head

        return Walk(tuple(vertices), tuple(edges))

    def reachable(self) -> t.Set[VertexId]:
        seen = {self.source}
        queue = deque([self.source])
        while queue:
            x = queue.popleft()
            if x in self.targets:
                continue
            for _, y in self._residual_steps(x):
                if y not in seen:
                    seen.add(y)
                    queue.append(y)

        return seen

    def cut(self) -> t.Tuple[EdgeId, ...]:
        side = self.reachable()
        found: t.List[EdgeId] = []
        for e, (a, b) in self.graph.edges.items():
            if a == b or a in self.removed or b in self.removed:
                continue
            if (a in side) != (b in side):
                found.append(e)

        return tuple(found)

    def decompose(self) -> t.List[Walk]:
        """Splits the flow into source-to-target paths, cutting any cycles on the way"""
        outgoing: t.Dict[VertexId, t.List[EdgeId]] = {}
        for e in sorted(self.heading):
            tail = self.graph.other_end(e, self.heading[e])
            outgoing.setdefault(tail, []).append(e)

        paths: t.List[Walk] = []
        while outgoing.get(self.source):
            vertices = [self.source]
            edges: t.List[EdgeId] = []
            while vertices[-1] == self.source or vertices[-1] not in self.targets:
                e = outgoing[vertices[-1]].pop(0)
                edges.append(e)
                vertices.append(self.heading[e])
            paths.append(Walk(tuple(vertices), tuple(edges)).simplified())

        return paths


def _restricted(
    graph: MultiGraph,
    s: VertexId,
    targets: t.Iterable[VertexId],
    forbidden_interior: t.Iterable[VertexId],
) -> t.Tuple[t.FrozenSet[VertexId], t.FrozenSet[VertexId]]:
    graph.degree(s)
    target_set = frozenset(targets)
    for x in target_set:
        graph.degree(x)
    if s in target_set:
        raise ParameterError("s", s, "the source may not be a target")

    removed = frozenset(forbidden_interior) - target_set - {s}
    return target_set, removed


def disjoint_paths_to_set(
    graph: MultiGraph,
    s: VertexId,
    targets: t.Iterable[VertexId],
    k: int,
    forbidden_interior: t.Iterable[VertexId] = (),
) -> EdgeDisjointBundle | Infeasible:
    target_set, removed = _restricted(graph, s, targets, forbidden_interior)
    if k < 0:
        raise ParameterError("k", k, "must be nonnegative")

    flow = _UnitFlow(graph, s, target_set, removed)
    for done in range(k):
        if flow.augment() is None:
            return Infeasible(flow.cut(), done)

    return EdgeDisjointBundle(s, tuple(flow.decompose()))


def augment_with_prescribed_ends(
    graph: MultiGraph,
    s: VertexId,
    targets: t.Iterable[VertexId],
    prescribed: t.Sequence[VertexId],
    seed_paths: t.Sequence[Walk],
    forbidden_interior: t.Iterable[VertexId] = (),
) -> EdgeDisjointBundle | Infeasible:
    """
    Four edge-disjoint paths from `s` into `targets`, the first three ending at
    `prescribed` in that order. The seeds are taken as flow and augmented once.
    Inflow into a target is never cancelled, so every prescribed end keeps a
    path; the result is replayed before it is returned.
    """
    target_set, removed = _restricted(graph, s, targets, forbidden_interior)
    _check_seeds(graph, s, target_set, prescribed, seed_paths)

    flow = _UnitFlow(graph, s, target_set, removed)
    for seed in seed_paths:
        flow.push(seed)

    extra = flow.augment()
    if extra is None:
        return Infeasible(flow.cut(), len(seed_paths))

    seed_edges = {e for seed in seed_paths for e in seed.edges}
    if not seed_edges & set(extra.edges):
        bundle = EdgeDisjointBundle(s, (*seed_paths, extra))
    else:
        slots: t.List[Walk | None] = [None, None, None]
        spare: t.List[Walk] = []
        for path in flow.decompose():
            if path.end in prescribed and slots[prescribed.index(path.end)] is None:
                slots[prescribed.index(path.end)] = path
            else:
                spare.append(path)

        if None in slots or len(spare) != 1:
            raise HypothesisViolated("augmentation lost a prescribed terminal", (s, tuple(prescribed)))
        bundle = EdgeDisjointBundle(s, (*t.cast(t.List[Walk], slots), spare[0]))

    verdict = bundle.validate(graph)
    if not verdict or bundle.targets[:3] != tuple(prescribed) or bundle.targets[3] not in target_set:
        raise HypothesisViolated("augmented bundle failed its replay", (s, str(verdict.violations[:1])))

    return bundle


def _check_seeds(
    graph: MultiGraph,
    s: VertexId,
    targets: t.FrozenSet[VertexId],
    prescribed: t.Sequence[VertexId],
    seed_paths: t.Sequence[Walk],
) -> None:
    if len(prescribed) != 3 or len(seed_paths) != 3:
        raise ParameterError("seed_paths", len(seed_paths), "exactly three prescribed ends and seeds are needed")
    if len(set(prescribed)) != 3:
        raise ParameterError("prescribed", tuple(prescribed), "prescribed ends must be distinct")

    for end in prescribed:
        if end not in targets:
            raise ParameterError("prescribed", end, "prescribed ends must lie in the target set")

    bundle = EdgeDisjointBundle(s, tuple(seed_paths))
    verdict = bundle.validate(graph)
    if not verdict:
        raise ParameterError("seed_paths", str(verdict.violations[0]), "seeds must be edge-disjoint paths from s")

    for seed, end in zip(seed_paths, prescribed):
        if seed.end != end:
            raise ParameterError("seed_paths", seed.to_sequence(), f"seed must end at {end}")
        if set(seed.internal_vertices) & targets:
            raise ParameterError("seed_paths", seed.to_sequence(), "seeds must avoid the targets internally")
