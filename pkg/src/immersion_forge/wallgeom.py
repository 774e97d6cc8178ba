"""
Walls and the combinatorics of their standard drawing.

A `Wall` is a subdivision of the elementary wall sitting inside a host graph. The
drawing is never materialised with coordinates: the rotation at each branch vertex
comes from the `(i, j)` labeling (east, north, west, south counter-clockwise), faces
are traced on the elementary wall and then expanded along the branches.
"""
from __future__ import annotations

import logging
import typing as t
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

import networkx as nx

from . import _elementary as elem
from ._models import Budget, BudgetExhausted, SearchResult, SearchStatus, Verdict, Violation
from ._types import EdgeId, Label, VertexId
from .exceptions import ParameterError
from .multigraph import MultiGraph, Walk

logger = logging.getLogger(__name__)

LABEL_PAIR = t.Tuple[Label, Label]


class WallCondition(str, Enum):
    LABELS = "labels"
    BRANCH_WALK = "branch walk"
    BRANCH_ENDS = "branch ends"
    BRANCH_OVERLAP = "branch overlap"
    BRICK_LENGTH = "brick length"
    PERIMETER = "perimeter"


class FinCondition(str, Enum):
    ROOT_NOT_DIAGONAL = "root not diagonal"
    ROOTS_NOT_DISTINCT = "roots not distinct"
    NOT_A_PATH = "fin not a path"
    WRONG_ENDS = "fin ends"
    USES_WALL_EDGE = "fin uses wall edge"
    TARGET_OFF_WALL = "target off wall"
    TARGET_IN_SURROUND = "t in surround"
    ROOT_ON_OTHER_FIN = "root on other fin"


@dataclass(frozen=True)
class Face:
    labels: t.Tuple[Label, ...]
    """Branch-vertex labels around the face, in tracing order"""

    vertices: t.Tuple[VertexId, ...]
    """Every wall vertex around the face, subdivision vertices included"""

    edges: t.Tuple[EdgeId, ...]


@dataclass(frozen=True, eq=False)
class Wall:
    host: MultiGraph
    """The graph the wall lives in. The wall itself is the union of its branches."""

    height: int

    labels: t.Mapping[Label, VertexId]
    """Elementary labels to host vertices (branch vertices)"""

    branch_paths: t.Mapping[LABEL_PAIR, Walk]
    """One path per elementary edge `(a, b)`, `a < b`, oriented from `a` to `b`"""

    anchor: Label = (1, 1)
    """Where this wall's `(1, 1)` sits in the wall it was carved from, if any"""

    _cache: t.Dict[t.Any, t.Any] = field(default_factory=dict, repr=False)

    # Lookups

    @cached_property
    def label_of(self) -> t.Dict[VertexId, Label]:
        return {v: label for label, v in self.labels.items()}

    def vertex_at(self, label: Label) -> VertexId:
        try:
            return self.labels[label]
        except KeyError:
            raise ParameterError("label", label, f"is not a label of a height {self.height} wall") from None

    @cached_property
    def vertex_set(self) -> t.FrozenSet[VertexId]:
        found: t.Set[VertexId] = set(self.labels.values())
        for path in self.branch_paths.values():
            found.update(path.vertices)

        return frozenset(found)

    @cached_property
    def edge_set(self) -> t.FrozenSet[EdgeId]:
        return frozenset(e for path in self.branch_paths.values() for e in path.edges)

    @cached_property
    def graph(self) -> MultiGraph:
        """The wall as a graph of its own"""
        return self.host.edge_subgraph(self.edge_set)

    def wall_degree(self, v: VertexId) -> int:
        if v not in self.vertex_set:
            raise ParameterError("vertex", v, "is not on the wall")

        return self.graph.degree(v)

    @cached_property
    def branch_of_interior(self) -> t.Dict[VertexId, LABEL_PAIR]:
        """Subdivision vertices to the branch carrying them"""
        return {
            v: key for key, path in self.branch_paths.items() for v in path.internal_vertices
        }

    def branch(self, a: Label, b: Label) -> Walk:
        """Branch between two adjacent labels, oriented from `a`"""
        if a < b:
            return self.branch_paths[(a, b)]

        return self.branch_paths[(b, a)].reversed()

    # Drawing

    @cached_property
    def faces(self) -> t.Tuple[Face, ...]:
        return tuple(self._expand_face(labels) for labels in _trace_faces(self.height))

    @cached_property
    def outer_face(self) -> Face:
        return max(self.faces, key=lambda face: len(face.labels))

    @cached_property
    def bricks(self) -> t.Tuple[Face, ...]:
        outer = self.outer_face
        return tuple(face for face in self.faces if face is not outer)

    def _expand_face(self, labels: t.Sequence[Label]) -> Face:
        vertices: t.List[VertexId] = []
        edges: t.List[EdgeId] = []
        for idx, a in enumerate(labels):
            b = labels[(idx + 1) % len(labels)]
            path = self.branch(a, b)
            vertices.extend(path.vertices[:-1])
            edges.extend(path.edges)

        return Face(tuple(labels), tuple(vertices), tuple(edges))

    @cached_property
    def radial(self) -> nx.DiGraph:
        """
        Vertices and faces as nodes. A curve leaves a vertex into an incident face
        for free, and pays one point for every vertex it stops at and every edge
        it crosses into a neighbouring face.
        """
        graph = nx.DiGraph()
        for idx, face in enumerate(self.faces):
            node = ("f", idx)
            for v in set(face.vertices):
                graph.add_edge(("v", v), node, weight=0)
                graph.add_edge(node, ("v", v), weight=1)

        faces_of_edge: t.Dict[EdgeId, t.List[int]] = {}
        for idx, face in enumerate(self.faces):
            for e in set(face.edges):
                faces_of_edge.setdefault(e, []).append(idx)

        for sides in faces_of_edge.values():
            for a in sides:
                for b in sides:
                    if a != b:
                        graph.add_edge(("f", a), ("f", b), weight=1)

        return graph

    def distances_from(self, s: VertexId) -> t.Dict[VertexId, int]:
        if s not in self.vertex_set:
            raise ParameterError("s", s, "is not a vertex of the wall")

        key = ("dist", s)
        if key not in self._cache:
            lengths = nx.single_source_dijkstra_path_length(self.radial, ("v", s), weight="weight")
            self._cache[key] = {
                node[1]: int(value) for node, value in lengths.items() if node[0] == "v"
            }

        return self._cache[key]

    def __repr__(self) -> str:
        return f"Wall(height={self.height}, |V|={len(self.vertex_set)}, anchor={self.anchor})"


def _trace_faces(h: int) -> t.List[t.Tuple[Label, ...]]:
    """Faces of the elementary wall as cyclic label sequences"""
    rotation = {label: elem.neighbour_labels(h, label) for label in elem.wall_labels(h)}

    def next_dart(u: Label, v: Label) -> t.Tuple[Label, Label]:
        around = rotation[v]
        idx = around.index(u)
        return v, around[idx - 1]

    seen: t.Set[t.Tuple[Label, Label]] = set()
    faces: t.List[t.Tuple[Label, ...]] = []
    for a, b in elem.wall_edges(h):
        for dart in ((a, b), (b, a)):
            if dart in seen:
                continue

            boundary: t.List[Label] = []
            current = dart
            while current not in seen:
                seen.add(current)
                boundary.append(current[0])
                current = next_dart(*current)

            faces.append(tuple(boundary))

    return faces


# Operations


def branches(wall: Wall) -> t.List[Walk]:
    return [wall.branch_paths[key] for key in sorted(wall.branch_paths)]


def diagonal_vertices(wall: Wall) -> t.List[VertexId]:
    return [wall.labels[label] for label in elem.diagonal_labels(wall.height)]


def perimeter(wall: Wall) -> Walk:
    face = wall.outer_face
    return Walk(face.vertices + face.vertices[:1], face.edges)


def wall_distance(wall: Wall, s: VertexId, t_: VertexId) -> int:
    """
    Fewest points a curve from `s` to `t_` meets in the drawing, not counting `s`
    itself. Cofacial distinct vertices are at distance 1.
    """
    if s == t_:
        if s not in wall.vertex_set:
            raise ParameterError("s", s, "is not a vertex of the wall")
        return 0

    if t_ not in wall.vertex_set:
        raise ParameterError("t", t_, "is not a vertex of the wall")

    return wall.distances_from(s)[t_]


def distance_to_perimeter(wall: Wall, v: VertexId) -> int:
    distances = wall.distances_from(v)
    return min(distances[u] if u != v else 0 for u in wall.outer_face.vertices)


def subwall(wall: Wall, i1: int, j1: int, sub_height: int) -> Wall:
    """
    The subwall with rows `i1..i1+h'` and columns `j1..j1+2h'+1`, relabeled so
    `(i1, j1)` becomes `(1, 1)`.
    """
    kept = elem.subwall_labels(wall.height, i1, j1, sub_height)

    labels = {elem.relabel_into_subwall(label, i1, j1): wall.labels[label] for label in kept}
    branch_paths = {
        (a, b): wall.branch(elem.relabel_from_subwall(a, i1, j1), elem.relabel_from_subwall(b, i1, j1))
        for a, b in elem.wall_edges(sub_height)
    }
    anchor = (wall.anchor[0] + i1 - 1, wall.anchor[1] + j1 - 1)

    return Wall(wall.host, sub_height, labels, branch_paths, anchor)


def surround(wall: Wall, v: VertexId) -> t.FrozenSet[VertexId]:
    if v not in diagonal_vertices(wall):
        raise ParameterError("v", v, "is not a diagonal vertex of the wall")

    graph = wall.graph
    found = {v}
    frontier = [v]
    while frontier:
        current = frontier.pop()
        for u in graph.neighbours(current):
            if u not in found and graph.degree(u) == 2:
                found.add(u)
                frontier.append(u)

    return frozenset(found)


def check_wall(wall: Wall) -> Verdict:
    """
    Rebuilds the elementary wall by contracting branch interiors and compares it
    against the labeling, then checks the drawing invariants.
    """
    h = wall.height
    violations: t.List[Violation] = []

    expected_labels = set(elem.wall_labels(h))
    if set(wall.labels) != expected_labels:
        violations.append(
            Violation(
                WallCondition.LABELS,
                "labels differ from the elementary wall",
                tuple(sorted(set(wall.labels) ^ expected_labels)),
            )
        )
        return Verdict.of(violations)

    if len(set(wall.labels.values())) != len(wall.labels):
        violations.append(Violation(WallCondition.LABELS, "two labels share a host vertex"))

    if set(wall.branch_paths) != set(elem.wall_edges(h)):
        violations.append(
            Violation(
                WallCondition.LABELS,
                "branches differ from the elementary edges",
                tuple(sorted(set(wall.branch_paths) ^ set(elem.wall_edges(h)))),
            )
        )
        return Verdict.of(violations)

    branch_vertices = set(wall.labels.values())
    interior_owner: t.Dict[VertexId, LABEL_PAIR] = {}
    edge_owner: t.Dict[EdgeId, LABEL_PAIR] = {}
    for key in sorted(wall.branch_paths):
        path = wall.branch_paths[key]
        problem = path.incidence_error(wall.host)
        if problem or not path.is_path or path.length == 0:
            violations.append(
                Violation(WallCondition.BRANCH_WALK, problem or "branch is not a path", (key,))
            )
            continue

        if (path.start, path.end) != (wall.labels[key[0]], wall.labels[key[1]]):
            violations.append(Violation(WallCondition.BRANCH_ENDS, "branch ends off its labels", (key,)))

        for v in path.internal_vertices:
            if v in branch_vertices:
                violations.append(Violation(WallCondition.BRANCH_OVERLAP, "branch runs through a branch vertex", (key, v)))
            elif v in interior_owner:
                violations.append(Violation(WallCondition.BRANCH_OVERLAP, "branches share a vertex", (interior_owner[v], key, v)))
            interior_owner[v] = key

        for e in path.edges:
            if e in edge_owner:
                violations.append(Violation(WallCondition.BRANCH_OVERLAP, "branches share an edge", (edge_owner[e], key, e)))
            edge_owner[e] = key

    if violations:
        return Verdict.of(violations)

    for face in wall.bricks:
        if len(face.labels) != 6:
            violations.append(Violation(WallCondition.BRICK_LENGTH, "brick is not a hexagon", face.labels))

    if not perimeter(wall).is_cycle:
        violations.append(Violation(WallCondition.PERIMETER, "perimeter is not a cycle"))

    return Verdict.of(violations)


# Fins


@dataclass(frozen=True)
class Fin:
    root: VertexId
    path: Walk
    """From the root to the target"""

    @property
    def target(self) -> VertexId:
        return self.path.end


@dataclass(frozen=True)
class FinSystem:
    wall: Wall
    fins: t.Tuple[Fin, ...]

    @property
    def roots(self) -> t.Tuple[VertexId, ...]:
        return tuple(fin.root for fin in self.fins)

    def fin_at(self, root: VertexId) -> Fin:
        for fin in self.fins:
            if fin.root == root:
                return fin

        raise ParameterError("root", root, "carries no fin")

    def restricted(self, roots: t.Iterable[VertexId]) -> FinSystem:
        keep = set(roots)
        return FinSystem(self.wall, tuple(fin for fin in self.fins if fin.root in keep))

    def __len__(self) -> int:
        return len(self.fins)


def validate_fin(wall: Wall, fin: Fin) -> t.List[Violation]:
    """Checks one fin on its own; indices in witnesses are left to the caller"""
    problems: t.List[Violation] = []
    path = fin.path

    problem = path.incidence_error(wall.host)
    if problem or not path.is_path or path.length == 0:
        problems.append(Violation(FinCondition.NOT_A_PATH, problem or "fin is not a nontrivial path", (fin.root,)))
        return problems

    if path.start != fin.root:
        problems.append(Violation(FinCondition.WRONG_ENDS, "fin does not start at its root", (fin.root, path.start)))

    on_wall = sorted(set(path.edges) & wall.edge_set)
    if on_wall:
        problems.append(Violation(FinCondition.USES_WALL_EDGE, "fin uses wall edges", tuple(on_wall)))

    if fin.target not in wall.vertex_set:
        problems.append(Violation(FinCondition.TARGET_OFF_WALL, "fin target is not on the wall", (fin.target,)))

    return problems


def validate_fin_system(fs: FinSystem) -> Verdict:
    wall = fs.wall
    diagonal = set(diagonal_vertices(wall))
    violations: t.List[Violation] = []

    seen: t.Dict[VertexId, int] = {}
    for number, fin in enumerate(fs.fins, start=1):
        if fin.root not in diagonal:
            violations.append(Violation(FinCondition.ROOT_NOT_DIAGONAL, "root is not diagonal", (number, fin.root)))
        if fin.root in seen:
            violations.append(Violation(FinCondition.ROOTS_NOT_DISTINCT, "two fins share a root", (seen[fin.root], number)))
        seen.setdefault(fin.root, number)

        violations.extend(
            Violation(v.condition, v.message, (number, *v.witnesses)) for v in validate_fin(wall, fin)
        )

        if fin.root in diagonal and fin.target in surround(wall, fin.root):
            violations.append(Violation(FinCondition.TARGET_IN_SURROUND, "target lies in the root's surround", (number, fin.target)))

    for i, fin_i in enumerate(fs.fins, start=1):
        for j, fin_j in enumerate(fs.fins, start=1):
            if i != j and fin_i.root in fin_j.path.vertex_set:
                violations.append(Violation(FinCondition.ROOT_ON_OTHER_FIN, f"s_{i} lies on F_{j}", (i, j)))

    return Verdict.of(violations)


# Search


def find_wall(graph: MultiGraph, h: int, budget: int = 10**7) -> SearchResult[Wall]:
    """
    Places the elementary wall label by label in labeling order. Every label is
    either a fresh start or the far end of a path grown from an earlier
    neighbour; remaining earlier neighbours are joined by simple paths through
    unused vertices. Backtracks over both choices.
    """
    elem.check_height(h)

    labels = elem.wall_labels(h)
    edges = elem.wall_edges(h)
    needed_vertices = len(labels)
    needed_edges = len(edges)
    cycle_rank = graph.edge_count - graph.vertex_count + nx.number_connected_components(graph.to_networkx())
    if graph.vertex_count < needed_vertices or graph.edge_count < needed_edges or cycle_rank < h * h:
        return SearchResult(SearchStatus.NOT_FOUND, detail="graph too small or too acyclic")

    order = {label: idx for idx, label in enumerate(labels)}
    earlier = {
        label: [other for other in elem.neighbour_labels(h, label) if order[other] < order[label]]
        for label in labels
    }
    wall_degree = {label: len(elem.neighbour_labels(h, label)) for label in labels}

    simple = graph.simple_graph()
    counter = Budget(budget)
    placed: t.Dict[Label, VertexId] = {}
    paths: t.Dict[LABEL_PAIR, t.Tuple[VertexId, ...]] = {}
    used: t.Set[VertexId] = set()

    def open_graph(*ends: VertexId) -> nx.Graph:
        return simple.subgraph([v for v in simple if v not in used or v in ends])

    def candidates(label: Label) -> t.Iterator[VertexId]:
        for v in graph.vertices:
            if v not in used and len(graph.neighbours(v)) >= wall_degree[label]:
                yield v

    def join_rest(label: Label, rest: t.List[Label]) -> bool:
        if not rest:
            return place(order[label] + 1)

        other = rest[0]
        source, target = placed[other], placed[label]
        try:
            routes = nx.shortest_simple_paths(open_graph(source, target), source, target)
            for route in routes:
                counter.spend()
                _claim(route)
                paths[(other, label)] = tuple(route)
                if join_rest(label, rest[1:]):
                    return True
                del paths[(other, label)]
                _release(route)
        except nx.NetworkXNoPath:
            pass

        return False

    def _claim(route: t.Sequence[VertexId]) -> None:
        used.update(route)

    def _release(route: t.Sequence[VertexId]) -> None:
        used.difference_update(route[1:-1])

    def place(idx: int) -> bool:
        if idx == len(labels):
            return True

        label = labels[idx]
        before = earlier[label]
        for v in candidates(label):
            counter.spend()
            if before:
                first = placed[before[0]]
                view = open_graph(first, v)
                if not nx.has_path(view, first, v):
                    continue

                placed[label] = v
                used.add(v)
                for route in nx.shortest_simple_paths(view, first, v):
                    counter.spend()
                    _claim(route)
                    paths[(before[0], label)] = tuple(route)
                    if join_rest(label, before[1:]):
                        return True
                    del paths[(before[0], label)]
                    _release(route)

                used.discard(v)
                del placed[label]
            else:
                placed[label] = v
                used.add(v)
                if place(idx + 1):
                    return True
                used.discard(v)
                del placed[label]

        return False

    try:
        found = place(0)
    except BudgetExhausted:
        logger.debug("Wall search for height %s stopped after %s expansions", h, counter.spent)
        return SearchResult(SearchStatus.BUDGET_EXHAUSTED, expansions=counter.spent)

    if not found:
        return SearchResult(SearchStatus.NOT_FOUND, expansions=counter.spent)

    branch_paths: t.Dict[LABEL_PAIR, Walk] = {}
    for (a, b), route in paths.items():
        walk = _walk_along(graph, route)
        key = (min(a, b), max(a, b))
        branch_paths[key] = walk if key == (a, b) else walk.reversed()

    wall = Wall(graph, h, dict(placed), branch_paths)
    return SearchResult(SearchStatus.FOUND, wall, counter.spent)


def _walk_along(graph: MultiGraph, route: t.Sequence[VertexId]) -> Walk:
    edges = tuple(min(graph.edges_between(a, b)) for a, b in zip(route, route[1:]))
    return Walk(tuple(route), edges)


def wall_from_labels(
    host: MultiGraph,
    h: int,
    labels: t.Mapping[Label, VertexId],
    branch_paths: t.Mapping[LABEL_PAIR, Walk] | None = None,
) -> Wall:
    """
    A wall given by its branch vertices. Missing branches are filled in with
    the lowest-id edge when the two branch vertices are adjacent in `host`.
    """
    elem.check_height(h)
    paths: t.Dict[LABEL_PAIR, Walk] = dict(branch_paths or {})
    for a, b in elem.wall_edges(h):
        if (a, b) in paths:
            continue

        u, v = labels[a], labels[b]
        between = host.edges_between(u, v)
        if not between:
            raise ParameterError("labels", (a, b), "branch missing and the vertices are not adjacent")
        paths[(a, b)] = Walk((u, v), (min(between),))

    return Wall(host, h, dict(labels), paths)
