"""Finite multigraphs with loops, parallel edges and stable edge ids"""
from __future__ import annotations

import typing as t
from dataclasses import dataclass
from types import MappingProxyType

import networkx as nx

from ._models import Verdict, Violation
from ._types import EdgeId, VertexId
from .exceptions import GraphConstructionError, ParameterError, UnknownEdge, UnknownVertex

EDGE_ENDS = t.Tuple[VertexId, VertexId]


@dataclass(frozen=True)
class Walk:
    """
    Alternating sequence `v0, e1, v1, ..., ek, vk`. Stored as the two
    sequences; `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    """

    vertices: t.Tuple[VertexId, ...]
    edges: t.Tuple[EdgeId, ...] = ()

    def __post_init__(self):
        if len(self.vertices) != len(self.edges) + 1:
            raise ParameterError(
                "walk",
                (self.vertices, self.edges),
                "a walk needs exactly one more vertex than edges",
            )

    @classmethod
    def trivial(cls, vertex: VertexId) -> Walk:
        return cls((vertex,))

    @classmethod
    def from_sequence(cls, sequence: t.Sequence[int]) -> Walk:
        if len(sequence) % 2 == 0:
            raise ParameterError("walk", tuple(sequence), "alternating sequence must have odd length")

        return cls(tuple(sequence[0::2]), tuple(sequence[1::2]))

    def to_sequence(self) -> t.Tuple[int, ...]:
        seq: t.List[int] = [self.vertices[0]]
        for edge, vertex in zip(self.edges, self.vertices[1:]):
            seq.extend((edge, vertex))

        return tuple(seq)

    @property
    def start(self) -> VertexId:
        return self.vertices[0]

    @property
    def end(self) -> VertexId:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.edges)

    @property
    def internal_vertices(self) -> t.Tuple[VertexId, ...]:
        return self.vertices[1:-1]

    @property
    def vertex_set(self) -> t.FrozenSet[VertexId]:
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> t.FrozenSet[EdgeId]:
        return frozenset(self.edges)

    @property
    def is_closed(self) -> bool:
        return self.start == self.end

    @property
    def is_path(self) -> bool:
        return len(set(self.vertices)) == len(self.vertices)

    @property
    def is_cycle(self) -> bool:
        return (
            self.length >= 1
            and self.is_closed
            and len(set(self.vertices[:-1])) == len(self.vertices) - 1
            and len(set(self.edges)) == len(self.edges)
        )

    def reversed(self) -> Walk:
        return Walk(self.vertices[::-1], self.edges[::-1])

    def oriented_from(self, vertex: VertexId) -> Walk:
        if self.start == vertex:
            return self
        if self.end == vertex:
            return self.reversed()

        raise ParameterError("vertex", vertex, f"is not an end of the walk {self.to_sequence()}")

    def concat(self, other: Walk) -> Walk:
        if self.end != other.start:
            raise ParameterError(
                "walk", other.to_sequence(), f"does not start where {self.to_sequence()} ends"
            )

        return Walk(self.vertices + other.vertices[1:], self.edges + other.edges)

    def prefix(self, index: int) -> Walk:
        """The sub-walk from the start up to `vertices[index]`"""
        return Walk(self.vertices[: index + 1], self.edges[:index])

    def suffix(self, index: int) -> Walk:
        return Walk(self.vertices[index:], self.edges[index:])

    def simplified(self) -> Walk:
        """
        Cuts every closed sub-walk out, leaving a path with the same ends
        whose edges are a subset of ours.
        """
        vertices: t.List[VertexId] = [self.vertices[0]]
        edges: t.List[EdgeId] = []
        position = {self.vertices[0]: 0}

        for edge, vertex in zip(self.edges, self.vertices[1:]):
            if vertex in position:
                cut = position[vertex]
                for dropped in vertices[cut + 1 :]:
                    del position[dropped]
                del vertices[cut + 1 :]
                del edges[cut:]
                continue

            edges.append(edge)
            vertices.append(vertex)
            position[vertex] = len(vertices) - 1

        return Walk(tuple(vertices), tuple(edges))

    def incidence_error(self, graph: MultiGraph) -> str | None:
        """First reason this walk does not live in `graph`, if any"""
        for vertex in self.vertices:
            if not graph.has_vertex(vertex):
                return f"vertex {vertex} is not in the graph"

        for idx, edge in enumerate(self.edges):
            if not graph.has_edge(edge):
                return f"edge {edge} is not in the graph"

            a, b = graph.ends(edge)
            u, v = self.vertices[idx], self.vertices[idx + 1]
            if {a, b} != {u, v}:
                return f"edge {edge} joins {a},{b} and not {u},{v}"

        return None

    def validate(self, graph: MultiGraph) -> Verdict:
        problem = self.incidence_error(graph)
        if problem:
            return Verdict.of([Violation("walk", problem, (self.start,))])

        return Verdict()

    def __str__(self) -> str:
        return " ".join(str(x) for x in self.to_sequence())


class MultiGraph:
    """
    Immutable multigraph. Vertex ids are small nonnegative integers; every edge
    carries its own id, never reused after deletion (`next_edge_id` only grows).
    """

    __slots__ = ("_vertices", "_vertex_set", "_edges", "_next_edge_id", "_incidence")

    def __init__(
        self,
        vertices: t.Iterable[VertexId],
        edges: t.Mapping[EdgeId, EDGE_ENDS] | None = None,
        next_edge_id: int = 0,
    ) -> None:
        self._vertices: t.Tuple[VertexId, ...] = tuple(sorted(set(vertices)))
        self._vertex_set = frozenset(self._vertices)
        edges = edges or {}
        self._edges: t.Dict[EdgeId, EDGE_ENDS] = {
            eid: (min(ends), max(ends)) for eid, ends in sorted(edges.items())
        }
        self._next_edge_id = max(next_edge_id, max(self._edges, default=-1) + 1)

        self._incidence: t.Dict[VertexId, t.List[EdgeId]] = {v: [] for v in self._vertices}
        for eid, (a, b) in self._edges.items():
            for end in (a, b):
                if end not in self._vertex_set:
                    raise UnknownVertex(end)

            self._incidence[a].append(eid)
            if a != b:
                self._incidence[b].append(eid)

    @classmethod
    def build(
        cls, vertex_count: int, edge_list: t.Sequence[t.Tuple[int, int]]
    ) -> MultiGraph:
        if vertex_count < 0:
            raise ParameterError("vertex_count", vertex_count, "must be nonnegative")

        for idx, (u, v) in enumerate(edge_list):
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise GraphConstructionError(idx, (u, v), vertex_count)

        return cls(
            range(vertex_count),
            {eid: (u, v) for eid, (u, v) in enumerate(edge_list)},
        )

    # Queries

    @property
    def vertices(self) -> t.Tuple[VertexId, ...]:
        return self._vertices

    @property
    def edges(self) -> t.Mapping[EdgeId, EDGE_ENDS]:
        return MappingProxyType(self._edges)

    @property
    def edge_ids(self) -> t.Tuple[EdgeId, ...]:
        return tuple(self._edges)

    @property
    def vertex_count(self) -> int:
        return len(self._vertices)

    @property
    def edge_count(self) -> int:
        return len(self._edges)

    @property
    def next_edge_id(self) -> int:
        return self._next_edge_id

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._vertex_set

    def has_edge(self, e: EdgeId) -> bool:
        return e in self._edges

    def _require_vertex(self, v: VertexId) -> None:
        if v not in self._vertex_set:
            raise UnknownVertex(v)

    def ends(self, e: EdgeId) -> EDGE_ENDS:
        try:
            return self._edges[e]
        except KeyError:
            raise UnknownEdge(e) from None

    def is_loop(self, e: EdgeId) -> bool:
        a, b = self.ends(e)
        return a == b

    def other_end(self, e: EdgeId, v: VertexId) -> VertexId:
        a, b = self.ends(e)
        if v == a:
            return b
        if v == b:
            return a

        raise ParameterError("edge", e, f"is not incident with vertex {v}")

    def incident_edges(self, v: VertexId) -> t.Tuple[EdgeId, ...]:
        self._require_vertex(v)
        return tuple(self._incidence[v])

    def degree(self, v: VertexId) -> int:
        self._require_vertex(v)
        return sum(2 if self._edges[e][0] == self._edges[e][1] else 1 for e in self._incidence[v])

    def neighbours(self, v: VertexId) -> t.Tuple[VertexId, ...]:
        """Distinct adjacent vertices other than `v` itself"""
        self._require_vertex(v)
        return tuple(sorted({self.other_end(e, v) for e in self._incidence[v]} - {v}))

    def edges_between(self, u: VertexId, v: VertexId) -> t.Tuple[EdgeId, ...]:
        self._require_vertex(u)
        self._require_vertex(v)
        key = (min(u, v), max(u, v))
        return tuple(e for e in self._incidence[u] if self._edges[e] == key)

    def multiplicity(self, u: VertexId, v: VertexId) -> int:
        return len(self.edges_between(u, v))

    def degree_sum(self) -> int:
        return sum(self.degree(v) for v in self._vertices)

    # Rewrites, all returning new values

    def delete_edges(self, ids: t.Iterable[EdgeId]) -> MultiGraph:
        doomed = set(ids)
        for e in doomed:
            if e not in self._edges:
                raise UnknownEdge(e)

        if not doomed:
            return self

        kept = {e: ends for e, ends in self._edges.items() if e not in doomed}
        return MultiGraph(self._vertices, kept, self._next_edge_id)

    def delete_vertices(self, vertices: t.Iterable[VertexId]) -> MultiGraph:
        doomed = set(vertices)
        kept = {
            e: (a, b) for e, (a, b) in self._edges.items() if a not in doomed and b not in doomed
        }
        return MultiGraph(
            (v for v in self._vertices if v not in doomed), kept, self._next_edge_id
        )

    def add_edge(self, u: VertexId, v: VertexId) -> t.Tuple[MultiGraph, EdgeId]:
        self._require_vertex(u)
        self._require_vertex(v)

        eid = self._next_edge_id
        edges = dict(self._edges)
        edges[eid] = (u, v)
        return MultiGraph(self._vertices, edges, eid + 1), eid

    def add_vertices(self, count: int) -> t.Tuple[MultiGraph, t.Tuple[VertexId, ...]]:
        first = max(self._vertices, default=-1) + 1
        fresh = tuple(range(first, first + count))
        return MultiGraph(self._vertices + fresh, self._edges, self._next_edge_id), fresh

    def edge_subgraph(self, ids: t.Iterable[EdgeId]) -> MultiGraph:
        """Subgraph formed by the given edges and their ends"""
        chosen = {e: self.ends(e) for e in ids}
        vertices = {v for ends in chosen.values() for v in ends}
        return MultiGraph(vertices, chosen, self._next_edge_id)

    # Views

    def to_networkx(self) -> nx.MultiGraph:
        graph = nx.MultiGraph()
        graph.add_nodes_from(self._vertices)
        for e, (a, b) in self._edges.items():
            graph.add_edge(a, b, key=e)

        return graph

    def simple_graph(self) -> nx.Graph:
        """Loops dropped, parallel edges collapsed"""
        graph = nx.Graph()
        graph.add_nodes_from(self._vertices)
        graph.add_edges_from((a, b) for a, b in self._edges.values() if a != b)
        return graph

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiGraph):
            return NotImplemented

        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._vertices, tuple(self._edges.items())))

    def __repr__(self) -> str:
        return f"MultiGraph(|V|={self.vertex_count}, |E|={self.edge_count})"


def build(vertex_count: int, edge_list: t.Sequence[t.Tuple[int, int]]) -> MultiGraph:
    return MultiGraph.build(vertex_count, edge_list)


def degree(graph: MultiGraph, v: VertexId) -> int:
    return graph.degree(v)


def delete_edges(graph: MultiGraph, ids: t.Iterable[EdgeId]) -> MultiGraph:
    return graph.delete_edges(ids)
