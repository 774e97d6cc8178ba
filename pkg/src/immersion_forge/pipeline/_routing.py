"""
Vertex-disjoint routing of terminal pairs.

Every demand is routed in turn over `shortest_simple_paths`, which
enumerates all simple paths, so running out of candidates proves
infeasibility.
"""
from __future__ import annotations

import logging
import typing as t

import networkx as nx

from .._models import Budget, BudgetExhausted, SearchResult, SearchStatus
from .._types import VertexId
from ..exceptions import ParameterError
from ..multigraph import MultiGraph, Walk
from ..wallgeom import Wall

logger = logging.getLogger(__name__)

DEMAND = t.Tuple[VertexId, VertexId]


def _check_demands(
    graph: MultiGraph, demands: t.Sequence[DEMAND], forbidden: t.AbstractSet[VertexId]
) -> None:
    seen: t.Dict[VertexId, int] = {}
    for idx, (a, b) in enumerate(demands):
        for x in {a, b}:
            if not graph.has_vertex(x):
                raise ParameterError("demands", (a, b), f"terminal {x} is not in the routing graph")
            if x in forbidden:
                raise ParameterError("demands", (a, b), f"terminal {x} is forbidden")
            if x in seen:
                raise ParameterError("demands", (a, b), f"terminal {x} already belongs to demand #{seen[x]}")
            seen[x] = idx


def walk_along(graph: MultiGraph, route: t.Sequence[VertexId]) -> Walk:
    """Turns a vertex route into a walk, taking the lowest edge id at every step"""
    edges = tuple(min(graph.edges_between(a, b)) for a, b in zip(route, route[1:]))
    return Walk(tuple(route), edges)


def route_disjoint_paths_in(
    graph: MultiGraph,
    demands: t.Sequence[DEMAND],
    forbidden: t.Iterable[VertexId] = (),
    budget: Budget | int = 10**7,
) -> SearchResult[t.Tuple[Walk, ...]]:
    """
    Pairwise vertex-disjoint paths, one per demand and in demand order, inside
    `graph` minus `forbidden`. A demand `(a, a)` is the trivial path at `a`.
    Each candidate path tried spends one unit of budget.
    """
    blocked = frozenset(forbidden)
    _check_demands(graph, demands, blocked)
    counter = budget if isinstance(budget, Budget) else Budget(budget)

    simple = graph.simple_graph()
    simple.remove_nodes_from(blocked)
    terminals = {x: idx for idx, (a, b) in enumerate(demands) for x in (a, b)}

    def distance(idx: int) -> int:
        a, b = demands[idx]
        try:
            return nx.shortest_path_length(simple, a, b)
        except nx.NetworkXNoPath:
            return -1

    lengths = {idx: distance(idx) for idx in range(len(demands))}
    if any(value < 0 for value in lengths.values()):
        return SearchResult(SearchStatus.NOT_FOUND, detail="a demand is disconnected on its own")

    order = sorted(range(len(demands)), key=lambda idx: (lengths[idx], idx))
    routes: t.Dict[int, t.List[VertexId]] = {}
    used: t.Set[VertexId] = set()

    def view(idx: int) -> nx.Graph:
        a, b = demands[idx]
        hidden = used | {x for x, owner in terminals.items() if owner != idx}
        return simple.subgraph([v for v in simple if v not in hidden or v in (a, b)])

    def still_open(rest: t.Sequence[int]) -> bool:
        for idx in rest:
            a, b = demands[idx]
            if a != b and not nx.has_path(view(idx), a, b):
                return False

        return True

    def route(k: int) -> bool:
        if k == len(order):
            return True

        idx = order[k]
        a, b = demands[idx]
        if a == b:
            routes[idx] = [a]
            used.add(a)
            if route(k + 1):
                return True
            used.discard(a)
            del routes[idx]
            return False

        try:
            for candidate in nx.shortest_simple_paths(view(idx), a, b):
                counter.spend()
                routes[idx] = candidate
                used.update(candidate)
                if still_open(order[k + 1 :]) and route(k + 1):
                    return True
                used.difference_update(candidate)
                del routes[idx]
        except nx.NetworkXNoPath:
            pass

        return False

    try:
        found = route(0)
    except BudgetExhausted:
        logger.debug("Routing %s demands stopped after %s candidates", len(demands), counter.spent)
        return SearchResult(SearchStatus.BUDGET_EXHAUSTED, expansions=counter.spent)

    if not found:
        return SearchResult(SearchStatus.NOT_FOUND, expansions=counter.spent)

    paths = tuple(walk_along(graph, routes[idx]) for idx in range(len(demands)))
    return SearchResult(SearchStatus.FOUND, paths, counter.spent)


def route_disjoint_paths(
    wall: Wall,
    demands: t.Sequence[DEMAND],
    forbidden: t.Iterable[VertexId] = (),
    budget: Budget | int = 10**7,
) -> SearchResult[t.Tuple[Walk, ...]]:
    """`route_disjoint_paths_in` over the wall itself"""
    for a, b in demands:
        for x in (a, b):
            if x not in wall.vertex_set:
                raise ParameterError("demands", (a, b), f"terminal {x} is not a wall vertex")

    return route_disjoint_paths_in(wall.graph, demands, forbidden, budget)
