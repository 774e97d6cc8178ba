from __future__ import annotations

import networkx as nx
import pytest

from hypothesis import given, settings
from hypothesis import strategies as st
from immersion_forge import build, grid, subdivided_wall
from immersion_forge.exceptions import ParameterError
from immersion_forge.pipeline import route_disjoint_paths, route_disjoint_paths_in


@pytest.fixture()
def square():
    graph, _ = grid(3)
    return graph


def test_routes_follow_demand_order(square):
    result = route_disjoint_paths_in(square, [(0, 2), (6, 8)])

    assert result.found
    top, bottom = result.unwrap()
    assert top.vertices == (0, 1, 2)
    assert bottom.vertices == (6, 7, 8)
    assert not top.vertex_set & bottom.vertex_set


def test_crossing_corners_cannot_be_linked(square):
    result = route_disjoint_paths_in(square, [(0, 8), (2, 6)])

    assert not result.found
    assert not result.exhausted


def test_trivial_demand(square):
    result = route_disjoint_paths_in(square, [(4, 4), (0, 2)])

    assert result.unwrap()[0].length == 0


def test_forbidden_vertices_are_avoided(square):
    result = route_disjoint_paths_in(square, [(0, 2)], forbidden={1})

    assert 1 not in result.unwrap()[0].vertex_set
    assert result.unwrap()[0].length == 4


@pytest.mark.parametrize(
    "demands, forbidden",
    [
        ([(0, 2), (2, 6)], ()),
        ([(0, 2)], (2,)),
        ([(0, 99)], ()),
    ],
)
def test_bad_terminals(square, demands, forbidden):
    with pytest.raises(ParameterError):
        route_disjoint_paths_in(square, demands, forbidden)


def test_budget_stops_the_search(square):
    result = route_disjoint_paths_in(square, [(0, 2), (6, 8)], forbidden={1}, budget=1)

    assert result.exhausted
    assert not result.found


def test_wall_routing_needs_wall_terminals():
    _, wall = subdivided_wall(2, 1)

    with pytest.raises(ParameterError):
        route_disjoint_paths(wall, [(wall.vertex_at((1, 1)), 999)])


def test_wall_routing_stays_on_the_wall():
    _, wall = subdivided_wall(2, 1)
    a, b = wall.vertex_at((1, 1)), wall.vertex_at((3, 6))

    result = route_disjoint_paths(wall, [(a, b)])

    assert result.found
    assert result.unwrap()[0].vertex_set <= wall.vertex_set


def _linkable_by_enumeration(graph, demands) -> bool:
    simple = graph.simple_graph()
    (a, b), (c, d) = demands
    firsts = [set(p) for p in nx.all_simple_paths(simple, a, b)]
    seconds = [set(p) for p in nx.all_simple_paths(simple, c, d)]
    return any(not first & second for first in firsts for second in seconds)


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=4, max_value=6).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=10),
            st.permutations(range(n)),
        )
    )
)
def test_two_demands_agree_with_enumeration(case):
    n, edges, order = case
    graph = build(n, edges)
    demands = [(order[0], order[1]), (order[2], order[3])]

    result = route_disjoint_paths_in(graph, demands)

    assert not result.exhausted
    assert result.found is _linkable_by_enumeration(graph, demands)
    if result.found:
        first, second = result.unwrap()
        assert (first.vertices[0], first.vertices[-1]) == demands[0]
        assert (second.vertices[0], second.vertices[-1]) == demands[1]
        assert not first.vertex_set & second.vertex_set
        for walk in (first, second):
            assert all(set(graph.ends(e)) == {x, y} for e, x, y in zip(walk.edges, walk.vertices, walk.vertices[1:]))
