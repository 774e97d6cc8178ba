from __future__ import annotations

import itertools

import networkx as nx
import pytest

from hypothesis import given, settings
from hypothesis import strategies as st
from immersion_forge import (
    EdgeDisjointBundle,
    Infeasible,
    Walk,
    augment_with_prescribed_ends,
    build,
    disjoint_paths_to_set,
    edge_connectivity,
    elementary_wall,
    minimum_edge_cut,
    pairwise_k_connected,
    quad_star,
)
from immersion_forge.exceptions import ParameterError
from tests.conftest import two_vertex_multigraph


@pytest.fixture()
def spider():
    """Source 0 with legs 0-1, 0-5-2, 0-6-3, 0-7-4 and a rung 5-6"""
    return build(8, [(0, 1), (0, 5), (5, 2), (0, 6), (6, 3), (0, 7), (7, 4), (5, 6)])


def test_parallel_edges_count_towards_connectivity():
    assert edge_connectivity(two_vertex_multigraph(10), 0, 1) == 10
    assert edge_connectivity(quad_star(4), 1, 2) == 4


def test_minimum_cut_of_a_leaf():
    star = quad_star(3)

    cut = minimum_edge_cut(star, 1, 2)

    assert len(cut) == 4
    assert all(1 in star.ends(e) or 2 in star.ends(e) for e in cut)


def test_connectivity_needs_two_vertices():
    with pytest.raises(ParameterError):
        edge_connectivity(quad_star(1), 0, 0)


def test_pairwise_failure_names_the_pair():
    graph = build(4, [(0, 1)] * 4 + [(1, 2)] * 4 + [(2, 3)] * 2)

    verdict = pairwise_k_connected(graph, [0, 1, 2, 3], 4)

    assert not verdict
    assert verdict.failing_pair == (0, 3)
    assert verdict.value == 2
    assert pairwise_k_connected(graph, [0, 1, 2], 4)


def test_bundle_into_a_set(spider):
    bundle = disjoint_paths_to_set(spider, 0, {1, 2, 3, 4}, 4)

    assert isinstance(bundle, EdgeDisjointBundle)
    assert sorted(bundle.targets) == [1, 2, 3, 4]
    assert bundle.validate(spider).ok


def test_bundle_reports_a_cut_when_too_few_paths():
    path = build(3, [(0, 1), (1, 2)])

    result = disjoint_paths_to_set(path, 0, {2}, 2)

    assert isinstance(result, Infeasible)
    assert not result
    assert result.flow_value == 1
    assert result.cut == (0,)


def test_forbidden_interior_vertices_are_skipped():
    square = build(4, [(0, 1), (1, 2), (0, 3), (3, 2)])

    result = disjoint_paths_to_set(square, 0, {2}, 2, forbidden_interior={1})

    assert isinstance(result, Infeasible)
    assert result.flow_value == 1


def test_source_cannot_be_a_target(spider):
    with pytest.raises(ParameterError):
        disjoint_paths_to_set(spider, 0, {0, 1}, 1)


def test_prescribed_ends_are_kept(spider):
    seeds = [
        Walk((0, 1), (0,)),
        Walk((0, 5, 2), (1, 2)),
        Walk((0, 6, 3), (3, 4)),
    ]

    bundle = augment_with_prescribed_ends(spider, 0, {1, 2, 3, 4}, [1, 2, 3], seeds)

    assert isinstance(bundle, EdgeDisjointBundle)
    assert bundle.targets[:3] == (1, 2, 3)
    assert bundle.targets[3] == 4
    assert bundle.validate(spider).ok


def test_prescribed_ends_survive_rerouting():
    # the fourth target hangs off 5, reachable only by cancelling the seed edge 5-6
    graph = build(8, [(0, 5), (5, 6), (6, 1), (5, 4), (0, 7), (7, 6), (0, 2), (0, 3)])
    seeds = [
        Walk((0, 5, 6, 1), (0, 1, 2)),
        Walk((0, 2), (6,)),
        Walk((0, 3), (7,)),
    ]

    bundle = augment_with_prescribed_ends(graph, 0, {1, 2, 3, 4}, [1, 2, 3], seeds)

    assert isinstance(bundle, EdgeDisjointBundle)
    assert bundle.targets == (1, 2, 3, 4)
    assert 1 not in bundle.paths[0].edges
    assert bundle.validate(graph).ok


def test_prescribed_seeds_must_end_right(spider):
    seeds = [
        Walk((0, 5, 2), (1, 2)),
        Walk((0, 1), (0,)),
        Walk((0, 6, 3), (3, 4)),
    ]

    with pytest.raises(ParameterError):
        augment_with_prescribed_ends(spider, 0, {1, 2, 3, 4}, [1, 2, 3], seeds)


def test_wall_vertex_has_three_ways_out():
    graph, wall = elementary_wall(2)
    root = wall.vertex_at((2, 4))
    rest = set(wall.labels.values()) - {root} - set(graph.neighbours(root))

    bundle = disjoint_paths_to_set(graph, root, rest, 3)
    blocked = disjoint_paths_to_set(graph, root, rest, 4)

    assert isinstance(bundle, EdgeDisjointBundle)
    assert isinstance(blocked, Infeasible)
    assert blocked.flow_value == 3


def _smallest_cut_by_enumeration(graph, u: int, v: int) -> int:
    others = [w for w in graph.vertices if w not in (u, v)]
    best = graph.edge_count
    for size in range(len(others) + 1):
        for extra in itertools.combinations(others, size):
            side = {u, *extra}
            crossing = sum(1 for a, b in graph.edges.values() if (a in side) != (b in side))
            best = min(best, crossing)

    return best


@settings(max_examples=60, deadline=None)
@given(
    st.integers(min_value=2, max_value=6).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12),
            st.permutations(range(n)),
        )
    )
)
def test_connectivity_matches_enumerated_cuts(case):
    n, edges, order = case
    graph = build(n, edges)
    u, v = order[0], order[1]

    value = edge_connectivity(graph, u, v)
    cut = minimum_edge_cut(graph, u, v)

    assert value == _smallest_cut_by_enumeration(graph, u, v)
    assert len(cut) == value
    assert not nx.has_path(graph.delete_edges(cut).to_networkx(), u, v)
