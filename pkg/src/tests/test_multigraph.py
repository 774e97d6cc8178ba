from __future__ import annotations

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st
from immersion_forge import MultiGraph, Walk, build, degree, delete_edges
from immersion_forge.exceptions import GraphConstructionError, ParameterError, UnknownEdge, UnknownVertex
from tests.conftest import two_vertex_multigraph


def test_build_keeps_parallel_edges_and_loops():
    graph = build(3, [(0, 1), (0, 1), (2, 2)])

    assert graph.vertex_count == 3
    assert graph.edge_count == 3
    assert graph.multiplicity(0, 1) == 2
    assert graph.is_loop(2)
    assert degree(graph, 2) == 2
    assert graph.degree_sum() == 2 * graph.edge_count


def test_build_rejects_endpoint_out_of_range():
    with pytest.raises(GraphConstructionError) as excinfo:
        build(2, [(0, 1), (1, 5)])

    assert excinfo.value.entry_index == 1
    assert excinfo.value.entry == (1, 5)


def test_delete_edges_keeps_ids_stable():
    graph = two_vertex_multigraph(3)

    smaller = delete_edges(graph, [1])

    assert smaller.edge_ids == (0, 2)
    assert graph.edge_count == 3  # untouched
    assert smaller.ends(2) == (0, 1)


def test_delete_unknown_edge():
    with pytest.raises(UnknownEdge):
        delete_edges(two_vertex_multigraph(1), [7])


def test_deleted_ids_are_never_reused():
    graph = two_vertex_multigraph(2).delete_edges([1])

    grown, added = graph.add_edge(0, 1)

    assert added == 2
    assert grown.edge_ids == (0, 2)


def test_add_edge_requires_vertices():
    with pytest.raises(UnknownVertex):
        two_vertex_multigraph(1).add_edge(0, 9)


def test_walk_from_alternating_sequence():
    walk = Walk.from_sequence([0, 5, 1, 6, 2])

    assert walk.vertices == (0, 1, 2)
    assert walk.edges == (5, 6)
    assert walk.to_sequence() == (0, 5, 1, 6, 2)
    assert str(walk) == "0 5 1 6 2"


def test_walk_even_sequence_is_rejected():
    with pytest.raises(ParameterError):
        Walk.from_sequence([0, 1])


def test_walk_simplified_cuts_closed_detours():
    walk = Walk((0, 1, 2, 1, 3), (10, 11, 12, 13))

    simple = walk.simplified()

    assert simple.vertices == (0, 1, 3)
    assert simple.edges == (10, 13)
    assert simple.is_path


def test_walk_validate_reports_wrong_incidence():
    graph = build(3, [(0, 1), (1, 2)])

    assert Walk((0, 1, 2), (0, 1)).validate(graph).ok
    verdict = Walk((0, 2), (0,)).validate(graph)

    assert not verdict
    assert verdict.conditions == {"walk"}


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=1, max_value=6).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12),
        )
    )
)
def test_handshake_holds_for_every_multigraph(case):
    n, edges = case
    graph = MultiGraph.build(n, edges)

    assert graph.degree_sum() == 2 * len(edges)
    for e in graph.edge_ids:
        a, b = graph.ends(e)
        assert e in graph.incident_edges(a)
        assert e in graph.incident_edges(b)


def test_networkx_view_counts_parallel_edges():
    nx_graph = two_vertex_multigraph(10).to_networkx()

    assert nx_graph.number_of_edges(0, 1) == 10
