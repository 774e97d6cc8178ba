from __future__ import annotations

import typing as t

import pytest

from hypothesis import given, settings
from hypothesis import strategies as st
from immersion_forge import (
    MultiGraph,
    TreeDecomposition,
    build,
    decomposition_from_elimination_order,
    exact_treewidth,
    grid,
    quad_star,
    verify_decomposition,
    width,
)
from immersion_forge.exceptions import ParameterError, RefusedTooLarge, UnknownTreeNode
from immersion_forge.treedecomp import DecompositionAxiom, elimination_width


def test_quad_star_has_tree_width_one():
    value, decomposition = exact_treewidth(quad_star(4))

    assert value == 1
    assert verify_decomposition(quad_star(4), decomposition).ok
    assert width(decomposition) == 1


@pytest.mark.parametrize("side, expected", [(2, 2), (3, 3)])
def test_grid_tree_width(side: int, expected: int):
    graph, _ = grid(side)

    value, decomposition = exact_treewidth(graph)

    assert value == expected
    assert width(decomposition) == expected
    assert verify_decomposition(graph, decomposition).ok


def test_exact_refuses_large_graphs():
    graph, _ = grid(4)

    with pytest.raises(RefusedTooLarge) as excinfo:
        exact_treewidth(graph, limit=12)

    assert excinfo.value.vertex_count == 16


def test_missing_edge_coverage_is_reported():
    graph = build(3, [(0, 1), (1, 2), (2, 0)])
    decomposition = TreeDecomposition(
        build(2, [(0, 1)]),
        {0: frozenset({0, 1}), 1: frozenset({1, 2})},
    )

    verdict = verify_decomposition(graph, decomposition)

    assert DecompositionAxiom.EDGE_COVERAGE in verdict.conditions


def test_broken_interpolation_is_reported():
    graph = build(3, [(0, 1), (1, 2)])
    decomposition = TreeDecomposition(
        build(3, [(0, 1), (1, 2)]),
        {0: frozenset({0, 1}), 1: frozenset({2}), 2: frozenset({1, 2})},
    )

    verdict = verify_decomposition(graph, decomposition)

    assert DecompositionAxiom.INTERPOLATION in verdict.conditions


def test_forest_is_not_a_tree():
    graph = build(2, [(0, 1)])
    decomposition = TreeDecomposition(build(2, []), {0: frozenset({0, 1}), 1: frozenset({1})})

    assert DecompositionAxiom.TREE in verify_decomposition(graph, decomposition).conditions


def test_bag_on_unknown_node():
    graph = build(1, [])
    decomposition = TreeDecomposition(build(1, []), {0: frozenset({0}), 4: frozenset()})

    with pytest.raises(UnknownTreeNode):
        verify_decomposition(graph, decomposition)


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=1, max_value=7).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=14),
            st.permutations(range(n)),
        )
    )
)
def test_every_elimination_order_gives_a_valid_decomposition(case):
    n, edges, order = case
    graph = MultiGraph.build(n, edges)

    decomposition = decomposition_from_elimination_order(graph, order)
    exact, _ = exact_treewidth(graph)

    assert verify_decomposition(graph, decomposition).ok
    assert width(decomposition) == elimination_width(graph, order) >= exact


@pytest.mark.parametrize("order, expected", [([0, 1, 2, 3], 2), ([0, 2, 1, 3], 2)])
def test_elimination_width_of_a_square(order, expected):
    square = build(4, [(0, 1), (1, 2), (2, 3), (3, 0)])

    assert elimination_width(square, order) == expected


def test_elimination_order_must_cover_the_graph():
    with pytest.raises(ParameterError):
        elimination_width(build(3, [(0, 1)]), [0, 1])


PATH_TREE_BAGS: t.Final = {0: frozenset({0, 1}), 1: frozenset({1, 2}), 2: frozenset({2, 3})}


def test_path_decomposition_of_a_path_is_valid():
    graph = build(4, [(0, 1), (1, 2), (2, 3)])

    assert verify_decomposition(graph, TreeDecomposition(build(3, [(0, 1), (1, 2)]), PATH_TREE_BAGS)).ok


@pytest.mark.parametrize(
    "graph, tree, bags, axiom",
    [
        (
            build(4, [(0, 1), (1, 2), (2, 3)]),
            build(3, [(0, 1), (1, 2), (2, 0)]),
            PATH_TREE_BAGS,
            DecompositionAxiom.TREE,
        ),
        (
            build(4, [(0, 1), (1, 2), (2, 3)]),
            build(3, [(0, 1), (1, 2)]),
            {**PATH_TREE_BAGS, 0: frozenset({0, 1, 99})},
            DecompositionAxiom.BAG_SUBSET,
        ),
        (
            build(5, [(0, 1), (1, 2), (2, 3)]),
            build(3, [(0, 1), (1, 2)]),
            PATH_TREE_BAGS,
            DecompositionAxiom.VERTEX_COVERAGE,
        ),
        (
            build(4, [(0, 1), (1, 2), (2, 3), (0, 2)]),
            build(3, [(0, 1), (1, 2)]),
            PATH_TREE_BAGS,
            DecompositionAxiom.EDGE_COVERAGE,
        ),
        (
            build(4, [(0, 1), (1, 2), (2, 3)]),
            build(3, [(0, 1), (1, 2)]),
            {**PATH_TREE_BAGS, 2: frozenset({0, 2, 3})},
            DecompositionAxiom.INTERPOLATION,
        ),
    ],
)
def test_each_broken_axiom_is_reported_alone(graph, tree, bags, axiom):
    verdict = verify_decomposition(graph, TreeDecomposition(tree, bags))

    assert verdict.conditions == {axiom}


def _cycle(n: int) -> MultiGraph:
    return build(n, [(i, (i + 1) % n) for i in range(n)])


def _complete(n: int) -> MultiGraph:
    return build(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


@pytest.mark.parametrize(
    "graph, expected",
    [
        (build(1, []), 0),
        (build(6, [(i, i + 1) for i in range(5)]), 1),
        (build(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]), 1),
        *[(_cycle(n), 2) for n in range(3, 8)],
        *[(_complete(n), n - 1) for n in range(2, 8)],
    ],
)
def test_exact_tree_width_of_known_families(graph: MultiGraph, expected: int):
    value, decomposition = exact_treewidth(graph)

    assert value == expected
    assert width(decomposition) == expected
    assert verify_decomposition(graph, decomposition).ok


@settings(max_examples=30, deadline=None)
@given(
    st.integers(min_value=1, max_value=7).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=12),
            st.lists(st.integers(0, n - 1), max_size=4),
        )
    )
)
def test_parallel_edges_and_loops_leave_tree_width_alone(case):
    n, edges, looped = case
    graph = build(n, edges)
    noisy = build(n, [*edges, *edges, *((v, v) for v in looped)])

    value, _ = exact_treewidth(graph)
    noisy_value, decomposition = exact_treewidth(noisy)

    assert noisy_value == value
    assert verify_decomposition(noisy, decomposition).ok
