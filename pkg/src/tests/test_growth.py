from __future__ import annotations

import pytest

from immersion_forge import is_subdivision_map, subdivided_wall, verify
from immersion_forge.exceptions import HypothesisViolated, ParameterError
from immersion_forge.pipeline import grow_rooted_wall, wall_immersion
from tests.conftest import LONG_JUMP_CONFIG, LONG_JUMP_FINS, LONG_JUMP_HEIGHT, make_fins, with_hub


def test_wall_immersion_is_a_subdivision_map():
    _, wall = subdivided_wall(4, 1)

    m = wall_immersion(wall)

    assert verify(m).ok
    assert is_subdivision_map(m)
    assert m.vertex_map[0] == wall.vertex_at((1, 1))


def test_existing_fins_are_reused():
    graph, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    result = grow_rooted_wall(graph, fs.wall, fs.roots, LONG_JUMP_CONFIG)

    assert result.complete
    assert result.steps == ()
    assert not result.failures
    assert len(result.fins) == len(LONG_JUMP_FINS)
    for s in result.rooted:
        fin = result.fins[s]
        assert fin.start == result.immersion.vertex_map[s]
        assert not fin.edge_set & result.immersion.used_edges


def test_growth_keeps_an_immersion():
    graph, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS, subdivide=1)

    result = grow_rooted_wall(graph, fs.wall, fs.roots, LONG_JUMP_CONFIG)

    assert verify(result.immersion).ok
    assert result.immersion.host == graph


def test_bare_wall_roots_are_not_four_connected():
    graph, wall = subdivided_wall(4)
    roots = [wall.vertex_at((2, 4)), wall.vertex_at((3, 6))]

    with pytest.raises(HypothesisViolated):
        grow_rooted_wall(graph, wall, roots)


@pytest.mark.parametrize("labels", [[(2, 4)], [(2, 4), (1, 1)]])
def test_growth_needs_diagonal_roots(labels):
    graph, wall = subdivided_wall(4)

    with pytest.raises(ParameterError):
        grow_rooted_wall(graph, wall, [wall.vertex_at(label) for label in labels])


def test_roots_rewired_through_a_shared_reservoir():
    base, wall = subdivided_wall(4)
    roots = [wall.vertex_at((2, 4)), wall.vertex_at((4, 8))]
    graph = with_hub(base, roots, multiplicity=2)

    result = grow_rooted_wall(graph, wall, roots, reuse_fins=False)

    assert len(result.steps) == 2
    assert all(step.ok for step in result.steps)
    assert result.complete
    assert verify(result.immersion).ok
    for s in result.rooted:
        fin = result.fins[s]
        assert fin.start == result.immersion.vertex_map[s]
        assert not fin.edge_set & result.immersion.used_edges
