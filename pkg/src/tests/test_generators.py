from __future__ import annotations

import pytest

from immersion_forge import (
    FinAttachment,
    ImmersionMap,
    check_wall,
    elementary_wall,
    grid,
    is_subdivision_map,
    quad_star,
    subdivide,
    subdivided_wall,
    validate_fin_system,
    verify,
)
from immersion_forge.exceptions import GenerationError, ParameterError
from tests.conftest import (
    HUB_FINS,
    HUB_HEIGHT,
    LONG_JUMP_FINS,
    LONG_JUMP_HEIGHT,
    WALL_H2_EDGES,
    WALL_H2_VERTICES,
    make_fins,
)


def test_grid_numbering_and_edges():
    graph, labeling = grid(3)

    assert graph.vertex_count == 9
    assert graph.edge_count == 12
    assert labeling.vertex(1, 1) == 0
    assert labeling.vertex(2, 3) == 5
    assert labeling.label_of(8) == (3, 3)
    assert graph.multiplicity(labeling.vertex(2, 2), labeling.vertex(2, 3)) == 1


def test_grid_needs_side_two():
    with pytest.raises(ParameterError):
        grid(1)


def test_elementary_wall_height_two():
    graph, wall = elementary_wall(2)

    assert graph.vertex_count == WALL_H2_VERTICES
    assert graph.edge_count == WALL_H2_EDGES
    assert check_wall(wall).ok
    assert (1, 6) not in wall.labels
    assert (3, 1) not in wall.labels


@pytest.mark.parametrize("height", [1, 3, 0])
def test_odd_or_tiny_heights_are_rejected(height: int):
    with pytest.raises(ParameterError):
        elementary_wall(height)


def test_subdivision_is_an_immersion_and_a_subdivision():
    base, _ = elementary_wall(2)

    graph, record = subdivide(base, {0: 2, 5: 1})
    m = ImmersionMap.from_subdivision(record)

    assert graph.vertex_count == base.vertex_count + 3
    assert graph.edge_count == base.edge_count + 3
    assert verify(m).ok
    assert is_subdivision_map(m)
    assert record.edge_paths[0].length == 3


def test_subdivided_wall_stays_a_wall():
    graph, wall = subdivided_wall(2, 2)

    assert check_wall(wall).ok
    assert graph.edge_count == 3 * WALL_H2_EDGES
    assert all(path.length == 3 for path in wall.branch_paths.values())


def test_quad_star_degrees():
    star = quad_star(4)

    assert star.degree(0) == 16
    assert all(star.degree(leaf) == 4 for leaf in range(1, 5))
    assert star.multiplicity(0, 3) == 4


def test_wall_with_fins_builds_a_fin_system():
    graph, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    assert len(fs) == len(LONG_JUMP_FINS)
    assert validate_fin_system(fs).ok
    assert fs.fin_at(fs.wall.vertex_at((4, 8))).target == fs.wall.vertex_at((1, 12))
    assert graph.edge_count == fs.wall.graph.edge_count + 2 * len(LONG_JUMP_FINS)


def test_hub_fins_share_one_vertex():
    _, fs = make_fins(HUB_HEIGHT, HUB_FINS)

    interiors = [set(fin.path.internal_vertices) for fin in fs.fins]
    shared = set.intersection(*interiors)

    assert len(shared) == 1
    assert validate_fin_system(fs).ok


def test_far_targets_are_reproducible_per_seed():
    attachments = [(2, FinAttachment("far")), (4, FinAttachment("far"))]

    _, first = make_fins(4, attachments, seed=3)
    _, again = make_fins(4, attachments, seed=3)

    assert [fin.target for fin in first.fins] == [fin.target for fin in again.fins]


def test_fin_target_on_another_root_is_rejected():
    with pytest.raises(GenerationError):
        make_fins(4, [(2, FinAttachment((3, 6))), (3, FinAttachment((1, 1)))])


def test_too_many_fins_are_rejected():
    attachments = [(i, FinAttachment("far")) for i in (2, 2)]

    with pytest.raises(GenerationError):
        make_fins(2, attachments)
