from __future__ import annotations

import pytest

from immersion_forge import (
    Fin,
    FinSystem,
    Walk,
    branches,
    check_wall,
    diagonal_vertices,
    elementary_wall,
    find_wall,
    grid,
    perimeter,
    subdivided_wall,
    subwall,
    surround,
    validate_fin_system,
    wall_distance,
)
from immersion_forge import _elementary as elem
from immersion_forge.exceptions import ParameterError
from immersion_forge.wallgeom import FinCondition, Wall, WallCondition
from tests.conftest import (
    LONG_JUMP_FINS,
    LONG_JUMP_HEIGHT,
    WALL_H2_EDGES,
    WALL_H2_OUTER_FACE,
    make_fins,
)


@pytest.fixture()
def make_wall():
    def factory(h: int = 2, k: int = 0) -> Wall:
        _, wall = subdivided_wall(h, k)
        return wall

    return factory


def test_faces_of_the_elementary_wall(make_wall):
    wall = make_wall()

    assert len(wall.faces) == 5  # four bricks and the outer face
    assert len(wall.outer_face.vertices) == WALL_H2_OUTER_FACE
    assert all(len(face.labels) == 6 for face in wall.bricks)
    assert perimeter(wall).is_cycle
    assert perimeter(wall).length == WALL_H2_OUTER_FACE


def test_branches_cover_every_edge(make_wall):
    wall = make_wall(2, 1)

    found = branches(wall)

    assert len(found) == WALL_H2_EDGES
    assert sum(path.length for path in found) == 2 * WALL_H2_EDGES


def test_diagonal_vertices(make_wall):
    wall = make_wall(4)

    assert diagonal_vertices(wall) == [wall.vertex_at((i, 2 * i)) for i in (2, 3, 4)]


def test_distance_between_cofacial_vertices(make_wall):
    wall = make_wall()
    a, b = wall.vertex_at((1, 1)), wall.vertex_at((1, 3))

    assert wall_distance(wall, a, a) == 0
    assert wall_distance(wall, a, b) == 1
    assert wall_distance(wall, b, a) == 1


def test_distance_grows_across_bricks(make_wall):
    wall = make_wall(6)
    centre = wall.vertex_at((4, 8))

    near = wall_distance(wall, centre, wall.vertex_at((4, 9)))
    far = wall_distance(wall, centre, wall.vertex_at((1, 1)))

    assert near == 1
    assert far > near + 1


def test_subdivision_vertices_share_faces(make_wall):
    wall = make_wall(2, 2)
    branch = wall.branch((1, 1), (1, 2))

    assert wall_distance(wall, branch.vertices[1], branch.vertices[2]) == 1


def test_distance_off_the_wall(make_wall):
    wall = make_wall()

    with pytest.raises(ParameterError):
        wall_distance(wall, wall.vertex_at((1, 1)), 999)


def test_subwall_relabels(make_wall):
    wall = make_wall(4)

    inner = subwall(wall, 1, 1, 2)

    assert inner.height == 2
    assert inner.vertex_at((1, 1)) == wall.vertex_at((1, 1))
    assert inner.vertex_at((3, 6)) == wall.vertex_at((3, 6))
    assert check_wall(inner).ok


def test_subwall_must_fit(make_wall):
    wall = make_wall(2)

    with pytest.raises(ParameterError):
        subwall(wall, 1, 1, 4)


def test_surround_follows_degree_two_vertices(make_wall):
    wall = make_wall(2, 1)
    root = wall.vertex_at((2, 4))

    around = surround(wall, root)

    assert root in around
    assert len(around) == 4  # the root and one subdivision vertex per branch


def test_surround_needs_a_diagonal_vertex(make_wall):
    wall = make_wall()

    with pytest.raises(ParameterError):
        surround(wall, wall.vertex_at((1, 1)))


def test_check_wall_flags_a_broken_branch(make_wall):
    wall = make_wall()
    key = ((1, 1), (1, 2))
    broken = dict(wall.branch_paths)
    broken[key] = Walk((wall.vertex_at((1, 1)), wall.vertex_at((2, 2))), (0,))

    verdict = check_wall(Wall(wall.host, 2, wall.labels, broken))

    assert not verdict
    assert verdict.conditions & {WallCondition.BRANCH_WALK, WallCondition.BRANCH_ENDS}


def test_check_wall_flags_missing_labels(make_wall):
    wall = make_wall()
    labels = dict(wall.labels)
    del labels[(2, 2)]

    assert WallCondition.LABELS in check_wall(Wall(wall.host, 2, labels, wall.branch_paths)).conditions


def test_fin_system_validation():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)
    first = fs.fins[0]
    on_wall = Fin(first.root, fs.wall.branch(fs.wall.label_of[first.root], (2, 5)))

    verdict = validate_fin_system(FinSystem(fs.wall, (on_wall, *fs.fins[1:])))

    assert FinCondition.USES_WALL_EDGE in verdict.conditions


def test_fin_root_must_be_diagonal():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)
    stray = Fin(fs.wall.vertex_at((1, 1)), fs.fins[0].path)

    verdict = validate_fin_system(FinSystem(fs.wall, (stray,)))

    assert FinCondition.ROOT_NOT_DIAGONAL in verdict.conditions


def test_find_wall_in_a_subdivided_wall():
    graph, _ = subdivided_wall(2, 1)

    result = find_wall(graph, 2)

    assert result.found
    assert check_wall(result.unwrap()).ok


def test_find_wall_ignores_other_components():
    base, _ = elementary_wall(2)
    padded, _ = base.add_vertices(10)
    padded, _ = padded.add_edge(16, 17)

    result = find_wall(padded, 2)

    assert result.found
    assert check_wall(result.unwrap()).ok


def test_grid_is_too_acyclic_for_a_tall_wall():
    graph, _ = grid(3)

    result = find_wall(graph, 4)

    assert not result.found
    assert not result.exhausted


@pytest.mark.parametrize("h", [2, 4, 6])
def test_half_turn_maps_the_wall_onto_itself(h: int):
    labels = elem.wall_labels(h)
    edges = set(elem.wall_edges(h))

    assert sorted(elem.point_reflection(h, label) for label in labels) == sorted(labels)
    for a, b in edges:
        assert tuple(sorted((elem.point_reflection(h, a), elem.point_reflection(h, b)))) in edges
    assert elem.point_reflection(h, (2, 4)) == (h, 2 * h - 1)
