"""Label arithmetic of the elementary wall, shared by the generators and the wall geometry"""
from __future__ import annotations

import typing as t

from ._types import Label
from .exceptions import ParameterError

LABEL_PAIR = t.Tuple[Label, Label]

EAST: t.Final = 0
NORTH: t.Final = 1
WEST: t.Final = 2
SOUTH: t.Final = 3

_STEPS: t.Final = {EAST: (0, 1), NORTH: (1, 0), WEST: (0, -1), SOUTH: (-1, 0)}


def check_height(h: int, name: str = "h") -> None:
    if h < 2 or h % 2:
        raise ParameterError(name, h, "wall heights are even and at least 2")


def label_exists(h: int, label: Label) -> bool:
    i, j = label
    if not (1 <= i <= h + 1 and 1 <= j <= 2 * h + 2):
        return False

    return label not in ((1, 2 * h + 2), (h + 1, 1))


def wall_labels(h: int) -> t.List[Label]:
    """Every label of the elementary wall of height `h`, in labeling order"""
    return [
        (i, j)
        for i in range(1, h + 2)
        for j in range(1, 2 * h + 3)
        if label_exists(h, (i, j))
    ]


def is_wall_edge(h: int, a: Label, b: Label) -> bool:
    if not (label_exists(h, a) and label_exists(h, b)):
        return False

    (i, j), (i2, j2) = a, b
    if i == i2:
        return abs(j - j2) == 1

    if j == j2 and abs(i - i2) == 1:
        return (min(i, i2) + j) % 2 == 0

    return False


def wall_edges(h: int) -> t.List[LABEL_PAIR]:
    """Label pairs `(a, b)` with `a < b`, sorted"""
    edges: t.List[LABEL_PAIR] = []
    for i, j in wall_labels(h):
        for other in ((i, j + 1), (i + 1, j)):
            if is_wall_edge(h, (i, j), other):
                edges.append(((i, j), other))

    return sorted(edges)


def diagonal_labels(h: int) -> t.List[Label]:
    return [(i, 2 * i) for i in range(2, h + 1)]


def direction(a: Label, b: Label) -> int:
    step = (b[0] - a[0], b[1] - a[1])
    for key, value in _STEPS.items():
        if value == step:
            return key

    raise ParameterError("labels", (a, b), "are not adjacent in the lattice")


def neighbour_labels(h: int, label: Label) -> t.List[Label]:
    """Wall neighbours of `label` in counter-clockwise order starting east"""
    i, j = label
    around: t.List[Label] = []
    for key in (EAST, NORTH, WEST, SOUTH):
        di, dj = _STEPS[key]
        other = (i + di, j + dj)
        if is_wall_edge(h, label, other):
            around.append(other)

    return around


def point_reflection(h: int, label: Label) -> Label:
    """The half-turn symmetry of the elementary wall"""
    i, j = label
    return (h + 2 - i, 2 * h + 3 - j)


def subwall_span(i1: int, j1: int, sub_height: int) -> t.Tuple[int, int]:
    return i1 + sub_height, j1 + 2 * sub_height + 1


def subwall_labels(h: int, i1: int, j1: int, sub_height: int) -> t.List[Label]:
    """Labels of `W` kept by the subwall anchored at `(i1, j1)`, in labeling order"""
    check_height(sub_height, "sub_height")
    if i1 % 2 == 0 or j1 % 2 == 0:
        raise ParameterError("anchor", (i1, j1), "subwall anchors are odd")

    i2, j2 = subwall_span(i1, j1, sub_height)
    if i1 < 1 or j1 < 1 or i2 > h + 1 or j2 > 2 * h + 2:
        raise ParameterError(
            "anchor",
            (i1, j1, sub_height),
            f"box rows {i1}..{i2}, columns {j1}..{j2} leave a wall of height {h}",
        )

    return [
        (i, j)
        for i in range(i1, i2 + 1)
        for j in range(j1, j2 + 1)
        if (i, j) not in ((i1, j2), (i2, j1))
    ]


def relabel_into_subwall(label: Label, i1: int, j1: int) -> Label:
    return (label[0] - i1 + 1, label[1] - j1 + 1)


def relabel_from_subwall(label: Label, i1: int, j1: int) -> Label:
    return (label[0] + i1 - 1, label[1] + j1 - 1)
