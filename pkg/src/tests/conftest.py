from __future__ import annotations

import logging
import typing as t

from hypothesis import strategies as st
from immersion_forge import (
    FinAttachment,
    ImmersionMap,
    LogEvent,
    MultiGraph,
    PipelineConfig,
    StrategyFailure,
    is_rooted,
    verify,
    wall_with_fins,
)
from immersion_forge.wallgeom import FinSystem

WALL_H2_VERTICES: t.Final = 16
WALL_H2_EDGES: t.Final = 19
WALL_H2_OUTER_FACE: t.Final = 14
"""Elementary wall of height 2: counts every vertex around the perimeter"""

LONG_JUMP_HEIGHT: t.Final = 6
LONG_JUMP_FINS: t.Final = (
    (2, FinAttachment((7, 2))),
    (3, FinAttachment((7, 4))),
    (4, FinAttachment((1, 12))),
    (5, FinAttachment((1, 10))),
    (6, FinAttachment((1, 1))),
)
"""Five fins with far targets on the perimeter, enough for J_2 by long jumps"""

LONG_JUMP_CONFIG: t.Final = PipelineConfig(g=2, a1=1, a2=1, a3=1, c=1, routing_budget=10**6)

SHORT_JUMP_HEIGHT: t.Final = 8
SHORT_JUMP_FINS: t.Final = tuple((i, FinAttachment((i, 2 * i + 1))) for i in (2, 4, 6, 8))
"""Every fin lands on the east neighbour of its root"""

SHORT_JUMP_CONFIG: t.Final = PipelineConfig(g=2, a1=2, a2=2, a3=2, c=2, routing_budget=10**6)

HUB_HEIGHT: t.Final = 4
HUB_FINS: t.Final = (
    (2, FinAttachment("far", via=2, hub="h")),
    (3, FinAttachment("far", via=2, hub="h")),
    (4, FinAttachment("far", via=2, hub="h")),
)
"""Three fins sharing one vertex outside the wall"""

HUB_CONFIG: t.Final = PipelineConfig(g=2, a1=1, a2=1, a3=1, c=1, hub_min=2)

SMALL_PATTERNS: t.Final = {
    "P2": MultiGraph.build(2, [(0, 1)]),
    "P3": MultiGraph.build(3, [(0, 1), (1, 2)]),
    "C3": MultiGraph.build(3, [(0, 1), (1, 2), (2, 0)]),
    "C4": MultiGraph.build(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
    "K4": MultiGraph.build(4, [(a, b) for a in range(4) for b in range(a + 1, 4)]),
}


class FinFixture(t.NamedTuple):
    graph: MultiGraph
    fins: FinSystem


def make_fins(
    h: int, attachments: t.Sequence[t.Tuple[int, FinAttachment]], subdivide: int = 0, seed: int = 0
) -> FinFixture:
    graph, fs = wall_with_fins(h, attachments, subdivide, seed)
    return FinFixture(graph, fs)


def two_vertex_multigraph(parallel: int) -> MultiGraph:
    return MultiGraph.build(2, [(0, 1)] * parallel)


def with_hub(graph: MultiGraph, roots: t.Iterable[int], multiplicity: int = 1) -> MultiGraph:
    """`graph` plus one new vertex joined to every root `multiplicity` times"""
    graph, (hub,) = graph.add_vertices(1)
    for root in roots:
        for _ in range(multiplicity):
            graph, _ = graph.add_edge(hub, root)

    return graph


@st.composite
def small_multigraphs(draw: st.DrawFn, max_vertices: int = 5, max_edges: int = 8) -> MultiGraph:
    """Loops and parallel edges allowed"""
    n = draw(st.integers(min_value=1, max_value=max_vertices))
    edges = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=max_edges))
    return MultiGraph.build(n, edges)


def assert_verified_rooted(m: ImmersionMap | StrategyFailure, roots: t.Iterable[int]):
    assert isinstance(m, ImmersionMap), f"expected a map, got {m}"

    verdict = verify(m)
    assert verdict.ok, verdict.violations
    assert is_rooted(m, roots)


def assert_log(record: logging.LogRecord, expected_event: LogEvent):
    assert record.levelno == expected_event.level
    assert record.message == expected_event.custom_message  # No formatting set
