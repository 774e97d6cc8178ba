from __future__ import annotations

import typing as t

from .._types import EdgeId, VertexId
from ..exceptions import OverlayError
from ..immersion import ImmersionMap
from ..multigraph import MultiGraph
from ..wallgeom import Wall

WALL_COLOR: t.Final = "blue"
IMAGE_COLORS: t.Final = ("red", "darkgreen", "orange", "purple", "brown", "magenta", "teal", "goldenrod")
ROOT_FILL: t.Final = "lightpink"


def _check_overlay(graph: MultiGraph, vertices: t.Iterable[VertexId], edges: t.Iterable[EdgeId]) -> None:
    for v in vertices:
        if not graph.has_vertex(v):
            raise OverlayError("vertex", v)
    for e in edges:
        if not graph.has_edge(e):
            raise OverlayError("edge", e)


def export_dot(
    graph: MultiGraph,
    wall: Wall | None = None,
    immersion: ImmersionMap | None = None,
    name: str = "G",
) -> str:
    """
    One `--` statement per edge, parallel edges included. Wall branches are
    drawn in one color; every immersion edge image gets its own color and the
    vertex images are filled.
    """
    node_attrs: t.Dict[VertexId, t.Dict[str, str]] = {v: {} for v in graph.vertices}
    edge_attrs: t.Dict[EdgeId, t.Dict[str, str]] = {e: {} for e in graph.edge_ids}

    if wall is not None:
        _check_overlay(graph, wall.labels.values(), wall.edge_set)
        for (i, j), v in wall.labels.items():
            node_attrs[v]["label"] = f"{v}\\n({i},{j})"
        for e in wall.edge_set:
            edge_attrs[e]["color"] = WALL_COLOR

    if immersion is not None:
        _check_overlay(graph, immersion.vertex_map.values(), immersion.used_edges)
        for v in immersion.vertex_map.values():
            node_attrs[v].update(style="filled", fillcolor=ROOT_FILL)
        for idx, (pattern_edge, walk) in enumerate(sorted(immersion.edge_map.items())):
            color = IMAGE_COLORS[idx % len(IMAGE_COLORS)]
            for e in walk.edges:
                edge_attrs[e].update(color=color, penwidth="2", label=f"e{pattern_edge}")

    def render(attrs: t.Mapping[str, str]) -> str:
        if not attrs:
            return ""
        return " [" + ", ".join(f'{key}="{value}"' for key, value in sorted(attrs.items())) + "]"

    lines = [f"graph {name} {{"]
    lines.extend(f"  {v}{render(node_attrs[v])};" for v in graph.vertices)
    for e, (a, b) in graph.edges.items():
        lines.append(f"  {a} -- {b}{render({'id': f'e{e}', **edge_attrs[e]})};")
    lines.append("}")

    return "\n".join(lines) + "\n"
