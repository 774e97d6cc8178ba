"""
Line-oriented text formats. Every serializer starts with the `format: 1`
header; parsers accept it (or its absence) as the first meaningful line and
skip blank lines and `#` comments everywhere.
"""
from __future__ import annotations

import re
import typing as t
from pathlib import Path

from .._types import EdgeId, Label, VertexId
from ..exceptions import FormatError, ForgeException, ParameterError
from ..immersion import ImmersionMap
from ..lifting import LiftRecord
from ..multigraph import MultiGraph, Walk
from ..treedecomp import TreeDecomposition
from ..wallgeom import Wall, wall_from_labels

FORMAT_VERSION: t.Final = 1
HEADER: t.Final = f"format: {FORMAT_VERSION}"

_HEADER_RE: t.Final = re.compile(r"^format:\s*(\S+)$")
_LABEL_RE: t.Final = re.compile(r"^label:\s*(\d+)\s+(\d+)\s*->\s*(\d+)$")
_BRANCH_RE: t.Final = re.compile(r"^branch\s*\((\d+),\s*(\d+)\)\s*-\s*\((\d+),\s*(\d+)\):\s*([\d\s]+)$")
_MAP_VERTEX_RE: t.Final = re.compile(r"^v\s+(\d+)\s*->\s*(\d+)$")
_MAP_EDGE_RE: t.Final = re.compile(r"^e\s+(\d+)\s*->\s*([\d\s]+)$")
_TREE_NODES_RE: t.Final = re.compile(r"^t\s+(\d+)$")
_TREE_EDGE_RE: t.Final = re.compile(r"^T\s+(\d+)\s+(\d+)$")
_BAG_RE: t.Final = re.compile(r"^B\s+(\d+):\s*([\d\s]*)$")
_FIN_RE: t.Final = re.compile(r"^fin\s+(\d+):\s*([\d\s]+)$")
_LIFT_RE: t.Final = re.compile(r"^lift\s+(\d+):\s*-(\d+)\s+-(\d+)\s+\+(\d+)\((\d+),\s*(\d+)\)$")

LINE = t.Tuple[int, str]


def _meaningful(text: str, source: str) -> t.List[LINE]:
    """Numbered non-comment lines, header removed"""
    lines: t.List[LINE] = []
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        lines.append((line_no, line))

    if lines:
        line_no, first = lines[0]
        header = _HEADER_RE.match(first)
        if header:
            if header.group(1) != str(FORMAT_VERSION):
                raise FormatError(source, line_no, f"unsupported format version {header.group(1)!r}")
            lines = lines[1:]

    return lines


def _ints(raw: str, source: str, line_no: int) -> t.List[int]:
    try:
        return [int(token) for token in raw.replace(",", " ").split()]
    except ValueError:
        raise FormatError(source, line_no, f"expected integers, got {raw!r}") from None


def _walk(raw: str, source: str, line_no: int) -> Walk:
    try:
        return Walk.from_sequence(_ints(raw, source, line_no))
    except ParameterError as exc:
        raise FormatError(source, line_no, exc.reason) from None


def _positions(graph: MultiGraph) -> t.Dict[EdgeId, EdgeId]:
    """Edge id to its position in `serialize_graph` output"""
    return {e: idx for idx, e in enumerate(graph.edge_ids)}


def _renumbered(walk: Walk, positions: t.Mapping[EdgeId, EdgeId]) -> Walk:
    return Walk(walk.vertices, tuple(positions[e] for e in walk.edges))


def _document(*lines: str) -> str:
    return "\n".join((HEADER, *lines)) + "\n"


def read_text(path: str | Path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(str(path), 0, exc.strerror or "unreadable file") from None


# Graphs


def parse_graph(text: str, source: str = "<graph>") -> MultiGraph:
    lines = _meaningful(text, source)
    if not lines:
        raise FormatError(source, 0, "missing the `n m` line")

    line_no, first = lines[0]
    counts = _ints(first, source, line_no)
    if len(counts) != 2 or min(counts) < 0:
        raise FormatError(source, line_no, "expected `n m` with nonnegative counts")

    n, m = counts
    body = lines[1:]
    if len(body) != m:
        raise FormatError(source, body[-1][0] if body else line_no, f"expected {m} edge lines, got {len(body)}")

    edges: t.List[t.Tuple[int, int]] = []
    for line_no, line in body:
        ends = _ints(line, source, line_no)
        if len(ends) != 2:
            raise FormatError(source, line_no, "expected `u v`")
        for x in ends:
            if not 0 <= x < n:
                raise FormatError(source, line_no, f"endpoint {x} outside 0..{n - 1}")
        edges.append((ends[0], ends[1]))

    return MultiGraph.build(n, edges)


def serialize_graph(graph: MultiGraph) -> str:
    """Canonical form: edges in id order, so ids become positions"""
    n = max(graph.vertices, default=-1) + 1
    lines = [f"{n} {graph.edge_count}"]
    lines.extend(f"{a} {b}" for a, b in graph.edges.values())
    return _document(*lines)


def read_graph(path: str | Path) -> MultiGraph:
    return parse_graph(read_text(path), str(path))


# Labelings and walls


def _label_lines(labels: t.Mapping[Label, VertexId]) -> t.List[str]:
    return [f"label: {i} {j} -> {v}" for (i, j), v in sorted(labels.items())]


def parse_labeling(text: str, source: str = "<labeling>") -> t.Dict[Label, VertexId]:
    labels: t.Dict[Label, VertexId] = {}
    for line_no, line in _meaningful(text, source):
        found = _LABEL_RE.match(line)
        if not found:
            raise FormatError(source, line_no, "expected `label: i j -> vertex`")

        i, j, v = (int(x) for x in found.groups())
        if (i, j) in labels:
            raise FormatError(source, line_no, f"label ({i},{j}) given twice")
        labels[(i, j)] = v

    return labels


def serialize_labeling(labels: t.Mapping[Label, VertexId]) -> str:
    return _document(*_label_lines(labels))


def parse_wall(text: str, host: MultiGraph, source: str = "<wall>") -> Wall:
    """Label lines plus optional branch lines; missing branches must be single host edges"""
    labels: t.Dict[Label, VertexId] = {}
    branches: t.Dict[t.Tuple[Label, Label], Walk] = {}
    for line_no, line in _meaningful(text, source):
        label = _LABEL_RE.match(line)
        if label:
            i, j, v = (int(x) for x in label.groups())
            labels[(i, j)] = v
            continue

        branch = _BRANCH_RE.match(line)
        if not branch:
            raise FormatError(source, line_no, "expected a `label:` or `branch` line")

        i1, j1, i2, j2 = (int(x) for x in branch.groups()[:4])
        a, b = (i1, j1), (i2, j2)
        walk = _walk(branch.group(5), source, line_no)
        branches[(a, b) if a < b else (b, a)] = walk if a < b else walk.reversed()

    if not labels:
        raise FormatError(source, 0, "a wall needs label lines")

    height = max(i for i, _ in labels) - 1
    try:
        return wall_from_labels(host, height, labels, branches)
    except ForgeException as exc:
        raise FormatError(source, 0, str(exc)) from None


def serialize_wall(wall: Wall) -> str:
    positions = _positions(wall.host)
    lines = _label_lines(wall.labels)
    for (a, b), walk in sorted(wall.branch_paths.items()):
        lines.append(f"branch ({a[0]},{a[1]})-({b[0]},{b[1]}): {_renumbered(walk, positions)}")

    return _document(*lines)


# Immersion maps


def parse_map(text: str, pattern: MultiGraph, host: MultiGraph, source: str = "<map>") -> ImmersionMap:
    vertex_map: t.Dict[VertexId, VertexId] = {}
    edge_map: t.Dict[EdgeId, Walk] = {}
    for line_no, line in _meaningful(text, source):
        vertex = _MAP_VERTEX_RE.match(line)
        if vertex:
            p, v = int(vertex.group(1)), int(vertex.group(2))
            if p in vertex_map:
                raise FormatError(source, line_no, f"pattern vertex {p} mapped twice")
            vertex_map[p] = v
            continue

        edge = _MAP_EDGE_RE.match(line)
        if not edge:
            raise FormatError(source, line_no, "expected `v p -> h` or `e p -> walk`")

        e = int(edge.group(1))
        if e in edge_map:
            raise FormatError(source, line_no, f"pattern edge {e} mapped twice")
        edge_map[e] = _walk(edge.group(2), source, line_no)

    return ImmersionMap(pattern, host, vertex_map, edge_map)


def serialize_map(m: ImmersionMap) -> str:
    """Host edges are written by position, matching `serialize_graph(m.host)`"""
    positions = _positions(m.host)
    lines = [f"v {v} -> {m.vertex_map[v]}" for v in sorted(m.vertex_map)]
    lines.extend(f"e {e} -> {_renumbered(m.edge_map[e], positions)}" for e in sorted(m.edge_map))
    return _document(*lines)


# Tree decompositions


def parse_decomposition(text: str, source: str = "<decomposition>") -> TreeDecomposition:
    lines = _meaningful(text, source)
    if not lines:
        raise FormatError(source, 0, "missing the `t n` line")

    line_no, first = lines[0]
    nodes = _TREE_NODES_RE.match(first)
    if not nodes:
        raise FormatError(source, line_no, "expected `t n`")

    count = int(nodes.group(1))
    tree_edges: t.List[t.Tuple[int, int]] = []
    bags: t.Dict[int, t.FrozenSet[VertexId]] = {}
    for line_no, line in lines[1:]:
        edge = _TREE_EDGE_RE.match(line)
        if edge:
            u, v = int(edge.group(1)), int(edge.group(2))
            if not (u < count and v < count):
                raise FormatError(source, line_no, f"tree node outside 0..{count - 1}")
            tree_edges.append((u, v))
            continue

        bag = _BAG_RE.match(line)
        if not bag:
            raise FormatError(source, line_no, "expected `T u v` or `B t: v1 v2 ...`")

        node = int(bag.group(1))
        if node >= count:
            raise FormatError(source, line_no, f"tree node outside 0..{count - 1}")
        bags[node] = frozenset(_ints(bag.group(2), source, line_no))

    for node in range(count):
        bags.setdefault(node, frozenset())

    return TreeDecomposition(MultiGraph.build(count, tree_edges), bags)


def serialize_decomposition(decomposition: TreeDecomposition) -> str:
    lines = [f"t {decomposition.tree.vertex_count}"]
    lines.extend(f"T {a} {b}" for a, b in decomposition.tree.edges.values())
    for node in sorted(decomposition.bags):
        members = " ".join(str(v) for v in sorted(decomposition.bags[node]))
        lines.append(f"B {node}: {members}".rstrip())

    return _document(*lines)


# Vertex sets, fins, lift histories


def parse_vertex_set(text: str, source: str = "<set>") -> t.Tuple[VertexId, ...]:
    found: t.List[VertexId] = []
    for line_no, line in _meaningful(text, source):
        found.extend(_ints(line, source, line_no))

    return tuple(sorted(set(found)))


def serialize_vertex_set(vertices: t.Iterable[VertexId]) -> str:
    return _document(" ".join(str(v) for v in sorted(set(vertices))))


def parse_fins(text: str, source: str = "<fins>") -> t.Dict[VertexId, Walk]:
    fins: t.Dict[VertexId, Walk] = {}
    for line_no, line in _meaningful(text, source):
        found = _FIN_RE.match(line)
        if not found:
            raise FormatError(source, line_no, "expected `fin s: v0 e1 v1 ...`")

        root = int(found.group(1))
        fins[root] = _walk(found.group(2), source, line_no)

    return fins


def serialize_fins(fins: t.Mapping[VertexId, Walk], host: MultiGraph | None = None) -> str:
    if host is not None:
        positions = _positions(host)
        fins = {s: _renumbered(walk, positions) for s, walk in fins.items()}

    return _document(*(f"fin {s}: {fins[s]}" for s in sorted(fins)))


def parse_lift_history(text: str, source: str = "<lifts>") -> t.Tuple[LiftRecord, ...]:
    records: t.List[LiftRecord] = []
    for line_no, line in _meaningful(text, source):
        found = _LIFT_RE.match(line)
        if not found:
            raise FormatError(source, line_no, "expected `lift v: -d1 -d2 +d0(u1,u2)`")

        v, d1, d2, d0, u1, u2 = (int(x) for x in found.groups())
        records.append(LiftRecord(v, d1, d2, u1, u2, d0))

    return tuple(records)


def serialize_lift_history(history: t.Iterable[LiftRecord]) -> str:
    return _document(*(str(record) for record in history))
