"""Tree decompositions: the axiom checker, widths and exact tree-width for small graphs"""
from __future__ import annotations

import typing as t
from dataclasses import dataclass
from enum import Enum

import networkx as nx

from ._models import Verdict, Violation
from ._types import VertexId
from .exceptions import ParameterError, RefusedTooLarge, UnknownTreeNode
from .multigraph import MultiGraph

DEFAULT_EXACT_LIMIT: t.Final = 12


class DecompositionAxiom(str, Enum):
    TREE = "tree"
    """The decomposition tree is connected and acyclic"""

    BAG_SUBSET = "bag subset"
    """Bags only hold vertices of the decomposed graph"""

    VERTEX_COVERAGE = "vertex coverage"
    EDGE_COVERAGE = "edge coverage"

    INTERPOLATION = "interpolation"
    """For t' on the t-t'' tree path, the bags of t and t'' meet inside the bag of t'"""


@dataclass(frozen=True)
class TreeDecomposition:
    tree: MultiGraph
    bags: t.Mapping[int, t.FrozenSet[VertexId]]

    def bag(self, node: int) -> t.FrozenSet[VertexId]:
        return self.bags.get(node, frozenset())


def _check_nodes(decomposition: TreeDecomposition) -> None:
    for node in decomposition.bags:
        if not decomposition.tree.has_vertex(node):
            raise UnknownTreeNode(node)


def verify_decomposition(graph: MultiGraph, decomposition: TreeDecomposition) -> Verdict:
    _check_nodes(decomposition)
    tree = decomposition.tree
    violations: t.List[Violation] = []

    nx_tree = tree.to_networkx()
    is_tree = tree.vertex_count > 0 and nx.is_tree(nx_tree)
    if not is_tree:
        violations.append(Violation(DecompositionAxiom.TREE, "decomposition tree is not a tree"))

    vertices = set(graph.vertices)
    for node in tree.vertices:
        stray = decomposition.bag(node) - vertices
        if stray:
            violations.append(
                Violation(DecompositionAxiom.BAG_SUBSET, "bag holds unknown vertices", (node, *sorted(stray)))
            )

    holders: t.Dict[VertexId, t.List[int]] = {v: [] for v in graph.vertices}
    for node in tree.vertices:
        for v in decomposition.bag(node):
            holders.setdefault(v, []).append(node)

    for v in graph.vertices:
        if not holders[v]:
            violations.append(Violation(DecompositionAxiom.VERTEX_COVERAGE, "vertex in no bag", (v,)))

    for e, (a, b) in graph.edges.items():
        if not any(a in decomposition.bag(n) and b in decomposition.bag(n) for n in tree.vertices):
            violations.append(Violation(DecompositionAxiom.EDGE_COVERAGE, "edge in no bag", (e, a, b)))

    if is_tree:
        for v in sorted(holders):
            nodes = holders[v]
            if len(nodes) < 2:
                continue

            spread = nx_tree.subgraph(nodes)
            if nx.is_connected(spread):
                continue

            first, *_ = nx.connected_components(spread)
            start = min(first)
            end = min(n for n in nodes if n not in first)
            between = next(n for n in nx.shortest_path(nx_tree, start, end) if v not in decomposition.bag(n))
            violations.append(
                Violation(
                    DecompositionAxiom.INTERPOLATION,
                    "bags holding the vertex are not contiguous",
                    (v, start, between, end),
                )
            )

    return Verdict.of(violations)


def width(decomposition: TreeDecomposition) -> int:
    if decomposition.tree.vertex_count == 0:
        raise ParameterError("decomposition", decomposition, "has no nodes")

    return max(len(decomposition.bag(n)) for n in decomposition.tree.vertices) - 1


def _fill_neighbours(graph: MultiGraph, order: t.Sequence[VertexId]) -> t.Dict[VertexId, t.Set[VertexId]]:
    """Later neighbours of every vertex in the filled graph of the elimination game"""
    if sorted(order) != list(graph.vertices):
        raise ParameterError("order", tuple(order), "must list every vertex exactly once")

    position = {v: idx for idx, v in enumerate(order)}
    adjacency = {v: set(graph.neighbours(v)) for v in graph.vertices}
    later: t.Dict[VertexId, t.Set[VertexId]] = {}
    for v in order:
        higher = {u for u in adjacency[v] if position[u] > position[v]}
        later[v] = higher
        for a in higher:
            adjacency[a].update(higher - {a})

    return later


def elimination_width(graph: MultiGraph, order: t.Sequence[VertexId]) -> int:
    later = _fill_neighbours(graph, order)
    return max((len(higher) for higher in later.values()), default=0)


def decomposition_from_elimination_order(
    graph: MultiGraph, order: t.Sequence[VertexId]
) -> TreeDecomposition:
    """
    One tree node per vertex, in elimination order. Node `k` holds `order[k]` and its
    later neighbours and hangs off the node of the first of them to be eliminated.
    """
    later = _fill_neighbours(graph, order)
    position = {v: idx for idx, v in enumerate(order)}

    tree_edges: t.List[t.Tuple[int, int]] = []
    for v in order:
        if later[v]:
            parent = min(later[v], key=position.__getitem__)
            tree_edges.append((position[v], position[parent]))
        elif position[v] != len(order) - 1:
            # last vertex of its component: join the next one to keep a single tree
            tree_edges.append((position[v], len(order) - 1))

    tree = MultiGraph.build(len(order), tree_edges)
    bags = {position[v]: frozenset({v} | later[v]) for v in order}
    return TreeDecomposition(tree, bags)


def exact_treewidth(
    graph: MultiGraph, limit: int = DEFAULT_EXACT_LIMIT
) -> t.Tuple[int, TreeDecomposition]:
    """
    Held-Karp style recursion over vertex subsets: the best width for eliminating
    the set `S` first is the min over its last vertex `v` of the width for `S - v`
    and the number of vertices outside `S` that `v` reaches through `S - v`.
    """
    n = graph.vertex_count
    if n == 0:
        raise ParameterError("graph", graph, "tree-width of the empty graph is undefined")
    if n > limit:
        raise RefusedTooLarge(n, limit)

    vertices = list(graph.vertices)
    index = {v: i for i, v in enumerate(vertices)}
    neighbour_mask = [0] * n
    for v in vertices:
        for u in graph.neighbours(v):
            neighbour_mask[index[v]] |= 1 << index[u]

    def reach_outside(inside: int, i: int) -> int:
        """Vertices outside `inside | {i}` reachable from `i` through `inside`"""
        seen = 1 << i
        frontier = [i]
        outside = 0
        while frontier:
            x = frontier.pop()
            for y in range(n):
                bit = 1 << y
                if not neighbour_mask[x] & bit or seen & bit:
                    continue
                seen |= bit
                if inside & bit:
                    frontier.append(y)
                else:
                    outside |= bit

        return bin(outside).count("1")

    full = (1 << n) - 1
    best: t.Dict[int, int] = {0: -1}
    last: t.Dict[int, int] = {}
    for mask in range(1, full + 1):
        value = None
        for i in range(n):
            bit = 1 << i
            if not mask & bit:
                continue

            rest = mask ^ bit
            candidate = max(best[rest], reach_outside(rest, i))
            if value is None or candidate < value:
                value = candidate
                last[mask] = i
        best[mask] = t.cast(int, value)

    order: t.List[VertexId] = []
    mask = full
    while mask:
        i = last[mask]
        order.append(vertices[i])
        mask ^= 1 << i
    order.reverse()

    decomposition = decomposition_from_elimination_order(graph, order)
    return max(best[full], 0), decomposition
