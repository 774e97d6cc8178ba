from __future__ import annotations

import typing as t
from abc import ABC, abstractmethod

REDUCE_PICKABLE_RETURN = t.Tuple[t.Type[Exception], t.Tuple[t.Any, ...]]


class ForgeException(Exception, ABC):
    @abstractmethod
    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        """
        `__reduce__` is required so results survive environments that pickle
        them (e.g. process pools running pipeline attempts).

        More context: https://stackoverflow.com/a/36342588/2811539
        """
        pass


class ForgeInputError(ForgeException, ABC):
    """Anything the caller handed in that does not describe a valid object"""


class GraphConstructionError(ForgeInputError):
    def __init__(
        self, entry_index: int, entry: t.Tuple[int, int], vertex_count: int
    ) -> None:
        self.entry_index = entry_index
        self.entry = entry
        self.vertex_count = vertex_count

        super().__init__(
            f"Edge entry #{entry_index} {entry} has an endpoint outside 0..{vertex_count - 1}"
        )

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (GraphConstructionError, (self.entry_index, self.entry, self.vertex_count))


class UnknownVertex(ForgeInputError):
    def __init__(self, vertex: int) -> None:
        self.vertex = vertex
        super().__init__(f"Vertex {vertex} does not exist")

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (UnknownVertex, (self.vertex,))


class UnknownEdge(ForgeInputError):
    def __init__(self, edge: int) -> None:
        self.edge = edge
        super().__init__(f"Edge {edge} does not exist")

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (UnknownEdge, (self.edge,))


class PartialImmersionMap(ForgeInputError):
    """
    The map is not total on the pattern, or points at host ids that do not exist.
    Kept apart from verification violations on purpose: a violation is an answer,
    this is a malformed question.
    """

    def __init__(
        self,
        missing_vertices: t.Tuple[int, ...] = (),
        missing_edges: t.Tuple[int, ...] = (),
        detail: str = "",
    ) -> None:
        self.missing_vertices = missing_vertices
        self.missing_edges = missing_edges
        self.detail = detail

        parts: list[str] = []
        if missing_vertices:
            parts.append(f"unmapped pattern vertices {list(missing_vertices)}")
        if missing_edges:
            parts.append(f"unmapped pattern edges {list(missing_edges)}")
        if detail:
            parts.append(detail)

        super().__init__("Immersion map is not usable: " + "; ".join(parts))

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (
            PartialImmersionMap,
            (self.missing_vertices, self.missing_edges, self.detail),
        )


class UnknownTreeNode(ForgeInputError):
    def __init__(self, node: int) -> None:
        self.node = node
        super().__init__(f"Bag declared on tree node {node} which is not in the tree")

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (UnknownTreeNode, (self.node,))


class FormatError(ForgeInputError):
    def __init__(self, source: str, line_no: int, message: str) -> None:
        self.source = source
        self.line_no = line_no
        self.message = message
        super().__init__(f"{source}:{line_no}: {message}")

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (FormatError, (self.source, self.line_no, self.message))


class OverlayError(ForgeInputError):
    def __init__(self, kind: str, ident: t.Any) -> None:
        self.kind = kind
        self.ident = ident
        super().__init__(f"Overlay references unknown {kind} {ident!r}")

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (OverlayError, (self.kind, self.ident))


class ParameterError(ForgeException):
    def __init__(self, name: str, value: t.Any, reason: str) -> None:
        self.name = name
        self.value = value
        self.reason = reason
        super().__init__(f"Invalid {name}={value!r}: {reason}")

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (ParameterError, (self.name, self.value, self.reason))


class PreconditionFailed(ForgeException):
    def __init__(self, operation: str, reason: str) -> None:
        self.operation = operation
        self.reason = reason
        super().__init__(f"{operation} cannot run: {reason}")

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (PreconditionFailed, (self.operation, self.reason))


class RefusedTooLarge(PreconditionFailed):
    def __init__(self, vertex_count: int, limit: int) -> None:
        self.vertex_count = vertex_count
        self.limit = limit
        super().__init__(
            "exact_treewidth",
            f"{vertex_count} vertices exceed the exact limit of {limit}; "
            "heuristic tree-width is not provided",
        )

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (RefusedTooLarge, (self.vertex_count, self.limit))


class HypothesisViolated(ForgeException):
    """
    A structural hypothesis of a construction step does not hold on the input.

    `witness` names the offending objects, e.g. a vertex pair that is not
    4-edge-connected or two pattern edges crossing away from every root.
    """

    def __init__(self, reason: str, witness: t.Tuple[t.Any, ...] = ()) -> None:
        self.reason = reason
        self.witness = witness

        msg = reason if not witness else f"{reason} (witness: {witness})"
        super().__init__(msg)

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (HypothesisViolated, (self.reason, self.witness))


class PullBackFailed(ForgeException):
    PATH_BROKEN: t.Final = "detour revisits the lifted vertex"
    IMAGE_CONFLICT: t.Final = "lifted vertex is the image of a non-incident pattern vertex"
    REROUTE_FAILED: t.Final = "no alternative route in the original graph"

    def __init__(self, pattern_edge: int, reason: str) -> None:
        self.pattern_edge = pattern_edge
        self.reason = reason
        super().__init__(f"Unable to pull back the image of pattern edge {pattern_edge}: {reason}")

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (PullBackFailed, (self.pattern_edge, self.reason))


class GenerationError(ForgeException):
    def __init__(self, reason: str) -> None:
        self.reason = reason
        super().__init__(f"Unable to generate fixture: {reason}")

    def __reduce__(self) -> REDUCE_PICKABLE_RETURN:
        return (GenerationError, (self.reason,))
