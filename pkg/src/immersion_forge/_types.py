from __future__ import annotations

import typing as t

from typing_extensions import TypeAlias


class Unset:
    """
    The default "unset" state indicates that whatever default is set on the
    base config should be used. This is different to setting `None`, which
    explicitly means "derive it" for the fin-count targets.
    """

    def __bool__(self):
        return False


UNSET_VALUE: t.Final = Unset()

VertexId: TypeAlias = int
EdgeId: TypeAlias = int
Label: TypeAlias = t.Tuple[int, int]
"""Elementary-wall or grid coordinates `(i, j)`, 1-based."""

T = t.TypeVar("T")
