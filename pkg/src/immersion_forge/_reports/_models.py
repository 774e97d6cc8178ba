from __future__ import annotations

import typing as t
from dataclasses import dataclass, field
from enum import Enum

from .._models import StrategyFailure
from ..immersion import ImmersionMap

if t.TYPE_CHECKING:  # pragma: no cover
    from ..lifting import LiftRecord
    from ..pipeline._growth import AugmentationStep


class PipelineOutcome(str, Enum):
    FOUND = "found"
    EXHAUSTED = "strategy exhausted"
    HYPOTHESIS_VIOLATED = "hypothesis violated"


class Stage(str, Enum):
    HYPOTHESIS = "hypothesis"
    WALL = "wall"
    GROWTH = "growth"
    REDUCTION = "reduction"
    DISPATCH = "dispatch"
    STRATEGY = "strategy"
    PULL_BACK = "pull-back"
    ORACLE = "oracle"


@dataclass(frozen=True)
class StageRecord:
    stage: Stage
    ok: bool
    summary: str
    details: t.Tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.stage.value}: {'ok' if self.ok else 'failed'} - {self.summary}"


@dataclass(frozen=True)
class StrategyAttempt:
    strategy: str
    fins: int
    failure: StrategyFailure | None = None
    """`None` when the strategy produced a verified map"""

    @property
    def ok(self) -> bool:
        return self.failure is None


@dataclass(frozen=True)
class PipelineReport:
    outcome: PipelineOutcome
    g: int
    roots: t.Tuple[int, ...]
    stages: t.Tuple[StageRecord, ...] = ()
    augmentations: t.Tuple[AugmentationStep, ...] = ()
    lifts: t.Tuple[LiftRecord, ...] = ()
    measures: t.Tuple[t.Tuple[int, int], ...] = ()
    attempts: t.Tuple[StrategyAttempt, ...] = ()

    result: ImmersionMap | None = None
    """The S-rooted grid immersion, only when the outcome is `FOUND`"""

    certificate: ImmersionMap | None = field(default=None)
    """A rooted immersion the small-instance oracle found after the pipeline itself gave up"""

    @property
    def found(self) -> bool:
        return self.outcome is PipelineOutcome.FOUND

    @property
    def failed_stage(self) -> StageRecord | None:
        """The last stage that did not go through"""
        for record in reversed(self.stages):
            if not record.ok and record.stage is not Stage.ORACLE:
                return record

        return None

    @property
    def failures(self) -> t.Tuple[StrategyFailure, ...]:
        return tuple(attempt.failure for attempt in self.attempts if attempt.failure is not None)
