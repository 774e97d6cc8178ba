from __future__ import annotations

import typing as t

from .._models import StrategyFailure
from ..immersion import ImmersionMap
from ._models import PipelineOutcome, PipelineReport, Stage, StageRecord, StrategyAttempt

if t.TYPE_CHECKING:  # pragma: no cover
    from ..lifting import LiftRecord
    from ..pipeline._growth import AugmentationStep


class ReportBuilder:
    def __init__(self, g: int, roots: t.Iterable[int]) -> None:
        self._g = g
        self._roots = tuple(sorted(set(roots)))
        self._stages: t.List[StageRecord] = []
        self._augmentations: t.List[AugmentationStep] = []
        self._lifts: t.List[LiftRecord] = []
        self._measures: t.List[t.Tuple[int, int]] = []
        self._attempts: t.List[StrategyAttempt] = []
        self._certificate: ImmersionMap | None = None

    def stage(self, stage: Stage, ok: bool, summary: str, *details: t.Any) -> StageRecord:
        record = StageRecord(stage, ok, summary, tuple(str(detail) for detail in details))
        self._stages.append(record)
        return record

    def augmented(self, steps: t.Iterable[AugmentationStep]) -> None:
        self._augmentations.extend(steps)

    def lifted(self, history: t.Iterable[LiftRecord], measures: t.Iterable[t.Tuple[int, int]]) -> None:
        self._lifts.extend(history)
        self._measures.extend(measures)

    def attempted(self, strategy: str, fins: int, outcome: ImmersionMap | StrategyFailure) -> None:
        failure = outcome if isinstance(outcome, StrategyFailure) else None
        self._attempts.append(StrategyAttempt(strategy, fins, failure))

    def certified(self, m: ImmersionMap) -> None:
        self._certificate = m

    def build(self, outcome: PipelineOutcome, result: ImmersionMap | None = None) -> PipelineReport:
        return PipelineReport(
            outcome,
            self._g,
            self._roots,
            stages=tuple(self._stages),
            augmentations=tuple(self._augmentations),
            lifts=tuple(self._lifts),
            measures=tuple(self._measures),
            attempts=tuple(self._attempts),
            result=result if outcome is PipelineOutcome.FOUND else None,
            certificate=self._certificate,
        )
