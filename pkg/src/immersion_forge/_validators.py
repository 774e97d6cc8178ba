from __future__ import annotations

import typing as t

from ._models import PipelineConfig, StrategyPrecondition
from .exceptions import HypothesisViolated
from .wallgeom import FinSystem, wall_distance


class EnoughFins(StrategyPrecondition):
    def __init__(self, needed: t.Callable[[PipelineConfig], int], what: str) -> None:
        self._needed = needed
        self._what = what

    def check(self, fs: FinSystem, config: PipelineConfig) -> None:
        needed = self._needed(config)
        if len(fs) >= needed:
            return None

        raise HypothesisViolated(f"{self._what} needs {needed} fins, got {len(fs)}", fs.roots)


class FinsEdgeDisjoint(StrategyPrecondition):
    def check(self, fs: FinSystem, config: PipelineConfig) -> None:
        owner: t.Dict[int, int] = {}
        for fin in fs.fins:
            for e in fin.path.edges:
                if e in owner:
                    raise HypothesisViolated("fins share an edge", (owner[e], fin.root, e))
                owner[e] = fin.root

        return None


class PointsSeparated(StrategyPrecondition):
    """Roots (and optionally targets) pairwise at least `threshold(config)` apart in the wall"""

    def __init__(self, threshold: t.Callable[[PipelineConfig], int], with_targets: bool) -> None:
        self._threshold = threshold
        self._with_targets = with_targets

    def check(self, fs: FinSystem, config: PipelineConfig) -> None:
        threshold = self._threshold(config)
        points = list(fs.roots)
        if self._with_targets:
            points.extend(fin.target for fin in fs.fins)

        for idx, a in enumerate(points):
            for b in points[idx + 1 :]:
                if wall_distance(fs.wall, a, b) < threshold:
                    raise HypothesisViolated(f"points closer than {threshold}", (a, b))

        return None


class TargetsFar(StrategyPrecondition):
    def check(self, fs: FinSystem, config: PipelineConfig) -> None:
        for fin in fs.fins:
            if wall_distance(fs.wall, fin.root, fin.target) < config.a2:
                raise HypothesisViolated(f"target closer than a2={config.a2} to its root", (fin.root, fin.target))

        return None


class TargetsNear(StrategyPrecondition):
    def check(self, fs: FinSystem, config: PipelineConfig) -> None:
        for fin in fs.fins:
            if wall_distance(fs.wall, fin.root, fin.target) > config.c:
                raise HypothesisViolated(f"target farther than c={config.c} from its root", (fin.root, fin.target))

        return None


LONG_JUMPS_CHECKS: t.Final[t.Tuple[StrategyPrecondition, ...]] = (
    EnoughFins(lambda cfg: cfg.long_fins_needed, "long-jumps"),
    FinsEdgeDisjoint(),
    PointsSeparated(lambda cfg: cfg.a1, with_targets=True),
)

INTERNAL_BLOB_CHECKS: t.Final[t.Tuple[StrategyPrecondition, ...]] = (
    EnoughFins(lambda cfg: cfg.long_fins_needed, "internal-blob"),
    FinsEdgeDisjoint(),
    PointsSeparated(lambda cfg: cfg.a2, with_targets=False),
    TargetsFar(),
)

SHORT_JUMPS_CHECKS: t.Final[t.Tuple[StrategyPrecondition, ...]] = (
    EnoughFins(lambda cfg: cfg.short_fins_needed, "short-jumps"),
    FinsEdgeDisjoint(),
    PointsSeparated(lambda cfg: cfg.a3, with_targets=False),
    TargetsNear(),
)


def run_checks(checks: t.Iterable[StrategyPrecondition], fs: FinSystem, config: PipelineConfig) -> None:
    for check in checks:
        check.check(fs, config)
