"""
`find_grid_immersion`: wall, growth, reduction, dispatch and strategies,
every stage recorded in the returned report.
"""
from __future__ import annotations

import logging
import typing as t

from .._configs import active_config
from .._loggers import (
    DefaultLogMessage,
    process_log_outcome,
    process_log_stage,
    process_log_strategy,
    resolve_event,
)
from .._models import DEFAULT_LOG_EVENTS, PipelineConfig, StrategyFailure
from .._reports._builders import ReportBuilder
from .._reports._models import PipelineOutcome, PipelineReport, Stage
from .._types import VertexId
from ..connectivity import pairwise_k_connected
from ..exceptions import HypothesisViolated, ParameterError, PullBackFailed
from ..generators import grid
from ..immersion import ImmersionMap, find_immersion, is_rooted, verify
from ..lifting import pull_back_history, reduce_immersed_wall
from ..multigraph import MultiGraph
from ..wallgeom import Wall, diagonal_vertices, find_wall
from ._dispatch import PlannedAttempt, StrategyKind, fins_dispatch
from ._growth import grow_rooted_wall
from ._strategies import (
    STRATEGY_RESULT,
    strategy_external_blob,
    strategy_internal_blob,
    strategy_long_jumps,
    strategy_short_jumps,
)

logger = logging.getLogger(__name__)


def run_attempt(attempt: PlannedAttempt, config: PipelineConfig) -> STRATEGY_RESULT:
    """One planned strategy; violated hypotheses come back as failures"""
    try:
        if attempt.strategy is StrategyKind.LONG_JUMPS:
            return strategy_long_jumps(attempt.fins, config)
        if attempt.strategy is StrategyKind.EXTERNAL_BLOB:
            if attempt.blob is None:
                return StrategyFailure(attempt.strategy.value, "no blob was planned")
            return strategy_external_blob(attempt.fins, attempt.blob, config)
        if attempt.strategy is StrategyKind.INTERNAL_BLOB:
            return strategy_internal_blob(attempt.fins, config)

        return strategy_short_jumps(attempt.fins, config)
    except HypothesisViolated as exc:
        return StrategyFailure(attempt.strategy.value, exc.reason, exc.witness)


class _Run:
    def __init__(self, graph: MultiGraph, g: int, roots: t.Sequence[VertexId], cfg: PipelineConfig) -> None:
        self.graph = graph
        self.g = g
        self.roots = roots
        self.cfg = cfg
        self.builder = ReportBuilder(g, roots)
        self.log_stage = resolve_event(cfg.log_stage, DEFAULT_LOG_EVENTS.stage)
        self.log_strategy = resolve_event(cfg.log_strategy, DEFAULT_LOG_EVENTS.strategy)
        self.log_outcome = resolve_event(cfg.log_outcome, DEFAULT_LOG_EVENTS.outcome)

    def stage(self, stage: Stage, ok: bool, summary: str, *details: t.Any) -> None:
        self.builder.stage(stage, ok, summary, *details)
        process_log_stage(self.log_stage, stage.value, summary)

    def finish(self, outcome: PipelineOutcome, result: ImmersionMap | None = None) -> PipelineReport:
        if outcome is PipelineOutcome.EXHAUSTED:
            self._oracle()

        process_log_outcome(self.log_outcome, outcome.value)
        return self.builder.build(outcome, result)

    def _oracle(self) -> None:
        """Direct search on small hosts; never changes the outcome"""
        if self.graph.vertex_count > self.cfg.oracle_max_vertices:
            return

        pattern, _ = grid(self.g)
        result = find_immersion(self.graph, pattern, roots=self.roots, budget=self.cfg.immersion_budget)
        if result.found:
            self.builder.certified(result.unwrap())
            self.stage(Stage.ORACLE, True, "a rooted immersion exists, the pipeline did not construct it")
        elif result.exhausted:
            self.stage(Stage.ORACLE, False, f"oracle ran out of budget after {result.expansions:,} expansions")
        else:
            self.stage(Stage.ORACLE, False, "no rooted immersion exists")

    def locate_wall(self, wall: Wall | None, height: int) -> Wall | None:
        if wall is not None:
            self.stage(Stage.WALL, True, f"given wall of height {wall.height}")
            return wall

        search = find_wall(self.graph, height, self.cfg.wall_budget)
        if not search.found:
            self.stage(Stage.WALL, False, f"no wall of height {height} ({search.status.value})", search.expansions)
            return None

        self.stage(Stage.WALL, True, f"found a wall of height {height}", search.expansions)
        return search.unwrap()

    def strategies(self, attempts: t.Sequence[PlannedAttempt], history: t.Sequence[t.Any]) -> ImmersionMap | None:
        for attempt in attempts:
            kind = attempt.strategy.value
            process_log_strategy(self.log_strategy, DefaultLogMessage.STRATEGY_ATTEMPT, kind, fins=len(attempt.fins))

            outcome = run_attempt(attempt, self.cfg)
            if isinstance(outcome, StrategyFailure):
                self.builder.attempted(kind, len(attempt.fins), outcome)
                process_log_strategy(
                    self.log_strategy, DefaultLogMessage.STRATEGY_FAILED, kind, reason=outcome.reason
                )
                continue

            try:
                lifted_back = pull_back_history(outcome, history)
            except PullBackFailed as exc:
                failure = StrategyFailure(kind, f"pull-back failed at pattern edge {exc.pattern_edge}: {exc.reason}")
                self.builder.attempted(kind, len(attempt.fins), failure)
                self.stage(Stage.PULL_BACK, False, failure.reason)
                continue

            verdict = verify(lifted_back)
            if not verdict or not is_rooted(lifted_back, self.roots):
                failure = StrategyFailure(kind, "pulled-back map is not a rooted immersion", verdict.violations[:1])
                self.builder.attempted(kind, len(attempt.fins), failure)
                self.stage(Stage.PULL_BACK, False, failure.reason)
                continue

            self.builder.attempted(kind, len(attempt.fins), lifted_back)
            self.stage(Stage.PULL_BACK, True, f"{len(history)} lift(s) undone")
            process_log_strategy(self.log_strategy, DefaultLogMessage.STRATEGY_DONE, kind, g=self.g)
            return lifted_back

        return None


def find_grid_immersion(
    graph: MultiGraph,
    g: int,
    roots: t.Iterable[VertexId],
    wall: Wall | None = None,
    height: int | None = None,
    config: PipelineConfig | None = None,
) -> PipelineReport:
    """
    An S-rooted immersion of J_g in `graph`. Without `wall`, a wall of
    `height` (by default the smallest even height whose diagonal
    holds every root) is searched for first. Failures are reported, not
    raised; a `FOUND` report always carries a map that verifies and is rooted.
    """
    cfg = active_config(config)
    if cfg.g != g:
        cfg = cfg.replace(g=g)

    chosen = sorted(set(roots))
    for s in chosen:
        if not graph.has_vertex(s):
            raise ParameterError("roots", s, "is not a vertex of the graph")

    run = _Run(graph, g, chosen, cfg)

    if len(chosen) < 2:
        run.stage(Stage.HYPOTHESIS, False, "at least two roots are needed", tuple(chosen))
        return run.finish(PipelineOutcome.HYPOTHESIS_VIOLATED)

    connectivity = pairwise_k_connected(graph, chosen, 4)
    if not connectivity:
        run.stage(
            Stage.HYPOTHESIS,
            False,
            "roots are not pairwise 4-edge-connected",
            connectivity.failing_pair,
            f"connectivity {connectivity.value}",
        )
        return run.finish(PipelineOutcome.HYPOTHESIS_VIOLATED)
    run.stage(Stage.HYPOTHESIS, True, f"{len(chosen)} roots pairwise 4-edge-connected")

    default_height = len(chosen) + 1 + (len(chosen) + 1) % 2
    located = run.locate_wall(wall, height or default_height)
    if located is None:
        return run.finish(PipelineOutcome.EXHAUSTED)

    on_diagonal = sorted(set(chosen) & set(diagonal_vertices(located)))
    if len(on_diagonal) < 2:
        run.stage(Stage.GROWTH, False, "fewer than two roots sit on the wall diagonal", tuple(on_diagonal))
        return run.finish(PipelineOutcome.EXHAUSTED)

    try:
        growth = grow_rooted_wall(graph, located, on_diagonal, cfg)
    except HypothesisViolated as exc:
        run.stage(Stage.GROWTH, False, exc.reason, *exc.witness)
        return run.finish(PipelineOutcome.EXHAUSTED)

    run.builder.augmented(growth.steps)
    if len(growth.rooted) < 2:
        run.stage(Stage.GROWTH, False, "fewer than two roots carry fins", *growth.failures)
        return run.finish(PipelineOutcome.EXHAUSTED)
    run.stage(Stage.GROWTH, True, f"{len(growth.rooted)} of {len(growth.pattern_roots)} roots carry fins")

    try:
        reduction = reduce_immersed_wall(
            graph,
            growth.immersion,
            growth.rooted,
            {s: growth.fins[s] for s in growth.rooted},
            cfg,
        )
    except HypothesisViolated as exc:
        run.stage(Stage.REDUCTION, False, exc.reason, *exc.witness)
        return run.finish(PipelineOutcome.EXHAUSTED)

    run.builder.lifted(reduction.history, reduction.measures)
    run.stage(Stage.REDUCTION, True, f"{len(reduction.history)} lift(s), {len(reduction.fin_system)} fins")

    try:
        plan = fins_dispatch(reduction.fin_system, cfg)
    except (HypothesisViolated, ParameterError) as exc:
        run.stage(Stage.DISPATCH, False, str(exc))
        return run.finish(PipelineOutcome.EXHAUSTED)

    if not plan.attempts:
        run.stage(Stage.DISPATCH, False, "no strategy fits the fin system", *plan.selected)
        return run.finish(PipelineOutcome.EXHAUSTED)
    run.stage(Stage.DISPATCH, True, " then ".join(kind.value for kind in plan.strategies))

    found = run.strategies(plan.attempts, reduction.history)
    if found is None:
        run.stage(Stage.STRATEGY, False, "every planned strategy failed")
        return run.finish(PipelineOutcome.EXHAUSTED)

    run.stage(Stage.STRATEGY, True, f"J_{g} immersed and verified")
    return run.finish(PipelineOutcome.FOUND, found)
