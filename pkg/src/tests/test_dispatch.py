from __future__ import annotations

import pytest

from immersion_forge import Fin, FinSystem, StrategyFailure
from immersion_forge.exceptions import HypothesisViolated, ParameterError
from immersion_forge.pipeline import StrategyKind, fins_dispatch, partition_fins, run_attempt, select_separated
from tests.conftest import (
    HUB_CONFIG,
    HUB_FINS,
    HUB_HEIGHT,
    LONG_JUMP_CONFIG,
    LONG_JUMP_FINS,
    LONG_JUMP_HEIGHT,
    SHORT_JUMP_CONFIG,
    SHORT_JUMP_FINS,
    SHORT_JUMP_HEIGHT,
    make_fins,
)


def test_far_fins_plan_long_jumps_first():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    plan = fins_dispatch(fs, LONG_JUMP_CONFIG)

    assert plan.strategies == (StrategyKind.LONG_JUMPS, StrategyKind.INTERNAL_BLOB)
    assert len(plan.selected) == len(LONG_JUMP_FINS)
    assert len(plan.partition.far) == len(LONG_JUMP_FINS)
    assert not plan.partition.hub


def test_near_fins_plan_short_jumps():
    _, fs = make_fins(SHORT_JUMP_HEIGHT, SHORT_JUMP_FINS)

    plan = fins_dispatch(fs, SHORT_JUMP_CONFIG)

    assert plan.strategies == (StrategyKind.SHORT_JUMPS,)
    assert len(plan.partition.near) == len(SHORT_JUMP_FINS)


def test_fins_through_one_vertex_plan_a_blob():
    _, fs = make_fins(HUB_HEIGHT, HUB_FINS)

    plan = fins_dispatch(fs, HUB_CONFIG)

    assert plan.strategies == (StrategyKind.EXTERNAL_BLOB,)
    assert len(plan.partition.hub) == len(HUB_FINS)
    (attempt,) = plan.attempts
    assert attempt.blob is not None
    assert not set(attempt.blob.edge_ids) & fs.wall.edge_set


def test_small_hub_blob_fails_softly():
    _, fs = make_fins(HUB_HEIGHT, HUB_FINS)
    (attempt,) = fins_dispatch(fs, HUB_CONFIG).attempts

    outcome = run_attempt(attempt, HUB_CONFIG)

    assert isinstance(outcome, StrategyFailure)
    assert outcome.strategy == StrategyKind.EXTERNAL_BLOB.value


def test_partition_counts_every_fin():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    partition = partition_fins(fs, SHORT_JUMP_CONFIG.replace(a2=100))

    assert len(partition) == len(fs)
    assert len(partition.near) == len(fs)


def test_empty_fin_system():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    with pytest.raises(ParameterError):
        fins_dispatch(FinSystem(fs.wall, ()), LONG_JUMP_CONFIG)


def test_invalid_fin_system():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)
    stray = Fin(fs.wall.vertex_at((1, 1)), fs.fins[0].path)

    with pytest.raises(HypothesisViolated):
        fins_dispatch(FinSystem(fs.wall, (stray,)), LONG_JUMP_CONFIG)


def test_select_separated():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)
    roots = list(fs.roots)

    assert select_separated(fs.wall, [], 3) == ()
    assert select_separated(fs.wall, reversed(roots), 1) == tuple(roots)
    assert select_separated(fs.wall, roots, 100) == (roots[0],)
