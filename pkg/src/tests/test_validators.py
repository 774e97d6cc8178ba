from __future__ import annotations

import pytest

from immersion_forge import FinSystem, PipelineConfig
from immersion_forge._validators import (
    LONG_JUMPS_CHECKS,
    SHORT_JUMPS_CHECKS,
    EnoughFins,
    FinsEdgeDisjoint,
    PointsSeparated,
    TargetsFar,
    TargetsNear,
    run_checks,
)
from immersion_forge.exceptions import HypothesisViolated
from immersion_forge.wallgeom import Fin
from tests.conftest import (
    LONG_JUMP_CONFIG,
    LONG_JUMP_FINS,
    LONG_JUMP_HEIGHT,
    SHORT_JUMP_CONFIG,
    SHORT_JUMP_FINS,
    SHORT_JUMP_HEIGHT,
    make_fins,
)


@pytest.fixture()
def far_fins() -> FinSystem:
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)
    return fs


@pytest.fixture()
def near_fins() -> FinSystem:
    _, fs = make_fins(SHORT_JUMP_HEIGHT, SHORT_JUMP_FINS)
    return fs


def test_fixtures_pass_their_own_checks(far_fins: FinSystem, near_fins: FinSystem):
    run_checks(LONG_JUMPS_CHECKS, far_fins, LONG_JUMP_CONFIG)
    run_checks(SHORT_JUMPS_CHECKS, near_fins, SHORT_JUMP_CONFIG)


def test_enough_fins(far_fins: FinSystem):
    check = EnoughFins(lambda cfg: cfg.long_fins_needed, "long-jumps")

    with pytest.raises(HypothesisViolated) as excinfo:
        check.check(far_fins.restricted(far_fins.roots[:3]), LONG_JUMP_CONFIG)

    assert excinfo.value.reason == "long-jumps needs 5 fins, got 3"


def test_fins_sharing_an_edge(far_fins: FinSystem):
    first = far_fins.fins[0]
    twin = Fin(far_fins.fins[1].root, first.path)

    with pytest.raises(HypothesisViolated):
        FinsEdgeDisjoint().check(FinSystem(far_fins.wall, (first, twin)), LONG_JUMP_CONFIG)


def test_points_separated(far_fins: FinSystem):
    strict = PipelineConfig(a1=100)

    PointsSeparated(lambda cfg: cfg.a1, with_targets=True).check(far_fins, LONG_JUMP_CONFIG)
    with pytest.raises(HypothesisViolated):
        PointsSeparated(lambda cfg: cfg.a1, with_targets=False).check(far_fins, strict)


def test_targets_far_and_near(far_fins: FinSystem, near_fins: FinSystem):
    TargetsFar().check(far_fins, LONG_JUMP_CONFIG)
    TargetsNear().check(near_fins, SHORT_JUMP_CONFIG)

    with pytest.raises(HypothesisViolated):
        TargetsFar().check(near_fins, SHORT_JUMP_CONFIG)
    with pytest.raises(HypothesisViolated):
        TargetsNear().check(far_fins, SHORT_JUMP_CONFIG)
