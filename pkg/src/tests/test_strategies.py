from __future__ import annotations

import networkx as nx
import pytest

from immersion_forge import ImmersionMap, MultiGraph, StrategyFailure, grid
from immersion_forge.exceptions import HypothesisViolated, ParameterError
from immersion_forge.pipeline import (
    carve_site,
    grid_rotation,
    pair_roots_in_tree,
    perfect_matching_of_grid,
    strategy_external_blob,
    strategy_internal_blob,
    strategy_long_jumps,
    strategy_short_jumps,
)
from immersion_forge.pipeline._strategies import MAX_PORT_COMBOS, _port_combos, _RoutingTally
from tests.conftest import (
    LONG_JUMP_CONFIG,
    LONG_JUMP_FINS,
    LONG_JUMP_HEIGHT,
    SHORT_JUMP_CONFIG,
    SHORT_JUMP_FINS,
    SHORT_JUMP_HEIGHT,
    assert_verified_rooted,
    make_fins,
)


@pytest.mark.parametrize("g, size", [(2, 2), (4, 8)])
def test_perfect_matching_covers_the_grid(g: int, size: int):
    pattern, _ = grid(g)

    matching = perfect_matching_of_grid(g)

    assert len(matching) == size
    assert {v for e in matching for v in pattern.ends(e)} == set(pattern.vertices)


def test_odd_grids_have_no_perfect_matching():
    with pytest.raises(ParameterError):
        perfect_matching_of_grid(3)


def test_grid_rotation_is_clockwise():
    pattern, labeling = grid(2)

    assert grid_rotation(pattern, labeling, 0) == [0, 1]  # east, south
    assert grid_rotation(pattern, labeling, 3) == [3, 2]  # west, north


def test_pairs_along_a_path():
    tree = nx.path_graph(4)

    assert pair_roots_in_tree(tree, [0, 1, 2, 3]) == [(0, 1), (2, 3)]


def test_odd_terminal_is_left_out():
    tree = nx.star_graph(3)

    pairs = pair_roots_in_tree(tree, [1, 2, 3])

    assert pairs == [(2, 3)]
    assert pair_roots_in_tree(tree, []) == []


def test_long_jumps():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    m = strategy_long_jumps(fs, LONG_JUMP_CONFIG)

    assert_verified_rooted(m, fs.roots)
    assert m.pattern.vertex_count == 4


def test_long_jumps_needs_enough_fins():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    with pytest.raises(HypothesisViolated):
        strategy_long_jumps(fs.restricted(fs.roots[:2]), LONG_JUMP_CONFIG)


def test_internal_blob_with_spread_targets():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    m = strategy_internal_blob(fs, LONG_JUMP_CONFIG)

    assert_verified_rooted(m, fs.roots)


def test_short_jumps():
    _, fs = make_fins(SHORT_JUMP_HEIGHT, SHORT_JUMP_FINS)

    m = strategy_short_jumps(fs, SHORT_JUMP_CONFIG)

    assert_verified_rooted(m, fs.roots)
    assert isinstance(m, ImmersionMap)
    assert sorted(m.vertex_map.values()) == sorted(fs.roots)


def test_short_jumps_rejects_far_targets():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    with pytest.raises(HypothesisViolated):
        strategy_short_jumps(fs, SHORT_JUMP_CONFIG)


def test_carve_site_around_a_near_target():
    _, fs = make_fins(SHORT_JUMP_HEIGHT, SHORT_JUMP_FINS)
    fin = fs.fins[0]

    site = carve_site(fs.wall, fin, 2)

    assert site is not None
    assert site.radius == 1
    assert fin.target in site.region
    assert len(set(site.ports)) == 4
    assert set(site.ports) <= site.boundary
    assert all(path.start == fin.root for path in site.escapes)


def test_carve_site_misses_a_far_target():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    assert carve_site(fs.wall, fs.fins[1], 1) is None


def test_external_blob_needs_a_connected_blob():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)

    with pytest.raises(HypothesisViolated):
        strategy_external_blob(fs, MultiGraph.build(2, []), LONG_JUMP_CONFIG)


def test_external_blob_must_avoid_the_wall():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)
    branch = fs.wall.branch((1, 1), (1, 2))

    with pytest.raises(HypothesisViolated):
        strategy_external_blob(fs, fs.wall.host.edge_subgraph(branch.edges), LONG_JUMP_CONFIG)


def test_external_blob_needs_enough_roots():
    _, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)
    blob = fs.wall.host.edge_subgraph(fs.fins[0].path.edges)

    with pytest.raises(HypothesisViolated):
        strategy_external_blob(fs, blob, LONG_JUMP_CONFIG)


def test_failures_are_values():
    failure = StrategyFailure("long-jumps", "no port assignment could be routed")

    assert str(failure) == "long-jumps: no port assignment could be routed"


def test_capped_port_assignments_are_named_in_the_reason():
    candidates = [[{0: 0}, {0: 1}, {0: 2}, {0: 3}]] * 3
    tally = _RoutingTally()

    combos = list(_port_combos(candidates, tally))

    assert len(combos) == MAX_PORT_COMBOS < 4**3
    assert tally.capped
    assert f"only the first {MAX_PORT_COMBOS} per orientation" in tally.reason()


def test_uncapped_port_assignments_are_all_tried():
    tally = _RoutingTally()

    assert len(list(_port_combos([[{0: 0}, {0: 1}]] * 2, tally))) == 4
    assert not tally.capped
    assert "only the first" not in tally.reason()
