from __future__ import annotations

import typing as t
from pathlib import Path

import pytest

from immersion_forge import ImmersionMap, Walk, elementary_wall, grid, quad_star
from immersion_forge.cli import EXIT_EXHAUSTED, EXIT_FALSE, EXIT_HYPOTHESIS, EXIT_INPUT, EXIT_OK, run
from immersion_forge.cli import _formats as fmt
from tests.conftest import LONG_JUMP_FINS, LONG_JUMP_HEIGHT, make_fins


@pytest.fixture()
def write(tmp_path: Path) -> t.Callable[[str, str], str]:
    def factory(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return factory


def test_gen_grid(tmp_path: Path):
    out = tmp_path / "grid.txt"

    assert run(["gen", "grid", "--g", "3", "--out", str(out)]) == EXIT_OK

    graph = fmt.read_graph(out)
    assert (graph.vertex_count, graph.edge_count) == (9, 12)


def test_verify_ok_and_violated(write, capsys: pytest.CaptureFixture[str]):
    graph, _ = grid(2)
    host = write("host.txt", fmt.serialize_graph(graph))
    good = write("good.txt", fmt.serialize_map(ImmersionMap.identity(graph)))
    broken = ImmersionMap.identity(graph).with_edges({0: Walk((0, 2), (1,))})
    bad = write("bad.txt", fmt.serialize_map(broken))

    assert run(["verify", "--host", host, "--pattern", host, "--map", good]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "ok"

    assert run(["verify", "--host", host, "--pattern", host, "--map", bad]) == EXIT_FALSE
    assert capsys.readouterr().out.startswith("violation")


def test_verify_with_roots(write):
    graph, _ = grid(2)
    host = write("host.txt", fmt.serialize_graph(graph))
    good = write("good.txt", fmt.serialize_map(ImmersionMap.identity(graph)))
    roots = write("roots.txt", fmt.serialize_vertex_set([0, 1, 2]))

    assert run(["verify", "--host", host, "--pattern", host, "--map", good, "--roots", roots]) == EXIT_FALSE


def test_find_searches_exhaustively(write, capsys: pytest.CaptureFixture[str]):
    pattern, _ = grid(2)
    host = write("host.txt", fmt.serialize_graph(quad_star(4)))
    grid_file = write("grid.txt", fmt.serialize_graph(pattern))

    assert run(["find", "--host", host, "--pattern", grid_file]) == EXIT_OK
    assert capsys.readouterr().out.startswith("format: 1")

    assert run(["find", "--host", grid_file, "--pattern", host]) == EXIT_FALSE
    assert run(["find", "--host", host, "--pattern", grid_file, "--budget", "1"]) == EXIT_EXHAUSTED


def test_tree_width(write, capsys: pytest.CaptureFixture[str]):
    graph, _ = grid(3)
    path = write("grid.txt", fmt.serialize_graph(graph))

    assert run(["tw", "--graph", path, "--exact"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "width 3"


def test_connectivity(write, capsys: pytest.CaptureFixture[str]):
    path = write("star.txt", fmt.serialize_graph(quad_star(4)))

    assert run(["conn", "--graph", path, "--set", "1,2,3,4"]) == EXIT_OK
    assert run(["conn", "--graph", path, "--set", "1,2", "--k", "5"]) == EXIT_FALSE
    assert capsys.readouterr().out.splitlines()[-1] == "not pairwise 5-edge-connected: 1 2 have connectivity 4"


def test_lift_keeps_the_record(write, capsys: pytest.CaptureFixture[str]):
    path = write("path.txt", "3 2\n0 1\n1 2\n")

    assert run(["lift", "--graph", path, "--at", "1", "--edges", "0,1"]) == EXIT_OK
    assert capsys.readouterr().out.splitlines()[-1] == "# lift 1: -0 -1 +2(0,2)"


def test_wall_find_and_distance(write, capsys: pytest.CaptureFixture[str]):
    graph, wall = elementary_wall(2)
    graph_path = write("wall.txt", fmt.serialize_graph(graph))
    wall_path = write("wall.labels", fmt.serialize_wall(wall))

    assert run(["wall", "dist", "--graph", graph_path, "--wall", wall_path, "--s", "1,1", "--t", "1,3"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "1"

    assert run(["wall", "find", "--graph", graph_path, "--h", "4"]) == EXIT_FALSE


def test_grid_immersion_with_a_given_wall(tmp_path: Path, write):
    graph, fs = make_fins(LONG_JUMP_HEIGHT, LONG_JUMP_FINS)
    graph_path = write("host.txt", fmt.serialize_graph(graph))
    wall_path = write("host.wall", fmt.serialize_wall(fs.wall))
    roots_path = write("roots.txt", fmt.serialize_vertex_set(fs.roots))
    report, map_out = tmp_path / "report.txt", tmp_path / "map.txt"
    overrides = [arg for key in ("a1", "a2", "a3", "c") for arg in ("--set", f"{key}=1")]

    code = run(
        [
            "grid-immersion",
            *("--graph", graph_path, "--g", "2", "--roots", roots_path, "--wall", wall_path),
            *overrides,
            *("--report", str(report), "--map-out", str(map_out)),
        ]
    )

    assert code == EXIT_OK
    assert report.read_text().splitlines()[:2] == ["format: 1", "outcome: found"]
    pattern, _ = grid(2)
    pattern_path = write("j2.txt", fmt.serialize_graph(pattern))
    assert run(["verify", "--host", graph_path, "--pattern", pattern_path, "--map", str(map_out)]) == EXIT_OK


def test_grid_immersion_rejects_weak_roots(write, capsys: pytest.CaptureFixture[str]):
    graph, wall = elementary_wall(2)
    graph_path = write("wall.txt", fmt.serialize_graph(graph))
    roots_path = write("roots.txt", fmt.serialize_vertex_set([wall.vertex_at((1, 1)), wall.vertex_at((3, 6))]))

    assert run(["grid-immersion", "--graph", graph_path, "--g", "2", "--roots", roots_path]) == EXIT_HYPOTHESIS
    assert "outcome: hypothesis violated" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv",
    [
        ["tw", "--graph", "missing.txt"],
        ["gen", "grid", "--g", "1"],
        ["conn", "--graph", "{bad}", "--set", "0,1"],
        ["grid-immersion", "--graph", "{good}", "--g", "2", "--roots", "{good}", "--set", "nope=1"],
    ],
)
def test_input_errors(write, argv: t.List[str]):
    bad = write("bad.txt", "2 1\n0 9\n")
    good = write("good.txt", "2 1\n0 1\n")

    assert run([arg.format(bad=bad, good=good) for arg in argv]) == EXIT_INPUT


def test_dot_export(write, capsys: pytest.CaptureFixture[str]):
    path = write("star.txt", fmt.serialize_graph(quad_star(1)))

    assert run(["dot", "--graph", path]) == EXIT_OK
    assert capsys.readouterr().out.count(" -- ") == 4
