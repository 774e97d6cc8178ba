"""
The `forge` command line. Every subcommand maps its outcome to an exit code:

  0  success / true
  2  verification violation / false
  3  input or parameter error
  4  search exhausted
  5  hypothesis violated
"""
from __future__ import annotations

import logging
import sys
import typing as t
from pathlib import Path

import click
from networkx.algorithms.approximation import treewidth_min_fill_in

from .._models import PipelineConfig
from .._reports._models import PipelineOutcome
from .._reports._printers import PRINTERS, print_report, report_lines
from .._types import Label
from ..connectivity import Infeasible, augment_with_prescribed_ends, disjoint_paths_to_set, pairwise_k_connected
from ..exceptions import ForgeException, HypothesisViolated, PullBackFailed
from ..generators import FinAttachment, grid, quad_star, subdivided_wall, wall_with_fins
from ..immersion import find_immersion, is_rooted, verify
from ..lifting import lift_pair, reduce_immersed_wall
from ..multigraph import MultiGraph
from ..pipeline import find_grid_immersion
from ..treedecomp import TreeDecomposition, exact_treewidth, verify_decomposition, width
from ..wallgeom import find_wall, wall_distance
from . import _formats as fmt
from ._dot import export_dot

logger = logging.getLogger("immersion_forge")

EXIT_OK: t.Final = 0
EXIT_FALSE: t.Final = 2
EXIT_INPUT: t.Final = 3
EXIT_EXHAUSTED: t.Final = 4
EXIT_HYPOTHESIS: t.Final = 5

_SEARCH_EXIT: t.Final = {"found": EXIT_OK, "not_found": EXIT_FALSE, "budget_exhausted": EXIT_EXHAUSTED}

_PATH = click.Path(dir_okay=False, path_type=Path)
_EXISTING = click.Path(exists=True, dir_okay=False, path_type=Path)


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        click.echo(text, nl=False)
    else:
        out.write_text(text, encoding="utf-8")


def _int_list(raw: str) -> t.List[int]:
    try:
        return [int(token) for token in raw.replace(",", " ").split()]
    except ValueError:
        raise click.BadParameter(f"expected comma separated integers, got {raw!r}") from None


def _label(raw: str) -> Label:
    values = _int_list(raw)
    if len(values) != 2:
        raise click.BadParameter(f"expected a label `i,j`, got {raw!r}")

    return values[0], values[1]


def _fin_attachment(raw: str) -> t.Tuple[int, FinAttachment]:
    """`i:target[:via[:hub]]` where target is `i,j`, `far` or `near`"""
    parts = raw.split(":")
    if not 2 <= len(parts) <= 4:
        raise click.BadParameter(f"expected i:target[:via[:hub]], got {raw!r}")

    target: t.Union[Label, str] = parts[1] if parts[1] in ("far", "near") else _label(parts[1])
    via = int(parts[2]) if len(parts) > 2 and parts[2] else 1
    hub = parts[3] if len(parts) > 3 and parts[3] else None
    return int(parts[0]), FinAttachment(target, via, hub)


def _config(pairs: t.Sequence[str]) -> PipelineConfig:
    return PipelineConfig.from_pairs(pairs)


@click.group()
@click.option("--verbose", is_flag=True, help="Log every pipeline stage")
def forge(verbose: bool) -> None:
    """Rooted grid immersions through walls, fins and lifts."""
    if verbose:
        logger.setLevel(logging.DEBUG)


# Generators


@forge.group()
def gen() -> None:
    """Fixture graphs in the canonical graph format."""


@gen.command("grid")
@click.option("--g", "side", type=int, required=True)
@click.option("--out", type=_PATH)
@click.option("--labels", type=_PATH, help="Where to write the `label:` side-car")
def gen_grid(side: int, out: Path | None, labels: Path | None) -> int:
    graph, labeling = grid(side)
    _emit(fmt.serialize_graph(graph), out)
    if labels is not None:
        labels.write_text(fmt.serialize_labeling(labeling.vertex_of), encoding="utf-8")

    return EXIT_OK


@gen.command("wall")
@click.option("--h", "height", type=int, required=True)
@click.option("--subdivide", type=int, default=0, show_default=True)
@click.option("--out", type=_PATH)
@click.option("--labels", type=_PATH, help="Where to write the wall side-car")
def gen_wall(height: int, subdivide: int, out: Path | None, labels: Path | None) -> int:
    graph, wall = subdivided_wall(height, subdivide)
    _emit(fmt.serialize_graph(graph), out)
    if labels is not None:
        labels.write_text(fmt.serialize_wall(wall), encoding="utf-8")

    return EXIT_OK


@gen.command("quadstar")
@click.option("--leaves", type=int, required=True)
@click.option("--out", type=_PATH)
def gen_quadstar(leaves: int, out: Path | None) -> int:
    _emit(fmt.serialize_graph(quad_star(leaves)), out)
    return EXIT_OK


@gen.command("fins")
@click.option("--h", "height", type=int, required=True)
@click.option("--fin", "fins", multiple=True, required=True, help="i:target[:via[:hub]], target is i,j / far / near")
@click.option("--subdivide", type=int, default=0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=_PATH)
@click.option("--wall-out", type=_PATH)
@click.option("--fins-out", type=_PATH)
@click.option("--roots-out", type=_PATH)
def gen_fins(
    height: int,
    fins: t.Sequence[str],
    subdivide: int,
    seed: int,
    out: Path | None,
    wall_out: Path | None,
    fins_out: Path | None,
    roots_out: Path | None,
) -> int:
    graph, fs = wall_with_fins(height, [_fin_attachment(raw) for raw in fins], subdivide, seed)
    _emit(fmt.serialize_graph(graph), out)
    if wall_out is not None:
        wall_out.write_text(fmt.serialize_wall(fs.wall), encoding="utf-8")
    if fins_out is not None:
        fins_out.write_text(fmt.serialize_fins({fin.root: fin.path for fin in fs.fins}, graph), encoding="utf-8")
    if roots_out is not None:
        roots_out.write_text(fmt.serialize_vertex_set(fs.roots), encoding="utf-8")

    return EXIT_OK


# Immersions


@forge.command("verify")
@click.option("--host", type=_EXISTING, required=True)
@click.option("--pattern", type=_EXISTING, required=True)
@click.option("--map", "map_path", type=_EXISTING, required=True)
@click.option("--roots", type=_EXISTING)
def verify_cmd(host: Path, pattern: Path, map_path: Path, roots: Path | None) -> int:
    """Replays an immersion map against host and pattern."""
    m = fmt.parse_map(fmt.read_text(map_path), fmt.read_graph(pattern), fmt.read_graph(host), str(map_path))
    verdict = verify(m)
    for violation in verdict.violations:
        click.echo(f"violation {violation}")

    if not verdict:
        return EXIT_FALSE

    if roots is not None:
        allowed = fmt.parse_vertex_set(fmt.read_text(roots), str(roots))
        if not is_rooted(m, allowed):
            click.echo("violation [rooted] a vertex image lies outside the roots")
            return EXIT_FALSE

    click.echo("ok")
    return EXIT_OK


@forge.command("find")
@click.option("--host", type=_EXISTING, required=True)
@click.option("--pattern", type=_EXISTING, required=True)
@click.option("--roots", type=_EXISTING)
@click.option("--budget", type=int, default=10**7, show_default=True)
@click.option("--out", type=_PATH)
def find_cmd(host: Path, pattern: Path, roots: Path | None, budget: int, out: Path | None) -> int:
    """Exhaustive immersion search."""
    allowed = fmt.parse_vertex_set(fmt.read_text(roots), str(roots)) if roots is not None else None
    result = find_immersion(fmt.read_graph(host), fmt.read_graph(pattern), allowed, budget)
    if result.found:
        _emit(fmt.serialize_map(result.unwrap()), out)
    else:
        click.echo(f"{result.status.value} after {result.expansions:,} expansions")

    return _SEARCH_EXIT[result.status.value]


# Tree-width


def _approximate_decomposition(graph: MultiGraph) -> TreeDecomposition:
    _, tree = treewidth_min_fill_in(graph.simple_graph())
    nodes = sorted(tree.nodes, key=lambda bag: sorted(bag))
    index = {bag: idx for idx, bag in enumerate(nodes)}
    tree_edges = sorted((min(index[a], index[b]), max(index[a], index[b])) for a, b in tree.edges)
    return TreeDecomposition(MultiGraph.build(len(nodes), tree_edges), {index[bag]: frozenset(bag) for bag in nodes})


@forge.command("tw")
@click.option("--graph", "graph_path", type=_EXISTING, required=True)
@click.option("--exact", is_flag=True, help="Exact tree-width; refuses large graphs")
@click.option("--check", type=_EXISTING, help="Verify this decomposition instead of computing one")
@click.option("--out", type=_PATH)
def tw_cmd(graph_path: Path, exact: bool, check: Path | None, out: Path | None) -> int:
    """Tree decompositions and their width."""
    graph = fmt.read_graph(graph_path)
    if check is not None:
        decomposition = fmt.parse_decomposition(fmt.read_text(check), str(check))
        verdict = verify_decomposition(graph, decomposition)
        for violation in verdict.violations:
            click.echo(f"violation {violation}")
        if not verdict:
            return EXIT_FALSE
        click.echo(f"width {width(decomposition)}")
        return EXIT_OK

    if exact:
        value, decomposition = exact_treewidth(graph)
    else:
        decomposition = _approximate_decomposition(graph)
        value = width(decomposition)

    click.echo(f"width {value}")
    if out is not None:
        _emit(fmt.serialize_decomposition(decomposition), out)

    return EXIT_OK


# Connectivity


@forge.command("conn")
@click.option("--graph", "graph_path", type=_EXISTING, required=True)
@click.option("--set", "vertex_set", required=True, help="v1,v2,...")
@click.option("--k", type=int, default=4, show_default=True)
def conn_cmd(graph_path: Path, vertex_set: str, k: int) -> int:
    """Pairwise k-edge-connectivity of a vertex set."""
    verdict = pairwise_k_connected(fmt.read_graph(graph_path), _int_list(vertex_set), k)
    if verdict:
        click.echo(f"pairwise {k}-edge-connected")
        return EXIT_OK

    u, v = t.cast(t.Tuple[int, int], verdict.failing_pair)
    click.echo(f"not pairwise {k}-edge-connected: {u} {v} have connectivity {verdict.value}")
    return EXIT_FALSE


@forge.command("paths")
@click.option("--graph", "graph_path", type=_EXISTING, required=True)
@click.option("--from", "source", type=int, required=True)
@click.option("--targets", required=True)
@click.option("--k", type=int, default=4, show_default=True)
@click.option("--prescribe", help="a,b,c: the first three paths end here, in this order")
def paths_cmd(graph_path: Path, source: int, targets: str, k: int, prescribe: str | None) -> int:
    """Edge-disjoint paths from a vertex into a set, in walk format."""
    graph = fmt.read_graph(graph_path)
    target_set = _int_list(targets)

    if prescribe is None:
        bundle = disjoint_paths_to_set(graph, source, target_set, k)
    else:
        ends = _int_list(prescribe)
        seeds = disjoint_paths_to_set(graph, source, ends, 3, forbidden_interior=target_set)
        if isinstance(seeds, Infeasible):
            click.echo(f"infeasible: the prescribed ends are cut off by {' '.join(map(str, seeds.cut))}")
            return EXIT_FALSE

        ordered = sorted(seeds.paths, key=lambda path: ends.index(path.end))
        bundle = augment_with_prescribed_ends(graph, source, target_set, ends, ordered)

    if isinstance(bundle, Infeasible):
        click.echo(f"infeasible: flow {bundle.flow_value}, cut {' '.join(map(str, bundle.cut))}")
        return EXIT_FALSE

    for path in bundle.paths:
        click.echo(str(path))

    return EXIT_OK


# Walls


@forge.group("wall")
def wall_group() -> None:
    """Walls inside graphs."""


@wall_group.command("find")
@click.option("--graph", "graph_path", type=_EXISTING, required=True)
@click.option("--h", "height", type=int, required=True)
@click.option("--budget", type=int, default=10**7, show_default=True)
@click.option("--out", type=_PATH)
def wall_find(graph_path: Path, height: int, budget: int, out: Path | None) -> int:
    result = find_wall(fmt.read_graph(graph_path), height, budget)
    if result.found:
        _emit(fmt.serialize_wall(result.unwrap()), out)
    else:
        click.echo(f"{result.status.value} after {result.expansions:,} expansions")

    return _SEARCH_EXIT[result.status.value]


@wall_group.command("dist")
@click.option("--graph", "graph_path", type=_EXISTING, required=True)
@click.option("--wall", "wall_path", type=_EXISTING, required=True)
@click.option("--s", "s_label", required=True, help="i,j")
@click.option("--t", "t_label", required=True, help="i,j")
def wall_dist(graph_path: Path, wall_path: Path, s_label: str, t_label: str) -> int:
    wall = fmt.parse_wall(fmt.read_text(wall_path), fmt.read_graph(graph_path), str(wall_path))
    click.echo(str(wall_distance(wall, wall.vertex_at(_label(s_label)), wall.vertex_at(_label(t_label)))))
    return EXIT_OK


# Lifting


@forge.command("lift")
@click.option("--graph", "graph_path", type=_EXISTING, required=True)
@click.option("--at", "vertex", type=int, required=True)
@click.option("--edges", required=True, help="d1,d2")
@click.option("--out", type=_PATH)
def lift_cmd(graph_path: Path, vertex: int, edges: str, out: Path | None) -> int:
    """Lifts two edges at a vertex; the record is kept as a trailing comment."""
    pair = _int_list(edges)
    if len(pair) != 2:
        raise click.BadParameter("expected exactly two edge ids", param_hint="--edges")

    lifted, record = lift_pair(fmt.read_graph(graph_path), vertex, pair[0], pair[1])
    _emit(fmt.serialize_graph(lifted) + f"# {record}\n", out)
    return EXIT_OK


@forge.command("reduce")
@click.option("--graph", "graph_path", type=_EXISTING, required=True)
@click.option("--h", "height", type=int, required=True, help="Height of the immersed elementary wall")
@click.option("--map", "map_path", type=_EXISTING, required=True)
@click.option("--s0", type=_EXISTING, required=True)
@click.option("--fins", "fins_path", type=_EXISTING, required=True)
@click.option("--set", "overrides", multiple=True, help="key=value config override")
@click.option("--out", type=_PATH, help="Lift history")
@click.option("--graph-out", type=_PATH, help="The lifted graph the wall and fins refer to")
@click.option("--wall-out", type=_PATH)
@click.option("--fins-out", type=_PATH)
def reduce_cmd(
    graph_path: Path,
    height: int,
    map_path: Path,
    s0: Path,
    fins_path: Path,
    overrides: t.Sequence[str],
    out: Path | None,
    graph_out: Path | None,
    wall_out: Path | None,
    fins_out: Path | None,
) -> int:
    """Lifts crossings away until the immersed wall is a wall with a fin system."""
    graph = fmt.read_graph(graph_path)
    pattern, _ = subdivided_wall(height)
    m0 = fmt.parse_map(fmt.read_text(map_path), pattern, graph, str(map_path))
    roots = fmt.parse_vertex_set(fmt.read_text(s0), str(s0))
    fins = fmt.parse_fins(fmt.read_text(fins_path), str(fins_path))

    result = reduce_immersed_wall(graph, m0, roots, fins, _config(overrides))
    _emit(fmt.serialize_lift_history(result.history), out)
    if graph_out is not None:
        graph_out.write_text(fmt.serialize_graph(result.graph), encoding="utf-8")
    if wall_out is not None:
        wall_out.write_text(fmt.serialize_wall(result.fin_system.wall), encoding="utf-8")
    if fins_out is not None:
        fins_out.write_text(
            fmt.serialize_fins({fin.root: fin.path for fin in result.fin_system.fins}, result.graph),
            encoding="utf-8",
        )

    return EXIT_OK


# Pipeline

_PIPELINE_EXIT: t.Final = {
    PipelineOutcome.FOUND: EXIT_OK,
    PipelineOutcome.EXHAUSTED: EXIT_EXHAUSTED,
    PipelineOutcome.HYPOTHESIS_VIOLATED: EXIT_HYPOTHESIS,
}


@forge.command("grid-immersion")
@click.option("--graph", "graph_path", type=_EXISTING, required=True)
@click.option("--g", "side", type=int, required=True)
@click.option("--roots", type=_EXISTING, required=True)
@click.option("--wall", "wall_path", type=_EXISTING, help="Wall side-car; searched for when missing")
@click.option("--height", type=int, help="Height of the wall to search for")
@click.option("--set", "overrides", multiple=True, help="key=value config override")
@click.option("--report", type=_PATH, help="Where to write the text trace (stdout otherwise)")
@click.option("--map-out", type=_PATH, help="Where to write the immersion map on success")
@click.option("--show", type=click.Choice(["rich", "list", "logger"]), help="Also print the report this way")
def grid_immersion_cmd(
    graph_path: Path,
    side: int,
    roots: Path,
    wall_path: Path | None,
    height: int | None,
    overrides: t.Sequence[str],
    report: Path | None,
    map_out: Path | None,
    show: PRINTERS | None,
) -> int:
    """An S-rooted immersion of the g x g grid."""
    graph = fmt.read_graph(graph_path)
    chosen = fmt.parse_vertex_set(fmt.read_text(roots), str(roots))
    wall = fmt.parse_wall(fmt.read_text(wall_path), graph, str(wall_path)) if wall_path is not None else None
    config = _config([*overrides, f"g={side}"])

    result = find_grid_immersion(graph, side, chosen, wall=wall, height=height, config=config)
    _emit("\n".join(report_lines(result)) + "\n", report)
    if result.result is not None and map_out is not None:
        map_out.write_text(fmt.serialize_map(result.result), encoding="utf-8")
    if show is not None:
        print_report(result, show)

    return _PIPELINE_EXIT[result.outcome]


# Inspection


@forge.command("dot")
@click.option("--graph", "graph_path", type=_EXISTING, required=True)
@click.option("--wall", "wall_path", type=_EXISTING)
@click.option("--map", "map_path", type=_EXISTING)
@click.option("--pattern", type=_EXISTING, help="Pattern graph of --map")
@click.option("--out", type=_PATH)
def dot_cmd(
    graph_path: Path, wall_path: Path | None, map_path: Path | None, pattern: Path | None, out: Path | None
) -> int:
    """DOT export with optional wall and immersion overlays."""
    graph = fmt.read_graph(graph_path)
    wall = fmt.parse_wall(fmt.read_text(wall_path), graph, str(wall_path)) if wall_path is not None else None

    immersion = None
    if map_path is not None:
        if pattern is None:
            raise click.BadParameter("--map needs --pattern", param_hint="--pattern")
        immersion = fmt.parse_map(fmt.read_text(map_path), fmt.read_graph(pattern), graph, str(map_path))

    _emit(export_dot(graph, wall, immersion), out)
    return EXIT_OK


def run(argv: t.Sequence[str]) -> int:
    """Runs one invocation and returns its exit code; nothing escapes"""
    try:
        code = forge.main(args=list(argv), prog_name="forge", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return EXIT_INPUT
    except click.Abort:
        return EXIT_INPUT
    except HypothesisViolated as exc:
        click.echo(f"hypothesis violated: {exc}", err=True)
        return EXIT_HYPOTHESIS
    except PullBackFailed as exc:
        click.echo(f"pull-back failed: {exc}", err=True)
        return EXIT_EXHAUSTED
    except ForgeException as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_INPUT

    return code if isinstance(code, int) else EXIT_OK


def main() -> None:
    sys.exit(run(sys.argv[1:]))
