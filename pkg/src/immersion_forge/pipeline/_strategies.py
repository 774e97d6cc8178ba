"""
The four ways of turning a fin system into a rooted grid immersion.

Every strategy re-checks its own hypotheses (raising `HypothesisViolated`),
routes the grid through the wall with `route_disjoint_paths_in`, and returns
either a map that passed `verify` and is rooted at the fin roots, or a
`StrategyFailure` saying what could not be routed.
"""
from __future__ import annotations

import itertools
import logging
import math
import typing as t
from collections import defaultdict
from dataclasses import dataclass

import networkx as nx

from .. import _elementary as elem
from .._configs import active_config
from .._models import Budget, PipelineConfig, StrategyFailure
from .._types import EdgeId, Label, VertexId
from .._validators import INTERNAL_BLOB_CHECKS, LONG_JUMPS_CHECKS, SHORT_JUMPS_CHECKS, PointsSeparated, run_checks
from ..connectivity import EdgeDisjointBundle, Infeasible, disjoint_paths_to_set
from ..exceptions import HypothesisViolated, ParameterError
from ..generators import GridLabeling, grid
from ..immersion import ImmersionMap, verify
from ..multigraph import MultiGraph, Walk
from ..wallgeom import (
    Fin,
    FinSystem,
    Wall,
    diagonal_vertices,
    distance_to_perimeter,
    subwall,
    validate_fin_system,
    wall_distance,
)
from ._dispatch import StrategyKind, select_separated
from ._routing import DEMAND, route_disjoint_paths_in

logger = logging.getLogger(__name__)

MAX_PORT_COMBOS: t.Final = 27
"""Port assignments tried per orientation before a strategy gives up on routing"""

_GRID_CLOCKWISE: t.Final = ((0, 1), (1, 0), (0, -1), (-1, 0))

STRATEGY_RESULT = t.Union[ImmersionMap, StrategyFailure]


# Grid helpers


def perfect_matching_of_grid(g: int) -> t.FrozenSet[EdgeId]:
    """Horizontal edges pairing columns `2k - 1` and `2k` in every row of J_g"""
    if g % 2:
        raise ParameterError("g", g, "only grids of even side have a perfect matching")

    pattern, labeling = grid(g)
    found: t.Set[EdgeId] = set()
    for i in range(1, g + 1):
        for k in range(1, g // 2 + 1):
            a, b = labeling.vertex(i, 2 * k - 1), labeling.vertex(i, 2 * k)
            found.add(min(pattern.edges_between(a, b)))

    return frozenset(found)


def grid_rotation(pattern: MultiGraph, labeling: GridLabeling, v: VertexId) -> t.List[EdgeId]:
    """Edges at `v` in clockwise order (east, south, west, north) with rows growing downwards"""
    i, j = labeling.label_of(v)
    around: t.List[EdgeId] = []
    for di, dj in _GRID_CLOCKWISE:
        other = labeling.vertex_of.get((i + di, j + dj))
        if other is not None:
            around.append(min(pattern.edges_between(v, other)))

    return around


def _restrict_to_grid(m: ImmersionMap, g: int) -> ImmersionMap:
    """The top-left J_g inside an immersed larger grid"""
    pattern, labeling = grid(g)
    _, big = grid(int(math.isqrt(m.pattern.vertex_count)))

    vertex_map = {v: m.vertex_map[big.vertex(*label)] for label, v in labeling.vertex_of.items()}
    edge_map: t.Dict[EdgeId, Walk] = {}
    for e, (a, b) in pattern.edges.items():
        la, lb = labeling.label_of(a), labeling.label_of(b)
        edge_map[e] = m.edge_map[min(m.pattern.edges_between(big.vertex(*la), big.vertex(*lb)))]

    return ImmersionMap(pattern, m.host, vertex_map, edge_map)


def _certify(strategy: StrategyKind, m: ImmersionMap, roots: t.Iterable[VertexId]) -> STRATEGY_RESULT:
    verdict = verify(m)
    if not verdict:
        return StrategyFailure(strategy.value, "assembled map failed verification", (str(verdict.violations[0]),))
    if not m.rooted_at(roots):
        return StrategyFailure(strategy.value, "assembled map is not rooted at the fin roots")

    return m


def _attempt(strategy: StrategyKind, fn: t.Callable[..., STRATEGY_RESULT], *args: t.Any) -> STRATEGY_RESULT:
    """Runs a nested strategy, turning a violated hypothesis into a failure value"""
    try:
        return fn(*args)
    except HypothesisViolated as exc:
        return StrategyFailure(strategy.value, exc.reason, exc.witness)


def _label_key(wall: Wall, v: VertexId) -> t.Tuple[Label, VertexId]:
    return wall.label_of.get(v, (wall.height + 2, 0)), v


# Port assignment


PORTS = t.Dict[EdgeId, VertexId]
"""Grid edge at one site to the port vertex its image leaves through"""


def _rotations(
    edges: t.Sequence[EdgeId], ports: t.Sequence[VertexId], score: t.Callable[[EdgeId, VertexId], int]
) -> t.List[PORTS]:
    """Every rotation of `ports` against `edges`, cheapest first"""
    options: t.List[t.Tuple[int, int, PORTS]] = []
    for r in range(len(ports)):
        assignment = {e: ports[(p + r) % len(ports)] for p, e in enumerate(edges)}
        options.append((sum(score(e, x) for e, x in assignment.items()), r, assignment))

    return [assignment for _, _, assignment in sorted(options, key=lambda item: item[:2])]


def _port_combos(
    candidates: t.Sequence[t.Sequence[PORTS]], tally: _RoutingTally
) -> t.Iterator[t.Tuple[PORTS, ...]]:
    if math.prod(len(options) for options in candidates) > MAX_PORT_COMBOS:
        tally.capped = True
    return itertools.islice(itertools.product(*candidates), MAX_PORT_COMBOS)


@dataclass
class _RoutingTally:
    tried: int = 0
    infeasible: int = 0
    exhausted: int = 0
    capped: bool = False

    def reason(self) -> str:
        cap = f", only the first {MAX_PORT_COMBOS} per orientation" if self.capped else ""
        return (
            f"no port assignment could be routed ({self.tried} tried{cap}, "
            f"{self.infeasible} infeasible, {self.exhausted} out of budget)"
        )


def _route_combos(
    routing: MultiGraph,
    pattern: MultiGraph,
    combos: t.Iterable[t.Sequence[DEMAND]],
    forbidden: t.AbstractSet[VertexId],
    share: int,
    tally: _RoutingTally,
) -> t.Tuple[t.Sequence[DEMAND], t.Tuple[Walk, ...]] | None:
    for demands in combos:
        terminals = [x for pair in demands for x in pair]
        if len(set(terminals)) != len(terminals) or any(
            x in forbidden or not routing.has_vertex(x) for x in terminals
        ):
            continue

        tally.tried += 1
        result = route_disjoint_paths_in(routing, demands, forbidden, Budget(share))
        if result.found:
            return demands, result.unwrap()
        if result.exhausted:
            tally.exhausted += 1
        else:
            tally.infeasible += 1

    logger.debug("Routing %s grid edges failed: %s", pattern.edge_count, tally.reason())
    return None


# Long jumps


def _drop_for_perimeter(fs: FinSystem, n: int, cfg: PipelineConfig) -> t.List[Fin]:
    wall = fs.wall
    fins = sorted(fs.fins, key=lambda fin: _label_key(wall, fin.root))
    if len(fins) <= n:
        return fins

    def closeness(fin: Fin) -> int:
        return min(distance_to_perimeter(wall, fin.root), distance_to_perimeter(wall, fin.target))

    nearest = min(fins, key=closeness)
    dropped = nearest if 2 * closeness(nearest) < cfg.a1 else fins[-1]
    return [fin for fin in fins if fin is not dropped][:n]


def _branch_interiors(wall: Wall, roots: t.Iterable[VertexId]) -> t.Set[VertexId]:
    found: t.Set[VertexId] = set()
    for s in roots:
        label = wall.label_of[s]
        for other in elem.neighbour_labels(wall.height, label):
            found.update(wall.branch(label, other).internal_vertices)

    return found


def _clockwise_ports(wall: Wall, root: VertexId) -> t.List[Label]:
    return list(reversed(elem.neighbour_labels(wall.height, wall.label_of[root])))


def strategy_long_jumps(fs: FinSystem, config: PipelineConfig | None = None) -> STRATEGY_RESULT:
    """
    Grid vertices go to fin roots in labeling order. Matching edges run out
    along both fins and join the targets inside the wall; the other edges
    leave their roots through the wall branches and join those ports.
    """
    cfg = active_config(config)
    run_checks(LONG_JUMPS_CHECKS, fs, cfg)
    kind = StrategyKind.LONG_JUMPS

    g = cfg.even_g
    pattern, labeling = grid(g)
    n = pattern.vertex_count
    if len(fs) < n:
        return StrategyFailure(kind.value, f"J_{g} needs {n} fins, got {len(fs)}")

    wall = fs.wall
    fins = _drop_for_perimeter(fs, n, cfg)
    site = dict(zip(sorted(pattern.vertices), fins))
    roots = [fin.root for fin in fins]
    matching = perfect_matching_of_grid(g)

    forbidden = set(roots) | _branch_interiors(wall, roots)
    for fin in fins:
        if fin.target in forbidden:
            return StrategyFailure(kind.value, "a target sits on a root or its branches", (fin.root, fin.target))

    free_edges: t.Dict[VertexId, t.List[EdgeId]] = {}
    for v in pattern.vertices:
        around = grid_rotation(pattern, labeling, v)
        last = next(idx for idx, e in enumerate(around) if e in matching)
        ordered = around[last + 1 :] + around[: last + 1]
        free_edges[v] = ordered[:-1]

    def partner(v: VertexId, e: EdgeId) -> VertexId:
        return site[pattern.other_end(e, v)].root

    def demands_for(assignment: t.Sequence[PORTS]) -> t.List[DEMAND]:
        port_of = dict(zip(sorted(pattern.vertices), assignment))
        demands: t.List[DEMAND] = []
        for e in pattern.edge_ids:
            h, i = pattern.ends(e)
            if e in matching:
                demands.append((site[h].target, site[i].target))
            else:
                demands.append((port_of[h][e], port_of[i][e]))
        return demands

    tally = _RoutingTally()
    share = max(cfg.routing_budget // (2 * MAX_PORT_COMBOS), 1)
    found = None
    for orientation in (1, -1):
        candidates = []
        for v in sorted(pattern.vertices):
            ports = [wall.vertex_at(label) for label in _clockwise_ports(wall, site[v].root)][::orientation]
            candidates.append(
                _rotations(free_edges[v], ports, lambda e, x, v=v: wall_distance(wall, x, partner(v, e)))
            )

        combos = (demands_for(assignment) for assignment in _port_combos(candidates, tally))
        found = _route_combos(wall.graph, pattern, combos, forbidden, share, tally)
        if found is not None:
            break

    if found is None:
        return StrategyFailure(kind.value, tally.reason(), tuple(roots))

    demands, paths = found
    edge_map: t.Dict[EdgeId, Walk] = {}
    for e, (a, b), q in zip(pattern.edge_ids, demands, paths):
        h, i = pattern.ends(e)
        if e in matching:
            walk = site[h].path.concat(q).concat(site[i].path.reversed())
        else:
            first = wall.branch(wall.label_of[site[h].root], wall.label_of[a])
            last = wall.branch(wall.label_of[b], wall.label_of[site[i].root])
            walk = first.concat(q).concat(last)
        edge_map[e] = walk.simplified()

    m = ImmersionMap(pattern, wall.host, {v: fin.root for v, fin in site.items()}, edge_map)
    outcome = _certify(kind, m, roots)
    if isinstance(outcome, ImmersionMap) and cfg.g != g:
        return _restrict_to_grid(outcome, cfg.g)

    return outcome


# External blob


def pair_roots_in_tree(tree: nx.Graph, terminals: t.Iterable[VertexId]) -> t.List[t.Tuple[VertexId, VertexId]]:
    """
    Pairs up terminals so the tree paths joining the pairs are edge-disjoint.
    Every subtree hands at most one unpaired terminal to its parent; with an
    odd count the last one is left out.
    """
    wanted = set(terminals)
    if not wanted:
        return []

    start = min(wanted)
    children: t.Dict[VertexId, t.List[VertexId]] = defaultdict(list)
    for child, parent in nx.dfs_predecessors(tree, start).items():
        children[parent].append(child)

    pairs: t.List[t.Tuple[VertexId, VertexId]] = []
    carried: t.Dict[VertexId, VertexId] = {}
    for v in nx.dfs_postorder_nodes(tree, start):
        waiting = [carried.pop(c) for c in sorted(children[v]) if c in carried]
        if v in wanted:
            waiting.insert(0, v)

        while len(waiting) >= 2:
            a, b = waiting.pop(0), waiting.pop(0)
            pairs.append((min(a, b), max(a, b)))
        if waiting:
            carried[v] = waiting[0]

    return sorted(pairs)


def _spanning_tree(blob: MultiGraph) -> nx.Graph:
    tree = nx.Graph()
    tree.add_nodes_from(blob.vertices)
    spanning = nx.minimum_spanning_edges(blob.to_networkx(), keys=True, data=False)
    for a, b, e in sorted(spanning, key=lambda item: item[2]):
        tree.add_edge(a, b, eid=e)

    return tree


def strategy_external_blob(
    fs: FinSystem, blob: MultiGraph, config: PipelineConfig | None = None
) -> STRATEGY_RESULT:
    """
    `blob` is a connected subgraph edge-disjoint from `fs.wall`; only the wall
    and the roots of `fs` are read. Roots of degree one in the blob are paired
    along a spanning tree and every pair becomes a fin for long-jumps.
    """
    cfg = active_config(config)
    kind = StrategyKind.EXTERNAL_BLOB
    wall = fs.wall

    if blob.vertex_count == 0 or not nx.is_connected(blob.simple_graph()):
        raise HypothesisViolated("the blob is not connected", (blob.vertex_count,))

    shared = sorted(set(blob.edge_ids) & wall.edge_set)
    if shared:
        raise HypothesisViolated("the blob uses wall edges", tuple(shared))

    roots = [s for s in fs.roots if blob.has_vertex(s) and blob.degree(s) == 1]
    if len(roots) < cfg.blob_roots_needed:
        raise HypothesisViolated(
            f"external-blob needs {cfg.blob_roots_needed} roots of degree one in the blob, found {len(roots)}",
            tuple(roots),
        )

    attached = FinSystem(wall, tuple(fs.fin_at(s) for s in roots))
    PointsSeparated(lambda c: c.a1, with_targets=False).check(attached, cfg)

    tree = _spanning_tree(blob)
    fins: t.List[Fin] = []
    for a, b in pair_roots_in_tree(tree, roots):
        route = nx.shortest_path(tree, a, b)
        edges = tuple(tree[x][y]["eid"] for x, y in zip(route, route[1:]))
        fins.append(Fin(a, Walk(tuple(route), edges)))

    paired = FinSystem(wall, tuple(fins))
    verdict = validate_fin_system(paired)
    if not verdict:
        raise HypothesisViolated("paired blob paths are not fins of the wall", (str(verdict.violations[0]),))

    outcome = _attempt(StrategyKind.LONG_JUMPS, strategy_long_jumps, paired, cfg)
    if isinstance(outcome, StrategyFailure):
        return StrategyFailure(kind.value, f"{len(fins)} paired fins did not route", (outcome,))

    return outcome


# Internal blob


def _mutually_apart(fs: FinSystem, a2: int) -> t.List[Fin]:
    """Greedy sub-family where no root comes closer than `a2 / 2` to another fin's target"""
    wall = fs.wall
    kept: t.List[Fin] = []
    for fin in sorted(fs.fins, key=lambda f: _label_key(wall, f.root)):
        if all(
            2 * wall_distance(wall, fin.root, other.target) >= a2
            and 2 * wall_distance(wall, other.root, fin.target) >= a2
            for other in kept
        ):
            kept.append(fin)

    return kept


def _subwall_boxes(h: int) -> t.Iterator[t.Tuple[int, int]]:
    """Anchors `(i1, h')` of the subwalls sharing their diagonal with the wall"""
    for sub_height in range(h, 1, -2):
        for i1 in range(1, h + 2 - sub_height, 2):
            yield i1, sub_height


def _carve_blob(fs: FinSystem, kept: t.Sequence[Fin], cfg: PipelineConfig) -> STRATEGY_RESULT:
    kind = StrategyKind.INTERNAL_BLOB
    wall = fs.wall

    groups = [
        [fin for fin in kept if wall_distance(wall, fin.target, centre.target) < cfg.a1] for centre in kept
    ]
    cluster = max(groups, key=len)

    failures: t.List[StrategyFailure] = []
    for i1, sub_height in _subwall_boxes(wall.height):
        inner = subwall(wall, i1, 2 * i1 - 1, sub_height)
        diagonal = set(diagonal_vertices(inner))
        usable = [fin for fin in cluster if fin.root in diagonal and fin.target not in inner.vertex_set]
        if len(usable) < cfg.blob_roots_needed:
            continue

        remainder = {e for e in wall.edge_set if not set(wall.host.ends(e)) & inner.vertex_set}
        blob = wall.host.edge_subgraph(remainder | {e for fin in usable for e in fin.path.edges})
        if not nx.is_connected(blob.simple_graph()):
            continue

        outcome = _attempt(
            StrategyKind.EXTERNAL_BLOB, strategy_external_blob, FinSystem(inner, tuple(usable)), blob, cfg
        )
        if isinstance(outcome, ImmersionMap):
            return outcome
        failures.append(outcome)

    return StrategyFailure(
        kind.value,
        f"no subwall held {cfg.blob_roots_needed} clustered roots with a connected remainder",
        tuple(failures),
    )


def strategy_internal_blob(fs: FinSystem, config: PipelineConfig | None = None) -> STRATEGY_RESULT:
    """
    Far-target fins. Targets spread out go straight to long-jumps; clustered
    targets leave a subwall free of them, and the rest of the wall together
    with the fins becomes the blob for external-blob.
    """
    cfg = active_config(config)
    run_checks(INTERNAL_BLOB_CHECKS, fs, cfg)
    kind = StrategyKind.INTERNAL_BLOB
    wall = fs.wall

    kept = _mutually_apart(fs, cfg.a2)
    trace: t.List[StrategyFailure] = []

    spread = set(select_separated(wall, [fin.target for fin in kept], cfg.a1))
    family = [fin for fin in kept if fin.target in spread]
    if len(family) >= cfg.long_fins_needed:
        outcome = _attempt(
            StrategyKind.LONG_JUMPS, strategy_long_jumps, fs.restricted(fin.root for fin in family), cfg
        )
        if isinstance(outcome, ImmersionMap):
            return outcome
        trace.append(outcome)

    outcome = _carve_blob(fs, kept, cfg)
    if isinstance(outcome, ImmersionMap):
        return outcome
    trace.append(outcome)

    return StrategyFailure(kind.value, "neither spread targets nor a carved subwall gave an immersion", tuple(trace))


# Short jumps


@dataclass(frozen=True)
class CarvedSite:
    fin: Fin
    radius: int
    region: t.FrozenSet[VertexId]
    """Wall vertices removed around the root"""

    boundary: t.FrozenSet[VertexId]
    escapes: t.Tuple[Walk, ...]
    """Four edge-disjoint paths from the root to distinct boundary vertices, clockwise"""

    @property
    def ports(self) -> t.Tuple[VertexId, ...]:
        return tuple(path.end for path in self.escapes)

    def escape_to(self, port: VertexId) -> Walk:
        return self.escapes[self.ports.index(port)]


def _label_distances(h: int, start: Label, limit: int) -> t.Dict[Label, int]:
    distance = {start: 0}
    frontier = [start]
    for step in range(1, limit + 1):
        following: t.List[Label] = []
        for label in frontier:
            for other in elem.neighbour_labels(h, label):
                if other not in distance:
                    distance[other] = step
                    following.append(other)
        frontier = following

    return distance


def carve_site(wall: Wall, fin: Fin, radius_max: int) -> CarvedSite | None:
    """
    The smallest ball of labels around the root, up to `radius_max`, that
    holds the target and lets four edge-disjoint paths escape to its boundary.
    """
    centre = wall.label_of[fin.root]
    distance = _label_distances(wall.height, centre, radius_max + 1)

    for radius in range(1, radius_max + 1):
        inner = {label for label, d in distance.items() if d <= radius}
        outer = {label for label, d in distance.items() if d == radius + 1}
        if not outer:
            continue

        touching = [key for key in wall.branch_paths if key[0] in inner or key[1] in inner]
        region = {wall.labels[label] for label in inner}
        for key in touching:
            region.update(wall.branch_paths[key].internal_vertices)
        if fin.target not in region:
            continue

        boundary = {wall.labels[label] for label in outer}
        local = wall.host.edge_subgraph(
            {e for key in touching for e in wall.branch_paths[key].edges} | set(fin.path.edges)
        )
        local, (sink,) = local.add_vertices(1)
        for y in sorted(boundary):
            local, _ = local.add_edge(y, sink)

        bundle = disjoint_paths_to_set(local, fin.root, {sink}, 4)
        if isinstance(bundle, Infeasible):
            continue

        escapes = [Walk(path.vertices[:-1], path.edges[:-1]) for path in bundle.paths]
        verdict = EdgeDisjointBundle(fin.root, tuple(escapes)).validate(wall.host)
        if not verdict:
            raise HypothesisViolated("escape paths overlap", (fin.root, str(verdict.violations[0])))

        i0, j0 = centre

        def clockwise(path: Walk) -> float:
            i, j = wall.label_of[path.end]
            return -math.atan2(i - i0, j - j0)

        escapes.sort(key=clockwise)
        return CarvedSite(fin, radius, frozenset(region), frozenset(boundary), tuple(escapes))

    return None


def _expand_crosses(q: Walk, crosses: t.Mapping[EdgeId, CarvedSite]) -> Walk:
    """Replaces every cross edge by the two escape paths through its site's root"""
    walk = Walk.trivial(q.start)
    for e, x, y in zip(q.edges, q.vertices, q.vertices[1:]):
        if e in crosses:
            site = crosses[e]
            walk = walk.concat(site.escape_to(x).reversed()).concat(site.escape_to(y))
        else:
            walk = walk.concat(Walk((x, y), (e,)))

    return walk


def strategy_short_jumps(fs: FinSystem, config: PipelineConfig | None = None) -> STRATEGY_RESULT:
    """
    Near-target fins. A small region is carved around every root; the first
    n = g^2 sites host the grid vertices and the remaining ones get crossed
    ports. Grid edges join escape paths through the wall left over.
    """
    cfg = active_config(config)
    run_checks(SHORT_JUMPS_CHECKS, fs, cfg)
    kind = StrategyKind.SHORT_JUMPS
    wall = fs.wall

    pattern, labeling = grid(cfg.g)
    n = pattern.vertex_count

    sites: t.List[CarvedSite] = []
    for fin in sorted(fs.fins, key=lambda f: _label_key(wall, f.root)):
        site = carve_site(wall, fin, cfg.carve_limit)
        if site is None:
            return StrategyFailure(
                kind.value, f"no region of radius <= {cfg.carve_limit} gives four escapes", (fin.root,)
            )

        for other in sites:
            if (site.region | site.boundary) & (other.region | other.boundary):
                return StrategyFailure(
                    kind.value,
                    f"carved regions of fins at {other.fin.root} and {fin.root} collide",
                    (other.fin.root, fin.root),
                )
        sites.append(site)

    if len(sites) < n:
        return StrategyFailure(kind.value, f"J_{cfg.g} needs {n} fins, got {len(sites)}")

    hosting = dict(zip(sorted(pattern.vertices), sites[:n]))
    routing = wall.graph.delete_vertices(set().union(*(site.region for site in sites)))
    crosses: t.Dict[EdgeId, CarvedSite] = {}
    for site in sites[n:]:
        x1, x2, x3, x4 = site.ports
        routing, first = routing.add_edge(x1, x3)
        routing, second = routing.add_edge(x2, x4)
        crosses[first] = site
        crosses[second] = site

    def partner(v: VertexId, e: EdgeId) -> VertexId:
        return hosting[pattern.other_end(e, v)].fin.root

    def demands_for(assignment: t.Sequence[PORTS]) -> t.List[DEMAND]:
        port_of = dict(zip(sorted(pattern.vertices), assignment))
        return [(port_of[h][e], port_of[i][e]) for e in pattern.edge_ids for h, i in (pattern.ends(e),)]

    tally = _RoutingTally()
    share = max(cfg.routing_budget // (2 * MAX_PORT_COMBOS), 1)
    found = None
    for orientation in (1, -1):
        candidates = []
        for v in sorted(pattern.vertices):
            ports = list(hosting[v].ports)[::orientation]
            candidates.append(
                _rotations(
                    grid_rotation(pattern, labeling, v),
                    ports,
                    lambda e, x, v=v: wall_distance(wall, x, partner(v, e)),
                )
            )

        combos = (demands_for(assignment) for assignment in _port_combos(candidates, tally))
        found = _route_combos(routing, pattern, combos, frozenset(), share, tally)
        if found is not None:
            break

    if found is None:
        return StrategyFailure(kind.value, tally.reason(), tuple(site.fin.root for site in sites[:n]))

    _, paths = found
    edge_map: t.Dict[EdgeId, Walk] = {}
    for e, q in zip(pattern.edge_ids, paths):
        h, i = pattern.ends(e)
        walk = hosting[h].escape_to(q.start).concat(_expand_crosses(q, crosses))
        edge_map[e] = walk.concat(hosting[i].escape_to(q.end).reversed()).simplified()

    roots = [site.fin.root for site in hosting.values()]
    m = ImmersionMap(pattern, wall.host, {v: site.fin.root for v, site in hosting.items()}, edge_map)
    return _certify(kind, m, roots)
