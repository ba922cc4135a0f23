"""Exact and heuristic STPG solvers, brute-force oracles and the GSTP pipeline.

The exact solver is the Dreyfus-Wagner dynamic program over terminal
subsets. Each table entry is keyed by (cost, sorted edge indices) so that
ties resolve to the lexicographically smallest edge set, which makes the
returned trees reproducible. The oracles enumerate vertex subsets in
increasing bitmask order and take minimum spanning trees of the induced
subgraphs.
"""

import heapq
import logging
from bisect import insort
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from config import EXACT_TERMINAL_LIMIT, ORACLE_VERTEX_LIMIT
from errors import CapacityError, InvalidArgumentError
from graph_core import (
    Cost,
    Graph,
    SteinerTree,
    checked_add,
    dijkstra,
    minimum_spanning_tree,
    path_edges,
    prune_tree,
    tree_from_edges,
    validate_tree,
)
from instance_model import GstpInstance, StpgInstance, gstp_is_feasible, stpg_is_feasible
from reduction import ReducedInstance, extract, transform

logger = logging.getLogger(__name__)


class SolveMethod(str, Enum):
    EXACT_DP = "exact-dp"
    HEURISTIC_SPH = "heuristic-sph"
    ORACLE_STPG = "oracle-stpg"
    ORACLE_GSTP = "oracle-gstp"
    SINGLE_GROUP = "single-group"
    EXTERNAL = "external"


@dataclass(frozen=True)
class SolveResult:
    tree: SteinerTree
    optimal: bool
    method: SolveMethod

    @property
    def cost(self) -> Cost:
        return self.tree.total_cost


# (cost, sorted edge indices) of a partial tree
_Key = Tuple[Cost, Tuple[int, ...]]


def _merge_edges(a: Tuple[int, ...], b: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(sorted(set(a) | set(b)))


def _with_edge(edges: Tuple[int, ...], index: int) -> Tuple[int, ...]:
    if index in edges:
        return edges
    extended = list(edges)
    insort(extended, index)
    return tuple(extended)


def _grow(graph: Graph, row: List[Optional[_Key]]) -> None:
    """Relax one DP row along graph edges (Dijkstra over composite keys)."""
    heap = [(key, v) for v, key in enumerate(row) if key is not None]
    heapq.heapify(heap)
    done = [False] * graph.vertex_count
    while heap:
        key, u = heapq.heappop(heap)
        if done[u] or key != row[u]:
            continue
        done[u] = True
        cost, edges = key
        for w, index in graph.adjacency[u]:
            if done[w]:
                continue
            candidate = (checked_add(cost, graph.edges[index].cost), _with_edge(edges, index))
            if row[w] is None or candidate < row[w]:
                row[w] = candidate
                heapq.heappush(heap, (candidate, w))


def _check_terminal_capacity(instance: StpgInstance, limit: int) -> None:
    if len(instance.terminals) > limit:
        raise CapacityError(
            f"{len(instance.terminals)} terminals exceed the exact solver limit of {limit}; "
            "use --mode heuristic",
            limit=limit,
            actual=len(instance.terminals),
        )


def solve_exact_stpg(
    instance: StpgInstance, terminal_limit: int = EXACT_TERMINAL_LIMIT
) -> SolveResult:
    """Minimum Steiner tree by Dreyfus-Wagner over terminal bitmasks."""
    _check_terminal_capacity(instance, terminal_limit)
    graph = instance.graph
    terminals = sorted(instance.terminals)
    k = len(terminals)
    if k == 1:
        return SolveResult(SteinerTree.single_vertex(terminals[0]), True, SolveMethod.EXACT_DP)

    n = graph.vertex_count
    table: List[List[Optional[_Key]]] = [[None] * n for _ in range(1 << k)]
    for position, terminal in enumerate(terminals):
        row = table[1 << position]
        row[terminal] = (0, ())
        _grow(graph, row)

    for mask in range(1, 1 << k):
        if mask & (mask - 1) == 0:
            continue
        row = table[mask]
        lowest = mask & -mask
        sub = (mask - 1) & mask
        while sub:
            # each unordered split once: the part holding the lowest terminal
            if sub & lowest:
                left, right = table[sub], table[mask ^ sub]
                for v in range(n):
                    a, b = left[v], right[v]
                    if a is None or b is None:
                        continue
                    candidate = (checked_add(a[0], b[0]), _merge_edges(a[1], b[1]))
                    if row[v] is None or candidate < row[v]:
                        row[v] = candidate
            sub = (sub - 1) & mask
        _grow(graph, row)

    cost, edges = table[(1 << k) - 1][terminals[0]]
    tree = prune_tree(graph, tree_from_edges(graph, edges, terminals), terminals)
    validate_tree(graph, tree)
    logger.debug("exact-dp: %d terminals, %d vertices, cost %d", k, n, cost)
    return SolveResult(tree, True, SolveMethod.EXACT_DP)


def solve_heuristic_stpg(instance: StpgInstance) -> SolveResult:
    """Shortest-path heuristic: attach the nearest unconnected terminal until none remain."""
    graph = instance.graph
    terminals = sorted(instance.terminals)
    vertices = {terminals[0]}
    edges = set()
    remaining = set(terminals[1:])
    while remaining:
        dist, pred = dijkstra(graph, {v: 0 for v in vertices})
        target = min(remaining, key=lambda t: (dist[t], t))
        for index in path_edges(pred, target):
            edges.add(index)
            vertices.add(graph.edges[index].u)
            vertices.add(graph.edges[index].v)
        remaining -= vertices
    tree = prune_tree(graph, tree_from_edges(graph, edges, vertices), terminals)
    validate_tree(graph, tree)
    logger.debug("heuristic-sph: %d terminals, cost %d", len(terminals), tree.total_cost)
    return SolveResult(tree, False, SolveMethod.HEURISTIC_SPH)


def _check_vertex_capacity(graph: Graph, limit: int) -> None:
    if graph.vertex_count > limit:
        raise CapacityError(
            f"{graph.vertex_count} vertices exceed the oracle limit of {limit}",
            limit=limit,
            actual=graph.vertex_count,
        )


def _best_subset_tree(graph: Graph, admissible: Sequence[int]) -> Optional[SteinerTree]:
    """Cheapest induced MST over vertex bitmasks meeting every mask in `admissible`."""
    best: Optional[SteinerTree] = None
    for mask in range(1, 1 << graph.vertex_count):
        if any(mask & required == 0 for required in admissible):
            continue
        members = frozenset(v for v in range(graph.vertex_count) if mask >> v & 1)
        tree = minimum_spanning_tree(graph, members)
        if tree is not None and (best is None or tree.total_cost < best.total_cost):
            best = tree
    return best


def brute_force_smt(
    instance: StpgInstance, vertex_limit: int = ORACLE_VERTEX_LIMIT
) -> SolveResult:
    """Exhaustive STPG optimum over all vertex subsets containing the terminals."""
    graph = instance.graph
    _check_vertex_capacity(graph, vertex_limit)
    # one single-bit mask per terminal: every terminal must be present
    best = _best_subset_tree(graph, [1 << t for t in sorted(instance.terminals)])
    return SolveResult(best, True, SolveMethod.ORACLE_STPG)


def brute_force_gsmt(
    instance: GstpInstance, vertex_limit: int = ORACLE_VERTEX_LIMIT
) -> SolveResult:
    """Exhaustive GSTP optimum over all vertex subsets meeting every group."""
    graph = instance.graph
    _check_vertex_capacity(graph, vertex_limit)
    group_masks = [sum(1 << v for v in group) for group in instance.groups]
    best = _best_subset_tree(graph, group_masks)
    return SolveResult(best, True, SolveMethod.ORACLE_GSTP)


# ----------------------------------------------------------------------------
# Mode dispatch and the end-to-end GSTP pipeline
# ----------------------------------------------------------------------------

def solve_stpg(instance: StpgInstance, mode: str) -> SolveResult:
    if mode == "exact":
        result = solve_exact_stpg(instance)
    elif mode == "heuristic":
        result = solve_heuristic_stpg(instance)
    elif mode == "oracle":
        result = brute_force_smt(instance)
    else:
        raise InvalidArgumentError(f"unknown solver mode '{mode}'")
    if not stpg_is_feasible(instance, result.tree):
        raise InvalidArgumentError(f"{result.method.value} returned an infeasible tree")
    return result


@dataclass(frozen=True)
class GstpSolution:
    """A group Steiner tree plus, when the reduction ran, its STPG side."""

    result: SolveResult
    reduced: Optional[ReducedInstance] = None
    smt: Optional[SolveResult] = None


def solve_gstp(instance: GstpInstance, mode: str) -> GstpSolution:
    """Solve GSTP: oracle directly, otherwise transform -> STPG solve -> extract."""
    if len(instance.groups) == 1 or instance.graph.edge_count == 0:
        vertex = min(instance.groups[0])
        logger.info("single group or edgeless graph: answering with vertex %d at cost 0", vertex + 1)
        single = SolveResult(SteinerTree.single_vertex(vertex), True, SolveMethod.SINGLE_GROUP)
        return GstpSolution(single)

    if mode == "oracle":
        return GstpSolution(brute_force_gsmt(instance))

    reduced = transform(instance)
    smt = solve_stpg(reduced.stpg, mode)
    tree = extract(reduced, smt.tree)
    if not gstp_is_feasible(instance, tree):
        raise InvalidArgumentError("extracted tree misses a group")
    return GstpSolution(SolveResult(tree, smt.optimal, smt.method), reduced, smt)
