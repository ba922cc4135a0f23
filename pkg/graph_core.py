"""Undirected weighted graphs and the primitive algorithms built on them.

Vertices are dense 0-based integers. Edge costs are positive integers and
every cost aggregate goes through the checked helpers so that overflow of
the configured representation is an error instead of silent growth.
Ties in shortest paths and spanning trees go to the lowest edge index.
"""

import heapq
import logging
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx
from networkx.utils import UnionFind

from config import MAX_AGGREGATE_COST, MAX_EDGE_COST
from errors import (
    CostOverflowError,
    GraphStructureError,
    InvalidArgumentError,
    InvalidCostError,
    InvalidTreeError,
)

logger = logging.getLogger(__name__)

VertexId = int
Cost = int

# (parent vertex, edge index) per vertex; None for the source and unreachable vertices
Predecessor = Optional[Tuple[VertexId, int]]


def checked_add(a: Cost, b: Cost) -> Cost:
    """Add two costs, refusing results outside the aggregate range."""
    total = a + b
    if total > MAX_AGGREGATE_COST or total < 0:
        raise CostOverflowError(f"cost {a} + {b} exceeds {MAX_AGGREGATE_COST}")
    return total


def checked_mul(a: Cost, b: int) -> Cost:
    """Multiply a cost by a count, refusing results outside the aggregate range."""
    product = a * b
    if product > MAX_AGGREGATE_COST or product < 0:
        raise CostOverflowError(f"cost {a} * {b} exceeds {MAX_AGGREGATE_COST}")
    return product


def checked_sum(costs: Iterable[Cost]) -> Cost:
    total = 0
    for cost in costs:
        total = checked_add(total, cost)
    return total


@dataclass(frozen=True)
class Edge:
    """One undirected edge; endpoint order is kept as given."""

    u: VertexId
    v: VertexId
    cost: Cost

    def other(self, vertex: VertexId) -> VertexId:
        return self.v if vertex == self.u else self.u


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph with positive integer edge costs."""

    vertex_count: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if self.vertex_count < 1:
            raise GraphStructureError("a graph needs at least one vertex")
        seen: Dict[FrozenSet[int], int] = {}
        for index, edge in enumerate(self.edges):
            for endpoint in (edge.u, edge.v):
                if not 0 <= endpoint < self.vertex_count:
                    raise GraphStructureError(
                        f"edge {index} endpoint {endpoint} outside 0..{self.vertex_count - 1}"
                    )
            if edge.u == edge.v:
                raise GraphStructureError(f"edge {index} is a self-loop on vertex {edge.u}")
            if not isinstance(edge.cost, int) or not 1 <= edge.cost <= MAX_EDGE_COST:
                raise InvalidCostError(
                    f"edge {index} cost {edge.cost} outside 1..{MAX_EDGE_COST}"
                )
            key = frozenset((edge.u, edge.v))
            if key in seen:
                raise GraphStructureError(
                    f"edge {index} duplicates edge {seen[key]} between {edge.u} and {edge.v}"
                )
            seen[key] = index

    @classmethod
    def from_triples(cls, vertex_count: int, triples: Iterable[Tuple[int, int, int]]) -> "Graph":
        return cls(vertex_count, tuple(Edge(u, v, c) for u, v, c in triples))

    @cached_property
    def adjacency(self) -> Tuple[Tuple[Tuple[VertexId, int], ...], ...]:
        """Per-vertex (neighbor, edge index) lists in edge-index order."""
        lists: List[List[Tuple[VertexId, int]]] = [[] for _ in range(self.vertex_count)]
        for index, edge in enumerate(self.edges):
            lists[edge.u].append((edge.v, index))
            lists[edge.v].append((edge.u, index))
        return tuple(tuple(entries) for entries in lists)

    @cached_property
    def _edge_lookup(self) -> Dict[FrozenSet[int], int]:
        return {frozenset((e.u, e.v)): i for i, e in enumerate(self.edges)}

    @cached_property
    def edges_by_cost(self) -> Tuple[int, ...]:
        """Edge indices ordered by (cost, index), the Kruskal order."""
        return tuple(sorted(range(len(self.edges)), key=lambda i: (self.edges[i].cost, i)))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def edge_between(self, u: VertexId, v: VertexId) -> Optional[int]:
        return self._edge_lookup.get(frozenset((u, v)))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        for index, edge in enumerate(self.edges):
            g.add_edge(edge.u, edge.v, weight=edge.cost, index=index)
        return g


@dataclass(frozen=True)
class SteinerTree:
    """A tree inside some graph, named by vertex ids and edge indices."""

    vertices: FrozenSet[VertexId]
    edges: FrozenSet[int]
    total_cost: Cost

    @classmethod
    def single_vertex(cls, vertex: VertexId) -> "SteinerTree":
        return cls(frozenset((vertex,)), frozenset(), 0)


def tree_from_edges(
    graph: Graph, edge_indices: Iterable[int], vertices: Iterable[VertexId] = ()
) -> SteinerTree:
    """Build a SteinerTree from edge indices, adding their endpoints to `vertices`."""
    edge_set = frozenset(edge_indices)
    members = set(vertices)
    for index in edge_set:
        if not 0 <= index < graph.edge_count:
            raise InvalidTreeError(f"edge index {index} outside 0..{graph.edge_count - 1}")
        members.add(graph.edges[index].u)
        members.add(graph.edges[index].v)
    cost = checked_sum(graph.edges[i].cost for i in sorted(edge_set))
    return SteinerTree(frozenset(members), edge_set, cost)


def validate_tree(graph: Graph, tree: SteinerTree) -> None:
    """Raise InvalidTreeError unless `tree` is a tree of `graph` with an exact cost."""
    if not tree.vertices:
        raise InvalidTreeError("a tree needs at least one vertex")
    for vertex in tree.vertices:
        if not 0 <= vertex < graph.vertex_count:
            raise InvalidTreeError(f"vertex {vertex} outside 0..{graph.vertex_count - 1}")
    for index in tree.edges:
        if not 0 <= index < graph.edge_count:
            raise InvalidTreeError(f"edge index {index} outside 0..{graph.edge_count - 1}")
        edge = graph.edges[index]
        if edge.u not in tree.vertices or edge.v not in tree.vertices:
            raise InvalidTreeError(f"edge {index} has an endpoint outside the tree")
    if len(tree.edges) != len(tree.vertices) - 1:
        raise InvalidTreeError(
            f"{len(tree.edges)} edges cannot form a tree on {len(tree.vertices)} vertices"
        )
    components = UnionFind(tree.vertices)
    for index in tree.edges:
        edge = graph.edges[index]
        if components[edge.u] == components[edge.v]:
            raise InvalidTreeError(f"edge {index} closes a cycle")
        components.union(edge.u, edge.v)
    expected = checked_sum(graph.edges[i].cost for i in tree.edges)
    if tree.total_cost != expected:
        raise InvalidTreeError(f"total_cost {tree.total_cost} differs from edge sum {expected}")


def tree_degrees(graph: Graph, tree: SteinerTree) -> Counter:
    degrees: Counter = Counter({v: 0 for v in tree.vertices})
    for index in tree.edges:
        degrees[graph.edges[index].u] += 1
        degrees[graph.edges[index].v] += 1
    return degrees


def prune_tree(graph: Graph, tree: SteinerTree, keep: Iterable[VertexId]) -> SteinerTree:
    """Repeatedly strip leaves that are not in `keep`."""
    keep = set(keep)
    vertices = set(tree.vertices)
    edges = set(tree.edges)
    incident: Dict[VertexId, set] = {v: set() for v in vertices}
    for index in edges:
        incident[graph.edges[index].u].add(index)
        incident[graph.edges[index].v].add(index)
    stack = sorted(v for v in vertices if len(incident[v]) == 1 and v not in keep)
    while stack:
        leaf = stack.pop()
        if leaf not in vertices or len(incident[leaf]) != 1 or len(vertices) == 1:
            continue
        (index,) = incident[leaf]
        other = graph.edges[index].other(leaf)
        vertices.discard(leaf)
        edges.discard(index)
        del incident[leaf]
        incident[other].discard(index)
        if len(incident[other]) == 1 and other not in keep:
            stack.append(other)
    return tree_from_edges(graph, edges, vertices)


def is_connected(graph: Graph) -> bool:
    """True iff every vertex is reachable from vertex 0."""
    return nx.is_connected(graph.to_networkx())


def total_cost(graph: Graph) -> Cost:
    """Exact sum of all edge costs (the reduction's M)."""
    return checked_sum(edge.cost for edge in graph.edges)


def dijkstra(
    graph: Graph, sources: Dict[VertexId, Cost]
) -> Tuple[List[Optional[Cost]], List[Predecessor]]:
    """Multi-source Dijkstra; equal distances keep the lower predecessor edge index."""
    dist: List[Optional[Cost]] = [None] * graph.vertex_count
    via: List[int] = [-1] * graph.vertex_count
    pred: List[Predecessor] = [None] * graph.vertex_count
    done = [False] * graph.vertex_count
    heap: List[Tuple[Cost, int, VertexId]] = []
    for vertex, start in sorted(sources.items()):
        dist[vertex] = start
        heapq.heappush(heap, (start, -1, vertex))

    while heap:
        d, edge_index, u = heapq.heappop(heap)
        if done[u] or d != dist[u] or edge_index != via[u]:
            continue
        done[u] = True
        for w, index in graph.adjacency[u]:
            if done[w]:
                continue
            nd = checked_add(d, graph.edges[index].cost)
            if dist[w] is None or nd < dist[w] or (nd == dist[w] and index < via[w]):
                dist[w] = nd
                via[w] = index
                pred[w] = (u, index)
                heapq.heappush(heap, (nd, index, w))
    return dist, pred


def shortest_paths(
    graph: Graph, source: VertexId
) -> Tuple[List[Optional[Cost]], List[Predecessor]]:
    """Single-source shortest-path costs and one predecessor per vertex."""
    if not 0 <= source < graph.vertex_count:
        raise InvalidArgumentError(f"source {source} outside 0..{graph.vertex_count - 1}")
    return dijkstra(graph, {source: 0})


def path_edges(pred: Sequence[Predecessor], target: VertexId) -> List[int]:
    """Edge indices from a source to `target`, following predecessors back."""
    edges = []
    step = pred[target]
    while step is not None:
        parent, index = step
        edges.append(index)
        step = pred[parent]
    edges.reverse()
    return edges


def _kruskal(graph: Graph, members: FrozenSet[VertexId]) -> Optional[SteinerTree]:
    if len(members) == 1:
        (vertex,) = members
        return SteinerTree.single_vertex(vertex)
    components = UnionFind(members)
    chosen = []
    for index in graph.edges_by_cost:
        edge = graph.edges[index]
        if edge.u not in members or edge.v not in members:
            continue
        if components[edge.u] != components[edge.v]:
            components.union(edge.u, edge.v)
            chosen.append(index)
            if len(chosen) == len(members) - 1:
                return tree_from_edges(graph, chosen, members)
    return None


def minimum_spanning_tree(
    graph: Graph, vertex_subset: Iterable[VertexId]
) -> Optional[SteinerTree]:
    """Minimum spanning tree of the induced subgraph, or None if it is disconnected."""
    members = frozenset(vertex_subset)
    if not members:
        raise InvalidArgumentError("minimum_spanning_tree needs a nonempty vertex subset")
    for vertex in members:
        if not 0 <= vertex < graph.vertex_count:
            raise InvalidArgumentError(f"vertex {vertex} outside 0..{graph.vertex_count - 1}")
    return _kruskal(graph, members)
