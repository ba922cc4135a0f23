"""GSTP to STPG reduction and its inverse.

For every group g a new terminal v_g is appended to the graph and joined to
each member of g by an edge of cost M, where M is the sum of all original
edge costs. Original vertices and edges keep their indices, so a tree on the
reduced graph maps back to the original graph by dropping the dummy part.
"""

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Tuple

from config import MAX_EDGE_COST
from errors import (
    CostOverflowError,
    FormatSyntaxError,
    InvalidArgumentError,
    InvalidGroupError,
    NonLeafDummyError,
)
from graph_core import (
    Cost,
    Edge,
    Graph,
    SteinerTree,
    VertexId,
    checked_mul,
    total_cost,
    tree_degrees,
    tree_from_edges,
    validate_tree,
)
from instance_model import (
    GstpInstance,
    StpgInstance,
    LineReader,
    parse_int,
    render_stpg,
    stpg_is_feasible,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ReducedInstance:
    """The STPG instance built from a GSTP instance, with the bookkeeping to invert it."""

    source: GstpInstance
    stpg: StpgInstance
    m_value: Cost
    dummy_of_group: Tuple[VertexId, ...]
    dummy_edge_indices: FrozenSet[int]
    original_vertex_count: int
    original_edge_count: int

    @property
    def group_count(self) -> int:
        return len(self.dummy_of_group)

    @property
    def dummy_total(self) -> Cost:
        """M times the number of groups."""
        return checked_mul(self.m_value, self.group_count)

    def is_dummy(self, vertex: VertexId) -> bool:
        return vertex >= self.original_vertex_count


def transform(instance: GstpInstance) -> ReducedInstance:
    """Append one dummy terminal per group, joined to its members at cost M."""
    graph = instance.graph
    m_value = total_cost(graph)
    group_count = len(instance.groups)
    # M * (|groups| + 1) bounds every tree cost the proof compares
    checked_mul(m_value, group_count + 1)
    if m_value > MAX_EDGE_COST:
        raise CostOverflowError(f"M = {m_value} does not fit an edge cost (max {MAX_EDGE_COST})")
    if m_value == 0:
        raise InvalidArgumentError("a graph without edges gives M = 0; dummy edges need cost >= 1")

    n = graph.vertex_count
    edges: List[Edge] = list(graph.edges)
    dummy_of_group: List[VertexId] = []
    dummy_edges: List[int] = []
    for position, group in enumerate(instance.groups):
        dummy = n + position
        dummy_of_group.append(dummy)
        for member in group:
            dummy_edges.append(len(edges))
            edges.append(Edge(dummy, member, m_value))

    reduced_graph = Graph(n + group_count, tuple(edges))
    reduced = ReducedInstance(
        source=instance,
        stpg=StpgInstance(reduced_graph, frozenset(dummy_of_group)),
        m_value=m_value,
        dummy_of_group=tuple(dummy_of_group),
        dummy_edge_indices=frozenset(dummy_edges),
        original_vertex_count=n,
        original_edge_count=graph.edge_count,
    )
    logger.debug(
        "transform: %d vertices, %d edges, %d groups -> M=%d, %d vertices, %d edges",
        n, graph.edge_count, group_count, m_value, reduced_graph.vertex_count,
        reduced_graph.edge_count,
    )
    return reduced


def dummy_degrees(reduced: ReducedInstance, tree: SteinerTree) -> Tuple[int, ...]:
    """Degree of each group's dummy vertex in `tree`, in group order."""
    degrees = tree_degrees(reduced.stpg.graph, tree)
    return tuple(degrees.get(dummy, 0) for dummy in reduced.dummy_of_group)


def extract(reduced: ReducedInstance, tree: SteinerTree) -> SteinerTree:
    """Strip the dummy vertices and edges from an STPG tree on the reduced graph.

    Raises NonLeafDummyError for the first dummy (in group order) whose degree
    is not 1; the remainder would then be disconnected or too cheap.
    """
    validate_tree(reduced.stpg.graph, tree)
    if not stpg_is_feasible(reduced.stpg, tree):
        raise InvalidArgumentError("the tree misses a dummy terminal of the reduced instance")
    if reduced.group_count < 2:
        raise InvalidArgumentError(
            "a single-group reduction has no edges to extract; solve it directly"
        )
    for dummy, degree in zip(reduced.dummy_of_group, dummy_degrees(reduced, tree)):
        if degree != 1:
            raise NonLeafDummyError(dummy, degree)

    kept_edges = tree.edges - reduced.dummy_edge_indices
    kept_vertices = {v for v in tree.vertices if not reduced.is_dummy(v)}
    result = tree_from_edges(reduced.source.graph, kept_edges, kept_vertices)
    validate_tree(reduced.source.graph, result)
    return result


def augment_with_dummy_leaves(reduced: ReducedInstance, tree: SteinerTree) -> SteinerTree:
    """Attach each dummy to the lowest-index vertex of its group inside `tree`."""
    graph = reduced.stpg.graph
    added = []
    for position, (dummy, group) in enumerate(zip(reduced.dummy_of_group, reduced.source.groups)):
        hits = [v for v in group if v in tree.vertices]
        if not hits:
            raise InvalidArgumentError(f"the tree misses group {position + 1}")
        added.append(graph.edge_between(dummy, min(hits)))
    return tree_from_edges(graph, tree.edges | frozenset(added), tree.vertices)


def render_reduced(reduced: ReducedInstance) -> str:
    """The reduced instance as .stp; dummies are numbered |V|+1 .. |V|+|groups|."""
    return render_stpg(reduced.stpg)


# ----------------------------------------------------------------------------
# Sidecar map: "M <value>" then "DUMMY <group> <vertex>" (both 1-based)
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ReductionMap:
    m_value: Cost
    dummy_of_group: Tuple[VertexId, ...]


def reduction_map(reduced: ReducedInstance) -> ReductionMap:
    return ReductionMap(reduced.m_value, reduced.dummy_of_group)


def render_map(reduced: ReducedInstance) -> str:
    lines = [f"M {reduced.m_value}"]
    lines.extend(
        f"DUMMY {position + 1} {dummy + 1}"
        for position, dummy in enumerate(reduced.dummy_of_group)
    )
    return "\n".join(lines) + "\n"


def parse_map(text: str) -> ReductionMap:
    reader = LineReader(text)
    line, (m_token,) = reader.expect("M", args=1)
    m_value = parse_int(m_token, line, "M")
    dummies: List[VertexId] = []
    for line, tokens in reader.remaining():
        if len(tokens) != 3 or tokens[0].upper() != "DUMMY":
            raise FormatSyntaxError(f"expected 'DUMMY <group> <vertex>', found '{' '.join(tokens)}'", line)
        position = parse_int(tokens[1], line, "group index")
        vertex = parse_int(tokens[2], line, "vertex")
        if position != len(dummies) + 1:
            raise InvalidGroupError(f"group index {position} out of order", line)
        if vertex < 1:
            raise FormatSyntaxError(f"vertex {vertex} must be at least 1", line)
        dummies.append(vertex - 1)
    if not dummies:
        raise FormatSyntaxError("map lists no dummy vertices", reader.last_line)
    return ReductionMap(m_value, tuple(dummies))
