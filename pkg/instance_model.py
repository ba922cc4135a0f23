"""STPG and GSTP instances, feasibility predicates and their text formats.

Files use a SteinLib-style sectioned layout with 1-based vertex numbers:

    SECTION Graph / Nodes n / Edges m / E u v cost ... / END
    SECTION Terminals / Terminals t / T v ... / END        (.stp)
    SECTION Groups / Groups k / G v1 v2 ... ... / END      (.gstp)
    EOF

Blank lines are ignored and "#" starts a comment. Keywords are matched
case-insensitively; rendering always emits the canonical spelling above.
"""

import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple

from config import MAX_EDGE_COST
from errors import (
    DisconnectedGraphError,
    FormatSyntaxError,
    GraphStructureError,
    InvalidArgumentError,
    InvalidCostError,
    InvalidGroupError,
    InvalidTreeError,
    UnknownVertexError,
)
from graph_core import Edge, Graph, SteinerTree, VertexId, is_connected, tree_from_edges

_INTEGER = re.compile(r"-?[0-9]+")


@dataclass(frozen=True)
class StpgInstance:
    """A connected graph plus its compulsory (terminal) vertices."""

    graph: Graph
    terminals: FrozenSet[VertexId]

    def __post_init__(self):
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        if not self.terminals:
            raise InvalidArgumentError("an STPG instance needs at least one terminal")
        for terminal in self.terminals:
            if not 0 <= terminal < self.graph.vertex_count:
                raise InvalidArgumentError(
                    f"terminal {terminal} outside 0..{self.graph.vertex_count - 1}"
                )
        if not is_connected(self.graph):
            raise DisconnectedGraphError("the STPG graph is not connected")


@dataclass(frozen=True)
class GstpInstance:
    """A connected graph plus an ordered collection of vertex groups."""

    graph: Graph
    groups: Tuple[Tuple[VertexId, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "groups", tuple(tuple(g) for g in self.groups))
        if not self.groups:
            raise InvalidGroupError("a GSTP instance needs at least one group")
        for position, group in enumerate(self.groups):
            if not group:
                raise InvalidGroupError(f"group {position + 1} is empty")
            if len(set(group)) != len(group):
                raise InvalidGroupError(f"group {position + 1} lists a vertex twice")
            for vertex in group:
                if not 0 <= vertex < self.graph.vertex_count:
                    raise InvalidArgumentError(
                        f"group {position + 1} member {vertex} outside "
                        f"0..{self.graph.vertex_count - 1}"
                    )
        if not is_connected(self.graph):
            raise DisconnectedGraphError("the GSTP graph is not connected")


def _check_tree_range(graph: Graph, tree: SteinerTree) -> None:
    for vertex in tree.vertices:
        if not 0 <= vertex < graph.vertex_count:
            raise InvalidTreeError(f"tree vertex {vertex} outside 0..{graph.vertex_count - 1}")
    for index in tree.edges:
        if not 0 <= index < graph.edge_count:
            raise InvalidTreeError(f"tree edge {index} outside 0..{graph.edge_count - 1}")


def stpg_is_feasible(instance: StpgInstance, tree: SteinerTree) -> bool:
    """True iff the tree contains every terminal."""
    _check_tree_range(instance.graph, tree)
    return instance.terminals <= tree.vertices


def gstp_is_feasible(instance: GstpInstance, tree: SteinerTree) -> bool:
    """True iff the tree meets every group."""
    _check_tree_range(instance.graph, tree)
    return all(any(v in tree.vertices for v in group) for group in instance.groups)


# ----------------------------------------------------------------------------
# Text formats
# ----------------------------------------------------------------------------

class LineReader:
    """Yields (line number, tokens) for meaningful lines."""

    def __init__(self, text: str):
        self._lines: Iterator[Tuple[int, List[str]]] = self._tokenize(text)
        self.last_line = 0

    @staticmethod
    def _tokenize(text: str) -> Iterator[Tuple[int, List[str]]]:
        for number, raw in enumerate(text.splitlines(), start=1):
            tokens = raw.split("#", 1)[0].split()
            if tokens:
                yield number, tokens

    def next(self, expected: str) -> Tuple[int, List[str]]:
        try:
            number, tokens = next(self._lines)
        except StopIteration:
            raise FormatSyntaxError(f"unexpected end of input, expected {expected}", self.last_line)
        self.last_line = number
        return number, tokens

    def expect(self, *keywords: str, args: Optional[int] = None) -> Tuple[int, List[str]]:
        """Read a line starting with `keywords`; return its remaining tokens."""
        expected = " ".join(keywords)
        number, tokens = self.next(expected)
        head = [t.lower() for t in tokens[: len(keywords)]]
        if head != [k.lower() for k in keywords]:
            raise FormatSyntaxError(f"expected '{expected}', found '{' '.join(tokens)}'", number)
        rest = tokens[len(keywords):]
        if args is not None and len(rest) != args:
            raise FormatSyntaxError(
                f"'{expected}' takes {args} value(s), found {len(rest)}", number
            )
        return number, rest

    def remaining(self) -> Iterator[Tuple[int, List[str]]]:
        for number, tokens in self._lines:
            self.last_line = number
            yield number, tokens

    def expect_end_of_input(self) -> None:
        for number, tokens in self._lines:
            raise FormatSyntaxError(f"content after EOF: '{' '.join(tokens)}'", number)


def parse_int(token: str, line: int, what: str) -> int:
    if not _INTEGER.fullmatch(token):
        raise FormatSyntaxError(f"{what} '{token}' is not an integer", line)
    return int(token)


def _parse_vertex(token: str, line: int, vertex_count: int) -> VertexId:
    number = parse_int(token, line, "vertex")
    if not 1 <= number <= vertex_count:
        raise UnknownVertexError(f"vertex {number} outside 1..{vertex_count}", line)
    return number - 1


def _parse_graph_section(reader: LineReader) -> Graph:
    reader.expect("SECTION", "Graph", args=0)
    line, (nodes_token,) = reader.expect("Nodes", args=1)
    vertex_count = parse_int(nodes_token, line, "node count")
    if vertex_count < 1:
        raise FormatSyntaxError(f"node count {vertex_count} must be at least 1", line)
    line, (edges_token,) = reader.expect("Edges", args=1)
    edge_count = parse_int(edges_token, line, "edge count")
    if edge_count < 0:
        raise FormatSyntaxError(f"edge count {edge_count} is negative", line)

    edges: List[Edge] = []
    seen: Set[FrozenSet[int]] = set()
    for _ in range(edge_count):
        line, (u_token, v_token, cost_token) = reader.expect("E", args=3)
        u = _parse_vertex(u_token, line, vertex_count)
        v = _parse_vertex(v_token, line, vertex_count)
        cost = parse_int(cost_token, line, "cost")
        if not 1 <= cost <= MAX_EDGE_COST:
            raise InvalidCostError(f"cost {cost} outside 1..{MAX_EDGE_COST}", line)
        if u == v:
            raise GraphStructureError(f"self-loop on vertex {u + 1}", line)
        key = frozenset((u, v))
        if key in seen:
            raise GraphStructureError(f"parallel edge {u + 1}-{v + 1}", line)
        seen.add(key)
        edges.append(Edge(u, v, cost))
    reader.expect("END", args=0)
    return Graph(vertex_count, tuple(edges))


def _render_graph_section(graph: Graph) -> List[str]:
    lines = ["SECTION Graph", f"Nodes {graph.vertex_count}", f"Edges {graph.edge_count}"]
    lines.extend(f"E {e.u + 1} {e.v + 1} {e.cost}" for e in graph.edges)
    lines.append("END")
    return lines


def parse_stpg(text: str) -> StpgInstance:
    """Parse .stp text into a validated StpgInstance."""
    reader = LineReader(text)
    graph = _parse_graph_section(reader)
    reader.expect("SECTION", "Terminals", args=0)
    line, (count_token,) = reader.expect("Terminals", args=1)
    count = parse_int(count_token, line, "terminal count")
    if count < 1:
        raise FormatSyntaxError(f"terminal count {count} must be at least 1", line)
    terminals: Set[VertexId] = set()
    for _ in range(count):
        line, (token,) = reader.expect("T", args=1)
        terminal = _parse_vertex(token, line, graph.vertex_count)
        if terminal in terminals:
            raise FormatSyntaxError(f"terminal {terminal + 1} listed twice", line)
        terminals.add(terminal)
    reader.expect("END", args=0)
    reader.expect("EOF", args=0)
    reader.expect_end_of_input()
    return StpgInstance(graph, frozenset(terminals))


def render_stpg(instance: StpgInstance) -> str:
    lines = _render_graph_section(instance.graph)
    lines.append("SECTION Terminals")
    lines.append(f"Terminals {len(instance.terminals)}")
    lines.extend(f"T {t + 1}" for t in sorted(instance.terminals))
    lines.extend(["END", "EOF"])
    return "\n".join(lines) + "\n"


def parse_gstp(text: str) -> GstpInstance:
    """Parse .gstp text into a validated GstpInstance, keeping group order."""
    reader = LineReader(text)
    graph = _parse_graph_section(reader)
    reader.expect("SECTION", "Groups", args=0)
    line, (count_token,) = reader.expect("Groups", args=1)
    count = parse_int(count_token, line, "group count")
    if count < 1:
        raise FormatSyntaxError(f"group count {count} must be at least 1", line)
    groups: List[Tuple[VertexId, ...]] = []
    for _ in range(count):
        line, tokens = reader.expect("G")
        if not tokens:
            raise InvalidGroupError("empty group", line)
        members = tuple(_parse_vertex(t, line, graph.vertex_count) for t in tokens)
        if len(set(members)) != len(members):
            raise InvalidGroupError("group lists a vertex twice", line)
        groups.append(members)
    reader.expect("END", args=0)
    reader.expect("EOF", args=0)
    reader.expect_end_of_input()
    return GstpInstance(graph, tuple(groups))


def render_gstp(instance: GstpInstance) -> str:
    lines = _render_graph_section(instance.graph)
    lines.append("SECTION Groups")
    lines.append(f"Groups {len(instance.groups)}")
    lines.extend("G " + " ".join(str(v + 1) for v in group) for group in instance.groups)
    lines.extend(["END", "EOF"])
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------------
# Trees as text
# ----------------------------------------------------------------------------

def tree_edge_lines(graph: Graph, tree: SteinerTree) -> List[str]:
    """'u v cost' lines, 1-based, u < v, sorted by (u, v)."""
    rows = []
    for index in tree.edges:
        edge = graph.edges[index]
        u, v = sorted((edge.u, edge.v))
        rows.append((u + 1, v + 1, edge.cost))
    return [f"{u} {v} {cost}" for u, v, cost in sorted(rows)]


def render_tree(graph: Graph, tree: SteinerTree) -> str:
    lines = tree_edge_lines(graph, tree)
    return "\n".join(lines) + "\n" if lines else ""


def parse_solution(text: str, graph: Graph, vertices: Iterable[VertexId] = ()) -> SteinerTree:
    """Read a tree given as 'u v' or 'u v cost' lines against `graph`.

    `vertices` seeds the vertex set so that an edgeless solution can still name
    its single vertex.
    """
    reader = LineReader(text)
    edge_indices: List[int] = []
    for line, tokens in reader.remaining():
        if len(tokens) not in (2, 3):
            raise FormatSyntaxError(f"expected 'u v [cost]', found '{' '.join(tokens)}'", line)
        u = _parse_vertex(tokens[0], line, graph.vertex_count)
        v = _parse_vertex(tokens[1], line, graph.vertex_count)
        index = graph.edge_between(u, v)
        if index is None:
            raise UnknownVertexError(f"no edge between {u + 1} and {v + 1}", line)
        if len(tokens) == 3:
            cost = parse_int(tokens[2], line, "cost")
            if cost != graph.edges[index].cost:
                raise InvalidCostError(
                    f"edge {u + 1}-{v + 1} costs {graph.edges[index].cost}, not {cost}", line
                )
        edge_indices.append(index)
    return tree_from_edges(graph, edge_indices, vertices)


def vertex_numbers(vertices: Sequence[VertexId]) -> str:
    return " ".join(str(v + 1) for v in sorted(vertices))
