"""Hypothesis strategies and small fixed instances shared by the tests."""

from hypothesis import strategies as st

from graph_core import Edge, Graph, minimum_spanning_tree, tree_from_edges
from instance_model import GstpInstance, StpgInstance

# vertex names used in the hand-worked examples
A, B, C = 0, 1, 2


def two_vertex_example() -> GstpInstance:
    """a-b at cost 5 with groups [{a}, {b}]."""
    return GstpInstance(Graph.from_triples(2, [(A, B, 5)]), ((A,), (B,)))


def triangle_graph() -> Graph:
    """ab=1, bc=2, ac=4."""
    return Graph.from_triples(3, [(A, B, 1), (B, C, 2), (A, C, 4)])


def triangle_example() -> GstpInstance:
    """The triangle with groups [{a}, {b, c}]."""
    return GstpInstance(triangle_graph(), ((A,), (B, C)))


def path_graph() -> Graph:
    """a-b at cost 1, b-c at cost 2."""
    return Graph.from_triples(3, [(A, B, 1), (B, C, 2)])


def stpg_as_gstp(instance: StpgInstance) -> GstpInstance:
    """The STPG instance as GSTP with one singleton group per terminal."""
    return GstpInstance(instance.graph, tuple((t,) for t in sorted(instance.terminals)))


@st.composite
def graphs(draw, min_vertices: int = 1, max_vertices: int = 7, max_cost: int = 20) -> Graph:
    """Connected graphs: a random spanning tree plus extra edges."""
    n = draw(st.integers(min_value=min_vertices, max_value=max_vertices))
    pairs = set()
    for v in range(1, n):
        parent = draw(st.integers(min_value=0, max_value=v - 1))
        pairs.add((parent, v))
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in pairs]
    if candidates:
        pairs |= set(draw(st.lists(st.sampled_from(candidates), unique=True,
                                   max_size=len(candidates))))
    costs = st.integers(min_value=1, max_value=max_cost)
    return Graph(n, tuple(Edge(u, v, draw(costs)) for u, v in sorted(pairs)))


@st.composite
def stpg_instances(draw, min_vertices: int = 1, max_vertices: int = 7) -> StpgInstance:
    graph = draw(graphs(min_vertices=min_vertices, max_vertices=max_vertices))
    vertices = list(range(graph.vertex_count))
    terminals = draw(st.lists(st.sampled_from(vertices), min_size=1, unique=True,
                              max_size=min(5, graph.vertex_count)))
    return StpgInstance(graph, frozenset(terminals))


@st.composite
def gstp_instances(draw, min_vertices: int = 2, max_vertices: int = 7,
                   min_groups: int = 2, max_groups: int = 4) -> GstpInstance:
    graph = draw(graphs(min_vertices=min_vertices, max_vertices=max_vertices))
    vertices = list(range(graph.vertex_count))
    group = st.lists(st.sampled_from(vertices), min_size=1, max_size=3, unique=True)
    groups = draw(st.lists(group, min_size=min_groups, max_size=max_groups))
    return GstpInstance(graph, tuple(tuple(g) for g in groups))


@st.composite
def gstp_with_feasible_tree(draw, max_vertices: int = 7):
    """A GSTP instance with an arbitrary tree that meets every group."""
    graph = draw(graphs(min_vertices=2, max_vertices=max_vertices))
    tree = minimum_spanning_tree(graph, range(graph.vertex_count))
    # walk a random subtree: start anywhere and absorb random tree neighbours
    start = draw(st.sampled_from(sorted(tree.vertices)))
    inside = {start}
    edges = set()
    for _ in range(draw(st.integers(min_value=0, max_value=graph.vertex_count - 1))):
        frontier = sorted(
            i for i in tree.edges
            if (graph.edges[i].u in inside) != (graph.edges[i].v in inside)
        )
        if not frontier:
            break
        index = draw(st.sampled_from(frontier))
        edges.add(index)
        inside |= {graph.edges[index].u, graph.edges[index].v}
    # every group gets one member inside the subtree plus up to two arbitrary extras
    groups = []
    for _ in range(draw(st.integers(min_value=2, max_value=4))):
        hit = draw(st.sampled_from(sorted(inside)))
        extra = draw(st.lists(st.integers(min_value=0, max_value=graph.vertex_count - 1),
                              max_size=2, unique=True))
        groups.append(tuple(dict.fromkeys([hit] + extra)))
    return GstpInstance(graph, tuple(groups)), tree_from_edges(graph, edges, inside)
