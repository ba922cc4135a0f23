from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from config import MAX_AGGREGATE_COST, MAX_EDGE_COST
from errors import (
    CostOverflowError,
    GraphStructureError,
    InvalidArgumentError,
    InvalidCostError,
    InvalidTreeError,
)
from graph_core import (
    Edge,
    Graph,
    SteinerTree,
    checked_add,
    checked_mul,
    dijkstra,
    is_connected,
    minimum_spanning_tree,
    path_edges,
    prune_tree,
    shortest_paths,
    total_cost,
    tree_degrees,
    tree_from_edges,
    validate_tree,
)
from strategies import A, B, C, graphs, path_graph, triangle_graph


def test_checked_arithmetic_refuses_overflow() -> None:
    assert checked_add(MAX_AGGREGATE_COST - 1, 1) == MAX_AGGREGATE_COST
    with pytest.raises(CostOverflowError):
        checked_add(MAX_AGGREGATE_COST, 1)
    with pytest.raises(CostOverflowError):
        checked_mul(MAX_EDGE_COST, 2**33)
    with pytest.raises(ArithmeticError):
        checked_mul(MAX_AGGREGATE_COST, 2)


def test_graph_rejects_bad_structure() -> None:
    with pytest.raises(GraphStructureError):
        Graph.from_triples(2, [(A, A, 1)])
    with pytest.raises(GraphStructureError):
        Graph.from_triples(2, [(A, B, 1), (B, A, 3)])
    with pytest.raises(GraphStructureError):
        Graph.from_triples(2, [(A, 2, 1)])
    with pytest.raises(GraphStructureError):
        Graph(0, ())


@pytest.mark.parametrize("cost", [0, -3, MAX_EDGE_COST + 1])
def test_graph_rejects_cost_out_of_range(cost: int) -> None:
    with pytest.raises(InvalidCostError):
        Graph.from_triples(2, [(A, B, cost)])


def test_adjacency_lists_follow_edge_order() -> None:
    graph = triangle_graph()
    assert graph.adjacency[A] == ((B, 0), (C, 2))
    assert graph.adjacency[B] == ((A, 0), (C, 1))
    assert graph.edge_between(C, A) == 2
    assert graph.edge_between(A, A) is None


def test_is_connected() -> None:
    assert is_connected(Graph(1, ()))
    assert not is_connected(Graph(2, ()))
    assert is_connected(path_graph())


def test_total_cost() -> None:
    assert total_cost(Graph(1, ())) == 0
    assert total_cost(Graph.from_triples(4, [(0, 1, 1), (1, 2, 2), (2, 3, 3)])) == 6
    assert total_cost(triangle_graph()) == 7


def test_shortest_paths_on_path_and_triangle() -> None:
    dist, pred = shortest_paths(path_graph(), A)
    assert dist == [0, 1, 3]
    assert pred[A] is None

    dist, pred = shortest_paths(triangle_graph(), A)
    assert dist[C] == 3
    assert path_edges(pred, C) == [0, 1]


def test_shortest_paths_rejects_unknown_source() -> None:
    with pytest.raises(InvalidArgumentError):
        shortest_paths(path_graph(), 3)


def test_dijkstra_prefers_lower_edge_index_on_ties() -> None:
    # two cost-2 routes from 0 to 3: via 1 (edges 0, 2) and via 2 (edges 1, 3)
    square = Graph.from_triples(4, [(0, 1, 1), (0, 2, 1), (1, 3, 1), (2, 3, 1)])
    dist, pred = dijkstra(square, {0: 0})
    assert dist[3] == 2
    assert path_edges(pred, 3) == [0, 2]


def test_minimum_spanning_tree_examples() -> None:
    graph = triangle_graph()
    assert minimum_spanning_tree(graph, {A}) == SteinerTree.single_vertex(A)
    whole = minimum_spanning_tree(graph, {A, B, C})
    assert whole.total_cost == 3
    assert whole.edges == frozenset({0, 1})
    assert minimum_spanning_tree(path_graph(), {A, C}) is None
    with pytest.raises(InvalidArgumentError):
        minimum_spanning_tree(graph, set())


def test_validate_tree() -> None:
    graph = triangle_graph()
    validate_tree(graph, tree_from_edges(graph, [0, 1]))
    validate_tree(graph, SteinerTree.single_vertex(C))
    with pytest.raises(InvalidTreeError):
        validate_tree(graph, tree_from_edges(graph, [0, 1, 2]))
    with pytest.raises(InvalidTreeError):
        validate_tree(graph, SteinerTree(frozenset({A, B}), frozenset({0}), 2))
    with pytest.raises(InvalidTreeError):
        validate_tree(graph, SteinerTree(frozenset({A, B, C}), frozenset({0}), 1))
    with pytest.raises(InvalidTreeError):
        validate_tree(graph, SteinerTree(frozenset({A}), frozenset({0}), 1))
    with pytest.raises(InvalidTreeError):
        tree_from_edges(graph, [7])


def test_prune_tree_strips_unkept_leaves() -> None:
    graph = path_graph()
    tree = tree_from_edges(graph, [0, 1])
    assert prune_tree(graph, tree, {A, B}) == tree_from_edges(graph, [0])
    assert prune_tree(graph, tree, {A, C}) == tree
    assert prune_tree(graph, tree, {B}) == SteinerTree.single_vertex(B)


def test_tree_degrees() -> None:
    graph = path_graph()
    degrees = tree_degrees(graph, tree_from_edges(graph, [0, 1]))
    assert degrees == {A: 1, B: 2, C: 1}


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_generated_graphs_are_connected(graph: Graph) -> None:
    assert is_connected(graph)
    assert nx.is_connected(graph.to_networkx())


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_minimum_spanning_tree_matches_networkx(graph: Graph) -> None:
    tree = minimum_spanning_tree(graph, range(graph.vertex_count))
    validate_tree(graph, tree)
    expected = nx.minimum_spanning_tree(graph.to_networkx()).size(weight="weight")
    assert tree.total_cost == expected


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_shortest_paths_match_networkx(graph: Graph) -> None:
    dist, pred = shortest_paths(graph, 0)
    expected = nx.single_source_dijkstra_path_length(graph.to_networkx(), 0)
    assert dist == [expected[v] for v in range(graph.vertex_count)]
    for target in range(graph.vertex_count):
        route = path_edges(pred, target)
        assert sum(graph.edges[i].cost for i in route) == dist[target]


def test_edge_other_endpoint() -> None:
    edge = Edge(A, C, 4)
    assert edge.other(A) == C
    assert edge.other(C) == A


def _cheapest_spanning_tree(graph: Graph, members: frozenset):
    """Cheapest tree over exactly `members` by enumerating induced edge subsets."""
    induced = [i for i, e in enumerate(graph.edges) if e.u in members and e.v in members]
    best = None
    for chosen in combinations(induced, len(members) - 1):
        candidate = nx.Graph()
        candidate.add_nodes_from(members)
        candidate.add_edges_from((graph.edges[i].u, graph.edges[i].v) for i in chosen)
        if nx.is_tree(candidate):
            cost = sum(graph.edges[i].cost for i in chosen)
            best = cost if best is None else min(best, cost)
    return best


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_subset_spanning_tree_is_cheapest(data) -> None:
    graph = data.draw(graphs(max_vertices=6))
    members = frozenset(data.draw(st.lists(
        st.integers(min_value=0, max_value=graph.vertex_count - 1),
        min_size=1, max_size=graph.vertex_count, unique=True,
    )))
    tree = minimum_spanning_tree(graph, members)
    expected = _cheapest_spanning_tree(graph, members)
    if expected is None:
        assert tree is None
    else:
        validate_tree(graph, tree)
        assert tree.vertices == members
        assert tree.total_cost == expected
