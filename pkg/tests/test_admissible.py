import json

import pytest

from config import config
from errors import DimensionMismatchError, GraphError, ParseError
from graphs.admissible import AdmissibleGraph, enumerate_admissible, graph_operator, load_graph
from sym import parse_poly

from conftest import data_path


@pytest.mark.parametrize(
    "n, m, out_degree, count",
    [(1, 2, 2, 2), (2, 2, 2, 36), (2, 0, None, 1), (3, 0, None, 15), (0, 2, 2, 1)],
)
def test_enumeration_counts(n, m, out_degree, count):
    graphs = enumerate_admissible(n, m, out_degree)
    assert len(graphs) == count
    assert len(set(graphs)) == count


def test_enumeration_is_deterministic():
    assert enumerate_admissible(2, 2) == enumerate_admissible(2, 2)
    top = enumerate_admissible(3, 0, None)
    assert all(g.is_top_degree() for g in top)


def test_enumeration_limits():
    with pytest.raises(GraphError):
        enumerate_admissible(config.max_graph_vertices + 1, 2)
    with pytest.raises(GraphError):
        enumerate_admissible(1, 3)
    with pytest.raises(GraphError):
        enumerate_admissible(1, 2, out_degree=3)


@pytest.mark.parametrize(
    "edges",
    [
        [(1, 1), (1, 2)],     # short loop
        [(1, 2), (1, 2)],     # multiple edge
        [(2, 1), (1, 3)],     # edge leaving a type-2 vertex
        [(1, 4)],             # target out of range
    ],
)
def test_invalid_graphs(edges):
    with pytest.raises(GraphError):
        AdmissibleGraph(1, 2, tuple(edges))


def test_structure_queries():
    graph = load_graph(data_path("graphs", "n1_ground.json"))
    assert graph.is_top_degree()
    assert graph.is_star_graph()
    assert graph.outgoing(1) == [0, 1]
    assert graph.incoming(3) == [1]
    assert graph.to_networkx().number_of_edges() == 2
    assert AdmissibleGraph.from_json(graph.to_json()) == graph


def test_sinks():
    assert load_graph(data_path("graphs", "fig1i.json")).sinks() == []
    assert load_graph(data_path("graphs", "vanishing_n3.json")).sinks() == [3]


def test_malformed_graph_files(tmp_path):
    with pytest.raises(ParseError):
        AdmissibleGraph.from_json({"n": 1, "edges": []})
    with pytest.raises(ParseError):
        load_graph(str(tmp_path / "missing.json"))
    broken = tmp_path / "broken.json"
    broken.write_text("{not json", encoding="utf-8")
    with pytest.raises(ParseError):
        load_graph(str(broken))
    bad_edge = tmp_path / "bad_edge.json"
    bad_edge.write_text(json.dumps({"n": 1, "m": 2, "edges": [[1, 1], [1, 2]]}), encoding="utf-8")
    with pytest.raises(GraphError):
        load_graph(str(bad_edge))


class TestGraphOperator:
    def test_single_vertex_gives_bracket(self, heisenberg3):
        graph = load_graph(data_path("graphs", "n1_ground.json"))
        x, y = parse_poly("x", heisenberg3.basis_names), parse_poly("y", heisenberg3.basis_names)
        assert str(graph_operator(graph, heisenberg3, [x, y])) == "z"
        swapped = AdmissibleGraph(1, 2, ((1, 3), (1, 2)))
        assert str(graph_operator(swapped, heisenberg3, [x, y])) == "-z"

    def test_empty_graph_is_product(self, aff1):
        f = parse_poly("x^2 + y", aff1.basis_names)
        g = parse_poly("x*y", aff1.basis_names)
        assert graph_operator(AdmissibleGraph(0, 2, ()), aff1, [f, g]) == f * g

    def test_vertex_hit_twice_vanishes(self, aff1):
        graph = AdmissibleGraph(3, 2, ((1, 4), (1, 5), (2, 1), (2, 5), (3, 1), (3, 4)))
        f = parse_poly("x^3", aff1.basis_names)
        g = parse_poly("y^3", aff1.basis_names)
        assert graph_operator(graph, aff1, [f, g]).is_zero()

    def test_errors(self, aff1, heisenberg3):
        graph = load_graph(data_path("graphs", "n1_ground.json"))
        x = parse_poly("x", aff1.basis_names)
        with pytest.raises(GraphError):
            graph_operator(graph, aff1, [x])
        with pytest.raises(DimensionMismatchError):
            graph_operator(graph, aff1, [x, parse_poly("z", heisenberg3.basis_names)])
        with pytest.raises(GraphError):
            graph_operator(load_graph(data_path("graphs", "fig1i.json")), aff1, [])
