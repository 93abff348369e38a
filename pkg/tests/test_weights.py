import pytest

from config import config
from duflo import StarProductKind, order_component, star
from errors import GraphError
from graphs.admissible import AdmissibleGraph, load_graph
from graphs.propagators import Propagator
from graphs.tolerances import (
    CONSISTENCY_SIGMA_FACTOR,
    LOG_TRIVIAL_TOLERANCE,
    ORDER_ONE_TOLERANCE,
    ORDER_ONE_WEIGHT,
    SIGMA_FACTOR,
    VANISHING_TOLERANCE,
)
from graphs.weights import (
    NumericPoly,
    _estimate,
    consistency_report,
    default_gauge,
    default_pinned_vertex,
    star_order_from_graphs,
    weight_mc,
)
from sym import parse_poly

from conftest import data_path


@pytest.fixture
def n1_graph():
    return load_graph(data_path("graphs", "n1_ground.json"))


def test_defaults(n1_graph):
    assert default_gauge(n1_graph) == "ground"
    fig = load_graph(data_path("graphs", "fig1i.json"))
    assert default_gauge(fig) == "vertex"
    assert default_pinned_vertex(fig) == 1
    assert default_pinned_vertex(AdmissibleGraph(2, 1, ((2, 1), (2, 3), (1, 3)))) == 1
    assert default_pinned_vertex(AdmissibleGraph(2, 0, ((2, 1),))) == 2


def test_rejects_graphs_without_a_weight(n1_graph):
    with pytest.raises(GraphError):
        weight_mc(AdmissibleGraph(1, 2, ((1, 2),)), samples=100)
    with pytest.raises(GraphError):
        weight_mc(load_graph(data_path("graphs", "fig1i.json")), gauge="ground", samples=100)
    with pytest.raises(GraphError):
        weight_mc(n1_graph, gauge="vertex", pinned_vertex=3, samples=100)
    with pytest.raises(GraphError):
        weight_mc(n1_graph, gauge="sideways", samples=100)
    with pytest.raises(GraphError):
        weight_mc(n1_graph, samples=1)


def test_reproducible_for_a_seed(n1_graph):
    config.mc_batch_size = 5_000
    first = weight_mc(n1_graph, samples=20_000, seed=11)
    _estimate.cache_clear()
    second = weight_mc(n1_graph, samples=20_000, seed=11)
    assert first.value == second.value
    assert first.std_error == second.std_error
    other = weight_mc(n1_graph, samples=20_000, seed=12)
    assert other.value != first.value


def test_estimate_record(n1_graph):
    estimate = weight_mc(n1_graph, samples=10_000, seed=0)
    data = estimate.to_dict()
    assert data["graph"] == {"n": 1, "m": 2, "edges": [[1, 2], [1, 3]]}
    assert data["propagator"] == "standard"
    assert data["gauge"] == "ground"
    assert data["pinned_vertex"] is None
    assert data["samples"] == 10_000
    assert set(data) >= {"value", "value_real", "value_imag", "std_error", "seed", "converged"}


def test_gauges_agree(n1_graph):
    ground = weight_mc(n1_graph, samples=200_000, seed=0, gauge="ground")
    vertex = weight_mc(n1_graph, samples=200_000, seed=0, gauge="vertex", pinned_vertex=1)
    assert ground.gauge == "ground" and vertex.gauge == "vertex"
    combined = (ground.std_error ** 2 + vertex.std_error ** 2) ** 0.5
    assert abs(ground.value - vertex.value) <= SIGMA_FACTOR * combined


def test_unconverged_estimates_are_flagged(n1_graph, caplog):
    config.max_std_error = 0.0
    estimate = weight_mc(n1_graph, samples=1_000, seed=5)
    assert not estimate.converged
    assert "did not converge" in caplog.text


def test_order_zero_is_pointwise_product(aff1):
    f = parse_poly("x + y", aff1.basis_names)
    g = parse_poly("2*x", aff1.basis_names)
    numeric = star_order_from_graphs(aff1, 0, f, g)
    assert numeric.coefficients == {(2, 0): 2 + 0j, (1, 1): 2 + 0j}
    with pytest.raises(GraphError):
        star_order_from_graphs(aff1, 3, f, g)


def test_consistency_report_rows(heisenberg3):
    numeric = NumericPoly(heisenberg3.basis_names)
    numeric.add((0, 0, 1), 0.51 + 0j, 0.01 ** 2)
    rows = consistency_report(numeric, parse_poly("1/2*z", heisenberg3.basis_names), sigma_factor=5.0)
    assert len(rows) == 1
    assert rows[0]["monomial"] == "z"
    assert rows[0]["ok"]
    rows = consistency_report(numeric, parse_poly("z", heisenberg3.basis_names), sigma_factor=5.0)
    assert not rows[0]["ok"]


@pytest.mark.slow
def test_single_vertex_weight(n1_graph):
    estimate = weight_mc(n1_graph, Propagator.STANDARD, samples=1_000_000, seed=0)
    assert abs(estimate.value.real - ORDER_ONE_WEIGHT) <= ORDER_ONE_TOLERANCE
    assert estimate.converged


@pytest.mark.slow
def test_logarithmic_two_cycle_is_trivial():
    graph = load_graph(data_path("graphs", "fig1i.json"))
    estimate = weight_mc(graph, Propagator.LOGARITHMIC, samples=1_000_000, seed=0)
    assert abs(estimate.value) <= max(LOG_TRIVIAL_TOLERANCE, SIGMA_FACTOR * estimate.std_error)


@pytest.mark.slow
def test_graph_with_sink_vanishes():
    graph = load_graph(data_path("graphs", "vanishing_n3.json"))
    estimate = weight_mc(graph, Propagator.LOGARITHMIC, samples=4_000_000, seed=0)
    assert abs(estimate.value) <= max(VANISHING_TOLERANCE, SIGMA_FACTOR * estimate.std_error)


@pytest.mark.slow
@pytest.mark.parametrize("algebra, f_text, g_text, k", [
    ("heisenberg3", "x", "y", 1),
    ("aff1", "x", "y", 1),
    ("heisenberg3", "x^2", "y^2", 2),
    ("aff1", "x^2", "y", 2),
    ("aff1", "x", "x^2", 2),
])
def test_graph_orders_match_symbolic_product(request, algebra, f_text, g_text, k):
    L = request.getfixturevalue(algebra)
    f, g = parse_poly(f_text, L.basis_names), parse_poly(g_text, L.basis_names)
    numeric = star_order_from_graphs(L, k, f, g, Propagator.STANDARD, samples=400_000)
    exact = order_component(f, g, star(L, StarProductKind.STANDARD, f, g), k)
    rows = consistency_report(numeric, exact, CONSISTENCY_SIGMA_FACTOR)
    assert rows
    assert all(row["ok"] for row in rows), rows
