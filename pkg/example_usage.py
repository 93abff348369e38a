"""
Example usage script for the star product engine
"""
from graphs.admissible import load_graph
from graphs.propagators import Propagator
from graphs.weights import consistency_report, star_order_from_graphs, weight_mc
from config import config
from duflo import StarProductKind, equivalence_operator, order_component, star
from lie import load_lie_algebra, trace_polynomial
from sym import apply_operator, parse_poly


def main():
    """
    Example: exact products on aff(1)

    1. Load the built-in algebra and print its trace polynomials
    2. Compute x * x^2 with the standard and the logarithmic product
    3. Check that T(x *_log x^2) = T(x) * T(x^2)
    """
    L = load_lie_algebra("aff1")
    print(f"Algebra: {L.name} (dim {L.dim}), basis {', '.join(L.basis_names)}")
    for n in range(1, 4):
        print(f"  c{n} = {trace_polynomial(L, n).poly}")
    print()

    f = parse_poly("x", L.basis_names)
    g = parse_poly("x^2", L.basis_names)
    standard = star(L, StarProductKind.STANDARD, f, g)
    logarithmic = star(L, StarProductKind.LOGARITHMIC, f, g)
    print(f"x * x^2     = {standard}")
    print(f"x *log x^2  = {logarithmic}")
    for k in range(4):
        print(f"  order {k}: {order_component(f, g, logarithmic, k)}")

    T = equivalence_operator(L)
    lhs = apply_operator(T, logarithmic)
    rhs = star(L, StarProductKind.STANDARD, apply_operator(T, f), apply_operator(T, g))
    print(f"T(x *log x^2) == T(x) * T(x^2): {lhs == rhs}")


def example_heisenberg():
    """Example: on a nilpotent algebra all three products agree"""
    L = load_lie_algebra("heisenberg3")
    f = parse_poly("x^2", L.basis_names)
    g = parse_poly("y^2", L.basis_names)
    for kind in StarProductKind:
        print(f"{kind.value:12s}: {star(L, kind, f, g)}")


def example_custom_config():
    """Example: larger truncation order"""
    config.degree_cap = 8
    config.lambda_weight_cap = 8

    L = load_lie_algebra("t2")
    f = parse_poly("e11^4", L.basis_names)
    g = parse_poly("e12^4", L.basis_names)
    print(star(L, StarProductKind.LOGARITHMIC, f, g))


def example_weights():
    """Example: Monte-Carlo weight of the single graph of type (1, 2), and order 2 on heisenberg3"""
    graph = load_graph("data/graphs/n1_ground.json")
    estimate = weight_mc(graph, Propagator.STANDARD, samples=200_000, seed=0)
    print(f"{graph}: {estimate.value.real:.4f} +- {estimate.std_error:.4f}")

    L = load_lie_algebra("heisenberg3")
    f = parse_poly("x^2", L.basis_names)
    g = parse_poly("y^2", L.basis_names)
    numeric = star_order_from_graphs(L, 2, f, g, Propagator.STANDARD, samples=200_000)
    exact = order_component(f, g, star(L, StarProductKind.STANDARD, f, g), 2)
    for row in consistency_report(numeric, exact, sigma_factor=5.0):
        print(f"  {row['monomial']:>8s}: graph {row['graph']}  symbolic {row['symbolic']}  ok={row['ok']}")


if __name__ == "__main__":
    main()
