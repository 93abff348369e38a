"""
Monte-Carlo graph weights.

The weight of a top-degree graph (|E| = 2n + m - 2) is the integral of the
wedge product of its edge propagators over the configuration space, after
fixing the action of z -> a z + b (a > 0, b real) by a gauge:

    ground  (m = 2): the two real points are 0 < 1; all type-1 vertices free
    vertex  (n >= 1): one type-1 vertex pinned at i; other type-1 vertices
            free; the real points free with q_1 < ... < q_m

The integrand is det(M), rows = edges in their order (vertex, edge slot),
columns = free coordinates (x, y of free type-1 vertices in vertex order,
then the free real points). Both gauges use this orientation, which gives
+1/2 for the graph of type (1, 2) with edges 1->2, 1->3.

Points of the upper half-plane are sampled as z = u/(1-u) * e^{i pi v},
real points as q = tan(pi (u - 1/2)), each with its Jacobian. Samples
within config.singular_guard of a singular locus contribute 0.
"""
import logging
import multiprocessing as mp
from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial
from typing import Dict, List, Optional, Tuple

import numpy as np

from config import config
from errors import GraphError
from lie import LieAlgebra
from ring import Coefficient, evaluate_complex, format_complex
from sym import Exponent, Poly, format_terms
from .admissible import AdmissibleGraph, enumerate_admissible, graph_operator
from .propagators import Propagator, propagator_components

logger = logging.getLogger(__name__)

GAUGES = ("ground", "vertex")


@dataclass(frozen=True)
class WeightEstimate:
    value: complex
    std_error: float
    samples: int
    seed: int
    graph: AdmissibleGraph
    propagator: Propagator
    gauge: str
    pinned_vertex: Optional[int] = None
    converged: bool = True

    def to_dict(self) -> Dict:
        return {
            "graph": self.graph.to_json(),
            "propagator": self.propagator.value,
            "gauge": self.gauge,
            "pinned_vertex": self.pinned_vertex,
            "value": format_complex(self.value),
            "value_real": self.value.real,
            "value_imag": self.value.imag,
            "std_error": self.std_error,
            "samples": self.samples,
            "seed": self.seed,
            "converged": self.converged,
        }


@dataclass(frozen=True)
class _Layout:
    """Where every vertex lives and which matrix columns it owns"""

    n: int
    m: int
    edges: Tuple[Tuple[int, int], ...]  # 0-based vertex ids
    fixed: Tuple[Tuple[int, complex], ...]
    free_plane: Tuple[int, ...]
    free_real: Tuple[int, ...]

    @property
    def dimension(self) -> int:
        return 2 * len(self.free_plane) + len(self.free_real)

    def columns(self) -> Dict[int, Tuple[int, ...]]:
        mapping: Dict[int, Tuple[int, ...]] = {}
        column = 0
        for vertex in self.free_plane:
            mapping[vertex] = (column, column + 1)
            column += 2
        for vertex in self.free_real:
            mapping[vertex] = (column,)
            column += 1
        return mapping


def default_pinned_vertex(graph: AdmissibleGraph) -> int:
    """First type-1 vertex (1-based) with an outgoing edge"""
    for v in range(1, graph.n + 1):
        if graph.outgoing(v):
            return v
    return 1


def default_gauge(graph: AdmissibleGraph) -> str:
    return "ground" if graph.m == 2 else "vertex"


def _layout(graph: AdmissibleGraph, gauge: str, pinned: Optional[int]) -> _Layout:
    edges = tuple((s - 1, t - 1) for s, t in graph.edges)
    type1 = list(range(graph.n))
    type2 = list(range(graph.n, graph.n + graph.m))
    if gauge == "ground":
        if graph.m != 2:
            raise GraphError(f"The ground gauge needs m = 2, got m = {graph.m}")
        fixed = ((type2[0], 0j), (type2[1], 1 + 0j))
        return _Layout(graph.n, graph.m, edges, fixed, tuple(type1), ())
    if gauge == "vertex":
        if graph.n < 1:
            raise GraphError("The vertex gauge needs a type-1 vertex")
        if not 1 <= pinned <= graph.n:
            raise GraphError(f"Pinned vertex {pinned} is not a type-1 vertex of {graph}")
        fixed = ((pinned - 1, 1j),)
        free_plane = tuple(v for v in type1 if v != pinned - 1)
        return _Layout(graph.n, graph.m, edges, fixed, free_plane, tuple(type2))
    raise GraphError(f"Unknown gauge {gauge!r}; choose from {', '.join(GAUGES)}")


def _batch_moments(task) -> Tuple[float, float, float, float, int]:
    """Sum, sum of squares (real and imaginary) and count of one batch"""
    layout, propagator_name, size, seed_sequence, guard = task
    propagator = Propagator(propagator_name)
    rng = np.random.default_rng(seed_sequence)
    u = rng.random((size, layout.dimension))

    total = layout.n + layout.m
    points = np.zeros((size, total), dtype=complex)
    jacobian = np.ones(size)
    valid = np.ones(size, dtype=bool)
    for vertex, value in layout.fixed:
        points[:, vertex] = value

    columns = layout.columns()
    for vertex in layout.free_plane:
        a, b = columns[vertex]
        radius = u[:, a] / (1.0 - u[:, a])
        points[:, vertex] = radius * np.exp(1j * np.pi * u[:, b])
        jacobian *= np.pi * radius / (1.0 - u[:, a]) ** 2
        valid &= points[:, vertex].imag > guard
    for vertex in layout.free_real:
        (a,) = columns[vertex]
        q = np.tan(np.pi * (u[:, a] - 0.5))
        points[:, vertex] = q
        jacobian *= np.pi * (1.0 + q * q)
    for first, second in zip(layout.free_real, layout.free_real[1:]):
        valid &= points[:, first].real < points[:, second].real

    for a in range(total):
        for b in range(a + 1, total):
            valid &= np.abs(points[:, a] - points[:, b]) > guard
            valid &= np.abs(np.conj(points[:, a]) - points[:, b]) > guard

    matrix = np.zeros((size, len(layout.edges), layout.dimension), dtype=complex)
    for row, (source, target) in enumerate(layout.edges):
        with np.errstate(all="ignore"):
            components = propagator_components(propagator, points[:, source], points[:, target])
        components[~valid] = 0.0
        if source in columns:
            for offset, column in enumerate(columns[source]):
                matrix[:, row, column] += components[:, offset]
        if target in columns:
            for offset, column in enumerate(columns[target]):
                matrix[:, row, column] += components[:, 2 + offset]

    matrix[~np.isfinite(matrix)] = 0.0
    with np.errstate(all="ignore"):
        if layout.dimension == 0:
            values = np.ones(size, dtype=complex)
        else:
            values = np.linalg.det(matrix) * jacobian
    values = np.where(valid & np.isfinite(values), values, 0.0)
    return (
        float(values.real.sum()),
        float(values.imag.sum()),
        float((values.real ** 2).sum()),
        float((values.imag ** 2).sum()),
        size,
    )


@lru_cache(maxsize=256)
def _estimate(graph, propagator, samples, seed, gauge, pinned, batch_size, guard, processes):
    layout = _layout(graph, gauge, pinned)
    sizes = [batch_size] * (samples // batch_size)
    if samples % batch_size:
        sizes.append(samples % batch_size)
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    tasks = [(layout, propagator.value, size, child, guard) for size, child in zip(sizes, children)]

    if processes > 1 and len(tasks) > 1:
        with mp.Pool(processes=processes) as pool:
            moments = pool.map(_batch_moments, tasks)
    else:
        moments = [_batch_moments(task) for task in tasks]

    sum_re = sum(m[0] for m in moments)
    sum_im = sum(m[1] for m in moments)
    sq_re = sum(m[2] for m in moments)
    sq_im = sum(m[3] for m in moments)
    count = sum(m[4] for m in moments)

    mean = complex(sum_re / count, sum_im / count)
    if count > 1:
        var_re = max(sq_re - count * mean.real ** 2, 0.0) / (count - 1)
        var_im = max(sq_im - count * mean.imag ** 2, 0.0) / (count - 1)
        std_error = float(np.sqrt((var_re + var_im) / count))
    else:
        std_error = float("inf")
    return mean, std_error


def weight_mc(
    graph: AdmissibleGraph,
    propagator: Propagator = Propagator.STANDARD,
    samples: Optional[int] = None,
    seed: int = 0,
    gauge: Optional[str] = None,
    pinned_vertex: Optional[int] = None,
    processes: Optional[int] = None,
) -> WeightEstimate:
    """
    Monte-Carlo estimate of the weight of a top-degree graph.

    Args:
        graph: graph with |E| = 2n + m - 2 and n <= config.max_graph_vertices
        propagator: propagator placed on every edge
        samples: sample count (default config.mc_samples, mc_samples_large for n = 3)
        seed: seed of the batch substreams; results are reproducible
        gauge: "ground" or "vertex" (default: ground when m = 2)
        pinned_vertex: type-1 vertex fixed at i in the vertex gauge
        processes: worker processes for the batches (default config.weight_processes)

    Returns:
        WeightEstimate; estimates with std_error above config.max_std_error
        are flagged converged=False
    """
    if not graph.is_top_degree():
        raise GraphError(
            f"{graph} has {len(graph.edges)} edges; weights need 2n + m - 2 = {2 * graph.n + graph.m - 2}"
        )
    if graph.n > config.max_graph_vertices:
        raise GraphError(f"n = {graph.n} exceeds max_graph_vertices = {config.max_graph_vertices}")
    if samples is None:
        samples = config.mc_samples_large if graph.n >= 3 else config.mc_samples
    if samples < 2:
        raise GraphError(f"Need at least 2 samples, got {samples}")
    gauge = gauge or default_gauge(graph)
    if gauge == "vertex" and pinned_vertex is None:
        pinned_vertex = default_pinned_vertex(graph)
    if gauge == "ground":
        pinned_vertex = None
    processes = processes or config.weight_processes

    value, std_error = _estimate(
        graph, propagator, samples, seed, gauge, pinned_vertex,
        config.mc_batch_size, config.singular_guard, processes,
    )
    converged = std_error <= config.max_std_error
    if not converged:
        logger.warning("Weight of %s did not converge: std_error %.3g > %.3g", graph, std_error, config.max_std_error)
    return WeightEstimate(value, std_error, samples, seed, graph, propagator, gauge, pinned_vertex, converged)


# ============================================================================
# GRAPH-SIDE STAR PRODUCT
# ============================================================================

@dataclass
class NumericPoly:
    """Polynomial with complex coefficients and per-coefficient standard errors"""

    names: Tuple[str, ...]
    coefficients: Dict[Exponent, complex] = field(default_factory=dict)
    std_errors: Dict[Exponent, float] = field(default_factory=dict)

    def add(self, exponent: Exponent, value: complex, variance: float = 0.0):
        self.coefficients[exponent] = self.coefficients.get(exponent, 0j) + value
        previous = self.std_errors.get(exponent, 0.0)
        self.std_errors[exponent] = float(np.sqrt(previous ** 2 + variance))

    def __str__(self):
        parts = []
        for exponent in sorted(self.coefficients, key=lambda e: (-sum(e), tuple(-x for x in e))):
            monomial = format_terms({exponent: Coefficient.rational(1)}, self.names)
            parts.append(f"({format_complex(self.coefficients[exponent])} ± {self.std_errors[exponent]:.2g})*{monomial}")
        return " + ".join(parts) if parts else "0"

    def to_dict(self) -> Dict:
        return {
            format_terms({e: Coefficient.rational(1)}, self.names): {
                "value": format_complex(v),
                "std_error": self.std_errors.get(e, 0.0),
            }
            for e, v in self.coefficients.items()
        }


def star_order_from_graphs(
    L: LieAlgebra,
    k: int,
    f: Poly,
    g: Poly,
    propagator: Propagator = Propagator.STANDARD,
    samples: Optional[int] = None,
    seed: int = 0,
) -> NumericPoly:
    """
    Order-k term of the star product from graphs of type (k, 2):
    hbar^k / k! * sum_G w_G * B_G(f, g) with hbar = config.graph_hbar.
    """
    if not 0 <= k <= 2:
        raise GraphError(f"Graph-side orders are available for k <= 2, got {k}")
    result = NumericPoly(L.basis_names)
    if k == 0:
        for exponent, c in (f * g).terms():
            result.add(exponent, evaluate_complex(c))
        return result

    prefactor = config.graph_hbar ** k / factorial(k)
    for index, graph in enumerate(enumerate_admissible(k, 2)):
        operator = graph_operator(graph, L, [f, g])
        if operator.is_zero():
            continue
        weight = weight_mc(graph, propagator, samples, seed + index)
        for exponent, c in operator.terms():
            value = evaluate_complex(c)
            result.add(
                exponent,
                prefactor * weight.value * value,
                (prefactor * abs(value) * weight.std_error) ** 2,
            )
    return result


def consistency_report(numeric: NumericPoly, exact: Poly, sigma_factor: float) -> List[Dict]:
    """Per-coefficient comparison; `ok` when |numeric - exact| <= sigma_factor * std_error"""
    exact_values = exact.evaluate_coefficients()
    rows = []
    for exponent in sorted(set(numeric.coefficients) | set(exact_values)):
        estimate = numeric.coefficients.get(exponent, 0j)
        target = exact_values.get(exponent, 0j)
        sigma = numeric.std_errors.get(exponent, 0.0)
        deviation = abs(estimate - target)
        rows.append({
            "monomial": format_terms({exponent: Coefficient.rational(1)}, numeric.names),
            "graph": format_complex(estimate),
            "symbolic": format_complex(target),
            "std_error": sigma,
            "ok": deviation <= sigma_factor * sigma + 1e-12,
        })
    return rows
