"""
Admissible graphs of type (n, m) and their multidifferential operators.

Vertices are numbered 1..n (type 1, in the upper half-plane) and
n+1..n+m (type 2, on the real line). Edges leave type-1 vertices only.
Edges are ordered; for a type-1 vertex the first outgoing edge carries the
index i and the second the index j of pi^{ij} = f_ij^k x_k.
"""
import itertools
import json
import os
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from config import config
from errors import DimensionMismatchError, GraphError, ParseError
from lie import LieAlgebra, PoissonBivector
from sym import Poly

Edge = Tuple[int, int]


@dataclass(frozen=True)
class AdmissibleGraph:
    n: int
    m: int
    edges: Tuple[Edge, ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(s), int(t)) for s, t in self.edges))
        if self.n < 0 or self.m < 0:
            raise GraphError(f"Negative vertex counts (n={self.n}, m={self.m})")
        total = self.n + self.m
        seen = set()
        for source, target in self.edges:
            if not 1 <= source <= self.n:
                raise GraphError(f"Edge ({source}, {target}) must leave a type-1 vertex 1..{self.n}")
            if not 1 <= target <= total:
                raise GraphError(f"Edge ({source}, {target}) targets a vertex outside 1..{total}")
            if source == target:
                raise GraphError(f"Short loop at vertex {source}")
            if (source, target) in seen:
                raise GraphError(f"Multiple edge ({source}, {target})")
            seen.add((source, target))

    # Structure ---------------------------------------------------------

    def to_networkx(self) -> nx.DiGraph:
        graph = nx.DiGraph()
        graph.add_nodes_from(range(1, self.n + 1), kind=1)
        graph.add_nodes_from(range(self.n + 1, self.n + self.m + 1), kind=2)
        for slot, (source, target) in enumerate(self.edges):
            graph.add_edge(source, target, slot=slot)
        return graph

    def outgoing(self, vertex: int) -> List[int]:
        """Indices into self.edges of the edges leaving `vertex`, in order"""
        return [index for index, (source, _) in enumerate(self.edges) if source == vertex]

    def incoming(self, vertex: int) -> List[int]:
        return [index for index, (_, target) in enumerate(self.edges) if target == vertex]

    def is_top_degree(self) -> bool:
        return len(self.edges) == 2 * self.n + self.m - 2

    def is_star_graph(self) -> bool:
        """Every type-1 vertex has out-degree exactly 2"""
        degrees = self.to_networkx().out_degree()
        return all(degrees[v] == 2 for v in range(1, self.n + 1))

    def sinks(self) -> List[int]:
        """Type-1 vertices with no outgoing edge"""
        degrees = self.to_networkx().out_degree()
        return [v for v in range(1, self.n + 1) if degrees[v] == 0]

    # Serialization -----------------------------------------------------

    def to_json(self) -> Dict:
        return {"n": self.n, "m": self.m, "edges": [list(edge) for edge in self.edges]}

    @classmethod
    def from_json(cls, data: Dict) -> "AdmissibleGraph":
        try:
            return cls(int(data["n"]), int(data["m"]), tuple(tuple(edge) for edge in data["edges"]))
        except GraphError:
            raise
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"Malformed graph description {data!r}: {e}") from None

    def __str__(self):
        edges = ", ".join(f"{s}->{t}" for s, t in self.edges)
        return f"G(n={self.n}, m={self.m}; {edges})"


def load_graph(path: str) -> AdmissibleGraph:
    if not os.path.exists(path):
        raise ParseError(f"Graph file {path} not found")
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ParseError(f"Graph file {path} is not valid JSON: {e}") from None
    return AdmissibleGraph.from_json(data)


def enumerate_admissible(n: int, m: int, out_degree: Optional[int] = 2) -> List[AdmissibleGraph]:
    """
    All admissible graphs of type (n, m).

    Args:
        n: number of type-1 vertices (<= config.max_graph_vertices)
        m: number of type-2 vertices, 0..2
        out_degree: 2 for star-product graphs (ordered target pairs per vertex);
            None for all edge sets of the top size 2n + m - 2

    Returns:
        Graphs in a deterministic order
    """
    if n > config.max_graph_vertices:
        raise GraphError(f"n = {n} exceeds max_graph_vertices = {config.max_graph_vertices}")
    if n < 0 or m not in (0, 1, 2):
        raise GraphError(f"Unsupported graph type ({n}, {m}); need n >= 0 and m in 0..2")
    total = n + m

    if out_degree == 2:
        per_vertex = [
            list(itertools.permutations([t for t in range(1, total + 1) if t != v], 2))
            for v in range(1, n + 1)
        ]
        graphs = []
        for choice in itertools.product(*per_vertex):
            edges = tuple((v, t) for v, pair in zip(range(1, n + 1), choice) for t in pair)
            graphs.append(AdmissibleGraph(n, m, edges))
        return graphs

    if out_degree is not None:
        raise GraphError(f"Only out_degree=2 or None are supported, got {out_degree}")
    size = 2 * n + m - 2
    if size < 0:
        return []
    candidates = [(s, t) for s in range(1, n + 1) for t in range(1, total + 1) if s != t]
    return [AdmissibleGraph(n, m, edges) for edges in itertools.combinations(candidates, size)]


def graph_operator(graph: AdmissibleGraph, L: LieAlgebra, inputs: Sequence[Poly]) -> Poly:
    """
    B_G(pi, ..., pi)(f_1, ..., f_m) for the linear Poisson structure of L.

    Each type-1 vertex carries pi^{ij} with its first edge labelled i and its
    second j; every edge differentiates its target by its label.
    """
    if len(inputs) != graph.m:
        raise GraphError(f"Graph of type ({graph.n}, {graph.m}) needs {graph.m} inputs, got {len(inputs)}")
    for f in inputs:
        if f.dim != L.dim:
            raise DimensionMismatchError(f"Input of dimension {f.dim} for algebra of dimension {L.dim}")
    if not graph.is_star_graph():
        raise GraphError(f"{graph} is not a star-product graph (out-degree 2 at every type-1 vertex)")

    if graph.n == 0:
        result = Poly.constant(L.dim, 1, L.basis_names)
        for f in inputs:
            result = result * f
        return result

    zero = Poly.zero(L.dim, L.basis_names)
    bivector = PoissonBivector(L)
    # pi is linear: a type-1 vertex hit twice is differentiated to zero
    if any(len(graph.incoming(v)) > 1 for v in range(1, graph.n + 1)):
        return zero

    vertices = list(range(1, graph.n + graph.m + 1))
    incoming = {v: graph.incoming(v) for v in vertices}
    outgoing = {v: graph.outgoing(v) for v in range(1, graph.n + 1)}
    result = zero
    for labels in itertools.product(range(L.dim), repeat=len(graph.edges)):
        term = Poly.constant(L.dim, 1, L.basis_names)
        for v in vertices:
            if v <= graph.n:
                first, second = outgoing[v]
                factor = bivector.component(labels[first], labels[second])
            else:
                factor = inputs[v - graph.n - 1]
            for edge in incoming[v]:
                if factor.is_zero():
                    break
                factor = factor.derivative(labels[edge])
            if factor.is_zero():
                term = zero
                break
            term = term * factor
        if not term.is_zero():
            result = result + term
    return result
