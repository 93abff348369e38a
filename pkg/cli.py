"""
Command-line harness.

    python cli.py list-algebras
    python cli.py check-algebra data/algebras/jacobi_broken.json
    python cli.py star heisenberg3 standard x y --orders
    python cli.py star aff1 logarithmic x x^2 --cap 6
    python cli.py verify aff1 equivalence --cap 6 --trials 200 --seed 0
    python cli.py weights data/graphs/n1_ground.json --expect 0.5 --tol 0.01
    python cli.py weights --enumerate 1 2 --propagator logarithmic

Every subcommand accepts --json (full report on stdout) and --timings.
Exit codes: 0 all checks pass, 1 a check failed, 2 input error.
Set QUANT_CACHE_DIR to persist the UEA rewriting caches between runs.
"""
import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from builtin_algebras import ALGEBRA_DESCRIPTIONS, BUILTIN_ALGEBRAS
from config import config, STAR_KINDS, VERIFICATION_SUITES, __version__
from duflo import StarProductKind, order_component, star
from errors import AntisymmetryViolation, JacobiViolation, ParseError, QuantizationError
from graphs.admissible import enumerate_admissible, load_graph
from graphs.propagators import Propagator
from graphs.tolerances import SIGMA_FACTOR
from graphs.weights import GAUGES, weight_mc
from lie import LieAlgebra, is_nilpotent, is_unimodular, load_lie_algebra, trace_polynomial
from ring import format_complex
from sym import Poly, parse_poly
from uea import save_rewrite_caches
from verification import CheckResult, run_suite

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


@dataclass
class RunReport:
    """Outcome of one subcommand: its inputs, per-check status and results"""

    command: str
    inputs: Dict[str, object]
    checks: List[CheckResult] = field(default_factory=list)
    results: Dict[str, object] = field(default_factory=dict)
    seed: Optional[int] = None
    timings: Optional[Dict[str, float]] = None

    @property
    def inputs_digest(self) -> str:
        payload = json.dumps({"command": self.command, "inputs": self.inputs}, sort_keys=True, default=str)
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def exit_code(self) -> int:
        return EXIT_OK if self.passed else EXIT_CHECK_FAILED

    def to_dict(self) -> Dict:
        data = {
            "version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "inputs_digest": self.inputs_digest,
            "passed": self.passed,
            "checks": [check.to_dict() for check in self.checks],
            "results": self.results,
            "seed": self.seed,
        }
        if self.timings is not None:
            data["timings"] = self.timings
        return data

    def format_table(self) -> str:
        lines = [f"{'=' * 60}", f"{self.command}: " + ", ".join(f"{k}={v}" for k, v in self.inputs.items()), f"{'=' * 60}"]
        for key, value in self.results.items():
            if isinstance(value, dict):
                lines.append(f"  {key}:")
                lines.extend(f"    {k}: {v}" for k, v in value.items())
            elif isinstance(value, list):
                lines.append(f"  {key}:")
                for row in value:
                    if isinstance(row, dict):
                        lines.append("    " + " | ".join(f"{k}={v}" for k, v in row.items()))
                    else:
                        lines.append(f"    {row}")
            else:
                lines.append(f"  {key}: {value}")
        if self.checks:
            lines.append("\nChecks:")
            for check in self.checks:
                status = "PASS" if check.passed else "FAIL"
                lines.append(f"  [{status}] {check.name}" + (f"  ({check.detail})" if check.detail else ""))
                for k, v in (check.witness or {}).items():
                    lines.append(f"      {k}: {v}")
        if self.timings:
            lines.append("\nTimings:")
            lines.extend(f"  {k}: {v:.3f}s" for k, v in self.timings.items())
        lines.append(f"\nResult: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


# ============================================================================
# SUBCOMMANDS
# ============================================================================

def _raise_caps(cap: int):
    # lambda monomials of a product truncated at `cap` have weight <= cap
    config.lambda_weight_cap = max(config.lambda_weight_cap, cap)


def _named_witness(witness: Optional[Tuple[int, ...]], names: Sequence[str]) -> Optional[Dict[str, str]]:
    if witness is None:
        return None
    return {name: str(index) for name, index in zip(names, witness)}


def cmd_check_algebra(source: str) -> RunReport:
    """Validate an algebra (built-in name or JSON file) and report its trace invariants"""
    report = RunReport("check-algebra", {"algebra": source})
    try:
        L = load_lie_algebra(source)
    except AntisymmetryViolation as e:
        report.checks.append(CheckResult("antisymmetry", False, str(e), _named_witness(e.witness, ("i", "j", "k"))))
        return report
    except JacobiViolation as e:
        report.checks.append(CheckResult("antisymmetry", True))
        report.checks.append(CheckResult("jacobi", False, str(e), _named_witness(e.witness, ("i", "j", "k", "l"))))
        return report

    report.checks.append(CheckResult("antisymmetry", True))
    report.checks.append(CheckResult("jacobi", True))
    c1 = trace_polynomial(L, 1).poly
    report.results = {
        "name": L.name,
        "dim": L.dim,
        "basis": list(L.basis_names),
        "digest": L.digest(),
        "c1_nonzero": not c1.is_zero(),
        "unimodular": is_unimodular(L),
        "nilpotent": is_nilpotent(L),
        "traces": {f"c{n}": str(trace_polynomial(L, n).poly) for n in range(1, L.dim + 1)},
    }
    return report


def _order_components(L: LieAlgebra, kind: StarProductKind, f: Poly, g: Poly, cap: int) -> Dict[int, Poly]:
    """Per-order parts of f * g, splitting f and g into homogeneous pieces"""
    components: Dict[int, Poly] = {}
    for a in range(max(f.degree(), 0) + 1):
        fa = f.homogeneous_component(a)
        if fa.is_zero():
            continue
        for b in range(max(g.degree(), 0) + 1):
            gb = g.homogeneous_component(b)
            if gb.is_zero():
                continue
            product = star(L, kind, fa, gb, cap)
            for k in range(a + b + 1):
                piece = order_component(fa, gb, product, k)
                if not piece.is_zero():
                    components[k] = components[k] + piece if k in components else piece
    return dict(sorted(components.items()))


def cmd_star(algebra: str, kind: str, f_expr: str, g_expr: str, orders: bool = False, cap: Optional[int] = None) -> RunReport:
    """Exact star product of two polynomial expressions"""
    cap = config.degree_cap if cap is None else cap
    report = RunReport("star", {"algebra": algebra, "kind": kind, "f": f_expr, "g": g_expr, "orders": orders, "cap": cap})
    _raise_caps(cap)
    L = load_lie_algebra(algebra)
    star_kind = StarProductKind.from_name(kind)
    f = parse_poly(f_expr, L.basis_names)
    g = parse_poly(g_expr, L.basis_names)

    result = star(L, star_kind, f, g, cap)
    report.results = {
        "algebra": L.name,
        "kind": star_kind.value,
        "input": {"f": str(f), "g": str(g)},
        "result": str(result),
    }
    if orders:
        report.results["orders"] = {
            str(k): str(piece) for k, piece in _order_components(L, star_kind, f, g, cap).items()
        }
    return report


def cmd_verify(
    algebra: str,
    suite: str,
    cap: Optional[int] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    verbose: bool = False,
) -> RunReport:
    """Run one exact property suite"""
    cap = config.degree_cap if cap is None else cap
    trials = config.default_trials if trials is None else trials
    seed = config.default_seed if seed is None else seed
    report = RunReport("verify", {"algebra": algebra, "suite": suite, "cap": cap, "trials": trials}, seed=seed)
    _raise_caps(cap)
    L = load_lie_algebra(algebra)
    report.checks = run_suite(L, suite, cap, trials, seed, verbose)
    report.results = {"algebra": L.name, "suite": suite}
    if suite == "derivation" and is_unimodular(L):
        report.results["note"] = "c1 = 0, derivation property holds vacuously"
    if suite == "nilpotent-collapse" and report.passed:
        report.results["collapse"] = "standard = logarithmic = gutt"
    return report


def _parse_expected(text: str) -> complex:
    try:
        return complex(text.strip().replace(" ", "").replace("i", "j"))
    except ValueError:
        raise ParseError(f"Cannot read expected weight {text!r}; use forms like 0.5 or 0.1+0.2i") from None


def cmd_weights(
    graph_file: Optional[str] = None,
    enumerate_type: Optional[Tuple[int, int]] = None,
    propagator: str = "standard",
    samples: Optional[int] = None,
    seed: int = 0,
    gauge: Optional[str] = None,
    processes: Optional[int] = None,
    expect: Optional[str] = None,
    tol: float = 0.0,
    verbose: bool = False,
) -> RunReport:
    """
    Monte-Carlo weights of one graph file or of every graph of a type.

    With `expect`, each estimate becomes a check
    |value - expect| <= max(tol, SIGMA_FACTOR * std_error).
    """
    if (graph_file is None) == (enumerate_type is None):
        raise ParseError("Pass either a graph file or --enumerate n m")
    inputs = {
        "graph": graph_file,
        "enumerate": list(enumerate_type) if enumerate_type else None,
        "propagator": propagator,
        "samples": samples,
        "gauge": gauge,
        "expect": expect,
        "tol": tol,
    }
    report = RunReport("weights", inputs, seed=seed)
    kind = Propagator.from_name(propagator)
    target = _parse_expected(expect) if expect is not None else None

    if graph_file is not None:
        graphs = [load_graph(graph_file)]
    else:
        n, m = enumerate_type
        graphs = enumerate_admissible(n, m, out_degree=2 if m == 2 else None)

    estimates = []
    for index, graph in enumerate(graphs):
        estimate = weight_mc(graph, kind, samples, seed + index, gauge, processes=processes)
        estimates.append(estimate)
        if verbose:
            print(f"  Graph {index + 1:,}/{len(graphs):,}: {graph} -> {format_complex(estimate.value)}")
        if target is not None:
            deviation = abs(estimate.value - target)
            bound = max(tol, SIGMA_FACTOR * estimate.std_error)
            passed = deviation <= bound
            report.checks.append(CheckResult(
                f"weight {graph}",
                passed,
                f"|value - expected| = {deviation:.3g}, bound {bound:.3g}",
                None if passed else {"value": format_complex(estimate.value), "expected": format_complex(target)},
            ))

    report.results = {
        "graphs": len(graphs),
        "estimates": [
            {
                "graph": str(e.graph),
                "value": format_complex(e.value),
                "std_error": f"{e.std_error:.3g}",
                "samples": e.samples,
                "seed": e.seed,
                "gauge": e.gauge,
                "converged": e.converged,
            }
            for e in estimates
        ],
    }
    return report


def cmd_list_algebras() -> RunReport:
    report = RunReport("list-algebras", {})
    report.results = {"algebras": {name: ALGEBRA_DESCRIPTIONS.get(name, "") for name in BUILTIN_ALGEBRAS}}
    return report


# ============================================================================
# ENTRY POINT
# ============================================================================

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Print the full JSON report")
    common.add_argument("--timings", action="store_true", help="Include wall-clock timings in the report")
    common.add_argument("--quiet", action="store_true", help="No progress lines")

    parser = argparse.ArgumentParser(
        prog="cli.py",
        description="Exact star products for linear Poisson structures and Monte-Carlo graph weights.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-algebra", parents=[common], help="Validate structure constants")
    p.add_argument("algebra", help="Built-in name or JSON file")

    p = sub.add_parser("star", parents=[common], help="Star product of two expressions")
    p.add_argument("algebra")
    p.add_argument("kind", choices=STAR_KINDS + ("log", "kontsevich"))
    p.add_argument("f")
    p.add_argument("g")
    p.add_argument("--orders", action="store_true", help="Also print per-order components")
    p.add_argument("--cap", type=int, default=None, help=f"Degree cap (default: {config.degree_cap})")

    p = sub.add_parser("verify", parents=[common], help="Run an exact property suite")
    p.add_argument("algebra")
    p.add_argument("suite", choices=VERIFICATION_SUITES)
    p.add_argument("--cap", type=int, default=None, help=f"Degree cap (default: {config.degree_cap})")
    p.add_argument("--trials", type=int, default=None, help=f"Randomized trials (default: {config.default_trials})")
    p.add_argument("--seed", type=int, default=None, help=f"Seed (default: {config.default_seed})")

    p = sub.add_parser("weights", parents=[common], help="Monte-Carlo graph weights")
    p.add_argument("graph", nargs="?", default=None, help="Graph JSON file")
    p.add_argument("--enumerate", nargs=2, type=int, metavar=("N", "M"), dest="enumerate_type")
    p.add_argument("--propagator", default="standard", choices=[x.value for x in Propagator] + ["log"])
    p.add_argument("--samples", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--gauge", choices=GAUGES, default=None)
    p.add_argument("--processes", type=int, default=None)
    p.add_argument("--expect", default=None, help="Expected weight, e.g. 0.5 or 0+0i")
    p.add_argument("--tol", type=float, default=0.0, help="Absolute tolerance for --expect")

    sub.add_parser("list-algebras", parents=[common], help="List built-in algebras")
    return parser


def _dispatch(args: argparse.Namespace) -> RunReport:
    verbose = not (args.json or args.quiet)
    if args.command == "check-algebra":
        return cmd_check_algebra(args.algebra)
    if args.command == "star":
        return cmd_star(args.algebra, args.kind, args.f, args.g, args.orders, args.cap)
    if args.command == "verify":
        return cmd_verify(args.algebra, args.suite, args.cap, args.trials, args.seed, verbose)
    if args.command == "weights":
        enumerate_type = tuple(args.enumerate_type) if args.enumerate_type else None
        return cmd_weights(
            args.graph, enumerate_type, args.propagator, args.samples, args.seed,
            args.gauge, args.processes, args.expect, args.tol, verbose,
        )
    return cmd_list_algebras()


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        report = _dispatch(args)
    except (QuantizationError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    finally:
        if config.cache_dir:
            save_rewrite_caches()
    if args.timings:
        report.timings = {"total": time.perf_counter() - start}

    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(report.format_table())
    return report.exit_code()


if __name__ == "__main__":
    sys.exit(main())
