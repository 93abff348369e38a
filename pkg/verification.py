"""
Exact verification suites.
Each suite runs a family of identities on randomized (seeded) or exhaustive
inputs and returns CheckResults carrying a witness for the first failure.
"""
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from config import config, VERIFICATION_SUITES
from duflo import (
    StarProductKind,
    c1_operator,
    duflo_closed_form_series,
    duflo_element,
    equivalence_operator,
    log_closed_form_series,
    log_element,
    order_component,
    series_coefficients,
    star,
    trace_operator,
)
from errors import DomainError
from lie import LieAlgebra, is_nilpotent, is_unimodular, poisson_bracket
from ring import evaluate_complex
from sym import Poly, apply_operator, compose_operators
from uea import UeaElement, pbw_inverse, pbw_symmetrize

TRANSFER_KINDS = (StarProductKind.STANDARD, StarProductKind.LOGARITHMIC, StarProductKind.GUTT)


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[Dict[str, str]] = None

    def to_dict(self) -> Dict:
        data = {"name": self.name, "passed": self.passed, "detail": self.detail}
        if self.witness is not None:
            data["witness"] = self.witness
        return data


# ============================================================================
# INPUT GENERATION
# ============================================================================

def random_monomial(rng: random.Random, L: LieAlgebra, degree: int) -> Poly:
    exponent = [0] * L.dim
    for _ in range(degree):
        exponent[rng.randrange(L.dim)] += 1
    return Poly.monomial(tuple(exponent), 1, L.basis_names)


def random_degrees(rng: random.Random, parts: int, cap: int) -> List[int]:
    """Degrees of `parts` factors with total at most `cap`"""
    degrees = [0] * parts
    for _ in range(rng.randint(0, cap)):
        degrees[rng.randrange(parts)] += 1
    return degrees


def random_monomials(rng: random.Random, L: LieAlgebra, parts: int, cap: int) -> List[Poly]:
    return [random_monomial(rng, L, d) for d in random_degrees(rng, parts, cap)]


def all_monomials(L: LieAlgebra, max_degree: int) -> Iterator[Poly]:
    for degree in range(max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(L.dim), degree):
            exponent = [0] * L.dim
            for index in combo:
                exponent[index] += 1
            yield Poly.monomial(tuple(exponent), 1, L.basis_names)


def _progress(verbose: bool, label: str, done: int, total: int):
    if verbose and config.progress_interval and done % config.progress_interval == 0:
        print(f"  {label}: {done:,}/{total:,}")


def _witness(**values) -> Dict[str, str]:
    return {key: str(value) for key, value in values.items()}


def _run_trials(
    name: str,
    trials: int,
    make_case: Callable[[int], Tuple[bool, Dict[str, str]]],
    verbose: bool,
) -> CheckResult:
    for trial in range(1, trials + 1):
        ok, witness = make_case(trial)
        if not ok:
            return CheckResult(name, False, f"failed at trial {trial}/{trials}", witness)
        _progress(verbose, name, trial, trials)
    return CheckResult(name, True, f"{trials} trials")


# ============================================================================
# SUITES
# ============================================================================

def suite_assoc(L: LieAlgebra, cap: int, trials: int, seed: int, verbose: bool = False) -> List[CheckResult]:
    results = []
    for kind in TRANSFER_KINDS:
        rng = random.Random(seed)

        def case(_, kind=kind, rng=rng):
            f, g, h = random_monomials(rng, L, 3, cap)
            lhs = star(L, kind, star(L, kind, f, g, cap), h, cap)
            rhs = star(L, kind, f, star(L, kind, g, h, cap), cap)
            return lhs == rhs, _witness(f=f, g=g, h=h, lhs=lhs, rhs=rhs)

        results.append(_run_trials(f"assoc[{kind.value}]", trials, case, verbose))
    return results


def suite_derivation(L: LieAlgebra, cap: int, trials: int, seed: int, verbose: bool = False) -> List[CheckResult]:
    if is_unimodular(L):
        return [CheckResult("derivation", True, "c1 = 0: derivation property holds vacuously")]
    D = c1_operator(L, cap)
    results = []
    for kind in (StarProductKind.STANDARD, StarProductKind.LOGARITHMIC):
        rng = random.Random(seed)

        def case(_, kind=kind, rng=rng):
            f, g = random_monomials(rng, L, 2, cap)
            lhs = apply_operator(D, star(L, kind, f, g, cap))
            rhs = star(L, kind, apply_operator(D, f), g, cap) + star(L, kind, f, apply_operator(D, g), cap)
            return lhs == rhs, _witness(f=f, g=g, lhs=lhs, rhs=rhs)

        results.append(_run_trials(f"derivation[{kind.value}]", trials, case, verbose))
    return results


def suite_equivalence(L: LieAlgebra, cap: int, trials: int, seed: int, verbose: bool = False) -> List[CheckResult]:
    T = equivalence_operator(L, cap)
    rng = random.Random(seed)

    def case(_):
        f, g = random_monomials(rng, L, 2, cap)
        lhs = apply_operator(T, star(L, StarProductKind.LOGARITHMIC, f, g, cap))
        rhs = star(L, StarProductKind.STANDARD, apply_operator(T, f), apply_operator(T, g), cap)
        return lhs == rhs, _witness(f=f, g=g, lhs=lhs, rhs=rhs)

    return [_run_trials("equivalence", trials, case, verbose)]


def suite_nilpotent_collapse(L: LieAlgebra, cap: int, trials: int, seed: int, verbose: bool = False) -> List[CheckResult]:
    nilpotent = is_nilpotent(L)
    results = [CheckResult("nilpotent", nilpotent, "all c_n vanish" if nilpotent else "some c_n is nonzero")]
    pairs = [
        (f, g)
        for f in all_monomials(L, cap)
        for g in all_monomials(L, cap - max(f.degree(), 0))
    ]
    comparisons = (
        ("standard = logarithmic", StarProductKind.STANDARD, StarProductKind.LOGARITHMIC),
        ("standard = gutt", StarProductKind.STANDARD, StarProductKind.GUTT),
    )
    for name, left, right in comparisons:
        failure = None
        for done, (f, g) in enumerate(pairs, start=1):
            a = star(L, left, f, g, cap)
            b = star(L, right, f, g, cap)
            if a != b:
                failure = _witness(f=f, g=g, **{left.value: a, right.value: b})
                break
            _progress(verbose, name, done, len(pairs))
        if failure is None:
            results.append(CheckResult(name, True, f"{len(pairs)} monomial pairs"))
        else:
            results.append(CheckResult(name, False, "products differ", failure))
    return results


def suite_pbw(L: LieAlgebra, cap: int, trials: int, seed: int, verbose: bool = False) -> List[CheckResult]:
    max_degree = min(cap, 5)
    monomials = list(all_monomials(L, max_degree))
    results = []

    failure = None
    for f in monomials:
        back = pbw_inverse(pbw_symmetrize(L, f))
        if back != f:
            failure = _witness(f=f, result=back)
            break
    results.append(CheckResult("pbw_inverse . pbw_symmetrize", failure is None, f"{len(monomials)} monomials", failure))

    failure = None
    for f in monomials:
        u = UeaElement(L, dict(f.terms()))
        back = pbw_symmetrize(L, pbw_inverse(u))
        if back != u:
            failure = _witness(u=u, result=back)
            break
    results.append(CheckResult("pbw_symmetrize . pbw_inverse", failure is None, f"{len(monomials)} PBW monomials", failure))
    return results


def suite_first_order(L: LieAlgebra, cap: int, trials: int, seed: int, verbose: bool = False) -> List[CheckResult]:
    results = []
    for kind in TRANSFER_KINDS:
        rng = random.Random(seed)

        def case(_, kind=kind, rng=rng):
            f, g = random_monomials(rng, L, 2, cap)
            commutator = star(L, kind, f, g, cap) - star(L, kind, g, f, cap)
            first = order_component(f, g, commutator, 1)
            bracket = poisson_bracket(L, f, g)
            return first == bracket, _witness(f=f, g=g, order_one=first, bracket=bracket)

        results.append(_run_trials(f"first-order[{kind.value}]", trials, case, verbose))
    return results


def suite_duflo_coefficients(L: LieAlgebra, cap: int, trials: int, seed: int, verbose: bool = False) -> List[CheckResult]:
    results = []
    order = max(cap, 2)

    c1 = trace_operator(L, 1, order)
    c2 = trace_operator(L, 2, order)
    quadratic = duflo_element(L, order).homogeneous_component(2)
    expected = (
        c2.scale(Fraction(1, 48))
        + compose_operators(c1, c1).scale(config.c1_coefficient ** 2 / 2)
    ).homogeneous_component(2)
    results.append(CheckResult(
        "order-2 term = c2/48 + (c1 coefficient)^2/2 c1^2",
        quadratic == expected,
        "exact",
        None if quadratic == expected else _witness(order_two=quadratic, expected=expected),
    ))

    factorized = compose_operators(duflo_element(L, order), equivalence_operator(L, order))
    direct = log_element(L, order)
    results.append(CheckResult(
        "log_element = duflo_element . equivalence_operator",
        factorized == direct,
        "exact",
        None if factorized == direct else _witness(composed=factorized, direct=direct),
    ))

    exact = duflo_closed_form_series(order)
    ours = series_coefficients(StarProductKind.STANDARD, order)
    mismatch = [n for n in range(2, order + 1) if ours[n] != exact[n]]
    results.append(CheckResult(
        "even coefficients = Taylor(log sqrt((1-e^-z)/z))",
        not mismatch,
        f"orders 2..{order}",
        _witness(order=mismatch[0], ours=ours[mismatch[0]], closed_form=exact[mismatch[0]]) if mismatch else None,
    ))

    numeric = log_closed_form_series(order)
    ours = series_coefficients(StarProductKind.LOGARITHMIC, order)
    bad = [n for n in range(2, order + 1) if abs(evaluate_complex(ours[n]) - numeric[n]) > 1e-10]
    results.append(CheckResult(
        "coefficients = Taylor(-log Gamma(1 + z/2 pi i) - gamma z/2 pi i)",
        not bad,
        f"orders 2..{order}, tolerance 1e-10",
        _witness(order=bad[0], ours=ours[bad[0]], closed_form=numeric[bad[0]]) if bad else None,
    ))
    return results


SUITES: Dict[str, Callable[..., List[CheckResult]]] = {
    "assoc": suite_assoc,
    "derivation": suite_derivation,
    "equivalence": suite_equivalence,
    "nilpotent-collapse": suite_nilpotent_collapse,
    "pbw": suite_pbw,
    "first-order": suite_first_order,
    "duflo-coefficients": suite_duflo_coefficients,
}
assert set(SUITES) == set(VERIFICATION_SUITES)


def run_suite(
    L: LieAlgebra,
    suite: str,
    cap: Optional[int] = None,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    verbose: bool = False,
) -> List[CheckResult]:
    """
    Run one named suite.

    Args:
        L: Lie algebra
        suite: one of VERIFICATION_SUITES
        cap: degree cap (default config.degree_cap)
        trials: randomized trials (default config.default_trials)
        seed: seed (default config.default_seed)
        verbose: print progress lines

    Returns:
        List of CheckResults
    """
    if suite not in SUITES:
        raise DomainError(f"Unknown suite {suite!r}; choose from {', '.join(VERIFICATION_SUITES)}")
    cap = config.degree_cap if cap is None else cap
    trials = config.default_trials if trials is None else trials
    seed = config.default_seed if seed is None else seed
    if verbose:
        print(f"\n{'=' * 60}")
        print(f"Suite {suite} on {L.name} (cap {cap}, trials {trials}, seed {seed})")
        print(f"{'=' * 60}")
    return SUITES[suite](L, cap, trials, seed, verbose)
