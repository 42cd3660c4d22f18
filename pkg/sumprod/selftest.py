"""
Named verification suites runnable from the command line.

`quick` uses reduced sizes; `full` uses the acceptance sizes and can take a
few minutes.
"""

import random
from fractions import Fraction
from itertools import product
from typing import Callable, Optional

from sumprod import arith, classify, prooflab, search, sylvester
from sumprod.exceptions import ApplicationError
from sumprod.logging_config import get_child_logger, tracer
from sumprod.models.query import CheckResult, SelftestLevel, SelftestReport
from sumprod.models.verdict import VerdictStatus

# Create a child logger for this module
logger = get_child_logger("selftest")

SEED = 20240611

SIZES = {
    SelftestLevel.QUICK: {
        "classify_max": 10**4,
        "mapping_box": 20,
        "fuzz_cases": 500,
        "negative_n_max": 100,
        "negative_bound": 20,
        "system_height": 6,
        "case_n_max": 200,
        "case_box": 2,
        "quadform_box": 8,
        "v2_box": 50,
        "parity_random": 200,
        "prime_max": 300,
        "cube_e_max": 10,
        "reciprocity_max": 100,
        "determinism_sets": 5,
        "claim_box": 12,
    },
    SelftestLevel.FULL: {
        "classify_max": 10**6,
        "mapping_box": 50,
        "fuzz_cases": 10**4,
        "negative_n_max": 300,
        "negative_bound": 60,
        "system_height": 12,
        "case_n_max": 2000,
        "case_box": 5,
        "quadform_box": 20,
        "v2_box": 200,
        "parity_random": 1000,
        "prime_max": 2000,
        "cube_e_max": 14,
        "reciprocity_max": 500,
        "determinism_sets": 20,
        "claim_box": 30,
    },
}

# Each check returns (cases examined, failure description or None).
CheckFn = Callable[[dict], tuple[int, Optional[str]]]
CHECKS: dict[str, CheckFn] = {}


def check(name: str):
    def register(fn: CheckFn) -> CheckFn:
        CHECKS[name] = fn
        return fn

    return register


def generated_covered(limit: int) -> set[int]:
    """Union of the five families up to `limit`, by direct generation."""
    covered: set[int] = set()
    for k in range(1, limit // 8 + 2):
        for value in (16 * k - 4, 64 * k, 32 * k - 16, 8 * k - 1):
            if value <= limit:
                covered.add(value)
    m = 1
    while 2 ** (2 * m + 1) + 27 <= limit:
        k = 1
        while (value := 2 ** (2 * m + 1) * (2 * k - 1) + 27) <= limit:
            covered.add(value)
            k += 1
        m += 1
    return covered


def odd_primes_below(limit: int) -> list[int]:
    return [p for p in range(3, limit, 2) if arith.factorize(p) == {p: 1}]


@check("classification_oracle")
def _classification_oracle(size: dict) -> tuple[int, Optional[str]]:
    limit = size["classify_max"]
    expected = generated_covered(limit)
    for n in range(1, limit + 1):
        form = classify.classify_n(n)
        if form.covered != (n in expected):
            return n, f"n={n}: classify says {form.form.value}, generation says covered={n in expected}"
        if form.covered and form.reconstruct() != n:
            return n, f"n={n}: witnesses {form.k}, {form.m} rebuild {form.reconstruct()}"
    return limit, None


@check("theorem_mapping")
def _theorem_mapping(size: dict) -> tuple[int, Optional[str]]:
    box = range(1, size["mapping_box"] + 1)
    cases = 0
    for a, b, c in product(box, repeat=3):
        verdict = classify.check_theorem(a, b, c)
        cases += 1
        for label in verdict.matched:
            if verdict.n_form.form not in classify.THEOREM_FORM_SETS[label]:
                return cases, f"{(a, b, c)}: {label} matched but n={verdict.n} is {verdict.n_form.form.value}"
        if a <= 12 and b == 1:
            corollary = classify.check_corollary(a, c)
            mapped = [classify.COROLLARY_LABELS[t] for t in verdict.matched]
            if corollary.matched != mapped or corollary.n_form != verdict.n_form:
                return cases, f"corollary({a}, {c}) disagrees with theorem({a}, 1, {c})"
    return cases, None


@check("sylvester_identity_fuzz")
def _sylvester_fuzz(size: dict) -> tuple[int, Optional[str]]:
    rng = random.Random(SEED)

    def rat(nonzero: bool = False) -> Fraction:
        while True:
            value = Fraction(rng.randint(-40, 40), rng.randint(1, 12))
            if value or not nonzero:
                return value

    for case in range(size["fuzz_cases"]):
        A, B, C = rat(), rat(), rat()
        alpha, beta, gamma = rat(True), rat(True), rat(True)
        D = (A * alpha**3 + B * beta**3 + C * gamma**3) / (alpha * beta * gamma)
        t = sylvester.sylvester_transform(A, B, C, D, alpha, beta, gamma)
        residual = t.f**3 + t.g**3 + A * B * C * t.h**3 - D * t.f * t.g * t.h
        if residual != 0:
            return case + 1, f"residual {residual} at {(A, B, C, D, alpha, beta, gamma)}"
    return size["fuzz_cases"], None


@check("positive_controls")
def _positive_controls(size: dict) -> tuple[int, Optional[str]]:
    controls = [
        (search.search_cubic(27, 10), (9, 9, 1)),
        (search.search_cubic(125, 30), (25, 25, 2)),
        (search.search_guy(36, 5), (1, 2, 3)),
        (search.search_guy(32, 10), (1, 1, 2)),
        (search.search_system(1, 1, 5, 4), (Fraction(1, 2), Fraction(1, 2), Fraction(4))),
    ]
    for report, expected in controls:
        wanted = tuple(Fraction(v) for v in expected)
        if wanted not in report.solutions:
            return len(controls), f"{report.equation.value} {report.parameters} misses {expected}"
        if not all(search.verify_solution(report, s) for s in report.solutions):
            return len(controls), f"{report.equation.value} {report.parameters} lists a non-solution"
    return len(controls), None


@check("negative_controls")
def _negative_controls(size: dict) -> tuple[int, Optional[str]]:
    cases = 0
    for n, _form in classify.covered_upto(size["negative_n_max"]):
        for report in (
            search.search_cubic(n, size["negative_bound"]),
            search.search_guy(n, size["negative_bound"]),
        ):
            cases += 1
            if report.solutions:
                return cases, f"{report.equation.value} n={n} found {report.solutions[0]}"
    for a, n in product(range(1, 7), range(1, 13)):
        if classify.check_corollary(a, n).status is VerdictStatus.PROVED_NO_SOLUTIONS:
            cases += 1
            report = search.search_system(a, 1, n, size["system_height"])
            if report.solutions:
                return cases, f"system a={a} n={n} found {report.solutions[0]}"
    return cases, None


@check("reduction_chain")
def _reduction_chain(size: dict) -> tuple[int, Optional[str]]:
    system = sylvester.reduce_system_to_cubic(Fraction(1, 2), Fraction(1, 2), 4, 1, 1, 5)
    if (system.x, system.y, system.z, system.n) != (25, 25, 2, 125) or system.residual():
        return 1, f"system chain gave {system}"
    guy = sylvester.reduce_guy_to_cubic(1, 2, 3)
    if (guy.x, guy.y, guy.z, guy.n) != (10, 14, 1, 36) or guy.residual():
        return 2, f"guy chain gave {guy}"
    return 2, None


@check("case_transform_identity")
def _case_transform(size: dict) -> tuple[int, Optional[str]]:
    box = range(-size["case_box"], size["case_box"] + 1)
    points = list(product(box, repeat=3))
    for n in range(1, size["case_n_max"] + 1):
        reduced = prooflab.case_transform(n)
        for x, y, z in points:
            if prooflab.case_transform_residual(n, reduced, x, y, z) != 0:
                return n, f"n={n} at {(x, y, z)}"
        if classify.classify_n(n).covered and classify.case_coefficients(n) != (reduced.A, reduced.Bc):
            return n, f"n={n}: coefficients {(reduced.A, reduced.Bc)} differ from {classify.case_coefficients(n)}"
    return size["case_n_max"], None


@check("claim_coprime")
def _claim_coprime(size: dict) -> tuple[int, Optional[str]]:
    box = range(1, size["claim_box"] + 1)
    cubefree = [A for A in box if arith.is_cubefree(A)]
    cases = 0
    for x, y, z in product(box, repeat=3):
        if x > y or arith.gcd(arith.gcd(x, y), z) != 1:
            continue
        for A in cubefree:
            Bc, rest = divmod(x**3 + y**3 + A * z**3, x * y * z)
            if rest or not arith.radical_divides(A, Bc):
                continue
            cases += 1
            report = prooflab.check_claim_coprime(x, y, z, A, Bc)
            if not report.holds:
                return cases, f"counterexample {(x, y, z, A, Bc)}: {report.violations}"
    return cases, None


@check("quadform_identity")
def _quadform(size: dict) -> tuple[int, Optional[str]]:
    box = range(-size["quadform_box"], size["quadform_box"] + 1)
    cases = 0
    for A, B, C in product(box, repeat=3):
        cases += 1
        if prooflab.quadform_identity_check(A, B, C) != 0:
            return cases, f"nonzero residual at {(A, B, C)}"
    return cases, None


@check("v2_quadform_parity")
def _v2_parity(size: dict) -> tuple[int, Optional[str]]:
    box = range(-size["v2_box"], size["v2_box"] + 1)
    cases = 0
    for r, s in product(box, repeat=2):
        if r == 0 and s == 0:
            continue
        cases += 1
        if not prooflab.v2_quadform_parity(r, s):
            return cases, f"odd valuation at {(r, s)}"
    return cases, None


@check("parity_identity")
def _parity(size: dict) -> tuple[int, Optional[str]]:
    rng = random.Random(SEED)
    triples = list(product((0, 1), repeat=3))
    triples += [tuple(rng.randint(-10**6, 10**6) for _ in range(3)) for _ in range(size["parity_random"])]
    for i, (u, v, w) in enumerate(triples):
        if not prooflab.parity_identity_check(u, v, w):
            return i + 1, f"fails at {(u, v, w)}"
    return len(triples), None


@check("jacobi_euler")
def _jacobi_euler(size: dict) -> tuple[int, Optional[str]]:
    cases = 0
    for p in odd_primes_below(size["prime_max"]):
        for a in range(1, p):
            cases += 1
            euler = pow(a, (p - 1) // 2, p)
            if arith.jacobi(a, p) % p != euler:
                return cases, f"jacobi({a}, {p}) disagrees with Euler's criterion"
    return cases, None


@check("cube_root_mod_2pow")
def _cube_root(size: dict) -> tuple[int, Optional[str]]:
    cases = 0
    for e in range(3, size["cube_e_max"] + 1):
        modulus = 2**e
        cubes = {pow(u, 3, modulus) for u in range(1, modulus, 2)}
        if len(cubes) != modulus // 2:
            return cases, f"cubing is not a permutation of odd residues mod 2^{e}"
        for p in range(1, modulus, 2):
            cases += 1
            u = arith.cube_root_mod_2pow(p, e)
            if u % 2 == 0 or not 1 <= u < modulus or pow(u, 3, modulus) != p:
                return cases, f"cube_root_mod_2pow({p}, {e}) = {u}"
            if e % 2 == 0:
                m = (e - 2) // 2
                if pow(p, (2 ** (2 * m + 1) + 1) // 3, modulus) != u:
                    return cases, f"closed-form exponent disagrees for p={p}, e={e}"
    return cases, None


@check("reciprocity")
def _reciprocity(size: dict) -> tuple[int, Optional[str]]:
    odds = range(1, size["reciprocity_max"], 2)
    cases = 0
    for m, n in product(odds, repeat=2):
        if arith.gcd(m, n) != 1:
            continue
        cases += 1
        if not prooflab.reciprocity_check(m, n):
            return cases, f"reciprocity fails for {(m, n)}"
    return cases, None


@check("search_determinism")
def _determinism(size: dict) -> tuple[int, Optional[str]]:
    rng = random.Random(SEED)
    for case in range(size["determinism_sets"]):
        kind = case % 3
        if kind == 0:
            run = lambda w, n=rng.randint(1, 200), b=rng.randint(1, 25): search.search_cubic(n, b, workers=w)
        elif kind == 1:
            run = lambda w, n=rng.randint(1, 200), b=rng.randint(1, 25): search.search_guy(n, b, workers=w)
        else:
            run = lambda w, a=rng.randint(1, 4), c=rng.randint(1, 9), h=rng.randint(1, 8): search.search_system(
                a, 1, c, h, workers=w
            )
        if run(1).model_dump_json() != run(4).model_dump_json():
            return case + 1, f"set {case} differs between 1 and 4 workers"
    return size["determinism_sets"], None


def run_selftest(level: SelftestLevel = SelftestLevel.QUICK, only: Optional[list[str]] = None) -> SelftestReport:
    """Run the registered checks (optionally a subset by name) at `level`."""
    size = SIZES[level]
    results = []
    with tracer.start_as_current_span("selftest") as span:
        span.set_attribute("level", level.value)
        for name, fn in CHECKS.items():
            if only and name not in only:
                continue
            try:
                cases, failure = fn(size)
            except ApplicationError as e:
                cases, failure = 0, f"{type(e).__name__}: {e}"
            results.append(CheckResult(name=name, passed=failure is None, cases=cases, detail=failure))
            logger.info(
                f"Check {name} {'passed' if failure is None else 'FAILED'}",
                extra={"check": name, "cases": cases, "detail": failure},
            )
        report = SelftestReport(level=level, checks=results)
        span.set_attribute("passed", report.passed)
        return report


