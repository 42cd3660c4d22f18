"""
Exhaustive bounded searches.

Each search splits its outer range into contiguous partitions, runs the
partitions on a thread pool, and merges and sorts the results, so a report
depends only on its parameters.
"""

from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import lru_cache, reduce
from itertools import product
from math import comb, gcd
from time import perf_counter
from typing import Callable, Iterable, Optional

from sumprod.arith import is_square_rat
from sumprod.config import get_settings
from sumprod.exceptions import DomainError
from sumprod.logging_config import get_child_logger, tracer
from sumprod.models.search import EquationTag, SearchReport

# Create a child logger for this module
logger = get_child_logger("search")

# Below this n, AM-GM gives x^3 + y^3 + n^2 z^3 >= 3 n^(2/3) xyz > nxyz,
# and (x + y + z)^3 >= 27 xyz > nxyz.
AMGM_THRESHOLD = 27


def _bisect_zero(f: Callable[[int], int], lo: int, hi: int, increasing: bool) -> Optional[int]:
    while lo <= hi:
        mid = (lo + hi) // 2
        value = f(mid)
        if value == 0:
            return mid
        if (value < 0) == increasing:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def convex_roots(f: Callable[[int], int], lo: int, hi: int) -> list[int]:
    """
    Integer zeros in [lo, hi] of an integer function whose second difference
    is positive there (so it falls, then rises).
    """
    if lo > hi:
        return []
    left, right = lo, hi
    while left < right:
        mid = (left + right) // 2
        if f(mid + 1) >= f(mid):
            right = mid
        else:
            left = mid + 1
    turn = left
    if f(turn) > 0:
        return []
    roots = []
    falling = _bisect_zero(f, lo, turn, increasing=False)
    if falling is not None:
        roots.append(falling)
    rising = _bisect_zero(f, turn + 1, hi, increasing=True)
    if rising is not None:
        roots.append(rising)
    return roots


@lru_cache(maxsize=None)
def amgm_fast_path_verified() -> bool:
    """
    Check once, exactly, that n < 27 admits no positive solutions before the
    searches are allowed to skip those n: the coefficient bound
    27 n^2 > n^3 for every n below the threshold, and a direct sweep of a
    small box for both equations.
    """
    for n in range(1, AMGM_THRESHOLD):
        if not 27 * n * n > n**3:
            return False
        for x, y, z in product(range(1, 9), repeat=3):
            if x**3 + y**3 + n * n * z**3 == n * x * y * z:
                return False
            if (x + y + z) ** 3 == n * x * y * z:
                return False
    if 27 * AMGM_THRESHOLD**2 > AMGM_THRESHOLD**3:
        return False
    logger.debug("AM-GM fast path verified", extra={"threshold": AMGM_THRESHOLD})
    return True


def _fast_path(n: int) -> bool:
    return n < AMGM_THRESHOLD and amgm_fast_path_verified()


def _partition(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split [lo, hi] into at most `parts` contiguous, nonempty ranges."""
    size = hi - lo + 1
    if size <= 0:
        return []
    parts = max(1, min(parts, size))
    step, extra = divmod(size, parts)
    ranges, start = [], lo
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0) - 1
        ranges.append((start, stop))
        start = stop + 1
    return ranges


def _run_partitions(worker: Callable, chunks: list, workers: int) -> list:
    """Run `worker` on every chunk and flatten the per-chunk result lists."""
    if workers <= 1 or len(chunks) <= 1:
        results = [worker(chunk) for chunk in chunks]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(worker, chunks))

    merged = []
    for chunk_result in results:
        merged.extend(chunk_result)
    return merged


def _resolve_workers(workers: Optional[int]) -> int:
    if workers is None:
        workers = get_settings().workers
    if workers < 1:
        raise DomainError(f"workers must be at least 1, got {workers}")
    return workers


def _is_primitive(triple: Iterable[int]) -> bool:
    return reduce(gcd, triple) == 1


def search_cubic(n: int, bound: int, workers: Optional[int] = None) -> SearchReport:
    """
    All 1 <= x <= y <= bound, 1 <= z <= bound with x^3 + y^3 + n^2 z^3 = nxyz.

    For each (y, z) the left side minus the right side is convex in x, so
    its integer zeros in [1, y] are found by bisection around the turning
    point instead of scanning x.
    """
    if n <= 0 or bound <= 0:
        raise DomainError(f"search_cubic needs positive n and bound, got n={n}, bound={bound}")
    workers = _resolve_workers(workers)

    with tracer.start_as_current_span("search_cubic") as span:
        span.set_attribute("n", str(n))
        span.set_attribute("bound", bound)
        started = perf_counter()

        if _fast_path(n):
            solutions, examined = [], 0
        else:
            n2 = n * n

            def process_z_range(z_range):
                found = []
                z_lo, z_hi = z_range
                for z in range(z_lo, z_hi + 1):
                    tail = n2 * z**3
                    for y in range(1, bound + 1):
                        const = y**3 + tail
                        slope = n * y * z
                        for x in convex_roots(lambda t: t**3 - slope * t + const, 1, y):
                            found.append((x, y, z))
                return found

            found = _run_partitions(process_z_range, _partition(1, bound, workers), workers)
            solutions = sorted(found)
            examined = bound * bound * (bound + 1) // 2

        report = _report(
            EquationTag.CUBIC, {"n": n}, {"B": bound}, examined, solutions, started,
            primitive=[s for s in solutions if _is_primitive(s)],
        )
        span.set_attribute("solutions.count", len(solutions))
        logger.info(
            "Cubic search finished",
            extra={"n": n, "bound": bound, "solutions": len(solutions), "workers": workers},
        )
        return report


def search_guy(n: int, bound: int, workers: Optional[int] = None) -> SearchReport:
    """
    All 1 <= x <= y <= z <= bound with (x + y + z)^3 = n xyz.
    """
    if n <= 0 or bound <= 0:
        raise DomainError(f"search_guy needs positive n and bound, got n={n}, bound={bound}")
    workers = _resolve_workers(workers)

    with tracer.start_as_current_span("search_guy") as span:
        span.set_attribute("n", str(n))
        span.set_attribute("bound", bound)
        started = perf_counter()

        if _fast_path(n):
            solutions, examined = [], 0
        else:

            def process_z_range(z_range):
                found = []
                z_lo, z_hi = z_range
                for z in range(z_lo, z_hi + 1):
                    for y in range(1, z + 1):
                        s = y + z
                        slope = n * y * z
                        for x in convex_roots(lambda t: (t + s) ** 3 - slope * t, 1, y):
                            found.append((x, y, z))
                return found

            found = _run_partitions(process_z_range, _partition(1, bound, workers), workers)
            solutions = sorted(found)
            examined = comb(bound + 2, 3)

        report = _report(
            EquationTag.GUY, {"n": n}, {"B": bound}, examined, solutions, started,
            primitive=[s for s in solutions if _is_primitive(s)],
        )
        span.set_attribute("solutions.count", len(solutions))
        logger.info(
            "Guy search finished",
            extra={"n": n, "bound": bound, "solutions": len(solutions), "workers": workers},
        )
        return report


def search_system(a: int, b: int, c: int, height: int, workers: Optional[int] = None) -> SearchReport:
    """
    Positive rational solutions of xyz = ab^2, x + y + z = abc.

    Every z = u/v in lowest terms with 1 <= u, v <= height is tried; x and y
    are then the roots of t^2 - S t + P with S = abc - z and P = ab^2 / z,
    rational exactly when S^2 - 4P is a rational square. Any solution with a
    coordinate of height <= `height` is found (as the record with that
    coordinate in the z slot).
    """
    if min(a, b, c) <= 0 or height <= 0:
        raise DomainError(
            f"search_system needs positive a, b, c and height, got {(a, b, c)}, height={height}"
        )
    workers = _resolve_workers(workers)

    with tracer.start_as_current_span("search_system") as span:
        span.set_attribute("query", f"{a},{b},{c}")
        span.set_attribute("height", height)
        started = perf_counter()

        total = a * b * c
        prod = a * b * b

        def process_v_range(v_range):
            found = []
            v_lo, v_hi = v_range
            for v in range(v_lo, v_hi + 1):
                for u in range(1, height + 1):
                    if gcd(u, v) != 1:
                        continue
                    z = Fraction(u, v)
                    s = total - z
                    if s <= 0:
                        continue
                    disc = s * s - 4 * prod / z
                    if disc < 0:
                        continue
                    root = is_square_rat(disc)
                    if root is None:
                        continue
                    x, y = (s - root) / 2, (s + root) / 2
                    found.append((x, y, z))
            return found

        found = _run_partitions(process_v_range, _partition(1, height, workers), workers)
        solutions = sorted(found)
        examined = sum(1 for u, v in product(range(1, height + 1), repeat=2) if gcd(u, v) == 1)

        report = _report(
            EquationTag.SYSTEM, {"a": a, "b": b, "c": c}, {"H": height}, examined, solutions, started
        )
        span.set_attribute("solutions.count", len(solutions))
        logger.info(
            "System search finished",
            extra={"query": (a, b, c), "height": height, "solutions": len(solutions)},
        )
        return report


def _report(
    equation: EquationTag,
    parameters: dict[str, int],
    bounds: dict[str, int],
    examined: int,
    solutions: list,
    started: float,
    primitive: Optional[list] = None,
) -> SearchReport:
    return SearchReport(
        equation=equation,
        parameters=parameters,
        bounds=bounds,
        triples_examined=examined,
        solutions=[tuple(Fraction(v) for v in s) for s in solutions],
        primitive_solutions=[tuple(Fraction(v) for v in s) for s in (primitive or [])],
        elapsed_seconds=perf_counter() - started,
    )


def verify_solution(report: SearchReport, solution) -> bool:
    """Re-substitute one reported solution into the report's equation."""
    x, y, z = solution
    if report.equation is EquationTag.CUBIC:
        n = report.parameters["n"]
        return x**3 + y**3 + n * n * z**3 == n * x * y * z
    if report.equation is EquationTag.GUY:
        n = report.parameters["n"]
        return (x + y + z) ** 3 == n * x * y * z
    a, b, c = report.parameters["a"], report.parameters["b"], report.parameters["c"]
    return min(x, y, z) > 0 and x * y * z == a * b * b and x + y + z == a * b * c
