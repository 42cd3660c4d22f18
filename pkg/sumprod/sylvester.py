"""
Sylvester's transformation and the two reductions built on it.

    A a^3 + B b^3 + C c^3 = D a b c   ==>   f^3 + g^3 + ABC h^3 = D f g h
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

from sumprod.exceptions import ContractError, DegenerateInputError, DomainError, NotRepresentableError
from sumprod.logging_config import get_child_logger, tracer
from sumprod.models.algebra import CubicSolution, SylvesterTriple

# Create a child logger for this module
logger = get_child_logger("sylvester")


def sylvester_transform(A, B, C, D, alpha, beta, gamma) -> SylvesterTriple:
    """
    Map a weighted cubic relation to a point of f^3 + g^3 + ABC h^3 = Dfgh.

    Args:
        A, B, C, D: rational coefficients
        alpha, beta, gamma: rational point with A alpha^3 + B beta^3 + C gamma^3 = D alpha beta gamma

    Returns:
        The triple (f, g, h)

    Raises:
        ContractError: if the hypothesis does not hold exactly; the residual is attached
    """
    A, B, C, D = Fraction(A), Fraction(B), Fraction(C), Fraction(D)
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)

    a3, b3, c3 = alpha**3, beta**3, gamma**3
    residual = A * a3 + B * b3 + C * c3 - D * alpha * beta * gamma
    if residual != 0:
        raise ContractError(
            f"A*alpha^3 + B*beta^3 + C*gamma^3 - D*alpha*beta*gamma = {residual}, expected 0",
            residual=residual,
        )

    abc3 = 3 * A * B * C * a3 * b3 * c3
    f = A * A * B * a3 * a3 * b3 + B * B * C * b3 * b3 * c3 + C * C * A * c3 * c3 * a3 - abc3
    g = A * B * B * a3 * b3 * b3 + B * C * C * b3 * c3 * c3 + C * A * A * c3 * a3 * a3 - abc3
    h = alpha * beta * gamma * (
        A * A * a3 * a3
        + B * B * b3 * b3
        + C * C * c3 * c3
        - A * B * a3 * b3
        - B * C * b3 * c3
        - C * A * c3 * a3
    )
    return SylvesterTriple(f=f, g=g, h=h)


def _primitive(n: int, raw: tuple[int, int, int]) -> CubicSolution:
    d = reduce(gcd, raw)
    x, y, z = (v // d for v in raw)
    return CubicSolution(x=x, y=y, z=z, n=n, primitive=True, raw=raw)


def _clear_denominators(values: tuple[Fraction, ...]) -> tuple[int, ...]:
    den = lcm(*(v.denominator for v in values))
    return tuple(int(v * den) for v in values)


def reduce_system_to_cubic(x, y, z, a: int, b: int, c: int) -> CubicSolution:
    """
    Send a positive rational solution of xyz = ab^2, x + y + z = abc to a
    primitive positive integer solution of X^3 + Y^3 + n^2 Z^3 = nXYZ with
    n = a^2 b c^3, through (f, g, h / (a c^2)).

    Raises:
        ContractError: if (x, y, z) does not solve the system
        DegenerateInputError: if x = y = z (then a^2 b c^3 = 27)
    """
    x, y, z = Fraction(x), Fraction(y), Fraction(z)
    if min(a, b, c) <= 0:
        raise DomainError(f"a, b, c must be positive integers, got {(a, b, c)}")
    if min(x, y, z) <= 0:
        raise DomainError(f"x, y, z must be positive, got {(x, y, z)}")

    with tracer.start_as_current_span("reduce_system_to_cubic") as span:
        product_gap = x * y * z - a * b * b
        sum_gap = x + y + z - a * b * c
        if product_gap != 0 or sum_gap != 0:
            span.set_attribute("error", True)
            raise ContractError(
                f"(x, y, z) does not solve the system: xyz - ab^2 = {product_gap}, "
                f"x + y + z - abc = {sum_gap}",
                residual=(product_gap, sum_gap),
            )
        if x == y == z:
            raise DegenerateInputError(
                f"x = y = z = {x}: the transformation collapses to f = g = h = 0 (a^2 b c^3 = 27)"
            )

        triple = sylvester_transform(x, y, z, a * b * c, 1, 1, 1)
        n = a * a * b * c**3
        h1 = triple.h / (a * c * c)
        raw = _clear_denominators((triple.f, triple.g, h1))
        solution = _primitive(n, raw)

        span.set_attribute("n", str(n))
        logger.info(
            "System solution reduced to cubic",
            extra={"n": n, "raw": raw, "primitive": (solution.x, solution.y, solution.z)},
        )
        return solution


def reduce_guy_to_cubic(x: int, y: int, z: int) -> CubicSolution:
    """
    Send positive integers with (x+y+z)^3 = n xyz to a primitive solution of
    X^3 + Y^3 + n^2 Z^3 = nXYZ via X = nf, Y = ng, Z = (x+y+z)h.

    Raises:
        NotRepresentableError: if xyz does not divide (x+y+z)^3
        DegenerateInputError: if x = y = z (f = g = h = 0)
    """
    if min(x, y, z) <= 0:
        raise DomainError(f"x, y, z must be positive integers, got {(x, y, z)}")

    with tracer.start_as_current_span("reduce_guy_to_cubic") as span:
        s = x + y + z
        n, rest = divmod(s**3, x * y * z)
        if rest:
            raise NotRepresentableError(
                f"(x+y+z)^3 = {s**3} is not a multiple of xyz = {x * y * z}"
            )
        span.set_attribute("n", str(n))

        triple = sylvester_transform(x, y, z, s, 1, 1, 1)
        if triple.f == triple.g == triple.h == 0:
            raise DegenerateInputError(f"x = y = z = {x} gives f = g = h = 0 (n = {n})")

        raw = (int(n * triple.f), int(n * triple.g), int(s * triple.h))
        return _primitive(n, raw)


def ratio_triple(x: int, y: int, z: int) -> tuple[tuple[Fraction, Fraction, Fraction], int]:
    """
    Positive integers with x/y + y/z + z/x = n give the rational solution
    (x/y, y/z, z/x) of the system with a = b = 1, c = n.

    Raises:
        NotRepresentableError: if x/y + y/z + z/x is not an integer
    """
    if min(x, y, z) <= 0:
        raise DomainError(f"x, y, z must be positive integers, got {(x, y, z)}")
    ratios = (Fraction(x, y), Fraction(y, z), Fraction(z, x))
    total = sum(ratios)
    if total.denominator != 1:
        raise NotRepresentableError(f"x/y + y/z + z/x = {total} is not an integer")
    return ratios, total.numerator
