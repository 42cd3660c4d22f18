"""
Exact integer and rational primitives.

ExactInt is the built-in int and ExactRat is fractions.Fraction; nothing in
this module touches floating point.
"""

from fractions import Fraction
from math import gcd as _gcd, isqrt
from typing import Optional, Tuple

from sumprod.config import get_settings
from sumprod.exceptions import DomainError, FactorizationLimitError
from sumprod.logging_config import get_child_logger
from sumprod.models.algebra import CubefreeDecomp

ExactInt = int
ExactRat = Fraction

# Create a child logger for this module
logger = get_child_logger("arith")


def gcd(a: int, b: int) -> int:
    """Nonnegative gcd; gcd(0, 0) = 0."""
    return _gcd(a, b)


def v2_split(n: int) -> Tuple[int, int]:
    """
    Split n = 2^r * odd.

    Raises:
        DomainError: if n <= 0
    """
    if n <= 0:
        raise DomainError(f"v2_split needs a positive integer, got {n}")
    r = (n & -n).bit_length() - 1
    return r, n >> r


def jacobi(a: int, m: int) -> int:
    """
    The Jacobi symbol (a/m) by binary reciprocity.

    (a/1) = 1, and the result is 0 exactly when gcd(a, m) > 1.

    Raises:
        DomainError: if m is even or not positive
    """
    if m <= 0 or m % 2 == 0:
        raise DomainError(f"Jacobi modulus must be odd and positive, got {m}")
    a %= m
    t = 1
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if m % 8 in (3, 5):
                t = -t
        a, m = m, a
        if a % 4 == 3 and m % 4 == 3:
            t = -t
        a %= m
    return t if m == 1 else 0


def factorize(m: int, limit: Optional[int] = None) -> dict[int, int]:
    """
    Prime factorization by trial division: 2, then odd candidates up to the
    square root of what is left. A cofactor > 1 that survives is prime.

    Args:
        m: positive integer to factor
        limit: largest trial divisor allowed (defaults to the settings cap)

    Raises:
        DomainError: if m <= 0
        FactorizationLimitError: if a candidate beyond `limit` would be needed
    """
    if m <= 0:
        raise DomainError(f"cannot factor nonpositive integer {m}")
    if limit is None:
        limit = get_settings().factor_limit

    factors: dict[int, int] = {}
    r, rest = v2_split(m)
    if r:
        factors[2] = r

    d = 3
    while d * d <= rest:
        if d > limit:
            logger.warning(
                "Trial division cap reached",
                extra={"limit": limit, "remainder": rest},
            )
            raise FactorizationLimitError(
                f"factorization limit {limit} exceeded; unfactored remainder {rest}",
                limit=limit,
                remainder=rest,
            )
        while rest % d == 0:
            factors[d] = factors.get(d, 0) + 1
            rest //= d
        d += 2
    if rest > 1:
        factors[rest] = factors.get(rest, 0) + 1
    return factors


def cubefree_decompose(m: int, limit: Optional[int] = None) -> CubefreeDecomp:
    """
    Write m = p1 * p2^2 * p3^3 with p1, p2 squarefree and coprime.

    A prime with exponent e goes to p1 when e = 1 (mod 3), to p2 when
    e = 2 (mod 3), and contributes p^(e // 3) to p3.
    """
    if m <= 0:
        raise DomainError(f"cubefree_decompose needs a positive integer, got {m}")
    p1 = p2 = p3 = 1
    for p, e in factorize(m, limit=limit).items():
        if e % 3 == 1:
            p1 *= p
        elif e % 3 == 2:
            p2 *= p
        p3 *= p ** (e // 3)
    return CubefreeDecomp(p1=p1, p2=p2, p3=p3)


def is_cubefree(n: int, limit: Optional[int] = None) -> bool:
    return cubefree_decompose(n, limit=limit).p3 == 1


def radical_divides(a: int, b: int) -> bool:
    """
    Whether every prime divisor of a also divides b, without factoring.
    """
    if a == 0:
        return b == 0
    a = abs(a)
    while (g := _gcd(a, b)) > 1:
        a //= g
    return a == 1


def cube_root_exponent(e: int) -> int:
    """Inverse of 3 modulo 2^(e-2); raising an odd p to it gives its cube root mod 2^e."""
    if e < 3:
        raise DomainError(f"cube roots modulo 2^e need e >= 3, got {e}")
    return pow(3, -1, 2 ** (e - 2))


def cube_root_mod_2pow(p: int, e: int) -> int:
    """
    The unique odd u in [1, 2^e) with u^3 = p (mod 2^e).

    The odd residues mod 2^e form a group of exponent 2^(e-2), so
    u = p^t with 3t = 1 (mod 2^(e-2)) works, and cubing permutes them.
    """
    if p <= 0 or p % 2 == 0:
        raise DomainError(f"cube_root_mod_2pow needs a positive odd p, got {p}")
    return pow(p, cube_root_exponent(e), 2**e)


def is_square_rat(q: Fraction) -> Optional[Fraction]:
    """
    Nonnegative square root of q when q is the square of a rational, else None.

    Raises:
        DomainError: if q < 0
    """
    q = Fraction(q)
    if q < 0:
        raise DomainError(f"is_square_rat needs a nonnegative rational, got {q}")
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)
