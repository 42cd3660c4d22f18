"""
Checkable forms of the identities, claims and rewrites used in the
non-existence proof for x^3 + y^3 + n^2 z^3 = nxyz.

Each `*_check` returns a value whose contract is fixed (zero residual or
True); the property suites sweep them over boxes.
"""

from math import gcd

from sumprod.arith import cubefree_decompose, is_cubefree, jacobi, radical_divides, v2_split
from sumprod.exceptions import DomainError, PreconditionFailedError
from sumprod.logging_config import get_child_logger
from sumprod.models.algebra import CoprimeReport, ReducedCubic

# Create a child logger for this module
logger = get_child_logger("prooflab")


def case_transform(n: int) -> ReducedCubic:
    """
    Rewrite x^3 + y^3 + n^2 z^3 = nxyz with a cubefree z-coefficient.

    With n = Q1 Q2^2 Q3^3 (cubefree decomposition), the substitution
    z0 = Q2 Q3^2 z gives x^3 + y^3 + Q1^2 Q2 z0^3 = Q1 Q2 Q3 x y z0.
    """
    d = cubefree_decompose(n)
    return ReducedCubic(
        A=d.p1 * d.p1 * d.p2,
        Bc=d.p1 * d.p2 * d.p3,
        sigma=d.p2 * d.p3 * d.p3,
    )


def case_transform_residual(n: int, reduced: ReducedCubic, x: int, y: int, z: int) -> int:
    """Difference of the original and rewritten cubic forms at (x, y, z); always 0."""
    z0 = reduced.sigma * z
    original = x**3 + y**3 + n * n * z**3 - n * x * y * z
    rewritten = x**3 + y**3 + reduced.A * z0**3 - reduced.Bc * x * y * z0
    return original - rewritten


def check_claim_coprime(x: int, y: int, z: int, A: int, Bc: int) -> CoprimeReport:
    """
    Given x^3 + y^3 + A z^3 = Bc xyz with A cubefree, gcd(x, y, z) = 1 and
    every prime of A dividing Bc, report the gcds the claim says are 1.

    Raises:
        PreconditionFailedError: naming the first hypothesis that fails
    """
    if min(x, y, z, A, Bc) <= 0:
        raise PreconditionFailedError(
            f"x, y, z, A, Bc must be positive, got {(x, y, z, A, Bc)}", hypothesis="positivity"
        )
    residual = x**3 + y**3 + A * z**3 - Bc * x * y * z
    if residual != 0:
        raise PreconditionFailedError(
            f"x^3 + y^3 + A z^3 - Bc xyz = {residual} != 0", hypothesis="equation"
        )
    if not is_cubefree(A):
        raise PreconditionFailedError(f"A = {A} is not cubefree", hypothesis="A cubefree")
    if gcd(gcd(x, y), z) != 1:
        raise PreconditionFailedError(
            f"gcd(x,y,z) ≠ 1 for {(x, y, z)}", hypothesis="gcd(x,y,z) = 1"
        )
    if not radical_divides(A, Bc):
        raise PreconditionFailedError(
            f"some prime of A = {A} does not divide Bc = {Bc}", hypothesis="rad(A) | Bc"
        )

    gcds = {
        "x,y": gcd(x, y),
        "y,z": gcd(y, z),
        "z,x": gcd(z, x),
        "x,A": gcd(x, A),
        "y,A": gcd(y, A),
    }
    violations = [pair for pair, value in gcds.items() if value != 1]
    if violations:
        logger.error(
            "Coprimality claim violated",
            extra={"x": x, "y": y, "z": z, "A": A, "Bc": Bc, "violations": violations},
        )
    return CoprimeReport(gcds=gcds, violations=violations)


def quadform_identity_check(A: int, B: int, C: int) -> int:
    """
    4(A^3 + B^3 + C^3 - 3ABC) - (A + B + C)((2A - B - C)^2 + 3(B - C)^2).
    """
    left = 4 * (A**3 + B**3 + C**3 - 3 * A * B * C)
    right = (A + B + C) * ((2 * A - B - C) ** 2 + 3 * (B - C) ** 2)
    return left - right


def v2_quadform_parity(r: int, s: int) -> bool:
    """Whether the 2-adic valuation of r^2 + 3s^2 is even."""
    if r == 0 and s == 0:
        raise DomainError("r^2 + 3s^2 must be positive; got r = s = 0")
    valuation, _ = v2_split(r * r + 3 * s * s)
    return valuation % 2 == 0


def parity_identity_check(u: int, v: int, w: int) -> bool:
    """
    u + v + w + uv + vw + wu is even exactly when u, v, w share a parity.
    """
    sum_even = (u + v + w + u * v + v * w + w * u) % 2 == 0
    same_parity = u % 2 == v % 2 == w % 2
    return sum_even == same_parity


def reciprocity_check(m: int, n: int) -> bool:
    """
    (m/n)(n/m) = (-1)^(((m-1)/2)((n-1)/2)) for odd, positive, coprime m, n.
    """
    if m <= 0 or n <= 0 or m % 2 == 0 or n % 2 == 0:
        raise DomainError(f"reciprocity needs odd positive m, n; got {(m, n)}")
    if gcd(m, n) != 1:
        raise DomainError(f"reciprocity needs coprime m, n; got gcd({m}, {n}) = {gcd(m, n)}")
    sign = -1 if ((m - 1) // 2) * ((n - 1) // 2) % 2 else 1
    return jacobi(m, n) * jacobi(n, m) == sign
