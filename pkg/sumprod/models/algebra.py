from typing import Tuple

from pydantic import BaseModel, ConfigDict

from sumprod.models.types import Rational


class CubefreeDecomp(BaseModel):
    """
    m = p1 * p2**2 * p3**3 with p1, p2 squarefree and coprime.
    """

    p1: int
    p2: int
    p3: int

    model_config = ConfigDict(extra="forbid", frozen=True)

    def reconstruct(self) -> int:
        return self.p1 * self.p2**2 * self.p3**3


class SylvesterTriple(BaseModel):
    """Output of the Sylvester transformation: f^3 + g^3 + ABC h^3 = D f g h."""

    f: Rational
    g: Rational
    h: Rational

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)


class CubicSolution(BaseModel):
    """
    Positive integer point of x^3 + y^3 + n^2 z^3 = n x y z.

    `raw` is the triple before division by its gcd.
    """

    x: int
    y: int
    z: int
    n: int
    primitive: bool
    raw: Tuple[int, int, int]

    model_config = ConfigDict(extra="forbid", frozen=True)

    def residual(self) -> int:
        return self.x**3 + self.y**3 + self.n**2 * self.z**3 - self.n * self.x * self.y * self.z


class ReducedCubic(BaseModel):
    """
    x^3 + y^3 + A z0^3 = Bc x y z0 with z0 = sigma * z.
    """

    A: int
    Bc: int
    sigma: int

    model_config = ConfigDict(extra="forbid", frozen=True)


class CoprimeReport(BaseModel):
    """Pairwise gcds concluded by the coprimality claim, and any violations."""

    gcds: dict[str, int]
    violations: list[str] = []

    model_config = ConfigDict(extra="forbid")

    @property
    def holds(self) -> bool:
        return not self.violations


class RatioSolution(BaseModel):
    """(x, y, z) solving the system with a = b = 1, c = n, built from x/y + y/z + z/x = n."""

    x: Rational
    y: Rational
    z: Rational
    n: int

    model_config = ConfigDict(extra="forbid", frozen=True, arbitrary_types_allowed=True)
