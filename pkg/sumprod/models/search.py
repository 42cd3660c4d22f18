from enum import Enum
from typing import Tuple

from pydantic import BaseModel, ConfigDict, Field

from sumprod.models.types import Rational


class EquationTag(str, Enum):
    CUBIC = "cubic"  # x^3 + y^3 + n^2 z^3 = nxyz
    SYSTEM = "system"  # xyz = ab^2, x + y + z = abc
    GUY = "guy"  # (x + y + z)^3 = n xyz


Triple = Tuple[Rational, Rational, Rational]


class SearchReport(BaseModel):
    """
    Result of an exhaustive bounded search.

    `solutions` is sorted lexicographically. `elapsed_seconds` is left out of
    the JSON so that reports compare equal across thread counts.
    """

    equation: EquationTag
    parameters: dict[str, int]
    bounds: dict[str, int]
    triples_examined: int
    solutions: list[Triple]
    primitive_solutions: list[Triple] = []
    elapsed_seconds: float = Field(0.0, exclude=True)

    model_config = ConfigDict(extra="forbid", arbitrary_types_allowed=True)
