import re
from fractions import Fraction
from typing import Annotated, Union

from pydantic import PlainSerializer, PlainValidator, WithJsonSchema

_RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(value) -> Fraction:
    """
    Accept an int, a Fraction, or a "p/q" / integer literal string.

    Decimal literals are refused so that every input is exact.
    """
    if isinstance(value, bool):
        raise ValueError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_PATTERN.match(text):
            raise ValueError(f"not a rational literal: {value!r}")
        num, _, den = text.partition("/")
        if den and int(den) == 0:
            raise ValueError(f"zero denominator: {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise ValueError(f"cannot read {type(value).__name__} as a rational")


def format_rational(value: Fraction) -> Union[int, str]:
    """Integers stay JSON numbers; proper fractions become "p/q"."""
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


Rational = Annotated[
    Fraction,
    PlainValidator(parse_rational),
    PlainSerializer(format_rational),
    WithJsonSchema({"anyOf": [{"type": "integer"}, {"type": "string", "pattern": r"^[+-]?\d+/\d+$"}]}),
]
