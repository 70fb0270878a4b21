"""Exact rational values and their "p/q" wire format."""

from fractions import Fraction
from typing import Union

RationalLike = Union[Fraction, int, str]


class RationalFormatError(Exception):
    """Exception raised for malformed rational input."""

    pass


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an int, a Fraction or a "p/q" / "p" string into a Fraction."""
    if isinstance(value, bool):
        raise RationalFormatError(f"Not a rational: {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise RationalFormatError(f"Not a rational: {value!r} ({e})")
    raise RationalFormatError(f"Not a rational: {value!r}")


def format_rational(value: RationalLike) -> str:
    """Serialize a rational as a canonical "p/q" string (q > 0, lowest terms)."""
    fraction = parse_rational(value)
    return f"{fraction.numerator}/{fraction.denominator}"


def parse_rational_list(text: str) -> list[Fraction]:
    """Parse a comma separated list such as "3,1" or "7/2, 1/2"."""
    items = [item for item in text.split(",") if item.strip()]
    if not items:
        raise RationalFormatError(f"Empty rational list: {text!r}")
    return [parse_rational(item) for item in items]


def parse_int_list(text: str) -> list[int]:
    """Parse a comma separated list of integers."""
    values = []
    for item in text.split(","):
        item = item.strip().replace("−", "-")
        if not item:
            continue
        try:
            values.append(int(item))
        except ValueError as e:
            raise RationalFormatError(f"Not an integer: {item!r} ({e})")
    if not values:
        raise RationalFormatError(f"Empty integer list: {text!r}")
    return values
