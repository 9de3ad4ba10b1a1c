"""Exact rational parsing and formatting.

All distances and labels in this package are ``fractions.Fraction`` values.
Input strings may be integers ("3"), fractions ("1/2"), or decimals ("0.5");
decimals convert exactly, never through binary floating point.  Floats are
rejected outright because they would silently corrupt equality tests.
"""

from __future__ import annotations

from fractions import Fraction

RationalLike = Fraction | int | str


def parse_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` to an exact Fraction, rejecting floats."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"not an exact rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(
            f"refusing float {value!r}: pass an exact string such as '1/2' or '0.5'"
        )
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not an exact rational: {value!r}") from exc
    raise ValueError(f"not an exact rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as '3' or '1/2' (the parseable canonical form)."""
    return str(value)
