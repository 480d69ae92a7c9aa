"""Exact rational numbers and their wire formats.

All probabilities, densities and polytope coordinates in this package are
``fractions.Fraction`` values; nothing is ever rounded.  This module only adds
the parsing/formatting conventions used by the CLI and the CSV/JSON exports:
fractions print as ``p/q`` (plain ``p`` when the denominator is 1) and an
optional fixed-precision decimal rendering for display.
"""

from __future__ import annotations

from decimal import Decimal, localcontext
from fractions import Fraction

from .errors import DomainError

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``p/q``, integer, or decimal text into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"not a rational number: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    return str(value)


def format_decimal(value: Fraction, digits: int) -> str:
    """Render ``value`` with exactly ``digits`` decimal places (half-even)."""
    if digits < 0:
        raise DomainError("digit count must be nonnegative")
    with localcontext() as ctx:
        ctx.prec = max(2 * digits + len(str(value.numerator)), 28)
        quantum = Decimal(1).scaleb(-digits)
        out = (Decimal(value.numerator) / Decimal(value.denominator)).quantize(quantum)
    return str(out)
