"""Decimal rendering of exact rationals at the output boundary.

Mechanism code never touches floats; only here are rationals rounded,
using banker's rounding at a configurable number of digits.
"""

from __future__ import annotations

from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

DEFAULT_PRECISION = 6


def decimal_str(x: Fraction, digits: int = DEFAULT_PRECISION) -> str:
    """Round-half-even decimal rendering of a rational, as a string."""
    if digits < 0:
        raise ValueError("precision must be non-negative")
    with localcontext() as ctx:
        ctx.prec = max(28, digits + 10)
        q = Decimal(x.numerator) / Decimal(x.denominator)
        quantum = Decimal(1).scaleb(-digits)
        return str(q.quantize(quantum, rounding=ROUND_HALF_EVEN))


def rational_str(x: Fraction) -> str:
    """Exact p/q rendering (plain integer when q == 1)."""
    return str(x)
