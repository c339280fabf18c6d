"""Exact rational arithmetic helpers.

All quantities in this package (thresholds, candidate values, fractional
parts of divisor coefficients) are exact rationals.  Python's
``fractions.Fraction`` already provides arbitrary-precision rationals in
lowest terms with a positive denominator, so it is used directly; this
module only adds the parsing/formatting conventions of the fixture and
command-line formats ("p/q" strings) and the fractional-part operation.
No floating point is used anywhere.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into an exact rational."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"not a rational number: {text!r} (expected p or p/q)")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(x: Fraction) -> str:
    """Render a rational as "p/q", or "p" when integral."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac(x: Fraction) -> Fraction:
    """Fractional part {x} = x - floor(x), always in [0, 1)."""
    return x - math.floor(x)
