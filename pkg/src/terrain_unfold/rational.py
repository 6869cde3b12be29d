"""Exact rational helpers shared by every module.

All geometry is carried as :class:`fractions.Fraction`.  On the wire a
rational is a string, either ``"p/q"`` or a plain integer ``"p"``.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Number = Union[int, str, Fraction]


def to_fraction(value: Number) -> Fraction:
    """Parse an int, decimal string or ``p/q`` string exactly.

    Floats are refused because they have usually lost exactness already.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty number")
        lowered = text.lower()
        if "inf" in lowered or "nan" in lowered:
            raise ValueError(f"not a finite rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot read {type(value).__name__} as an exact rational")


def fmt(q: Fraction) -> str:
    """Canonical wire form: ``"p"`` for integers, otherwise ``"p/q"``."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Return the rational square root of ``q`` or None if it is irrational."""
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn, rd = isqrt(num), isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return Fraction(rn, rd)
