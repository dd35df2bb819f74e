"""Exact rationals, the +infinity slope value, and text round-tripping.

Every quantity in the package is a :class:`fractions.Fraction`.  Floats are
only ever produced for display via :func:`to_decimal`.
"""
from __future__ import annotations

import re
from decimal import Decimal, ROUND_HALF_EVEN, localcontext
from fractions import Fraction
from typing import Union

__all__ = [
    "Fraction",
    "INF",
    "Infinity",
    "Rational",
    "Q",
    "fmt",
    "parse_rational",
    "to_decimal",
]


class Infinity:
    """The slope value ``+inf`` used for rank-zero objects and vertical walls.

    It compares greater than every rational and equal only to itself.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "+inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("quinticbg.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

Rational = Fraction
Slope = Union[Fraction, Infinity]

_RATIONAL_RE = re.compile(r"^[+-]?(\d+(/\d+)?|\d*\.\d+|\d+\.\d*)$")


def Q(x) -> Fraction:
    """Coerce ints, Fractions and exact strings ("3/7", "0.25") to a Fraction.

    Floats are rejected so binary round-off cannot leak into exact code.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    s = text.strip().replace("−", "-")
    if not _RATIONAL_RE.match(s):
        raise ValueError(f"not an exact rational: {text!r}")
    value = Fraction(s)
    return value


def fmt(x) -> str:
    """Serialize as ``p/q`` (or ``p`` when q = 1); infinity as ``+inf``."""
    if isinstance(x, Infinity):
        return "+inf"
    return str(Q(x))


def to_decimal(x, places: int = 6) -> str:
    """Round-half-even decimal rendering, for display only."""
    if isinstance(x, Infinity):
        return "+inf"
    x = Q(x)
    with localcontext() as ctx:
        ctx.prec = 60
        d = Decimal(x.numerator) / Decimal(x.denominator)
        return str(d.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))
