"""Piecewise-linear upper bounds for ``xi = H^(n-2) ch2 / H^n ch0`` in terms of the slope.

Profiles
--------
``surface``    smooth quintic surface, ``mu`` in (0, 1), five pieces.
``threefold``  smooth quintic threefold, ``|mu|`` in [0, 1], seven intervals
               (six distinct affine formulas; ``x/2 - 1/4`` is used twice).
``prior``      the earlier threefold bound it improves on near ``|mu| = 1/2``:
               ``x/2 - 1/4`` across the whole of [1/4, 3/4].
``classical``  the Bogomolov-Gieseker parabola ``xi <= mu^2/2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .characters import ReducedCharacter, discriminant, mu as slope, xi as xi_of
from .piecewise import Piece, PiecewiseLinearFn
from .rational import INF, Q, fmt, to_decimal

F = Fraction

SURFACE = "surface"
THREEFOLD = "threefold"
PRIOR = "prior"
CLASSICAL = "classical"
PROFILE_NAMES = (SURFACE, THREEFOLD, PRIOR, CLASSICAL)

# Truncated decimals of Toda's constants, used as exact rationals.
TODA_DELTA = F(15139, 10000)
TODA_XI = F(-2639, 100000)


class OutOfValidityError(ValueError):
    pass


@dataclass(frozen=True)
class BoundProfile:
    """``xi <= fn(x)`` where ``x`` is ``mu`` or ``|mu|``.

    ``fn = None`` encodes the classical parabola, valid for every slope.
    """

    name: str
    fn: Optional[PiecewiseLinearFn]
    absolute: bool = False

    def __call__(self, x) -> Fraction:
        x = Q(x)
        if self.fn is None:
            return x * x / 2
        if not self.fn.in_domain(x):
            raise OutOfValidityError(f"{fmt(x)} is outside the validity range of {self.name}")
        return self.fn(x)

    def argument(self, c: ReducedCharacter) -> Fraction:
        m = slope(c)
        if m is INF:
            raise ValueError("bound profiles need c0 != 0")
        return abs(m) if self.absolute else m

    def valid_at(self, x) -> bool:
        return self.fn is None or self.fn.in_domain(Q(x))

    def validity(self) -> str:
        if self.fn is None:
            return "(-inf, +inf)"
        f = self.fn
        left = "[" if f.lo_closed else "("
        right = "]" if f.hi_closed else ")"
        return f"{left}{fmt(f.lo)}, {fmt(f.hi)}{right}"

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "variable": "|mu|" if self.absolute else "mu",
            "validity": self.validity(),
            "fn": None if self.fn is None else self.fn.to_json(),
        }


@lru_cache(maxsize=None)
def surface_bound() -> BoundProfile:
    return BoundProfile(SURFACE, PiecewiseLinearFn([
        Piece(F(0), F(7, 46), F(17, 26), F(-2, 13), owns_left=False),
        Piece(F(7, 46), F(7, 20), F(-5, 14), F(0)),
        Piece(F(7, 20), F(13, 20), F(1, 2), F(-3, 10)),
        Piece(F(13, 20), F(39, 46), F(19, 14), F(-6, 7), owns_right=False),
        Piece(F(39, 46), F(1), F(9, 26), F(0), owns_right=False),
    ]))


@lru_cache(maxsize=None)
def threefold_bound() -> BoundProfile:
    return BoundProfile(THREEFOLD, PiecewiseLinearFn([
        Piece(F(0), F(1, 4), F(-1, 2), F(0)),
        Piece(F(1, 4), F(5, 13), F(1, 2), F(-1, 4)),
        Piece(F(5, 13), F(6, 13), F(-3, 20), F(0)),
        Piece(F(6, 13), F(7, 13), F(1, 2), F(-3, 10)),
        Piece(F(7, 13), F(8, 13), F(23, 20), F(-13, 20)),
        Piece(F(8, 13), F(3, 4), F(1, 2), F(-1, 4)),
        Piece(F(3, 4), F(1), F(3, 2), F(-1)),
    ]), absolute=True)


@lru_cache(maxsize=None)
def prior_bound() -> BoundProfile:
    return BoundProfile(PRIOR, PiecewiseLinearFn([
        Piece(F(0), F(1, 4), F(-1, 2), F(0)),
        Piece(F(1, 4), F(3, 4), F(1, 2), F(-1, 4)),
        Piece(F(3, 4), F(1), F(3, 2), F(-1)),
    ]), absolute=True)


@lru_cache(maxsize=None)
def classical_bound() -> BoundProfile:
    return BoundProfile(CLASSICAL, None)


def profile_by_name(name: str) -> BoundProfile:
    table = {
        SURFACE: surface_bound,
        THREEFOLD: threefold_bound,
        PRIOR: prior_bound,
        CLASSICAL: classical_bound,
    }
    try:
        return table[name]()
    except KeyError:
        raise ValueError(f"unknown profile {name!r}; expected one of {PROFILE_NAMES}") from None


@dataclass(frozen=True)
class CheckResult:
    satisfies: bool
    margin: Fraction
    x: Fraction
    xi: Fraction
    bound: Fraction

    def to_json(self) -> dict:
        return {
            "satisfies": self.satisfies,
            "margin": fmt(self.margin),
            "margin_decimal": to_decimal(self.margin),
            "x": fmt(self.x),
            "xi": fmt(self.xi),
            "bound": fmt(self.bound),
        }


def check_character(c: ReducedCharacter, profile: BoundProfile) -> CheckResult:
    if c.c0 == 0:
        raise ValueError("check_character needs c0 != 0")
    x = profile.argument(c)
    bound = profile(x)
    value = xi_of(c)
    margin = bound - value
    return CheckResult(margin >= 0, margin, x, value, bound)


def _quadratic_min(s: Fraction, t: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    """Minimum of ``x^2/2 - s*x - t`` over ``[lo, hi]``."""
    if lo <= s <= hi:
        return -s * s / 2 - t
    return min(lo * lo / 2 - s * lo - t, hi * hi / 2 - s * hi - t)


def parabola_gaps(profile: BoundProfile) -> list[Fraction]:
    """Per piece, the minimum of ``x^2/2 - fn(x)`` over the piece's closed interval."""
    if profile.fn is None:
        return [F(0)]
    out = []
    for p in profile.fn:
        if p.lo is None or p.hi is None:
            raise ValueError("parabola check needs bounded pieces")
        out.append(_quadratic_min(p.slope, p.intercept, p.lo, p.hi))
    return out


def dominated_by_parabola(profile: BoundProfile) -> bool:
    return all(g >= 0 for g in parabola_gaps(profile))


def star_shaped(profile: BoundProfile, d) -> bool:
    """Whether every chord from a graph point to ``(d, d^2/2)`` stays above the graph.

    Both ``f`` and each chord are affine between consecutive breakpoints, so
    a chord majorizes ``f`` on an interval as soon as it does so at the
    interval's ends and at the breakpoints inside.  Chords from breakpoints
    and domain ends suffice: if ``f`` bent the wrong way inside a piece, the
    chord from that piece's far end would already pass below it.  Open domain
    ends are checked through their limiting values, which is equivalent since
    the inequalities are weak.
    """
    fn = profile.fn
    if fn is None or fn.lo is None or fn.hi is None:
        raise ValueError("star-shapedness is checked for bounded piecewise-linear profiles")
    d = Q(d)
    apex = d * d / 2
    nodes = [fn.lo, *fn.breakpoints(), fn.hi]

    def graph_values(x):
        return fn.values_at(x)

    for t in nodes:
        for v in graph_values(t):
            if t == d:
                if v > apex:
                    return False
                continue
            left, right = min(t, d), max(t, d)
            lo, hi = max(left, fn.lo), min(right, fn.hi)
            if lo > hi:
                continue
            checkpoints = [lo, hi] + [x for x in fn.breakpoints() if lo < x < hi]
            for x in checkpoints:
                chord = v + (apex - v) * (x - t) / (d - t)
                if any(y > chord for y in graph_values(x)):
                    return False
    return True


@dataclass(frozen=True)
class TodaReport:
    lhs_delta: Fraction
    lhs_xi: Fraction
    passes_delta: bool
    passes_xi: bool

    @property
    def passes(self) -> bool:
        return self.passes_delta and self.passes_xi

    def to_json(self) -> dict:
        return {
            "lhs_delta": fmt(self.lhs_delta),
            "lhs_delta_decimal": to_decimal(self.lhs_delta),
            "lhs_xi": fmt(self.lhs_xi),
            "lhs_xi_decimal": to_decimal(self.lhs_xi),
            "threshold_delta": fmt(TODA_DELTA),
            "threshold_xi": fmt(TODA_XI),
            "passes_delta": self.passes_delta,
            "passes_xi": self.passes_xi,
        }


def toda_check(c: ReducedCharacter) -> TodaReport:
    """Toda's inequalities for a threefold character with ``ch1/rk = -H/2``.

    With ``ch1 = a*H`` one has ``H.ch1^2 = c1^2/H^3`` and ``rk = c0/H^3``, so
    ``H.Delta/rk^2 = H^3 * (c1^2 - 2 c0 c2) / c0^2``.  At ``mu = -1/2`` and
    ``H^3 = 5`` this is ``5/4 - 10*xi``.
    """
    if c.dim != 3 or c.degree != 5:
        raise ValueError("toda_check needs a quintic threefold character")
    if c.c0 == 0 or c.c1 / c.c0 != F(-1, 2):
        raise ValueError("toda_check needs mu = -1/2")
    lhs_delta = c.degree * discriminant(c) / (c.c0 * c.c0)
    lhs_xi = c.c2 / c.c0
    return TodaReport(lhs_delta, lhs_xi, lhs_delta > TODA_DELTA, lhs_xi < TODA_XI)
