"""Tilt slopes and wall geometry in the ``(beta, alpha)`` half-plane.

The tilt slope used throughout is::

    nu_{alpha,beta}(E) = (H^(n-2) ch2 - alpha H^n ch0) / (H^(n-1) ch1 - beta H^n ch0)

so for ``c0 != 0`` it is the slope of the segment from ``(beta, alpha)`` to
the slope point ``p_H(E) = (mu, xi)``.  Consequently every numerical wall of a
character is a straight line through its slope point, and two walls of the
same character can only meet at that point, which lies on or below the
parabola ``alpha = beta^2/2`` whenever the discriminant is non-negative.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .characters import ReducedCharacter, discriminant
from .rational import INF, Q, Slope, fmt


class EmptyWallError(ValueError):
    pass


@dataclass(frozen=True)
class TiltPoint:
    beta: Fraction
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "beta", Q(self.beta))
        object.__setattr__(self, "alpha", Q(self.alpha))

    def is_admissible(self) -> bool:
        return self.alpha > self.beta * self.beta / 2


def rational_sqrt(x: Fraction) -> Optional[Fraction]:
    """Exact square root of a non-negative rational, or None if irrational."""
    if x < 0:
        return None
    n, d = x.numerator, x.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _sqrt_lower(x: Fraction) -> Fraction:
    """A positive rational ``r`` with ``r*r <= x``, for ``x > 0``."""
    scale = 1 << 20
    while True:
        r = Fraction(math.isqrt(x.numerator * scale * scale // x.denominator), scale)
        if r > 0:
            return r
        scale <<= 20


@dataclass(frozen=True)
class Wall:
    """The line ``a*beta + b*alpha = c`` with its part above ``alpha = beta^2/2``.

    Coefficients are normalized so that the leading nonzero of ``(b, a)`` is 1;
    equal lines therefore compare equal.  For a non-vertical line the
    admissible locus is the open segment ``center -+ sqrt(radicand)``; its
    endpoints are kept only when rational, otherwise ``(center, radicand)``
    already pins them down exactly.
    """

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        a, b, c = Q(self.a), Q(self.b), Q(self.c)
        if a == 0 and b == 0:
            raise ValueError("(a, b) must not both vanish")
        lead = b if b != 0 else a
        object.__setattr__(self, "a", a / lead)
        object.__setattr__(self, "b", b / lead)
        object.__setattr__(self, "c", c / lead)

    @property
    def is_vertical(self) -> bool:
        return self.b == 0

    @property
    def center(self) -> Fraction:
        if self.is_vertical:
            return self.c / self.a
        return -self.a / self.b

    @property
    def radicand(self) -> Optional[Fraction]:
        if self.is_vertical:
            return None
        p, q = self.a / self.b, self.c / self.b
        return p * p + 2 * q

    @property
    def kind(self) -> str:
        if self.is_vertical:
            return "ray"
        return "segment" if self.radicand > 0 else "empty"

    @property
    def endpoints(self) -> Optional[tuple[Fraction, Fraction]]:
        if self.kind != "segment":
            return None
        r = rational_sqrt(self.radicand)
        if r is None:
            return None
        return (self.center - r, self.center + r)

    def alpha_at(self, beta) -> Fraction:
        if self.is_vertical:
            raise ValueError("alpha is not a function of beta on a vertical wall")
        return (self.c - self.a * Q(beta)) / self.b

    def contains(self, p: TiltPoint) -> bool:
        return self.a * p.beta + self.b * p.alpha == self.c

    def test_point(self) -> TiltPoint:
        """A rational point of the admissible locus.

        For a segment this is its midpoint, which is rational even when the
        endpoints are not.
        """
        if self.kind == "empty":
            raise EmptyWallError("wall has no admissible points")
        beta = self.center
        if self.is_vertical:
            return TiltPoint(beta, beta * beta / 2 + 1)
        return TiltPoint(beta, self.alpha_at(beta))

    def sample_points(self, n: int) -> list[TiltPoint]:
        """``n`` distinct rational points strictly inside the admissible locus."""
        if self.kind == "empty":
            raise EmptyWallError("wall has no admissible points")
        if self.is_vertical:
            beta = self.center
            return [TiltPoint(beta, beta * beta / 2 + Fraction(i, n)) for i in range(1, n + 1)]
        r = _sqrt_lower(self.radicand)
        pts = []
        for i in range(1, n + 1):
            beta = self.center + r * (Fraction(2 * i, n + 1) - 1)
            pts.append(TiltPoint(beta, self.alpha_at(beta)))
        return pts

    def to_json(self) -> dict:
        kind = self.kind
        if kind == "segment":
            ends = self.endpoints
            if ends is not None:
                segment = [fmt(ends[0]), fmt(ends[1])]
            else:
                segment = {"center": fmt(self.center), "radicand": fmt(self.radicand)}
        else:
            segment = kind
        return {"a": fmt(self.a), "b": fmt(self.b), "c": fmt(self.c), "segment": segment}


class WallDegeneracy(enum.Enum):
    NO_WALL = "no-wall"
    EVERYWHERE_EQUAL = "everywhere-equal"


NO_WALL = WallDegeneracy.NO_WALL
EVERYWHERE_EQUAL = WallDegeneracy.EVERYWHERE_EQUAL


def nu(c: ReducedCharacter, p: TiltPoint) -> Slope:
    den = c.c1 - p.beta * c.c0
    if den == 0:
        return INF
    return (c.c2 - p.alpha * c.c0) / den


def vertical_wall(c: ReducedCharacter) -> Fraction:
    if c.c0 == 0:
        raise ValueError("rank-zero characters have no vertical wall")
    return c.c1 / c.c0


def _wall_coefficients(e: ReducedCharacter, f: ReducedCharacter):
    # cross-multiplied nu(e) = nu(f); the alpha*beta terms cancel
    a = f.c2 * e.c0 - e.c2 * f.c0
    b = f.c0 * e.c1 - e.c0 * f.c1
    c = f.c2 * e.c1 - e.c2 * f.c1
    return a, b, c


def wall_line(e: ReducedCharacter, f: ReducedCharacter) -> Union[Wall, WallDegeneracy]:
    """The full equal-slope line, including walls with empty admissible locus."""
    a, b, c = _wall_coefficients(e, f)
    if a == 0 and b == 0:
        # c vanishes too for proportional characters; otherwise no solution at all
        return EVERYWHERE_EQUAL if c == 0 else NO_WALL
    return Wall(a, b, c)


def numerical_wall(e: ReducedCharacter, f: ReducedCharacter) -> Union[Wall, WallDegeneracy]:
    line = wall_line(e, f)
    if isinstance(line, Wall) and line.kind == "empty":
        return NO_WALL
    return line


def _lattice_box(c: ReducedCharacter, bound_box: int, c2_denominator: int):
    deg = c.degree
    kmax = math.floor(Fraction(bound_box * bound_box) * deg * c2_denominator / 2)
    return deg, kmax


def _is_destabilizer(c, f, s, beta, delta_c, include_proportional) -> bool:
    t = f.c1 - beta * f.c0
    if s < 0:
        t, s = -t, -s
    if not (0 < t < s):
        return False
    proportional = f.is_proportional(c)
    if proportional and not include_proportional:
        return False
    for d in (discriminant(f), discriminant(c - f)):
        if d < 0:
            return False
        if d < delta_c:
            continue
        # equality clause: only proportional characters with zero discriminant
        if not (d == delta_c == 0 and proportional):
            return False
    return True


def enumerate_destabilizers(
    c: ReducedCharacter,
    wall: Wall,
    bound_box: int,
    c2_denominator: int = 2,
    include_proportional: bool = False,
) -> list[ReducedCharacter]:
    """Lattice characters that could be Jordan-Hoelder factors of ``c`` along ``wall``.

    The lattice is ``(deg*r, deg*a, k/c2_denominator)`` with ``|r|, |a| <=
    bound_box`` and ``|k/c2_denominator| <= bound_box**2 * deg / 2``.  A
    candidate must sit on ``wall``, have ``ch1^beta`` strictly between 0 and
    that of ``c`` at the wall's test point, and both it and the quotient must
    have discriminant in ``[0, disc(c))``; equality is only tolerated for
    proportional characters of zero discriminant.
    """
    if c.c0 <= 0:
        raise ValueError("enumerate_destabilizers needs c0 > 0")
    delta_c = discriminant(c)
    if delta_c < 0:
        raise ValueError(f"character {c} violates the Bogomolov-Gieseker inequality")
    if wall.kind == "empty":
        raise EmptyWallError("wall has no admissible points")

    p = wall.test_point()
    s = c.c1 - p.beta * c.c0
    if s == 0:
        return []
    deg, kmax = _lattice_box(c, bound_box, c2_denominator)
    W = (wall.a, wall.b, wall.c)
    found = []
    for r in range(-bound_box, bound_box + 1):
        for a in range(-bound_box, bound_box + 1):
            f0, f1 = deg * r, deg * a
            # coefficients of the wall through (c, F) are affine in F2: slope*F2 + offset
            lin = (
                (c.c0, -c.c2 * f0),
                (Fraction(0), f0 * c.c1 - c.c0 * f1),
                (c.c1, -c.c2 * f1),
            )
            # parallel to W  <=>  cross product with W vanishes; each entry affine in F2
            eqs = []
            for i, j in ((1, 2), (2, 0), (0, 1)):
                eqs.append((
                    lin[i][0] * W[j] - lin[j][0] * W[i],
                    lin[i][1] * W[j] - lin[j][1] * W[i],
                ))
            solved = [e for e in eqs if e[0] != 0]
            if solved:
                f2 = -solved[0][1] / solved[0][0]
                if any(e[0] * f2 + e[1] != 0 for e in eqs):
                    continue
                k = f2 * c2_denominator
                if k.denominator != 1 or abs(k) > kmax:
                    continue
                f2_values = [f2]
            elif all(e[1] == 0 for e in eqs):
                f2_values = [Fraction(k, c2_denominator) for k in range(-kmax, kmax + 1)]
            else:
                continue
            for f2 in f2_values:
                f = c._with(f0, f1, f2)
                if _is_destabilizer(c, f, s, p.beta, delta_c, include_proportional):
                    found.append(f)
    found.sort(key=lambda f: f.vector)
    return found


def gepner_region(p: TiltPoint) -> bool:
    frac = p.beta - math.floor(p.beta) - Fraction(1, 2)
    return p.alpha * p.alpha + frac * frac > Fraction(1, 4)
