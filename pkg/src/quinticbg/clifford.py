"""Clifford-type bounds for ``h0/rank`` of bundles on smooth plane quintic curves.

``h_quintic`` is the per-slope bound for semistable bundles.  For bundles that
are not semistable the bound is the concave roof of ``h`` over the range of
Harder-Narasimhan slopes, evaluated at the total slope: a weighted average of
``h`` at the factor slopes never exceeds the roof at the averaged slope.

The roof is the least *concave* majorant (upper hull of the graph).  Read as
the least convex majorant, the averaging step would fail, so concavity it is.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from .piecewise import Piece, PiecewiseLinearFn
from .rational import Q, fmt

F = Fraction


@lru_cache(maxsize=None)
def h_quintic() -> PiecewiseLinearFn:
    """Upper bound for ``h0(E)/r`` of a semistable bundle of slope ``x``.

    At ``x = 2`` the value 6 belongs to the ``7x/2 - 1`` branch; the branch
    ``5x - 5`` only starts strictly after 2 (right limit 5).
    """
    return PiecewiseLinearFn([
        Piece(None, F(0), F(0), F(0), owns_right=False),
        Piece(F(0), F(6, 7), F(3, 2), F(1)),
        Piece(F(6, 7), F(1), F(5), F(-2), owns_right=False),
        Piece(F(1), F(8, 7), F(0), F(3)),
        Piece(F(8, 7), F(2), F(7, 2), F(-1)),
        Piece(F(2), None, F(5), F(-5), owns_left=False),
    ])


def h0_bound_semistable(mu) -> Fraction:
    """Per-rank ``h0`` bound; an equality for slopes above 2."""
    return h_quintic()(Q(mu))


def upper_hull(points) -> list[tuple[Fraction, Fraction]]:
    """Vertices of the upper convex hull, left to right, collinear points dropped."""
    best: dict[Fraction, Fraction] = {}
    for x, y in points:
        if x not in best or y > best[x]:
            best[x] = y
    pts = sorted(best.items())
    hull: list[tuple[Fraction, Fraction]] = []
    for p in pts:
        while len(hull) >= 2:
            (ox, oy), (ax, ay) = hull[-2], hull[-1]
            cross = (ax - ox) * (p[1] - oy) - (ay - oy) * (p[0] - ox)
            if cross >= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _is_nondecreasing_up_to(f: PiecewiseLinearFn, b: Fraction) -> bool:
    prev_right = None
    for p in f.pieces:
        if p.lo is not None and p.lo >= b:
            break
        if p.slope < 0:
            return False
        if p.lo is not None and prev_right is not None:
            x = p.lo
            left = prev_right
            right = p.value(x)
            if right < left:
                return False
        if p.hi is not None:
            prev_right = p.value(p.hi)
    return True


def concave_roof(f: PiecewiseLinearFn, a: Optional[Fraction], b) -> PiecewiseLinearFn:
    """Least concave majorant of ``f`` restricted to ``[a, b]``.

    ``a = None`` means an unbounded-below window.  That case is only
    supported when ``f`` is nondecreasing on ``(-inf, b]``, where the roof is
    the constant ``f(b)``.
    """
    b = Q(b)
    if not f.in_domain(b):
        raise ValueError(f"{fmt(b)} is outside the domain")
    if a is None:
        if not _is_nondecreasing_up_to(f, b) or f(b) < max(f.values_at(b)):
            raise ValueError("unbounded-below roof needs f nondecreasing on (-inf, b]")
        return PiecewiseLinearFn([Piece(None, b, F(0), f(b))])
    a = Q(a)
    if not a < b:
        raise ValueError(f"degenerate roof interval [{fmt(a)}, {fmt(b)}]")
    if not f.in_domain(a):
        raise ValueError(f"{fmt(a)} is outside the domain")

    points = [(a, f(a)), (a, f.limit_right(a)), (b, f(b)), (b, f.limit_left(b))]
    for t in f.breakpoints():
        if a < t < b:
            points.extend((t, v) for v in f.values_at(t))
    hull = upper_hull(points)
    pieces = []
    for (x0, y0), (x1, y1) in zip(hull, hull[1:]):
        slope = (y1 - y0) / (x1 - x0)
        pieces.append(Piece(x0, x1, slope, y0 - slope * x0))
    return PiecewiseLinearFn(pieces)


@dataclass(frozen=True)
class SlopeRangeData:
    """HN slope range of a bundle; ``mu_minus = None`` means unbounded below."""

    mu_minus: Optional[Fraction]
    mu_plus: Fraction
    mu: Fraction

    def __post_init__(self):
        if self.mu_minus is not None:
            object.__setattr__(self, "mu_minus", Q(self.mu_minus))
        object.__setattr__(self, "mu_plus", Q(self.mu_plus))
        object.__setattr__(self, "mu", Q(self.mu))
        lo_ok = self.mu_minus is None or self.mu_minus <= self.mu
        if not (lo_ok and self.mu <= self.mu_plus):
            raise ValueError("need mu_minus <= mu <= mu_plus")


def h0_bound_hn(rng: SlopeRangeData) -> Fraction:
    h = h_quintic()
    if rng.mu_minus is None:
        if rng.mu_plus > 2:
            raise ValueError("the unbounded-below bound needs mu_plus <= 2")
        return concave_roof(h, None, rng.mu_plus)(rng.mu)
    if rng.mu_minus == rng.mu_plus:
        return h(rng.mu)
    return concave_roof(h, rng.mu_minus, rng.mu_plus)(rng.mu)
