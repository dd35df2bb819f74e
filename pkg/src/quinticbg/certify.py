"""Restriction slope windows and step-by-step replays of the bound arguments.

A certificate never claims anything about actual sheaves.  It takes a slope
point ``(mu, xi)`` assumed to violate a bound profile, recomputes every
intermediate quantity of the contradiction argument from that point, and
records whether the chain closes.  All quantities are per rank: the point is
represented by the rank-one reduced character ``(5, 5 mu, 5 xi)``.

Tilt slopes at ``alpha -> 0`` are exact substitutions ``nu_{0,0}``; no limits
are taken numerically.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .bounds import surface_bound, threefold_bound
from .characters import (
    DimensionError,
    QUINTIC_DEGREE,
    ReducedCharacter,
    chi_quintic_surface,
    dual,
    quintic_surface,
    quintic_threefold,
    shift,
    tensor_oh,
)
from .clifford import SlopeRangeData, concave_roof, h0_bound_hn, h_quintic
from .rational import INF, Q, fmt, to_decimal
from .tilt_walls import TiltPoint, nu

F = Fraction
ORIGIN = TiltPoint(0, 0)

SURFACE_MAIN = "SurfaceMain"
SURFACE_SMALL_SLOPE = "SurfaceSmallSlope"
THREEFOLD_MIDDLE = "ThreefoldMiddle"

# slope windows used by the arguments
ROOF_WINDOW = (F(0), F(6, 7))
SMALL_SLOPE_CUTOFF = F(7, 46)
SMALL_SLOPE_MU_PLUS = F(2, 13)
THREEFOLD_WINDOW = (F(5, 13), F(8, 13))
SURFACE_MIDDLE_WINDOW = (F(7, 20), F(13, 20))


class DegenerateSlopeError(ValueError):
    pass


class HypothesisRangeError(ValueError):
    pass


@dataclass(frozen=True)
class NuZero:
    nu_F: Fraction
    nu_F_dual: Fraction
    nu_F_twist_shift: Fraction
    nu_F_dualtwist: Fraction


def _nu0(c: ReducedCharacter) -> Fraction:
    v = nu(c, ORIGIN)
    if v is INF:
        raise DegenerateSlopeError(f"nu_(0,0) is infinite for {c}")
    return v


def nu_zero_formulas(c: ReducedCharacter) -> NuZero:
    """``nu_{0,0}`` of ``F``, ``F^v``, ``F(-H)[1]`` and ``F^v(H)``.

    Each value is computed from the transformed character and then checked
    against its closed form in ``(mu, xi)``.
    """
    if c.c0 == 0:
        raise DegenerateSlopeError("rank-zero character")
    m, x = c.c1 / c.c0, c.c2 / c.c0
    if m in (0, 1):
        raise DegenerateSlopeError(f"slope {fmt(m)} makes a denominator vanish")
    out = NuZero(
        nu_F=_nu0(c),
        nu_F_dual=_nu0(dual(c)),
        nu_F_twist_shift=_nu0(shift(tensor_oh(c, -1))),
        nu_F_dualtwist=_nu0(tensor_oh(dual(c), 1)),
    )
    closed = NuZero(
        nu_F=x / m,
        nu_F_dual=-x / m,
        nu_F_twist_shift=(x - m / 2) / (m - 1) - F(1, 2),
        nu_F_dualtwist=(x - F(1, 2)) / (1 - m) + F(3, 2) - F(1, 2),
    )
    if out != closed:
        raise AssertionError(f"nu_(0,0) closed forms disagree for {c}: {out} vs {closed}")
    return out


@dataclass(frozen=True)
class RestrictionInterval:
    lower: Fraction
    upper: Fraction
    m: int

    def __post_init__(self):
        lo, hi = Q(self.lower), Q(self.upper)
        object.__setattr__(self, "lower", min(lo, hi))
        object.__setattr__(self, "upper", max(lo, hi))
        if self.m <= 0:
            raise ValueError("m must be a positive integer")

    def __contains__(self, x) -> bool:
        return self.lower <= Q(x) <= self.upper

    def within(self, lo, hi, strict: bool = False) -> bool:
        if strict:
            return Q(lo) < self.lower and self.upper < Q(hi)
        return Q(lo) <= self.lower and self.upper <= Q(hi)

    def to_json(self) -> dict:
        return {"lower": fmt(self.lower), "upper": fmt(self.upper), "m": self.m}


def restriction_endpoints(c: ReducedCharacter, m: int) -> tuple[Fraction, Fraction]:
    """``(m/2 + nu_{0,0}(E), m/2 + nu_{0,0}(E(-mH)[1]))`` in that order."""
    if m <= 0:
        raise ValueError("m must be a positive integer")
    if c.c0 == 0:
        raise DegenerateSlopeError("rank-zero character")
    slope = c.c1 / c.c0
    if slope in (0, m):
        raise DegenerateSlopeError(f"slope {fmt(slope)} is excluded for m = {m}")
    half = F(m, 2)
    return half + _nu0(c), half + _nu0(shift(tensor_oh(c, -m)))


def restriction_interval(c: ReducedCharacter, m: int = 1) -> RestrictionInterval:
    """Window containing every HN slope of ``E|_Y`` for ``Y`` in ``|mH|``."""
    a, b = restriction_endpoints(c, m)
    return RestrictionInterval(a, b, m)


def restricted_character(c: ReducedCharacter, m: int = 1) -> ReducedCharacter:
    if c.dim < 2:
        raise DimensionError("cannot restrict a curve character")
    return ReducedCharacter(c.dim - 1, m * c.degree, m * c.c0, m * c.c1, m * c.c2)


@dataclass
class Certificate:
    input: ReducedCharacter
    case_tag: str
    steps: list = field(default_factory=list)
    conclusion_slope: Optional[Fraction] = None
    conclusion_intercept: Optional[Fraction] = None
    hypothesis_holds: bool = False
    chain_holds: bool = False
    contradicts_assumption: bool = False

    def add(self, label: str, value) -> Fraction:
        value = F(int(value)) if isinstance(value, bool) else Q(value)
        self.steps.append((label, value))
        return value

    def step(self, label: str) -> Fraction:
        for name, value in self.steps:
            if name == label:
                return value
        raise KeyError(label)

    def conclusion_at(self, mu) -> Optional[Fraction]:
        if self.conclusion_slope is None:
            return None
        return self.conclusion_slope * Q(mu) + self.conclusion_intercept

    def to_json(self, decimal: bool = False) -> dict:
        steps = []
        for label, value in self.steps:
            row = [label, fmt(value)]
            if decimal:
                row.append(to_decimal(value))
            steps.append(row)
        return {
            "input": self.input.to_json(),
            "case_tag": self.case_tag,
            "steps": steps,
            "conclusion": None if self.conclusion_slope is None else {"xi_le": {
                "slope": fmt(self.conclusion_slope),
                "intercept": fmt(self.conclusion_intercept),
            }},
            "hypothesis_holds": self.hypothesis_holds,
            "chain_holds": self.chain_holds,
            "contradicts_assumption": self.contradicts_assumption,
        }


def _slope_bounds(cert, name, first, second, lo, hi) -> bool:
    """Record ``mu- >= first >= lo`` and ``mu+ <= second <= hi`` for the restriction ``name``.

    The two endpoints bound the HN slopes from below and above respectively;
    if they cross, no HN slopes fit at all, which only strengthens the
    argument.  Weak inequalities decide; strict variants are recorded.
    """
    ok_lo = cert.add(f"mu-({name}) >= {fmt(lo)}", first >= lo)
    ok_hi = cert.add(f"mu+({name}) <= {fmt(hi)}", second <= hi)
    cert.add(f"mu-({name}) > {fmt(lo)} (strict variant)", first > lo)
    cert.add(f"mu+({name}) < {fmt(hi)} (strict variant)", second < hi)
    return bool(ok_lo and ok_hi)


def _rr_coefficients(transform) -> tuple[Fraction, Fraction, Fraction]:
    """``chi(transform(F))/rk = A*xi + B*mu + C`` on the quintic surface.

    Read off by evaluating the (linear) Euler characteristic on the rank-one
    basis directions ``xi``, ``mu`` and the constant term.
    """
    d = QUINTIC_DEGREE
    A = chi_quintic_surface(transform(quintic_surface(0, 0, d)))
    B = chi_quintic_surface(transform(quintic_surface(0, d, 0)))
    C = chi_quintic_surface(transform(quintic_surface(d, 0, 0)))
    return A, B, C


def _conclude(cert: Certificate, A, B, C, s1, s0, mu, xi):
    """From ``A xi + B mu + C <= s1 mu + s0`` deduce ``xi <= slope mu + intercept``."""
    cert.conclusion_slope = (s1 - B) / A
    cert.conclusion_intercept = (s0 - C) / A
    bound = cert.add("conclusion: bound on xi at mu", cert.conclusion_at(mu))
    cert.add("margin (bound - xi)", bound - xi)
    cert.contradicts_assumption = cert.hypothesis_holds and cert.chain_holds and xi > bound


def certify_surface(mu, xi, case: Optional[str] = None) -> Certificate:
    """Replay the quintic-surface argument at the slope point ``(mu, xi)``.

    ``mu`` must lie in ``(0, 1/2]``; slopes in ``(1/2, 1)`` reduce to this
    range through ``F -> F^v(H)``.  By default ``mu >= 7/46`` runs the main
    chain and smaller slopes the small-slope chain.
    """
    mu, xi = Q(mu), Q(xi)
    if not (0 < mu <= F(1, 2)):
        raise HypothesisRangeError("certify_surface needs mu in (0, 1/2]")
    if case is None:
        case = SURFACE_MAIN if mu >= SMALL_SLOPE_CUTOFF else SURFACE_SMALL_SLOPE
    if case == SURFACE_SMALL_SLOPE and mu > SMALL_SLOPE_CUTOFF:
        raise HypothesisRangeError("the small-slope chain needs mu in (0, 7/46]")
    if case not in (SURFACE_MAIN, SURFACE_SMALL_SLOPE):
        raise ValueError(f"unknown surface case {case!r}")

    c = quintic_surface(QUINTIC_DEGREE, QUINTIC_DEGREE * mu, QUINTIC_DEGREE * xi)
    cert = Certificate(c, case)
    cert.add("mu", mu)
    cert.add("xi", xi)
    f_mu = cert.add("profile value f_S5(mu)", surface_bound()(mu))
    cert.hypothesis_holds = bool(cert.add("hypothesis xi > f_S5(mu)", xi > f_mu))
    nz = nu_zero_formulas(c)
    cert.add("nu(F)", nz.nu_F)
    cert.add("nu(F(-H)[1])", nz.nu_F_twist_shift)
    ends = restriction_endpoints(c, 1)
    cert.add("F|C: 1/2 + nu(F)", ends[0])
    cert.add("F|C: 1/2 + nu(F(-H)[1])", ends[1])

    if case == SURFACE_MAIN:
        _surface_main(cert, c, nz, ends, mu, xi)
    else:
        _surface_small(cert, c, ends, mu, xi)
    return cert


def _surface_main(cert, c, nz, ends, mu, xi):
    lo, hi = ROOF_WINDOW
    twisted = tensor_oh(dual(c), 1)
    cert.add("nu(F^v(H))", nz.nu_F_dualtwist)
    cert.add("nu(F^v[1])", nz.nu_F_dual)
    t_ends = restriction_endpoints(twisted, 1)
    cert.add("F^v(H)|C: 1/2 + nu(F^v(H))", t_ends[0])
    cert.add("F^v(H)|C: 1/2 + nu(F^v[1])", t_ends[1])
    ok_f = _slope_bounds(cert, "F|C", *ends, lo, hi)
    ok_t = _slope_bounds(cert, "F^v(H)|C", *t_ends, lo, hi)
    cert.chain_holds = ok_f and ok_t

    roof = concave_roof(h_quintic(), lo, hi)
    A, B, C = _rr_coefficients(lambda e: e)
    cert.add("RR per rank: coefficient of xi", A)
    cert.add("RR per rank: coefficient of mu", B)
    cert.add("RR per rank: constant", C)
    cert.add("chi(O, F)/rk", A * xi + B * mu + C)
    if not (lo <= 1 - mu <= hi):
        # 1 - mu outside the roof window: no h0 bound, no conclusion
        cert.add("1 - mu inside [0, 6/7]", False)
        return
    p1 = roof.piece_at(mu)
    p2 = roof.piece_at(1 - mu)
    b1 = cert.add("h0(F|C)/rk bound (roof over [0, 6/7] at mu)", p1.value(mu))
    b2 = cert.add("h0(F^v(H)|C)/rk bound (roof at 1 - mu)", p2.value(1 - mu))
    cert.add("sum of h0 bounds", b1 + b2)
    # b1 + b2 as an affine function of mu
    s1 = p1.slope - p2.slope
    s0 = p1.intercept + p2.slope + p2.intercept
    _conclude(cert, A, B, C, s1, s0, mu, xi)


def _surface_small(cert, c, ends, mu, xi):
    cap = SMALL_SLOPE_MU_PLUS
    upper_f = ends[1]
    upper_fh = cert.add("mu+(F(H)|C) bound (= mu+(F|C) bound + 1)", upper_f + 1)
    ok_f = cert.add("mu+(F|C) <= 2/13", upper_f <= cap)
    ok_h = cert.add("mu+(F(H)|C) <= 15/13", upper_fh <= cap + 1)
    cert.add("mu+(F|C) < 2/13 (strict variant)", upper_f < cap)
    cert.chain_holds = bool(ok_f and ok_h)

    b1 = cert.add("h0(F|C)/rk bound h(2/13)", h0_bound_hn(SlopeRangeData(None, cap, mu)))
    b2 = cert.add("h0(F(H)|C)/rk bound h(15/13)", h0_bound_hn(SlopeRangeData(None, cap + 1, mu + 1)))
    cert.add("stated constant for h0(F(H)|C)/rk", F(3))
    cert.add("sum of h0 bounds", b1 + b2)
    A, B, C = _rr_coefficients(lambda e: tensor_oh(e, 1))
    cert.add("RR per rank for F(H): coefficient of xi", A)
    cert.add("RR per rank for F(H): coefficient of mu", B)
    cert.add("RR per rank for F(H): constant", C)
    cert.add("chi(O, F(H))/rk", A * xi + B * mu + C)
    _conclude(cert, A, B, C, F(0), b1 + b2, mu, xi)


def certify_threefold(mu, xi) -> Certificate:
    """Replay the threefold argument on the middle window ``[5/13, 8/13]``.

    Restricting to a quintic surface ``S`` in ``|H|`` pins all HN slopes of
    ``F|_S`` into the restriction window; when that window sits in
    ``[7/20, 13/20]`` the surface profile is affine there and averaging over
    HN factors gives the conclusion.
    """
    mu, xi = Q(mu), Q(xi)
    lo, hi = THREEFOLD_WINDOW
    if not (lo <= mu <= hi):
        raise HypothesisRangeError("certify_threefold needs mu in [5/13, 8/13]")
    c = quintic_threefold(QUINTIC_DEGREE, QUINTIC_DEGREE * mu, QUINTIC_DEGREE * xi)
    cert = Certificate(c, THREEFOLD_MIDDLE)
    cert.add("mu", mu)
    cert.add("xi", xi)
    f_mu = cert.add("profile value f_X(mu)", threefold_bound()(mu))
    cert.hypothesis_holds = bool(cert.add("hypothesis xi > f_X(mu)", xi > f_mu))

    first, second = restriction_endpoints(c, 1)
    cert.add("1/2 + nu(F)", first)
    cert.add("1/2 + nu(F(-H)[1])", second)
    cert.add("endpoints ordered", first <= second)
    s = restricted_character(c, 1)
    cert.add("restricted mu", s.c1 / s.c0)
    cert.add("restricted xi", s.c2 / s.c0)

    wlo, whi = SURFACE_MIDDLE_WINDOW
    cert.chain_holds = _slope_bounds(cert, "F|S", first, second, wlo, whi)

    # the surface profile must be one affine piece across the window
    piece = surface_bound().fn.piece_at((wlo + whi) / 2)
    if not (piece.lo <= wlo and whi <= piece.hi):
        raise AssertionError("surface profile is not affine on [7/20, 13/20]")
    cert.add("surface profile slope on window", piece.slope)
    cert.add("surface profile intercept on window", piece.intercept)
    cert.conclusion_slope = piece.slope
    cert.conclusion_intercept = piece.intercept
    bound = cert.add("conclusion: bound on xi at mu", cert.conclusion_at(mu))
    cert.add("margin (bound - xi)", bound - xi)
    cert.contradicts_assumption = cert.hypothesis_holds and cert.chain_holds and xi > bound
    return cert
