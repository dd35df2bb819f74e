"""Reduced Chern characters ``(H^n ch0, H^(n-1) ch1, H^(n-2) ch2)``.

Only the contractions against powers of the polarization are modeled; full
Chern classes, ``ch3`` and Picard rank >= 2 never appear.  Every formula used
downstream depends on these three numbers alone.

Sign conventions that are standard rather than derived here:

* dual:  ``(c0, c1, c2) -> (c0, -c1, c2)``
* shift: ``E -> E[1]`` negates every entry.

Discriminants are always ``c1**2 - 2*c0*c2`` in reduced coordinates.  Only the
sign and the ordering of discriminants are ever compared, and both survive any
fixed positive rescaling.

A slope-semistable torsion-free sheaf is tilt-stable for ``alpha >> 0``, so a
sheaf character can be fed straight into the tilt-stability machinery.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .rational import INF, Q, Slope, fmt

QUINTIC_DEGREE = Fraction(5)


class RankZeroError(ValueError):
    """Raised when an operation needs ``c0 != 0``."""


class DimensionError(ValueError):
    pass


@dataclass(frozen=True)
class ReducedCharacter:
    dim: int
    degree: Fraction
    c0: Fraction
    c1: Fraction
    c2: Fraction

    def __post_init__(self):
        if self.dim not in (1, 2, 3):
            raise DimensionError(f"dimension must be 1, 2 or 3, got {self.dim}")
        for name in ("degree", "c0", "c1", "c2"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        if self.degree <= 0:
            raise ValueError("degree H^n must be positive")

    @property
    def vector(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.c0, self.c1, self.c2)

    @property
    def rank(self) -> Fraction:
        return self.c0 / self.degree

    def _with(self, c0, c1, c2) -> "ReducedCharacter":
        return ReducedCharacter(self.dim, self.degree, c0, c1, c2)

    def _check_compatible(self, other: "ReducedCharacter"):
        if (self.dim, self.degree) != (other.dim, other.degree):
            raise ValueError("characters live on different varieties")

    def __add__(self, other: "ReducedCharacter") -> "ReducedCharacter":
        self._check_compatible(other)
        return self._with(self.c0 + other.c0, self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "ReducedCharacter") -> "ReducedCharacter":
        self._check_compatible(other)
        return self._with(self.c0 - other.c0, self.c1 - other.c1, self.c2 - other.c2)

    def __neg__(self) -> "ReducedCharacter":
        return shift(self)

    def scale(self, t) -> "ReducedCharacter":
        t = Q(t)
        return self._with(t * self.c0, t * self.c1, t * self.c2)

    def is_proportional(self, other: "ReducedCharacter") -> bool:
        a, b = self.vector, other.vector
        return (
            a[0] * b[1] == a[1] * b[0]
            and a[0] * b[2] == a[2] * b[0]
            and a[1] * b[2] == a[2] * b[1]
        )

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "degree": fmt(self.degree),
            "c0": fmt(self.c0),
            "c1": fmt(self.c1),
            "c2": fmt(self.c2),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ReducedCharacter":
        return cls(int(data["dim"]), Q(data["degree"]), Q(data["c0"]), Q(data["c1"]), Q(data["c2"]))

    def __str__(self):
        return f"({fmt(self.c0)}, {fmt(self.c1)}, {fmt(self.c2)})"


def quintic_surface(c0, c1, c2) -> ReducedCharacter:
    return ReducedCharacter(2, QUINTIC_DEGREE, Q(c0), Q(c1), Q(c2))


def quintic_threefold(c0, c1, c2) -> ReducedCharacter:
    return ReducedCharacter(3, QUINTIC_DEGREE, Q(c0), Q(c1), Q(c2))


def from_rank(dim: int, rank, a, ch2, degree=QUINTIC_DEGREE) -> ReducedCharacter:
    """Character of rank ``rank``, ``ch1 = a*H`` and ``H^(n-2) ch2 = ch2``."""
    degree = Q(degree)
    return ReducedCharacter(dim, degree, degree * Q(rank), degree * Q(a), Q(ch2))


def mu(c: ReducedCharacter) -> Slope:
    if c.c0 == 0:
        return INF
    return c.c1 / c.c0


def xi(c: ReducedCharacter) -> Fraction:
    if c.c0 == 0:
        raise RankZeroError(f"xi is undefined for rank-zero character {c}")
    return c.c2 / c.c0


def slope_point(c: ReducedCharacter) -> tuple[Fraction, Fraction]:
    """``p_H(c) = (mu, xi)``."""
    if c.c0 == 0:
        raise RankZeroError(f"slope point is undefined for rank-zero character {c}")
    return (c.c1 / c.c0, c.c2 / c.c0)


def twist(c: ReducedCharacter, beta) -> ReducedCharacter:
    """``ch^{beta H}`` in reduced coordinates."""
    beta = Q(beta)
    return c._with(
        c.c0,
        c.c1 - beta * c.c0,
        c.c2 - beta * c.c1 + beta * beta * c.c0 / 2,
    )


def dual(c: ReducedCharacter) -> ReducedCharacter:
    return c._with(c.c0, -c.c1, c.c2)


def tensor_oh(c: ReducedCharacter, k: int) -> ReducedCharacter:
    """Character of ``E(kH)``; the same as twisting by ``-k``."""
    return twist(c, -Q(k))


def shift(c: ReducedCharacter) -> ReducedCharacter:
    return c._with(-c.c0, -c.c1, -c.c2)


def discriminant(c: ReducedCharacter) -> Fraction:
    return c.c1 * c.c1 - 2 * c.c0 * c.c2


def chi_quintic_surface(c: ReducedCharacter) -> Fraction:
    """Euler characteristic on a smooth quintic surface.

    ``chi = ch2 - H.ch1/2 + H^2.ch0``, which reads verbatim in reduced
    coordinates on a surface.
    """
    if c.dim != 2:
        raise DimensionError("chi_quintic_surface needs a surface character")
    if c.degree != QUINTIC_DEGREE:
        raise ValueError("chi_quintic_surface needs degree H^2 = 5")
    return c.c2 - c.c1 / 2 + c.c0
