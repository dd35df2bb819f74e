"""Exact piecewise-linear functions on the real line.

A function is an ordered tuple of :class:`Piece` objects whose intervals
abut.  Each shared endpoint is owned by one piece (or by both when their values
agree), which is how jump points such as the filled/open dots of a step are
represented.  ``None`` as an endpoint stands for an infinite end.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .rational import Q, fmt


@dataclass(frozen=True)
class Piece:
    lo: Optional[Fraction]
    hi: Optional[Fraction]
    slope: Fraction
    intercept: Fraction
    owns_left: bool = True
    owns_right: bool = True

    def __post_init__(self):
        for name in ("lo", "hi"):
            v = getattr(self, name)
            if v is not None:
                object.__setattr__(self, name, Q(v))
        object.__setattr__(self, "slope", Q(self.slope))
        object.__setattr__(self, "intercept", Q(self.intercept))
        if self.lo is None:
            object.__setattr__(self, "owns_left", False)
        if self.hi is None:
            object.__setattr__(self, "owns_right", False)
        if self.lo is not None and self.hi is not None and self.lo >= self.hi:
            raise ValueError(f"empty piece interval [{self.lo}, {self.hi}]")

    def value(self, x) -> Fraction:
        return self.slope * x + self.intercept

    def contains(self, x) -> bool:
        if self.lo is not None and (x < self.lo or (x == self.lo and not self.owns_left)):
            return False
        if self.hi is not None and (x > self.hi or (x == self.hi and not self.owns_right)):
            return False
        return True

    def covers_closure(self, x) -> bool:
        return (self.lo is None or x >= self.lo) and (self.hi is None or x <= self.hi)

    def to_json(self) -> dict:
        return {
            "interval": [
                "-inf" if self.lo is None else fmt(self.lo),
                "+inf" if self.hi is None else fmt(self.hi),
            ],
            "slope": fmt(self.slope),
            "intercept": fmt(self.intercept),
            "owns_left": self.owns_left,
            "owns_right": self.owns_right,
        }

    @classmethod
    def from_json(cls, data: dict) -> "Piece":
        lo, hi = data["interval"]
        return cls(
            None if lo in ("-inf", "−inf") else Q(lo),
            None if hi == "+inf" else Q(hi),
            Q(data["slope"]),
            Q(data["intercept"]),
            bool(data.get("owns_left", True)),
            bool(data.get("owns_right", True)),
        )


class PiecewiseLinearFn:
    def __init__(self, pieces: Iterable[Piece]):
        pieces = tuple(pieces)
        if not pieces:
            raise ValueError("a piecewise function needs at least one piece")
        for left, right in zip(pieces, pieces[1:]):
            if left.hi is None or right.lo is None or left.hi != right.lo:
                raise ValueError("pieces must abut in increasing order")
            x = left.hi
            if not (left.owns_right or right.owns_left):
                raise ValueError(f"point {x} is owned by no piece")
            if left.owns_right and right.owns_left and left.value(x) != right.value(x):
                raise ValueError(f"both pieces own {x} but disagree there")
        self.pieces = pieces

    def __eq__(self, other):
        return isinstance(other, PiecewiseLinearFn) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __repr__(self):
        return f"PiecewiseLinearFn({list(self.pieces)!r})"

    def __iter__(self) -> Iterator[Piece]:
        return iter(self.pieces)

    def __len__(self):
        return len(self.pieces)

    @property
    def lo(self) -> Optional[Fraction]:
        return self.pieces[0].lo

    @property
    def hi(self) -> Optional[Fraction]:
        return self.pieces[-1].hi

    @property
    def lo_closed(self) -> bool:
        return self.pieces[0].owns_left

    @property
    def hi_closed(self) -> bool:
        return self.pieces[-1].owns_right

    def in_domain(self, x) -> bool:
        return any(p.contains(x) for p in self.pieces)

    def in_closure(self, x) -> bool:
        return (self.lo is None or x >= self.lo) and (self.hi is None or x <= self.hi)

    def piece_at(self, x) -> Piece:
        x = Q(x)
        for p in self.pieces:
            if p.contains(x):
                return p
        raise ValueError(f"{fmt(x)} is outside the domain")

    def __call__(self, x) -> Fraction:
        x = Q(x)
        return self.piece_at(x).value(x)

    def limit_left(self, x) -> Fraction:
        x = Q(x)
        for p in self.pieces:
            if (p.lo is None or p.lo < x) and (p.hi is None or x <= p.hi):
                return p.value(x)
        raise ValueError(f"no left limit at {fmt(x)}")

    def limit_right(self, x) -> Fraction:
        x = Q(x)
        for p in self.pieces:
            if (p.lo is None or p.lo <= x) and (p.hi is None or x < p.hi):
                return p.value(x)
        raise ValueError(f"no right limit at {fmt(x)}")

    def breakpoints(self) -> list[Fraction]:
        """Interior points where one piece hands over to the next."""
        return [p.hi for p in self.pieces[:-1]]

    def values_at(self, x) -> list[Fraction]:
        """Every value the closure of the graph takes at ``x``.

        That is the owned value plus both one-sided limits, restricted to the
        closed domain.  Duplicates are removed.
        """
        x = Q(x)
        out = []
        for p in self.pieces:
            if p.covers_closure(x):
                v = p.value(x)
                if v not in out:
                    out.append(v)
        return out

    def is_continuous(self) -> bool:
        return all(left.value(left.hi) == right.value(right.lo)
                   for left, right in zip(self.pieces, self.pieces[1:]))

    def to_json(self) -> dict:
        return {"pieces": [p.to_json() for p in self.pieces]}

    @classmethod
    def from_json(cls, data: dict) -> "PiecewiseLinearFn":
        return cls(Piece.from_json(p) for p in data["pieces"])


def affine(lo, hi, slope, intercept) -> PiecewiseLinearFn:
    return PiecewiseLinearFn([Piece(lo, hi, slope, intercept)])
