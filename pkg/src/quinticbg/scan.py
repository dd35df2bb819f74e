"""Lattice scans of reduced characters and plot-ready profile series.

The scan lattice is ``(5r, 5a, k/den)``: rank ``r``, ``ch1 = a*H`` and
``H^(n-2) ch2`` in ``(1/den) Z``.  The exact integrality lattice of ``H.ch2``
on a quintic is left configurable; ``den = 2`` is the default.

Rows are classified independently against the classical inequality, the
prior threefold profile and the selected profile.  Flags are blank where a
slope falls outside a profile's validity range.  Violations are reported,
never filtered.
"""
from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional

from .bounds import (
    PRIOR,
    SURFACE,
    THREEFOLD,
    BoundProfile,
    OutOfValidityError,
    check_character,
    profile_by_name,
)
from .characters import QUINTIC_DEGREE, ReducedCharacter, discriminant
from .clifford import h_quintic
from .rational import Q, fmt

QUINTIC_SURFACE = "QuinticSurface"
QUINTIC_THREEFOLD = "QuinticThreefold"
VARIETY_ALIASES = {
    "quinticsurface": QUINTIC_SURFACE,
    "surface": QUINTIC_SURFACE,
    "quintic2": QUINTIC_SURFACE,
    "quinticthreefold": QUINTIC_THREEFOLD,
    "threefold": QUINTIC_THREEFOLD,
    "quintic3": QUINTIC_THREEFOLD,
}
CSV_COLUMNS = ("r", "a", "c2", "mu", "xi", "delta", "classical_bg", "prior", "new_bound", "margin_new")


def parse_variety(name: str) -> str:
    try:
        return VARIETY_ALIASES[name.replace("_", "").replace("-", "").lower()]
    except KeyError:
        raise ValueError(f"unknown variety {name!r}") from None


def variety_dim(variety: str) -> int:
    return 2 if variety == QUINTIC_SURFACE else 3


@dataclass
class ScanConfig:
    variety: str = QUINTIC_THREEFOLD
    rank_max: int = 2
    c1_range: tuple[int, int] = (-2, 2)
    c2_denominator: int = 2
    xi_bound: Fraction = Fraction(2)
    profile: Optional[str] = None
    output: Optional[str] = None
    format: str = "csv"
    workers: int = 1

    def __post_init__(self):
        self.variety = parse_variety(self.variety)
        self.xi_bound = Q(self.xi_bound)
        if self.profile is None:
            self.profile = SURFACE if self.variety == QUINTIC_SURFACE else THREEFOLD
        self.validate()

    def validate(self):
        if self.rank_max < 1:
            raise ValueError("rank_max must be >= 1")
        if self.c2_denominator < 1:
            raise ValueError("c2_denominator must be >= 1")
        lo, hi = self.c1_range
        if lo > hi:
            raise ValueError("c1_range must be an increasing integer interval")
        if self.xi_bound < 0:
            raise ValueError("xi_bound must be non-negative")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        profile_by_name(self.profile)

    @classmethod
    def from_file(cls, path: str, **overrides) -> "ScanConfig":
        with open(path) as fh:
            return cls.from_text(fh.read(), **overrides)

    @classmethod
    def from_text(cls, text: str, **overrides) -> "ScanConfig":
        """Parse ``key = value`` lines; ``#`` starts a comment."""
        raw: dict[str, str] = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"config line {lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            raw[key.replace("-", "_")] = value
        kwargs: dict = {}
        for key, value in raw.items():
            if key in ("rank_max", "c2_denominator", "workers"):
                kwargs[key] = int(value)
            elif key == "c1_range":
                lo, hi = (int(s) for s in value.replace(":", ",").split(","))
                kwargs[key] = (lo, hi)
            elif key == "xi_bound":
                kwargs[key] = Q(value)
            elif key in ("variety", "profile", "output", "format"):
                kwargs[key] = value
            else:
                raise ValueError(f"unknown config key {key!r}")
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)


@dataclass(frozen=True)
class ScanRow:
    character: ReducedCharacter
    r: int
    a: int
    mu: Fraction
    xi: Fraction
    delta: Fraction
    classical_bg: bool
    prior: Optional[bool]
    new_bound: Optional[bool]
    margin_new: Optional[Fraction]

    def csv_fields(self) -> list[str]:
        def flag(v):
            return "" if v is None else ("true" if v else "false")

        return [
            str(self.r),
            str(self.a),
            fmt(self.character.c2),
            fmt(self.mu),
            fmt(self.xi),
            fmt(self.delta),
            flag(self.classical_bg),
            flag(self.prior),
            flag(self.new_bound),
            "" if self.margin_new is None else fmt(self.margin_new),
        ]

    def to_json(self) -> dict:
        return {
            "character": self.character.to_json(),
            "r": self.r,
            "a": self.a,
            "mu": fmt(self.mu),
            "xi": fmt(self.xi),
            "delta": fmt(self.delta),
            "classical_bg": self.classical_bg,
            "prior": self.prior,
            "new_bound": self.new_bound,
            "margin_new": None if self.margin_new is None else fmt(self.margin_new),
        }


def _classify(profile: BoundProfile, c: ReducedCharacter):
    try:
        res = check_character(c, profile)
    except OutOfValidityError:
        return None, None
    return res.satisfies, res.margin


def classify(c: ReducedCharacter, config: ScanConfig, r: int = 0, a: int = 0) -> ScanRow:
    new_profile = profile_by_name(config.profile)
    # the prior profile is a threefold statement
    prior_profile = profile_by_name(PRIOR) if config.variety == QUINTIC_THREEFOLD else None
    delta = discriminant(c)
    prior = _classify(prior_profile, c)[0] if prior_profile is not None else None
    new_ok, margin = _classify(new_profile, c)
    return ScanRow(c, r, a, c.c1 / c.c0, c.c2 / c.c0, delta, delta >= 0, prior, new_ok, margin)


def _scan_block(args) -> list[ScanRow]:
    config, r, a = args
    dim = variety_dim(config.variety)
    deg = QUINTIC_DEGREE
    den = config.c2_denominator
    kmax = math.floor(config.xi_bound * deg * r * den)
    rows = []
    for k in range(-kmax, kmax + 1):
        c = ReducedCharacter(dim, deg, deg * r, deg * a, Fraction(k, den))
        rows.append(classify(c, config, r, a))
    return rows


def _blocks(config: ScanConfig):
    lo, hi = config.c1_range
    return [(config, r, a) for r in range(1, config.rank_max + 1) for a in range(lo, hi + 1)]


def scan(config: ScanConfig) -> Iterator[ScanRow]:
    """Rows in lexicographic ``(r, a, k)`` order, whatever the worker count.

    Blocks of fixed ``(r, a)`` are independent; ``Executor.map`` hands them
    back in submission order, so merging is deterministic.
    """
    blocks = _blocks(config)
    if config.workers == 1:
        for block in blocks:
            yield from _scan_block(block)
        return
    with ProcessPoolExecutor(max_workers=config.workers) as pool:
        for rows in pool.map(_scan_block, blocks, chunksize=1):
            yield from rows


def rows_to_csv(rows: Iterable[ScanRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


def rows_to_json(rows: Iterable[ScanRow]) -> str:
    return json.dumps([row.to_json() for row in rows], indent=1) + "\n"


def run_scan(config: ScanConfig) -> str:
    rows = scan(config)
    text = rows_to_csv(rows) if config.format == "csv" else rows_to_json(rows)
    if config.output:
        with open(config.output, "w", newline="") as fh:
            fh.write(text)
    return text


# plot data

PLOT_PROFILES = ("h", SURFACE, THREEFOLD, PRIOR, "parabola")
PLOT_COLUMNS = ("profile", "x", "y", "kind")


@dataclass(frozen=True)
class PlotRow:
    profile: str
    x: Fraction
    y: Fraction
    kind: str  # sample | breakpoint | right_limit | left_limit | open_end


def _grid(lo: Fraction, hi: Fraction, step: Fraction) -> list[Fraction]:
    """``lo, lo + step, ...`` up to ``hi``, with ``hi`` itself always included."""
    n = math.floor((hi - lo) / step)
    return sorted({lo + i * step for i in range(n + 1)} | {hi})


def _series(name: str, fn, lo: Fraction, hi: Fraction, step: Fraction) -> list[PlotRow]:
    rows: dict[tuple[Fraction, str], PlotRow] = {}
    breaks = set(fn.breakpoints())
    for x in sorted(set(_grid(lo, hi, step)) | breaks):
        if not (lo <= x <= hi):
            continue
        if fn.in_domain(x):
            kind = "breakpoint" if x in breaks else "sample"
            rows[(x, "v")] = PlotRow(name, x, fn(x), kind)
            if x in breaks:
                left, right = fn.limit_left(x), fn.limit_right(x)
                if left != fn(x):
                    rows[(x, "l")] = PlotRow(name, x, left, "left_limit")
                if right != fn(x):
                    rows[(x, "r")] = PlotRow(name, x, right, "right_limit")
        else:
            # open end of the domain: emit the limiting value
            y = fn.limit_right(x) if x == fn.lo else fn.limit_left(x)
            rows[(x, "v")] = PlotRow(name, x, y, "open_end")
    order = {"left_limit": 0, "breakpoint": 1, "sample": 1, "open_end": 1, "right_limit": 2}
    return sorted(rows.values(), key=lambda r: (r.x, order[r.kind]))


def plot_data(names: Iterable[str], step) -> list[PlotRow]:
    step = Q(step)
    if step <= 0:
        raise ValueError("sample_step must be positive")
    out: list[PlotRow] = []
    for name in names:
        if name == "h":
            out.extend(_series("h", h_quintic(), Fraction(0), Fraction(3), step))
        elif name == "parabola":
            out.extend(PlotRow("parabola", x, x * x / 2, "sample")
                       for x in _grid(Fraction(0), Fraction(1), step))
        elif name in (SURFACE, THREEFOLD, PRIOR):
            fn = profile_by_name(name).fn
            out.extend(_series(name, fn, fn.lo, fn.hi, step))
        else:
            raise ValueError(f"unknown profile {name!r}; expected one of {PLOT_PROFILES}")
    return out


def plot_rows_to_csv(rows: Iterable[PlotRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(PLOT_COLUMNS)
    for row in rows:
        writer.writerow([row.profile, fmt(row.x), fmt(row.y), row.kind])
    return buf.getvalue()
