"""Command-line front end: ``quinticbg <subcommand> ...``.

Every subcommand prints JSON with exact ``p/q`` rationals; ``--decimal``
adds 6-place decimal renderings.  Exit status is 0 on success, 1 when
``check-character`` or ``toda`` finds a violation, 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Optional, Sequence

from . import bounds, certify as cert_mod, clifford, scan as scan_mod
from .characters import ReducedCharacter, QUINTIC_DEGREE, mu, xi
from .rational import Q, fmt, parse_rational, to_decimal
from .tilt_walls import (
    EVERYWHERE_EQUAL,
    NO_WALL,
    enumerate_destabilizers,
    numerical_wall,
    vertical_wall,
)

# argparse already accepts "-3" and "-0.5" as values, but not "-1/2", "-inf"
# or a character triple such as "-10,5,1/2"
_NEG_VALUE = re.compile(r"^-(inf|\d+/\d+|\d[\d/,\s-]*,[\d/,\s-]*)$")
_MINUS = "\u2212"


def _protect_negative_values(argv: list[str]) -> list[str]:
    """Spell a leading minus as U+2212 so argparse does not take ``-1/2`` for a flag."""
    return [_MINUS + tok[1:] if _NEG_VALUE.match(tok) else tok for tok in argv]


def _rational(text: str):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _char_triple(text: str):
    parts = [p for p in re.split(r"[,\s]+", text.strip("()[] ")) if p]
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("expected c0,c1,c2")
    return tuple(_rational(p) for p in parts)


def _character(args, triple=None) -> ReducedCharacter:
    variety = scan_mod.parse_variety(args.variety)
    c0, c1, c2 = triple if triple is not None else (args.c0, args.c1, args.c2)
    return ReducedCharacter(scan_mod.variety_dim(variety), QUINTIC_DEGREE, c0, c1, c2)


def _emit(data, args):
    print(json.dumps(data, indent=2))


def _add_char_args(p, variety_default="quintic3"):
    p.add_argument("--variety", default=variety_default,
                   help="quintic2 (surface) or quintic3 (threefold)")
    p.add_argument("--c0", type=_rational, required=True, help="H^n ch0")
    p.add_argument("--c1", type=_rational, required=True, help="H^(n-1) ch1")
    p.add_argument("--c2", type=_rational, required=True, help="H^(n-2) ch2")


def cmd_eval_bound(args) -> int:
    rows = []
    for x in args.x:
        if args.profile == "h":
            y = clifford.h_quintic()(x)
        else:
            prof = bounds.profile_by_name(args.profile)
            y = prof(abs(x) if prof.absolute else x)
        row = {"x": fmt(x), "y": fmt(y)}
        if args.decimal:
            row["y_decimal"] = to_decimal(y)
        rows.append(row)
    _emit({"profile": args.profile, "values": rows}, args)
    return 0


def cmd_check_character(args) -> int:
    c = _character(args)
    variety = scan_mod.parse_variety(args.variety)
    name = args.profile or (bounds.SURFACE if variety == scan_mod.QUINTIC_SURFACE else bounds.THREEFOLD)
    res = bounds.check_character(c, bounds.profile_by_name(name))
    data = {"character": c.to_json(), "profile": name, **res.to_json()}
    if not args.decimal:
        data.pop("margin_decimal")
    _emit(data, args)
    return 0 if res.satisfies else 1


def cmd_walls(args) -> int:
    c = _character(args)
    data = {"character": c.to_json()}
    if c.c0 != 0:
        data["mu"] = fmt(mu(c))
        data["xi"] = fmt(xi(c))
        data["vertical_wall"] = fmt(vertical_wall(c))
    if args.other is not None:
        other = _character(args, args.other)
        w = numerical_wall(c, other)
        if w is EVERYWHERE_EQUAL:
            data["wall"] = "everywhere-equal"
        elif w is NO_WALL:
            data["wall"] = "no-wall"
        else:
            data["wall"] = w.to_json()
            if args.destabilizers:
                p = w.test_point()
                found = enumerate_destabilizers(c, w, args.box, args.c2_denominator)
                data["test_point"] = {"beta": fmt(p.beta), "alpha": fmt(p.alpha)}
                data["destabilizers"] = [f.to_json() for f in found]
    _emit(data, args)
    return 0


def cmd_roof(args) -> int:
    h = clifford.h_quintic()
    a = None if args.a.replace(_MINUS, "-") == "-inf" else _rational(args.a)
    roof = clifford.concave_roof(h, a, args.b)
    data = {"a": "-inf" if a is None else fmt(a), "b": fmt(args.b), "roof": roof.to_json()}
    if args.x:
        vals = []
        for x in args.x:
            row = {"x": fmt(x), "roof": fmt(roof(x)), "h": fmt(h(x))}
            if args.decimal:
                row["roof_decimal"] = to_decimal(roof(x))
            vals.append(row)
        data["values"] = vals
    _emit(data, args)
    return 0


def cmd_star_shaped(args) -> int:
    ok = bounds.star_shaped(bounds.profile_by_name(args.profile), args.d)
    _emit({"profile": args.profile, "d": fmt(args.d), "star_shaped": ok}, args)
    return 0


def cmd_restrict(args) -> int:
    c = _character(args)
    window = cert_mod.restriction_interval(c, args.m)
    data = {
        "character": c.to_json(),
        "interval": window.to_json(),
        "restricted": cert_mod.restricted_character(c, args.m).to_json(),
    }
    if args.decimal:
        data["interval"]["lower_decimal"] = to_decimal(window.lower)
        data["interval"]["upper_decimal"] = to_decimal(window.upper)
    _emit(data, args)
    return 0


def cmd_certify(args) -> int:
    variety = scan_mod.parse_variety(args.variety)
    if variety == scan_mod.QUINTIC_SURFACE:
        c = cert_mod.certify_surface(args.mu, args.xi, case=args.case)
    else:
        c = cert_mod.certify_threefold(args.mu, args.xi)
    _emit(c.to_json(decimal=args.decimal), args)
    return 0


def cmd_toda(args) -> int:
    c = ReducedCharacter(3, QUINTIC_DEGREE, args.c0, args.c1, args.c2)
    report = bounds.toda_check(c)
    data = {"character": c.to_json(), **report.to_json()}
    if not args.decimal:
        data.pop("lhs_delta_decimal")
        data.pop("lhs_xi_decimal")
    _emit(data, args)
    return 0 if report.passes else 1


def cmd_scan(args) -> int:
    overrides = {
        "variety": args.variety,
        "rank_max": args.rank_max,
        "c1_range": tuple(args.c1_range) if args.c1_range else None,
        "c2_denominator": args.c2_denominator,
        "xi_bound": args.xi_bound,
        "profile": args.profile,
        "output": args.output,
        "format": args.format,
        "workers": args.workers,
    }
    if args.config:
        config = scan_mod.ScanConfig.from_file(args.config, **overrides)
    else:
        config = scan_mod.ScanConfig(**{k: v for k, v in overrides.items() if v is not None})
    text = scan_mod.run_scan(config)
    if not config.output:
        sys.stdout.write(text)
    return 0


def cmd_plot_data(args) -> int:
    rows = scan_mod.plot_data(args.profiles, args.step)
    text = scan_mod.plot_rows_to_csv(rows)
    if args.output:
        with open(args.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quinticbg",
        description="Exact tilt-stability and Bogomolov-Gieseker bound tools for quintic surfaces and threefolds.",
    )
    parser.add_argument("--decimal", action="store_true", help="add 6-place decimal renderings")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--decimal", action="store_true", default=argparse.SUPPRESS,
                       help="add 6-place decimal renderings")
        p.set_defaults(func=func)
        return p

    p = add("eval-bound", cmd_eval_bound, "evaluate a bound profile or h")
    p.add_argument("--profile", required=True, choices=list(bounds.PROFILE_NAMES) + ["h"])
    p.add_argument("--x", type=_rational, nargs="+", required=True)

    p = add("check-character", cmd_check_character, "test a character against a bound profile")
    _add_char_args(p)
    p.add_argument("--profile", choices=bounds.PROFILE_NAMES)

    p = add("walls", cmd_walls, "vertical and numerical walls of a character")
    _add_char_args(p)
    p.add_argument("--other", type=_char_triple, help="second character as c0,c1,c2")
    p.add_argument("--destabilizers", action="store_true", help="enumerate lattice destabilizers along the wall")
    p.add_argument("--box", type=int, default=3)
    p.add_argument("--c2-denominator", type=int, default=2)

    p = add("roof", cmd_roof, "concave roof of h on [a, b]")
    p.add_argument("--a", required=True, help="left end, or -inf")
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--x", type=_rational, nargs="*")

    p = add("star-shaped", cmd_star_shaped, "star-shapedness of a profile along beta = d")
    p.add_argument("--profile", required=True, choices=[bounds.SURFACE, bounds.THREEFOLD, bounds.PRIOR])
    p.add_argument("--d", type=_rational, required=True)

    p = add("restrict", cmd_restrict, "restriction slope window and restricted character")
    _add_char_args(p)
    p.add_argument("--m", type=int, default=1)

    p = add("certify", cmd_certify, "replay a bound's contradiction argument at (mu, xi)")
    p.add_argument("--variety", default="quintic3")
    p.add_argument("--mu", type=_rational, required=True)
    p.add_argument("--xi", type=_rational, required=True)
    p.add_argument("--case", choices=[cert_mod.SURFACE_MAIN, cert_mod.SURFACE_SMALL_SLOPE])

    p = add("toda", cmd_toda, "check Toda's inequalities for a threefold character with mu = -1/2")
    p.add_argument("--c0", type=_rational, required=True)
    p.add_argument("--c1", type=_rational, required=True)
    p.add_argument("--c2", type=_rational, required=True)

    p = add("scan", cmd_scan, "classify a lattice of characters")
    p.add_argument("--config", help="key=value file mirroring the scan options")
    p.add_argument("--variety")
    p.add_argument("--rank-max", type=int)
    p.add_argument("--c1-range", type=int, nargs=2, metavar=("LO", "HI"))
    p.add_argument("--c2-denominator", type=int)
    p.add_argument("--xi-bound", type=_rational)
    p.add_argument("--profile", choices=bounds.PROFILE_NAMES)
    p.add_argument("--output")
    p.add_argument("--format", choices=["csv", "json"])
    p.add_argument("--workers", type=int)

    p = add("plot-data", cmd_plot_data, "emit (x, f(x)) series for plotting")
    p.add_argument("--profiles", nargs="+", default=list(scan_mod.PLOT_PROFILES),
                   choices=scan_mod.PLOT_PROFILES)
    p.add_argument("--step", type=_rational, default=Q("1/20"))
    p.add_argument("--output")
    return parser


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_protect_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, ArithmeticError) as exc:
        print(f"quinticbg {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main():
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
