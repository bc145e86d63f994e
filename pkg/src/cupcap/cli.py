"""Command-line front end: analyze, generate, check, bounds, transform, plot."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import svg
from .bounds import cap_or_ngon_bound, es_upper, f_bound, g_bound, report, table
from .chains import Kind, is_free, largest_convex_subset, longest_chain
from .checks import run_checks, SUITES
from .convexify import certificate_to_dict, describe, find_certificate
from .errors import CupCapError, ParseError, UnknownOverlay, ValidationError
from .gen import GenSpec, generate
from .geometry import PointSet, format_points, parse_points, validate
from .partition import ul_partition
from .pipeline import find_ngon
from .transform import build_map, choose_transform

SCHEMA_VERSION = 1
DEFAULT_SEED = 20240601
OVERLAYS = ("none", "longest-cup", "longest-cap", "largest-convex", "ngon")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("cupcap")


def _pts(points) -> list[list[str]]:
    return [[str(p.x), str(p.y)] for p in points]


def _read(path: str) -> PointSet:
    if path == "-":
        text = sys.stdin.read()
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    return validate(parse_points(text))


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


# -- analyze ------------------------------------------------------------------------


def analyze(S: PointSet, n: int = 6, m: int | None = None, l: int | None = None, certificates: bool = False) -> dict:
    """Structured report on a point set; every value is JSON-ready."""
    out: dict = {"schema_version": SCHEMA_VERSION, "size": len(S)}
    for kind in (Kind.CUP, Kind.CAP):
        ch = longest_chain(S, kind)
        key = f"longest_{kind.value}"
        out[key] = {"length": 0, "points": []} if ch.degenerate else {"length": len(ch), "points": _pts(ch)}
    if len(S) >= 3:
        poly = largest_convex_subset(S)
        out["largest_convex"] = {"size": len(poly), "points": _pts(poly)}
    else:
        out["largest_convex"] = {"size": len(S), "points": _pts(S)}
    if len(S) >= 2:
        part = ul_partition(S)
        out["partition"] = {"upper": len(part.upper), "lower": len(part.lower)}
    else:
        out["partition"] = {"upper": len(S), "lower": 0}
    out["bounds"] = {
        "n": n,
        "es_upper": es_upper(n),
        "cap_or_ngon": cap_or_ngon_bound(n),
        "es_lower": 2 ** (n - 2) + 1,
        "meets_es_upper": len(S) >= es_upper(n),
    }
    if len(S) >= es_upper(n):
        res = find_ngon(S, n)
        out["ngon"] = {
            "points": _pts(res.polygon),
            "via": res.via,
            "branch": res.trace.branch,
            "pivot": [str(res.s.x), str(res.s.y)],
        }
        if certificates:
            out["certificates"] = [certificate_to_dict(c) for c in res.trace.certificates]
    if m is not None and l is not None:
        entry: dict = {"m": m, "l": l, "free": is_free(S, m, l), "f": f_bound(m, l)}
        if m >= 4 and l >= 4:
            entry["g"] = g_bound(m, l)
            if entry["free"] and len(S) > entry["g"]:
                cert = find_certificate(S, m, l, check_free=False)
                entry["s"] = [str(cert.s.x), str(cert.s.y)]
                if certificates:
                    entry["certificate"] = certificate_to_dict(cert)
                    entry["certificate_text"] = describe(cert)
        out["free_check"] = entry
    return out


def _analyze_text(rep: dict) -> str:
    def chain_line(name, d):
        if not d["length"]:
            return f"{name}: none"
        pts = " ".join(f"({x} {y})" for x, y in d["points"])
        return f"{name}: {d['length']}  {pts}"

    lines = [
        f"points: {rep['size']}",
        chain_line("longest cup", rep["longest_cup"]),
        chain_line("longest cap", rep["longest_cap"]),
        f"largest convex subset: {rep['largest_convex']['size']}  "
        + " ".join(f"({x} {y})" for x, y in rep["largest_convex"]["points"]),
        f"partition: upper {rep['partition']['upper']}, lower {rep['partition']['lower']}",
    ]
    b = rep["bounds"]
    lines.append(
        f"bounds for n={b['n']}: es_lower {b['es_lower']}, cap-or-ngon {b['cap_or_ngon']}, es_upper {b['es_upper']}"
    )
    if "ngon" in rep:
        ng = rep["ngon"]
        lines.append(
            f"convex {b['n']}-gon (via {ng['via']}, branch {ng['branch']}): "
            + " ".join(f"({x} {y})" for x, y in ng["points"])
        )
    else:
        lines.append(f"convex {b['n']}-gon: not guaranteed below {b['es_upper']} points")
    fc = rep.get("free_check")
    if fc:
        lines.append(f"({fc['m']},{fc['l']})-free: {fc['free']}")
        if "s" in fc:
            lines.append(f"convexifying point: ({fc['s'][0]} {fc['s'][1]})")
        if "certificate_text" in fc:
            lines.append(fc["certificate_text"])
    return "\n".join(lines) + "\n"


def cmd_analyze(args) -> int:
    S = _read(args.input)
    rep = analyze(S, n=args.n, m=args.m, l=args.l, certificates=args.certificates)
    if args.format == "json":
        _write(args.output, json.dumps(rep, indent=2) + "\n")
    else:
        _write(args.output, _analyze_text(rep))
    return EXIT_OK


# -- other commands ---------------------------------------------------------------------


def cmd_generate(args) -> int:
    if args.kind == "free":
        spec = GenSpec("free", m=args.m, l=args.l)
        header = f"({args.m},{args.l})-free set"
    elif args.kind == "no-ngon":
        spec = GenSpec("no-ngon", n=args.n)
        header = f"no convex {args.n}-gon"
    else:
        spec = GenSpec("random", count=args.count, coord_bound=args.coord_bound, seed=args.seed)
        header = f"random set: count={args.count} coord_bound={args.coord_bound} seed={args.seed}"
    S = generate(spec)
    _write(args.output, format_points(S, header=f"{header}, {len(S)} points"))
    return EXIT_OK


def cmd_check(args) -> int:
    if args.trials == 0:
        print("warning: trials=0, every suite passes vacuously", file=sys.stderr)
    results = run_checks(args.trials, args.seed, args.suite or None)
    lines = [f"seed={args.seed} trials={args.trials}"]
    for r in results:
        lines.append(r.line())
        lines.extend(f"    {note}" for note in r.notes[:5])
    _write(args.output, "\n".join(lines) + "\n")
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def cmd_bounds(args) -> int:
    if args.format == "json":
        rows = [report(n).to_dict() for n in range(args.n_min, args.n_max + 1)]
        _write(args.output, json.dumps({"schema_version": SCHEMA_VERSION, "rows": rows}, indent=2) + "\n")
    else:
        _write(args.output, table(args.n_max, args.n_min))
    return EXIT_OK


def cmd_transform(args) -> int:
    S = _read(args.input)
    setup = choose_transform(S)
    pm = build_map(setup)
    image = [pm(p) for p in S]
    if args.format == "json":
        rep = {
            "schema_version": SCHEMA_VERSION,
            "s": [str(setup.s.x), str(setup.s.y)],
            "s_prime": [str(setup.s_prime.x), str(setup.s_prime.y)],
            "line": [str(v) for v in setup.line],
            "matrix": [[str(v) for v in row] for row in pm.matrix],
            "image": _pts(image),
        }
        _write(args.output, json.dumps(rep, indent=2) + "\n")
    else:
        a, b, c = setup.line
        header = f"image of {len(S)} points; s = ({setup.s}), s' = ({setup.s_prime}), line {a}x + {b}y + {c} = 0"
        _write(args.output, format_points(image, header=header))
    return EXIT_OK


def overlay_points(S: PointSet, overlay: str, n: int):
    """(points, closed) for an overlay name."""
    if overlay == "none":
        return (), False
    if overlay in ("longest-cup", "longest-cap"):
        ch = longest_chain(S, Kind.CUP if overlay == "longest-cup" else Kind.CAP)
        return (() if ch.degenerate else ch.points), False
    if overlay == "largest-convex":
        return largest_convex_subset(S).points, True
    if overlay == "ngon":
        return find_ngon(S, n).polygon.points, True
    raise UnknownOverlay(f"unknown overlay {overlay!r}; choose from {', '.join(OVERLAYS)}")


def cmd_plot(args) -> int:
    S = _read(args.input)
    pts, closed = overlay_points(S, args.overlay, args.n)
    _write(args.output, svg.render(S, pts, closed=closed, title=args.overlay))
    return EXIT_OK


# -- entry point ----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    prs = argparse.ArgumentParser(prog="cupcap", description="Exact cups, caps and convex polygons in planar point sets.")
    prs.add_argument("-v", "--verbose", action="store_true")
    sub = prs.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="report chains, partition and witnesses for a point file")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--m", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--certificates", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("generate", help="write a generated point set")
    p.add_argument("--kind", choices=("free", "no-ngon", "random"), default="random")
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--l", type=int, default=4)
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--count", type=int, default=33)
    p.add_argument("--coord-bound", type=int, default=10**6)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--output")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("check", help="run the randomized property suites")
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--suite", action="append", choices=list(SUITES))
    p.add_argument("--output")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("bounds", help="print the bounds table")
    p.add_argument("--n-max", type=int, default=12)
    p.add_argument("--n-min", type=int, default=6)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("transform", help="apply the cap-to-polygon projective map")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("plot", help="write an SVG of a point file")
    p.add_argument("--input", required=True)
    p.add_argument("--output")
    p.add_argument("--overlay", default="none")
    p.add_argument("--n", type=int, default=6)
    p.set_defaults(func=cmd_plot)
    return prs


def main(argv=None) -> int:
    prs = build_parser()
    args = prs.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ParseError, ValidationError, UnknownOverlay, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CupCapError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
