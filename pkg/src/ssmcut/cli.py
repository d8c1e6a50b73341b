"""Command-line entry point.

Exit codes: 0 all checks pass, 1 verification failure, 2 input or parse
error, 3 resource limit exceeded.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .cells import Box, NestednessViolation, NotMonotonePath, NotSSM, enumerate_cells, northeast_sweep
from .certify import verify_growth_bounds, verify_theorem_main
from .construction import DEFAULT_MAX_N, LimitExceeded, _tables, build_family
from .core import NetworkError
from .formats import (
    ParseError,
    parse_box,
    parse_cells,
    parse_certificates,
    parse_network,
    parse_path,
    parse_point,
    serialize_cells,
    serialize_certificates,
    serialize_network,
    serialize_report,
    serialize_sweep,
)
from .maxflow import BRUTE_FORCE_LIMIT, NegativeCapacity, brute_force_min_cuts, max_flow
from .svg import Viewport, family_zoom_windows, render_svg

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _emit(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _read(path: str) -> str:
    return sys.stdin.read() if path == "-" else Path(path).read_text()


def cmd_build(args) -> int:
    net, _, certs = build_family(args.n, max_n=args.max_n)
    _emit(serialize_network(net), args.output)
    if args.certs:
        Path(args.certs).write_text(serialize_certificates(args.n, certs))
    return EXIT_OK


def cmd_verify(args) -> int:
    reports = [verify_theorem_main(args.n, max_n=args.max_n)]
    bounds_to = args.bounds_up_to if args.bounds_up_to is not None else max(3, args.n)
    reports.append(verify_growth_bounds(bounds_to, extra=args.extra))
    for r in reports:
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.kind} n={r.n}: {r.checks_run} checks, {len(r.failures)} failures, "
              f"{len(r.inconclusive)} inconclusive, {r.elapsed:.2f}s")
        for f in r.failures[:20]:
            print(f"  {f}")
    if args.report:
        Path(args.report).write_text("".join(serialize_report(r) for r in reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def cmd_cells(args) -> int:
    net = parse_network(_read(args.input))
    box = parse_box(args.box)
    d = enumerate_cells(net, box, limit=args.limit)
    _emit(serialize_cells(d), args.output)
    print(f"{len(d.cells)} cells with interior, {len(d.degenerate)} degenerate", file=sys.stderr)
    return EXIT_OK


def cmd_sweep(args) -> int:
    net = parse_network(_read(args.input))
    result = northeast_sweep(net, parse_path(args.path))
    _emit(serialize_sweep(net, result), args.output)
    return EXIT_OK


def cmd_render(args) -> int:
    d = parse_cells(_read(args.input))
    certs = parse_certificates(Path(args.certs).read_text())[1] if args.certs else None
    zooms = [parse_box(z) for group in args.zoom or () for z in group]
    if args.family_boxes:
        zooms += family_zoom_windows(_tables(d.n), d.n, args.family_boxes)
    window = parse_box(args.window) if args.window else d.domain
    svg = render_svg(d, certs, Viewport(window, args.size, zooms))
    if args.output in (None, "-"):
        sys.stdout.buffer.write(svg)
    else:
        Path(args.output).write_bytes(svg)
    return EXIT_OK


def cmd_solve(args) -> int:
    net = parse_network(_read(args.input))
    p = parse_point(args.at)
    res = max_flow(net, p)
    print(f"point {p.lam},{p.mu}")
    print(f"value {res.value}")
    print(f"min_cut_minimal {res.min_cut_minimal.mask} {res.min_cut_minimal}")
    print(f"min_cut_maximal {res.min_cut_maximal.mask} {res.min_cut_maximal}")
    print(f"unique {'yes' if res.unique else 'no'}")
    if net.n <= BRUTE_FORCE_LIMIT:
        print("brute_force " + " ".join(str(S.mask) for S in brute_force_min_cuts(net, p)))
    for (tail, head), f in res.flow.items():
        print(f"flow {tail} {head} {f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ssmcut", description="Two-parameter source-sink monotone min-cut toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit the level-n family network and its certificates")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-o", "--output")
    p.add_argument("--certs")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("verify", help="check every certificate and the growth bounds")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("--bounds-up-to", type=int)
    p.add_argument("--report")
    p.add_argument("--extra", action="store_true", help="also run the intermediate summation bounds")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cells", help="enumerate min-cut cells over a box")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--box", default="0,0,1,1")
    p.add_argument("-o", "--output")
    p.add_argument("--limit", type=int, default=12)
    p.set_defaults(func=cmd_cells)

    p = sub.add_parser("sweep", help="follow a northeast path and report the min cuts met")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--path", required=True, help='points "lam,mu;lam,mu;..."')
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("render", help="draw a cell file as SVG")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--certs")
    p.add_argument("--window")
    p.add_argument("--zoom", nargs="+", action="append", metavar="l,b,r,t")
    p.add_argument("--family-boxes", type=int, default=0, metavar="DEPTH",
                   help="add the construction boxes of the family as zoom panels")
    p.add_argument("--size", type=int, default=480)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("solve", help="max flow and min cuts at one point")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--at", required=True, help="lam,mu")
    p.set_defaults(func=cmd_solve)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except LimitExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except NestednessViolation as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ParseError, NetworkError, NegativeCapacity, NotMonotonePath, NotSSM, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
