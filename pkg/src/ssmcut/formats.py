"""Plain-text file formats.  Every persisted number is an exact ``p/q`` or integer.

Network::

    paramnet 2
    s 1 4 4 0
    2 1 0 0 0
    1 t 0 0 4

Certificates: ``certificates <n> <count>`` then per cut a ``cert <mask> <lam> <mu>``
line followed by ``<tail> <head> <flow>`` lines.

Cells: ``cells <n>``, ``box <l> <b> <r> <t>``, then per cut ``cell <mask> <k>``
followed by k vertex lines ``<lam> <mu>`` in counterclockwise order.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .cells import Box, CellDiagram, ConvexPolygon, SweepResult
from .certify import VerificationReport
from .construction import Certificate
from .core import SINK, SOURCE, AffineExpr, Arc, CutSet, DuplicateArc, NetworkError, ParamNetwork, ParamPoint

_RATIONAL = re.compile(r"[+-]?\d+(/\d+)?\Z")


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        where = f"line {line}" + (f", column {column}" if column else "") if line else ""
        super().__init__(f"{where}: {message}" if where else message)
        self.line = line
        self.column = column


def _tokens(text: str):
    """Yield (line number, [(column, token), ...]) for non-blank, non-comment lines."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = [(m.start() + 1, m.group()) for m in re.finditer(r"\S+", line)]
        if toks:
            yield lineno, toks


def parse_rational(token: str, line=None, column=None) -> Fraction:
    if not _RATIONAL.match(token):
        raise ParseError(f"expected an integer or p/q rational, got {token!r}", line, column)
    try:
        return Fraction(token)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {token!r}", line, column) from None


def _int(tok, lineno) -> int:
    col, text = tok
    if not text.isdigit():
        raise ParseError(f"expected a non-negative integer, got {text!r}", lineno, col)
    return int(text)


def parse_node(token: str, n: int, line=None, column=None):
    if token in (SOURCE, SINK):
        return token
    if token.isdigit() and 1 <= int(token) <= n:
        return int(token)
    raise ParseError(f"unknown node {token!r} (expected s, t or 1..{n})", line, column)


def _expect(toks, count, lineno, what):
    if len(toks) != count:
        raise ParseError(f"{what} needs {count} fields, got {len(toks)}", lineno, toks[0][0])


def parse_network(text: str) -> ParamNetwork:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty document")
    lineno, head = lines[0]
    if head[0][1] != "paramnet":
        raise ParseError(f"expected 'paramnet <n>' header, got {head[0][1]!r}", lineno, head[0][0])
    _expect(head, 2, lineno, "header")
    if not head[1][1].isdigit():
        raise ParseError(f"bad node count {head[1][1]!r}", lineno, head[1][0])
    n = int(head[1][1])
    arcs, seen = [], set()
    for lineno, toks in lines[1:]:
        _expect(toks, 5, lineno, "arc line")
        tail = parse_node(toks[0][1], n, lineno, toks[0][0])
        headnode = parse_node(toks[1][1], n, lineno, toks[1][0])
        a, b, c = (parse_rational(tok, lineno, col) for col, tok in toks[2:])
        if (tail, headnode) in seen:
            raise DuplicateArc(f"line {lineno}: duplicate arc {tail}->{headnode}")
        seen.add((tail, headnode))
        arcs.append(Arc(tail, headnode, AffineExpr(a, b, c)))
    try:
        return ParamNetwork(n, tuple(arcs))
    except DuplicateArc:
        raise
    except NetworkError as exc:
        raise ParseError(str(exc)) from exc


def serialize_network(net: ParamNetwork) -> str:
    out = [f"paramnet {net.n}"]
    for arc in net.arcs:
        e = arc.capacity
        out.append(f"{arc.tail} {arc.head} {e.a} {e.b} {e.c}")
    return "\n".join(out) + "\n"


def serialize_certificates(n: int, certs) -> str:
    out = [f"certificates {n} {len(certs)}"]
    for cert in certs:
        out.append(f"cert {cert.cut.mask} {cert.point.lam} {cert.point.mu}")
        for (tail, head), f in cert.flow.items():
            out.append(f"{tail} {head} {f}")
    return "\n".join(out) + "\n"


def parse_certificates(text: str) -> tuple:
    """Return ``(n, certificates)``."""
    lines = list(_tokens(text))
    if not lines or lines[0][1][0][1] != "certificates":
        raise ParseError("expected 'certificates <n> <count>' header", lines[0][0] if lines else None)
    lineno, head = lines[0]
    _expect(head, 3, lineno, "header")
    n, count = _int(head[1], lineno), _int(head[2], lineno)
    certs, current = [], None
    for lineno, toks in lines[1:]:
        if toks[0][1] == "cert":
            _expect(toks, 4, lineno, "cert line")
            if current:
                certs.append(Certificate(*current))
            mask = _int(toks[1], lineno)
            lam, mu = (parse_rational(tok, lineno, col) for col, tok in toks[2:])
            current = (CutSet(mask), ParamPoint(lam, mu), {})
        else:
            if current is None:
                raise ParseError("flow line before any cert record", lineno, toks[0][0])
            _expect(toks, 3, lineno, "flow line")
            tail = parse_node(toks[0][1], n, lineno, toks[0][0])
            headnode = parse_node(toks[1][1], n, lineno, toks[1][0])
            current[2][(tail, headnode)] = parse_rational(toks[2][1], lineno, toks[2][0])
    if current:
        certs.append(Certificate(*current))
    if len(certs) != count:
        raise ParseError(f"header promises {count} certificates, found {len(certs)}")
    return n, certs


def serialize_cells(d: CellDiagram) -> str:
    out = [f"cells {d.n}", "box " + " ".join(str(v) for v in d.domain.as_tuple())]
    for S in sorted(d.cells):
        poly = d.cells[S]
        out.append(f"cell {S.mask} {len(poly.vertices)}")
        out.extend(f"{v.lam} {v.mu}" for v in poly.vertices)
    return "\n".join(out) + "\n"


def parse_cells(text: str) -> CellDiagram:
    lines = list(_tokens(text))
    if len(lines) < 2 or lines[0][1][0][1] != "cells" or lines[1][1][0][1] != "box":
        raise ParseError("expected 'cells <n>' and 'box l b r t' header lines")
    _expect(lines[0][1], 2, lines[0][0], "header")
    _expect(lines[1][1], 5, lines[1][0], "box line")
    n = _int(lines[0][1][1], lines[0][0])
    box = Box.of(*(parse_rational(tok, lines[1][0], col) for col, tok in lines[1][1][1:]))
    d = CellDiagram(box, n)
    rest = lines[2:]
    i = 0
    while i < len(rest):
        lineno, toks = rest[i]
        if toks[0][1] != "cell":
            raise ParseError(f"expected 'cell <mask> <k>', got {toks[0][1]!r}", lineno, toks[0][0])
        _expect(toks, 3, lineno, "cell line")
        mask, k = _int(toks[1], lineno), _int(toks[2], lineno)
        if i + 1 + k > len(rest):
            raise ParseError(f"cell {mask} promises {k} vertices", lineno)
        vertices = []
        for vl, vt in rest[i + 1 : i + 1 + k]:
            _expect(vt, 2, vl, "vertex line")
            vertices.append(ParamPoint(*(parse_rational(tok, vl, col) for col, tok in vt)))
        d.cells[CutSet(mask)] = ConvexPolygon.from_vertices(vertices)
        i += k + 1
    return d


def parse_point(spec: str) -> ParamPoint:
    """``"lam,mu"`` with integers, ``p/q`` rationals or exact decimals."""
    parts = spec.split(",")
    if len(parts) != 2:
        raise ParseError(f"expected 'lam,mu', got {spec!r}")
    try:
        return ParamPoint(*(Fraction(x.strip()) for x in parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad point {spec!r}") from exc


def parse_path(spec: str) -> list:
    return [parse_point(chunk) for chunk in spec.split(";") if chunk.strip()]


def parse_box(spec: str) -> Box:
    parts = spec.split(",")
    if len(parts) != 4:
        raise ParseError(f"expected 'l,b,r,t', got {spec!r}")
    try:
        return Box.of(*(Fraction(x.strip()) for x in parts))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad box {spec!r}: {exc}") from exc


def serialize_sweep(net: ParamNetwork, result: SweepResult) -> str:
    out = [f"sweep {net.n} {len(result.segments)}"]
    out.append("path " + ";".join(f"{p.lam},{p.mu}" for p in result.path))
    for seg in result.segments:
        out.append(f"segment {seg.start} {seg.end} {seg.cut.mask}")
    out.append(f"distinct {result.distinct_cuts}")
    return "\n".join(out) + "\n"


def serialize_report(report: VerificationReport) -> str:
    out = [
        f"report {report.kind} {report.n}",
        f"checks_run {report.checks_run}",
        f"failures {len(report.failures)}",
        f"inconclusive {len(report.inconclusive)}",
        f"elapsed {report.elapsed:.3f}",
    ]
    out.extend(f"failure {f.check} {f.subject.replace(' ', '')} {f.detail}".rstrip() for f in report.failures)
    out.extend(f"inconclusive {f.check} {f.subject} {f.detail}".rstrip() for f in report.inconclusive)
    out.append("status " + ("pass" if report.passed else "fail"))
    return "\n".join(out) + "\n"
