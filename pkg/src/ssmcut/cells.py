"""Exact min-cut cells in the (lam, mu) plane and monotone path sweeps.

A cell is the closed region of a box where a given cut's affine capacity is
no larger than every other cut's.  Cells are computed by clipping the box
against one half-plane per competing cut (Sutherland-Hodgman on Fractions),
so the work is O(4^n) half-plane clips.  Nothing here touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .construction import LimitExceeded
from .core import (
    AffineExpr,
    CutSet,
    ParamNetwork,
    ParamPoint,
    SsmClass,
    all_cut_capacities,
    validate_ssm,
)
from .maxflow import BRUTE_FORCE_LIMIT

CELL_LIMIT = 12

INTERIOR = "interior"
BOUNDARY = "boundary"
OUTSIDE = "outside"


class NotMonotonePath(ValueError):
    pass


class NotSSM(ValueError):
    pass


class NestednessViolation(RuntimeError):
    pass


class DiagramInconsistent(RuntimeError):
    pass


@dataclass(frozen=True)
class Box:
    lo: ParamPoint
    hi: ParamPoint

    def __post_init__(self):
        if not (self.lo.lam < self.hi.lam and self.lo.mu < self.hi.mu):
            raise ValueError("box needs positive width and height")

    @classmethod
    def of(cls, l, b, r, t) -> "Box":
        return cls(ParamPoint(l, b), ParamPoint(r, t))

    @classmethod
    def unit(cls) -> "Box":
        return cls.of(0, 0, 1, 1)

    def as_tuple(self) -> tuple:
        return (self.lo.lam, self.lo.mu, self.hi.lam, self.hi.mu)

    def corners(self) -> list:
        l, b, r, t = self.as_tuple()
        return [ParamPoint(l, b), ParamPoint(r, b), ParamPoint(r, t), ParamPoint(l, t)]

    def constraints(self) -> list:
        l, b, r, t = self.as_tuple()
        return [AffineExpr(0, -1, b), AffineExpr(1, 0, -r), AffineExpr(0, 1, -t), AffineExpr(-1, 0, l)]

    def polygon(self) -> "ConvexPolygon":
        return ConvexPolygon(tuple(self.corners()), tuple(self.constraints()))

    def area(self) -> Fraction:
        l, b, r, t = self.as_tuple()
        return (r - l) * (t - b)


def _clip(vertices: list, e: AffineExpr) -> list:
    """Keep the part of a convex polygon where ``e <= 0``."""
    if not vertices:
        return []
    vals = [e(v) for v in vertices]
    if all(v <= 0 for v in vals):
        return vertices
    if all(v > 0 for v in vals):
        return []
    out = []
    m = len(vertices)
    for i in range(m):
        p, q = vertices[i], vertices[(i + 1) % m]
        vp, vq = vals[i], vals[(i + 1) % m]
        if vp <= 0:
            out.append(p)
        if (vp < 0 < vq) or (vq < 0 < vp):
            s = vp / (vp - vq)
            out.append(ParamPoint(p.lam + s * (q.lam - p.lam), p.mu + s * (q.mu - p.mu)))
    return _dedupe(out)


def _dedupe(vertices: list) -> list:
    out = []
    for v in vertices:
        if not out or out[-1] != v:
            out.append(v)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    return out


def _cross(o: ParamPoint, a: ParamPoint, b: ParamPoint) -> Fraction:
    return (a.lam - o.lam) * (b.mu - o.mu) - (a.mu - o.mu) * (b.lam - o.lam)


def _drop_collinear(vertices: list) -> list:
    if len(vertices) < 3:
        return vertices
    out = vertices
    changed = True
    while changed and len(out) >= 3:
        changed = False
        m = len(out)
        for i in range(m):
            if _cross(out[i - 1], out[i], out[(i + 1) % m]) == 0:
                out = out[:i] + out[i + 1 :]
                changed = True
                break
    return out


@dataclass(frozen=True)
class ConvexPolygon:
    """Counterclockwise vertices plus the half-planes ``e(p) <= 0`` that cut it out."""

    vertices: tuple = ()
    constraints: tuple = ()

    @classmethod
    def from_vertices(cls, vertices) -> "ConvexPolygon":
        """Rebuild the edge constraints of a counterclockwise polygon."""
        vs = tuple(vertices)
        cons = []
        if len(vs) >= 3:
            for i, p in enumerate(vs):
                q = vs[(i + 1) % len(vs)]
                # left of p->q is inside: cross(q - p, x - p) >= 0
                a = q.mu - p.mu
                b = -(q.lam - p.lam)
                cons.append(AffineExpr(a, b, -(a * p.lam + b * p.mu)))
        return cls(vs, tuple(cons))

    def __len__(self):
        return len(self.vertices)

    @property
    def empty(self) -> bool:
        return not self.vertices

    def area(self) -> Fraction:
        vs = self.vertices
        twice = sum(
            (vs[i].lam * vs[(i + 1) % len(vs)].mu - vs[(i + 1) % len(vs)].lam * vs[i].mu for i in range(len(vs))),
            Fraction(0),
        )
        return twice / 2

    def has_interior(self) -> bool:
        return len(self.vertices) >= 3 and self.area() > 0

    def centroid(self) -> ParamPoint:
        """Vertex average: strictly interior whenever the polygon has interior."""
        k = len(self.vertices)
        return ParamPoint(sum(v.lam for v in self.vertices) / k, sum(v.mu for v in self.vertices) / k)

    def classify(self, p: ParamPoint) -> str:
        if not self.has_interior():
            return BOUNDARY if self.vertices and self._on_degenerate(p) else OUTSIDE
        vals = [e(p) for e in self.constraints]
        if any(v > 0 for v in vals):
            return OUTSIDE
        if all(v < 0 for v in vals):
            return INTERIOR
        return BOUNDARY

    def _on_degenerate(self, p: ParamPoint) -> bool:
        vs = self.vertices
        if len(vs) == 1:
            return p == vs[0]
        a, b = vs[0], vs[1]
        if _cross(a, b, p) != 0:
            return False
        return min(a.lam, b.lam) <= p.lam <= max(a.lam, b.lam) and min(a.mu, b.mu) <= p.mu <= max(a.mu, b.mu)

    def clip(self, e: AffineExpr) -> "ConvexPolygon":
        return _finish(_clip(list(self.vertices), e), list(self.constraints) + [e])

    def clip_box(self, box: Box) -> "ConvexPolygon":
        vs = list(self.vertices)
        for e in box.constraints():
            vs = _clip(vs, e)
        return _finish(vs, list(self.constraints) + box.constraints())


def _finish(vertices: list, candidates: list) -> ConvexPolygon:
    """Drop collinear vertices and keep only constraints that support an edge."""
    vs = _drop_collinear(vertices)
    if len(vs) < 3:
        return ConvexPolygon(tuple(vs), ())
    kept = []
    for i, p in enumerate(vs):
        q = vs[(i + 1) % len(vs)]
        for e in candidates:
            if e(p) == 0 and e(q) == 0:
                if e not in kept:
                    kept.append(e)
                break
    return ConvexPolygon(tuple(vs), tuple(kept))


def _capacity_constraints(net: ParamNetwork) -> list | None:
    """Half-planes ``-u_e <= 0`` for parametric arcs; None if some constant arc is negative."""
    out = []
    for arc in net.arcs:
        cap = arc.capacity
        if cap.is_constant():
            if cap.c < 0:
                return None
        else:
            out.append(-cap)
    return out


def _check_limit(net: ParamNetwork, limit: int):
    if net.n > limit:
        raise LimitExceeded(f"n={net.n} exceeds the cell limit {limit}")


def cell_of(net: ParamNetwork, S: CutSet, box: Box, limit: int = CELL_LIMIT, forms: list | None = None) -> ConvexPolygon:
    _check_limit(net, limit)
    if not S.fits(net.n):
        raise ValueError(f"cut {S} is not a subset of 1..{net.n}")
    forms = forms if forms is not None else all_cut_capacities(net)
    own = forms[S.mask]
    cap_cons = _capacity_constraints(net)
    if cap_cons is None:
        return ConvexPolygon()
    candidates = box.constraints() + cap_cons
    vs = box.corners()
    for e in cap_cons:
        vs = _clip(vs, e)
    # near neighbours in the cut lattice usually bound the cell; try them first
    order = sorted(range(len(forms)), key=lambda m: (bin(m ^ S.mask).count("1"), m))
    for m in order:
        if m == S.mask or not vs:
            continue
        diff = own - forms[m]
        if diff.is_constant():
            if diff.c > 0:
                vs = []
            continue
        vs = _clip(vs, diff)
        candidates.append(diff)
    return _finish(vs, candidates)


@dataclass
class CellDiagram:
    domain: Box
    n: int
    cells: dict = field(default_factory=dict)
    degenerate: dict = field(default_factory=dict)
    shared: list = field(default_factory=list)

    def locate(self, p: ParamPoint) -> dict:
        """Map each cut whose closed cell contains ``p`` to interior/boundary."""
        out = {}
        for S, poly in self.cells.items():
            where = poly.classify(p)
            if where != OUTSIDE:
                out[S] = where
        return out


def enumerate_cells(net: ParamNetwork, box: Box, limit: int = CELL_LIMIT) -> CellDiagram:
    _check_limit(net, limit)
    forms = all_cut_capacities(net)
    diagram = CellDiagram(box, net.n)
    by_form = {}
    for m in range(len(forms)):
        poly = cell_of(net, CutSet(m), box, limit, forms)
        if poly.has_interior():
            diagram.cells[CutSet(m)] = poly
            by_form.setdefault(forms[m], []).append(CutSet(m))
        elif not poly.empty:
            diagram.degenerate[CutSet(m)] = poly
    diagram.shared = [group for group in by_form.values() if len(group) > 1]
    # distinct affine forms overlap only on lines; areas must then tile the feasible box
    covered = sum((diagram.cells[group[0]].area() for group in by_form.values()), Fraction(0))
    cap_cons = _capacity_constraints(net)
    feasible = Fraction(0)
    if cap_cons is not None:
        vs = box.corners()
        for e in cap_cons:
            vs = _clip(vs, e)
        feasible = ConvexPolygon(tuple(vs)).area() if len(vs) >= 3 else Fraction(0)
    if covered != feasible:
        raise DiagramInconsistent(f"cell areas sum to {covered}, feasible region has area {feasible}")
    return diagram


def count_distinct_min_cuts(d: CellDiagram) -> int:
    return len(d.cells)


@dataclass(frozen=True)
class SweepSegment:
    start: Fraction
    end: Fraction
    cut: CutSet


@dataclass
class SweepResult:
    """Path parameter runs over [0, m] for an m-segment path; segment i covers [i, i+1]."""

    path: list
    segments: list

    @property
    def cuts(self) -> list:
        return [seg.cut for seg in self.segments]

    @property
    def distinct_cuts(self) -> int:
        return len(set(self.cuts))

    @property
    def breakpoints(self) -> list:
        return [seg.start for seg in self.segments[1:]]

    def point_at(self, tau) -> ParamPoint:
        tau = Fraction(tau)
        if len(self.path) == 1:
            return self.path[0]
        i = min(int(tau), len(self.path) - 2)
        s = tau - i
        p, q = self.path[i], self.path[i + 1]
        return ParamPoint(p.lam + s * (q.lam - p.lam), p.mu + s * (q.mu - p.mu))


def _minimal_min_cut(values: list) -> CutSet:
    """Intersection of all minimisers: itself a min cut by submodularity."""
    best = min(values)
    mask = -1
    for m, v in enumerate(values):
        if v == best:
            mask &= m
    return CutSet(mask)


def northeast_sweep(net: ParamNetwork, path, limit: int = BRUTE_FORCE_LIMIT) -> SweepResult:
    path = [p if isinstance(p, ParamPoint) else ParamPoint(*p) for p in path]
    if not path:
        raise NotMonotonePath("empty path")
    for p, q in zip(path, path[1:]):
        if not p <= q:
            raise NotMonotonePath(f"({p.lam}, {p.mu}) -> ({q.lam}, {q.mu}) decreases a coordinate")
    if validate_ssm(net) is SsmClass.NOT_SSM:
        raise NotSSM("northeast sweeps need a source-sink monotone network")
    if net.n > limit:
        raise LimitExceeded(f"n={net.n} exceeds the sweep limit {limit}")
    forms = all_cut_capacities(net)
    segments = []

    def push(start, end, cut):
        if segments and segments[-1].cut == cut:
            segments[-1] = SweepSegment(segments[-1].start, end, cut)
        else:
            segments.append(SweepSegment(start, end, cut))

    for i, (p, q) in enumerate(zip(path, path[1:])):
        if p == q:
            continue
        alpha = [f(p) for f in forms]
        beta = [f(q) - a for f, a in zip(forms, alpha)]
        t0 = Fraction(0)
        while t0 < 1:
            vals = [a + b * t0 for a, b in zip(alpha, beta)]
            best = min(vals)
            slope = min(b for v, b in zip(vals, beta) if v == best)
            t1 = Fraction(1)
            for v, b in zip(vals, beta):
                if b < slope:
                    t1 = min(t1, t0 + (v - best) / (slope - b))
            mid = (t0 + t1) / 2
            cut = _minimal_min_cut([a + b * mid for a, b in zip(alpha, beta)])
            push(i + t0, i + t1, cut)
            t0 = t1
    if not segments:
        cut = _minimal_min_cut([f(path[0]) for f in forms])
        end = Fraction(max(len(path) - 1, 0))
        segments.append(SweepSegment(Fraction(0), end, cut))
    for a, b in zip(segments, segments[1:]):
        if not a.cut.issubset(b.cut):
            raise NestednessViolation(f"cut {a.cut} is followed by {b.cut} at t={b.start}")
    return SweepResult(path, segments)
