"""The recursive worst-case family: networks with every s-t cut a unique min cut.

Level 1 is a single node with ``u_s1 = lam + mu`` and ``u_1t = 1``.  Level k
adds node k, rescales the earlier source arcs, and places the earlier
certificate points into two disjoint corner boxes of the unit square: one
for cuts without k (upper left) and one for cuts with k (lower right).

All constants are exact integers.  Points and flows are Fractions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .core import SINK, SOURCE, AffineExpr, Arc, CutSet, ParamNetwork, ParamPoint

DEFAULT_MAX_N = 12

FlowAssignment = dict


class LimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class FamilyConstants:
    """theta[k], phi[k] for k >= 2; a[k][j-1], b[k][j-1] for source arcs s->j at level k."""

    n: int
    theta: dict
    phi: dict
    a: dict
    b: dict

    def internal(self, k: int, j: int) -> int:
        """Capacity of the arc k -> j added at level k (j < k)."""
        return self.theta[k] * self.b[k - 1][j - 1] - 3 * self.a[k - 1][j - 1]

    def sink(self, k: int, j: int) -> Fraction:
        """Capacity of j -> t in the level-k network."""
        base = Fraction(1) if j == 1 else Fraction(self.phi[j], 2)
        return base + sum(self.theta[m] * self.b[m - 1][j - 1] for m in range(j + 1, k + 1))

    def lower_box(self, k: int) -> tuple:
        """Box holding the level-k points of cuts without k: (lo, hi) corners."""
        th = self.theta[k]
        return ParamPoint(0, Fraction(th, 1 + th)), ParamPoint(Fraction(1, 4), 1)

    def upper_box(self, k: int) -> tuple:
        """Box holding the level-k points of cuts with k."""
        th = self.theta[k]
        return ParamPoint(Fraction(3, 4), 0), ParamPoint(1, Fraction(1, 1 + th))


def _tables(n: int) -> FamilyConstants:
    if n < 1:
        raise ValueError(f"family is defined for n >= 1, got {n}")
    theta, phi = {}, {}
    a, b = {1: [1]}, {1: [1]}
    for k in range(2, n + 1):
        prev_a, prev_b = a[k - 1], b[k - 1]
        th = 3 * prev_a[k - 2]
        if k == 2:
            ph = 4
        else:
            ph = 4 * sum(th * bj - 3 * aj for aj, bj in zip(prev_a, prev_b))
        theta[k], phi[k] = th, ph
        a[k] = [4 * aj for aj in prev_a] + [ph]
        b[k] = [(1 + th) * bj for bj in prev_b] + [1]
    return FamilyConstants(n, theta, phi, a, b)


def family_constants(n: int) -> FamilyConstants:
    if n < 2:
        raise ValueError(f"theta and phi are defined for n >= 2, got {n}")
    return _tables(n)


def family_network(n: int, constants: FamilyConstants | None = None) -> ParamNetwork:
    c = constants or _tables(n)
    arcs = []
    for j in range(1, n + 1):
        arcs.append(Arc(SOURCE, j, AffineExpr(c.a[n][j - 1], c.b[n][j - 1], 0)))
        arcs.append(Arc(j, SINK, AffineExpr.const(c.sink(n, j))))
        for k in range(1, j):
            arcs.append(Arc(j, k, AffineExpr.const(c.internal(j, k))))
    return ParamNetwork(n, tuple(arcs))


def _step_point(p: ParamPoint, theta: int, with_k: bool) -> ParamPoint:
    if with_k:
        return ParamPoint((p.lam + 3) / 4, p.mu / (1 + theta))
    return ParamPoint(p.lam / 4, (p.mu + theta) / (1 + theta))


def _base(with_1: bool) -> tuple:
    if with_1:
        return ParamPoint(Fraction(3, 4), Fraction(3, 4)), {(SOURCE, 1): Fraction(1), (1, SINK): Fraction(1)}
    half = Fraction(1, 2)
    return ParamPoint(Fraction(1, 4), Fraction(1, 4)), {(SOURCE, 1): half, (1, SINK): half}


def _step_flow(x: dict, c: FamilyConstants, k: int, p: ParamPoint, with_k: bool) -> dict:
    """Lift a level k-1 flow to level k; ``p`` is the level-k point."""
    x = dict(x)
    th, ph = c.theta[k], c.phi[k]
    prev_a, prev_b = c.a[k - 1], c.b[k - 1]
    for j in range(1, k):
        sink_add = th * prev_b[j - 1]
        x[(SOURCE, j)] += 3 * prev_a[j - 1] if with_k else sink_add
        x[(j, SINK)] += sink_add
    if with_k:
        gaps = [c.internal(k, j) for j in range(1, k)]
        for j, g in enumerate(gaps, start=1):
            x[(k, j)] = Fraction(g)
        x[(SOURCE, k)] = Fraction(ph, 2) + sum(gaps)
        x[(k, SINK)] = Fraction(ph, 2)
    else:
        for j in range(1, k):
            x[(k, j)] = Fraction(0)
        x[(SOURCE, k)] = x[(k, SINK)] = ph * p.lam + p.mu
    return x


def _check_constants(n: int, S: CutSet, constants: FamilyConstants):
    if n < 1:
        raise ValueError(f"family is defined for n >= 1, got {n}")
    if constants.n < n:
        raise ValueError(f"constants cover levels up to {constants.n}, need {n}")
    if not S.fits(n):
        raise ValueError(f"cut {S} is not a subset of 1..{n}")


def family_point(n: int, S: CutSet, constants: FamilyConstants | None = None) -> ParamPoint:
    c = constants or _tables(n)
    _check_constants(n, S, c)
    p, _ = _base(1 in S)
    for k in range(2, n + 1):
        p = _step_point(p, c.theta[k], k in S)
    return p


def family_flow(n: int, S: CutSet, constants: FamilyConstants | None = None) -> FlowAssignment:
    c = constants or _tables(n)
    _check_constants(n, S, c)
    p, x = _base(1 in S)
    for k in range(2, n + 1):
        p = _step_point(p, c.theta[k], k in S)
        x = _step_flow(x, c, k, p, k in S)
    return x


@dataclass(frozen=True)
class Certificate:
    cut: CutSet
    point: ParamPoint
    flow: FlowAssignment = field(compare=False)


def build_family(n: int, max_n: int = DEFAULT_MAX_N) -> tuple:
    """Return ``(network, constants, certificates)`` with 2^n certificates sorted by cut mask."""
    if n < 1:
        raise ValueError(f"family is defined for n >= 1, got {n}")
    if n > max_n:
        raise LimitExceeded(f"n={n} exceeds the certificate limit {max_n}")
    c = _tables(n)
    level = [(CutSet(0), *_base(False)), (CutSet(1), *_base(True))]
    for k in range(2, n + 1):
        nxt = []
        for S, p, x in level:
            for with_k in (False, True):
                q = _step_point(p, c.theta[k], with_k)
                nxt.append((S.with_node(k) if with_k else S, q, _step_flow(x, c, k, q, with_k)))
        level = nxt
    certs = sorted((Certificate(S, p, x) for S, p, x in level), key=lambda cert: cert.cut.mask)
    return family_network(n, c), c, certs
