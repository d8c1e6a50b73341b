"""Exact rational numerics and the two-parameter network model.

Every numeric quantity is a :class:`fractions.Fraction`.  Networks carry
affine capacities ``a*lam + b*mu + c`` on arcs between the source ``"s"``,
the sink ``"t"`` and internal nodes ``1..n``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Union

Rational = Fraction
NodeId = Union[str, int]

SOURCE = "s"
SINK = "t"


def rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def rat_cmp(x, y) -> int:
    """Three-way comparison: -1, 0 or 1."""
    x, y = rat(x), rat(y)
    return (x > y) - (x < y)


class NetworkError(ValueError):
    pass


class DuplicateArc(NetworkError):
    pass


@dataclass(frozen=True)
class AffineExpr:
    """``a*lam + b*mu + c``."""

    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", rat(self.a))
        object.__setattr__(self, "b", rat(self.b))
        object.__setattr__(self, "c", rat(self.c))

    @classmethod
    def const(cls, c) -> "AffineExpr":
        return cls(0, 0, c)

    def __call__(self, p: "ParamPoint") -> Fraction:
        return self.a * p.lam + self.b * p.mu + self.c

    def __add__(self, other: "AffineExpr") -> "AffineExpr":
        return AffineExpr(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "AffineExpr") -> "AffineExpr":
        return AffineExpr(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "AffineExpr":
        return AffineExpr(-self.a, -self.b, -self.c)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def is_constant(self) -> bool:
        return self.a == 0 and self.b == 0

    def __str__(self) -> str:
        return f"{self.a}*lam + {self.b}*mu + {self.c}"


ZERO = AffineExpr()


def affine_eval(e: AffineExpr, p: "ParamPoint") -> Fraction:
    return e(p)


@dataclass(frozen=True)
class ParamPoint:
    lam: Fraction
    mu: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lam", rat(self.lam))
        object.__setattr__(self, "mu", rat(self.mu))

    def __le__(self, other):  # componentwise, not lexicographic
        return self.lam <= other.lam and self.mu <= other.mu

    def __iter__(self):
        yield self.lam
        yield self.mu

    def in_open_unit_square(self) -> bool:
        return 0 < self.lam < 1 and 0 < self.mu < 1


@dataclass(frozen=True, order=True)
class CutSet:
    """Source-side internal nodes of an s-t cut, as a bitmask (bit j-1 is node j)."""

    mask: int

    def __post_init__(self):
        if self.mask < 0:
            raise ValueError("cut mask must be non-negative")

    @classmethod
    def of(cls, members: Iterable[int]) -> "CutSet":
        mask = 0
        for j in members:
            if j < 1:
                raise ValueError(f"internal nodes are numbered from 1, got {j}")
            mask |= 1 << (j - 1)
        return cls(mask)

    def __contains__(self, j) -> bool:
        return isinstance(j, int) and j >= 1 and bool(self.mask >> (j - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        m, j = self.mask, 1
        while m:
            if m & 1:
                yield j
            m >>= 1
            j += 1

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def issubset(self, other: "CutSet") -> bool:
        return self.mask & ~other.mask == 0

    def with_node(self, j: int) -> "CutSet":
        return CutSet(self.mask | 1 << (j - 1))

    def fits(self, n: int) -> bool:
        return self.mask >> n == 0

    def source_side(self, node: NodeId) -> bool:
        return node == SOURCE or node in self

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


def all_cuts(n: int) -> Iterator[CutSet]:
    """Every subset of ``1..n`` in increasing bitmask order."""
    for m in range(1 << n):
        yield CutSet(m)


@dataclass(frozen=True)
class Arc:
    tail: NodeId
    head: NodeId
    capacity: AffineExpr

    @property
    def key(self) -> tuple:
        return (self.tail, self.head)


def _arc_sort_key(arc: Arc):
    # source arcs by head, internal by (tail, head), sink arcs by tail
    if arc.tail == SOURCE:
        return (0, arc.head == SINK, 0 if arc.head == SINK else arc.head, 0)
    if arc.head == SINK:
        return (2, arc.tail, 0, 0)
    return (1, arc.tail, arc.head, 0)


@dataclass(frozen=True)
class ParamNetwork:
    n: int
    arcs: tuple = field(default_factory=tuple)
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.n < 0:
            raise NetworkError("node count must be non-negative")
        arcs = tuple(self.arcs)
        seen = set()
        for arc in arcs:
            for node in (arc.tail, arc.head):
                if not (node in (SOURCE, SINK) or (isinstance(node, int) and 1 <= node <= self.n)):
                    raise NetworkError(f"unknown node {node!r} for n={self.n}")
            if arc.head == SOURCE:
                raise NetworkError(f"arc {arc.key} enters the source")
            if arc.tail == SINK:
                raise NetworkError(f"arc {arc.key} leaves the sink")
            if arc.tail == arc.head:
                raise NetworkError(f"self-loop at {arc.tail!r}")
            if arc.key in seen:
                raise DuplicateArc(f"duplicate arc {arc.tail}->{arc.head}")
            seen.add(arc.key)
        object.__setattr__(self, "arcs", tuple(sorted(arcs, key=_arc_sort_key)))
        object.__setattr__(self, "_index", {arc.key: arc for arc in self.arcs})

    @classmethod
    def from_capacities(cls, n: int, caps: dict) -> "ParamNetwork":
        return cls(n, tuple(Arc(t, h, e) for (t, h), e in caps.items()))

    def arc_keys(self) -> list:
        return [arc.key for arc in self.arcs]

    def capacity(self, tail: NodeId, head: NodeId) -> AffineExpr:
        return self._index[(tail, head)].capacity

    def has_arc(self, tail: NodeId, head: NodeId) -> bool:
        return (tail, head) in self._index

    def capacities_at(self, p: ParamPoint) -> dict:
        return {arc.key: arc.capacity(p) for arc in self.arcs}

    def source_arcs(self) -> list:
        return [arc for arc in self.arcs if arc.tail == SOURCE]


class SsmClass(enum.Enum):
    STRICT = "StrictSSM"
    GENERAL = "GeneralSSM"
    NOT_SSM = "NotSSM"


def validate_ssm(net: ParamNetwork) -> SsmClass:
    strict = general = True
    for arc in net.arcs:
        a, b = arc.capacity.a, arc.capacity.b
        if arc.tail == SOURCE:
            strict &= a > 0 and b > 0
            general &= a >= 0 and b >= 0
            if arc.head == SINK:
                general &= a <= 0 and b <= 0
        elif arc.head == SINK:
            strict &= a == 0 and b == 0
            general &= a <= 0 and b <= 0
        else:
            strict &= a == 0 and b == 0
            general &= a == 0 and b == 0
    if strict and general:
        return SsmClass.STRICT
    if general:
        return SsmClass.GENERAL
    return SsmClass.NOT_SSM


def cut_arcs(net: ParamNetwork, S: CutSet) -> list:
    return [arc for arc in net.arcs if S.source_side(arc.tail) and not S.source_side(arc.head)]


def cut_capacity_affine(net: ParamNetwork, S: CutSet) -> AffineExpr:
    a = b = c = Fraction(0)
    for arc in cut_arcs(net, S):
        a += arc.capacity.a
        b += arc.capacity.b
        c += arc.capacity.c
    return AffineExpr(a, b, c)


def cut_capacity(net: ParamNetwork, S: CutSet, p: ParamPoint) -> Fraction:
    return cut_capacity_affine(net, S)(p)


def all_cut_capacities(net: ParamNetwork) -> list:
    """Affine capacity of every cut, indexed by bitmask.

    Built incrementally from the cut obtained by dropping the highest member,
    so the cost is O(2^n * n) rather than O(2^n * arcs).
    """
    n = net.n
    out = {node: [] for node in range(1, n + 1)}
    into = {node: [] for node in range(1, n + 1)}
    base = ZERO
    for arc in net.arcs:
        if arc.tail == SOURCE:
            base = base + arc.capacity
            if arc.head != SINK:
                into[arc.head].append((SOURCE, arc.capacity))
        else:
            out[arc.tail].append((arc.head, arc.capacity))
            if arc.head != SINK:
                into[arc.head].append((arc.tail, arc.capacity))
    forms = [base]
    for m in range(1, 1 << n):
        j = m.bit_length()
        prev = m & ~(1 << (j - 1))
        S = CutSet(prev)
        delta = ZERO
        # j joins the source side: arcs j -> sink side start counting,
        # arcs source side -> j stop counting
        for head, cap in out[j]:
            if head == SINK or head not in S:
                delta = delta + cap
        for tail, cap in into[j]:
            if tail == SOURCE or tail in S:
                delta = delta - cap
        forms.append(forms[prev] + delta)
    return forms


def arc_count_nonzero(net: ParamNetwork) -> int:
    return sum(1 for arc in net.arcs if not arc.capacity.is_zero())
