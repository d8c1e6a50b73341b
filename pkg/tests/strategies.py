"""Hypothesis strategies for small random parametric networks."""
from fractions import Fraction

from hypothesis import strategies as st

from ssmcut.core import SINK, SOURCE, AffineExpr, Arc, ParamNetwork, ParamPoint

unit = st.fractions(min_value=0, max_value=1, max_denominator=16)
nonneg = st.fractions(min_value=0, max_value=6, max_denominator=8)
positive = st.fractions(min_value=Fraction(1, 8), max_value=6, max_denominator=8)


@st.composite
def ssm_networks(draw, min_n=1, max_n=6, strict=True):
    """Random source-sink monotone networks, capacities nonnegative on [0,1]^2."""
    n = draw(st.integers(min_n, max_n))
    arcs = []
    for j in range(1, n + 1):
        if draw(st.integers(0, 4)):
            arcs.append(Arc(SOURCE, j, AffineExpr(draw(positive), draw(positive), draw(nonneg))))
        if draw(st.integers(0, 4)):
            if strict:
                arcs.append(Arc(j, SINK, AffineExpr.const(draw(nonneg))))
            else:
                a, b = -draw(nonneg), -draw(nonneg)
                arcs.append(Arc(j, SINK, AffineExpr(a, b, -a - b + draw(nonneg))))
    pairs = [(i, k) for i in range(1, n + 1) for k in range(1, n + 1) if i != k]
    for i, k in pairs:
        if draw(st.integers(0, 2)) == 0:
            arcs.append(Arc(i, k, AffineExpr.const(draw(nonneg))))
    return ParamNetwork(n, tuple(arcs))


points = st.builds(ParamPoint, unit, unit)


@st.composite
def ordered_points(draw):
    p = draw(points)
    dl = draw(st.fractions(min_value=0, max_value=1 - p.lam, max_denominator=16))
    dm = draw(st.fractions(min_value=0, max_value=1 - p.mu, max_denominator=16))
    return p, ParamPoint(p.lam + dl, p.mu + dm)
