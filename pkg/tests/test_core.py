from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ssmcut.construction import family_network
from ssmcut.core import (
    SINK,
    SOURCE,
    AffineExpr,
    Arc,
    CutSet,
    DuplicateArc,
    NetworkError,
    ParamNetwork,
    ParamPoint,
    SsmClass,
    affine_eval,
    all_cut_capacities,
    arc_count_nonzero,
    cut_arcs,
    cut_capacity,
    cut_capacity_affine,
    rat_cmp,
    validate_ssm,
)

from strategies import points, ssm_networks

fractions = st.fractions(max_denominator=10**6)


def n1(sink=AffineExpr.const(1)):
    return ParamNetwork(1, (Arc(SOURCE, 1, AffineExpr(1, 1, 0)), Arc(1, SINK, sink)))


@pytest.mark.parametrize(
    "x, y, expected",
    [(F(1, 2), F(1, 2), 0), (F(13, 16), F(1, 16), 1), (F(144), F(149), -1)],
)
def test_rat_cmp(x, y, expected):
    assert rat_cmp(x, y) == expected


@given(fractions, fractions)
def test_rational_canonical_form(x, y):
    assert (x + y) - y == x
    z = F(x.numerator * 7, x.denominator * 7)
    assert (z.numerator, z.denominator) == (x.numerator, x.denominator)
    assert z.denominator > 0


def test_floats_rejected():
    with pytest.raises(TypeError):
        AffineExpr(0.5, 0, 0)


@pytest.mark.parametrize(
    "expr, point, value",
    [
        (AffineExpr(1, 1, 0), ParamPoint(F(1, 4), F(1, 4)), F(1, 2)),
        (AffineExpr(0, 0, 7), ParamPoint(F(3, 5), F(2, 9)), F(7)),
        (AffineExpr(4, 1, 0), ParamPoint(F(13, 16), F(1, 16)), F(53, 16)),
    ],
)
def test_affine_eval(expr, point, value):
    assert affine_eval(expr, point) == value


def test_validate_ssm():
    assert validate_ssm(family_network(2)) is SsmClass.STRICT
    assert validate_ssm(n1(AffineExpr(-1, 0, 1))) is SsmClass.GENERAL
    bad = ParamNetwork(2, family_network(2).arcs[:2] + (Arc(2, 1, AffineExpr(1, 0, 0)),) + family_network(2).arcs[3:])
    assert validate_ssm(bad) is SsmClass.NOT_SSM


def test_network_invariants():
    with pytest.raises(NetworkError):
        ParamNetwork(1, (Arc(1, SOURCE, AffineExpr()),))
    with pytest.raises(NetworkError):
        ParamNetwork(1, (Arc(SINK, 1, AffineExpr()),))
    with pytest.raises(NetworkError):
        ParamNetwork(1, (Arc(1, 1, AffineExpr()),))
    with pytest.raises(NetworkError):
        ParamNetwork(1, (Arc(SOURCE, 2, AffineExpr()),))
    with pytest.raises(DuplicateArc):
        ParamNetwork(1, (Arc(SOURCE, 1, AffineExpr(1, 1, 0)), Arc(SOURCE, 1, AffineExpr(1, 2, 0))))


def test_cutset_bitmask():
    S = CutSet.of([1, 3])
    assert S.mask == 0b101
    assert list(S) == [1, 3] and 2 not in S and len(S) == 2
    assert CutSet(0b001).issubset(S) and not S.issubset(CutSet(0b001))
    assert str(S) == "{1,3}"


@pytest.mark.parametrize(
    "members, expected",
    [((), AffineExpr(8, 5, 0)), ((1, 2), AffineExpr.const(6)), ((2,), AffineExpr(4, 4, 2))],
)
def test_cut_capacity_affine_n2(members, expected):
    assert cut_capacity_affine(family_network(2), CutSet.of(members)) == expected


def test_cut_capacity_values():
    net2 = family_network(2)
    assert cut_capacity(net2, CutSet(0), ParamPoint(F(1, 16), F(13, 16))) == F(73, 16)
    assert cut_capacity(net2, CutSet.of([2]), ParamPoint(F(13, 16), F(1, 16))) == F(88, 16)
    for p in (ParamPoint(0, 0), ParamPoint(F(2, 3), F(5, 7))):
        assert cut_capacity(family_network(1), CutSet.of([1]), p) == 1


@pytest.mark.parametrize("n, count", [(1, 2), (2, 4), (3, 7)])
def test_arc_count_nonzero(n, count):
    assert arc_count_nonzero(family_network(n)) == count


def test_arc_count_formula():
    for n in range(1, 11):
        assert 2 * arc_count_nonzero(family_network(n)) == n * n + n + 2


@given(ssm_networks(), points)
def test_cut_capacity_two_orders_agree(net, p):
    forms = all_cut_capacities(net)
    for m, form in enumerate(forms):
        S = CutSet(m)
        direct = sum((arc.capacity(p) for arc in cut_arcs(net, S)), F(0))
        assert form == cut_capacity_affine(net, S)
        assert form(p) == direct


@given(ssm_networks())
def test_strict_ssm_cut_forms_nonnegative_slopes(net):
    if validate_ssm(net) is SsmClass.STRICT:
        for form in all_cut_capacities(net):
            assert form.a >= 0 and form.b >= 0
