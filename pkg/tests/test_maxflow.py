from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from ssmcut.construction import LimitExceeded, build_family, family_network, family_point
from ssmcut.core import SINK, SOURCE, AffineExpr, Arc, CutSet, ParamNetwork, ParamPoint, all_cuts, cut_capacity
from ssmcut.maxflow import NegativeCapacity, brute_force_min_cuts, max_flow, unique_min_cut

from strategies import ordered_points, points, ssm_networks


def naive_min_cuts(net, p):
    """Oracle that re-sums arc capacities for every cut."""
    values = {S: cut_capacity(net, S, p) for S in all_cuts(net.n)}
    best = min(values.values())
    return best, [S for S, v in values.items() if v == best]


def test_n1_examples():
    net = family_network(1)
    res = max_flow(net, ParamPoint(F(1, 4), F(1, 4)))
    assert res.value == F(1, 2)
    assert res.min_cut_minimal == res.min_cut_maximal == CutSet(0)
    tie = max_flow(net, ParamPoint(F(1, 2), F(1, 2)))
    assert tie.value == 1
    assert (tie.min_cut_minimal, tie.min_cut_maximal) == (CutSet(0), CutSet(1))
    assert unique_min_cut(net, ParamPoint(F(3, 4), F(3, 4))) == CutSet(1)
    assert unique_min_cut(net, ParamPoint(F(1, 2), F(1, 2))) is None
    assert brute_force_min_cuts(net, ParamPoint(F(1, 2), F(1, 2))) == [CutSet(0), CutSet(1)]


def test_n2_examples():
    net = family_network(2)
    p = ParamPoint(F(1, 16), F(13, 16))
    res = max_flow(net, p)
    assert res.value == F(73, 16)
    assert res.min_cut_minimal == res.min_cut_maximal == CutSet(0)
    assert brute_force_min_cuts(net, p) == [CutSet(0)]
    q = ParamPoint(F(13, 16), F(1, 16))
    assert unique_min_cut(net, q) == CutSet.of([2])
    assert sorted(cut_capacity(net, S, q) for S in all_cuts(2)) == [F(88, 16), F(96, 16), F(109, 16), F(117, 16)]


def test_n3_brute_force():
    net = family_network(3)
    p = family_point(3, CutSet.of([3]))
    assert p == ParamPoint(F(49, 64), F(1, 16))
    assert brute_force_min_cuts(net, p) == [CutSet.of([3])]


def test_negative_capacity_is_an_error():
    net = ParamNetwork(1, (Arc(SOURCE, 1, AffineExpr(1, 0, -1)), Arc(1, SINK, AffineExpr.const(1))))
    with pytest.raises(NegativeCapacity) as err:
        max_flow(net, ParamPoint(F(1, 2), 0))
    assert err.value.arc == (SOURCE, 1)


def test_brute_force_limit():
    net = family_network(3)
    with pytest.raises(LimitExceeded):
        brute_force_min_cuts(net, ParamPoint(0, 0), limit=2)


def test_direct_arc_and_reverse_pairs():
    net = ParamNetwork(
        2,
        (
            Arc(SOURCE, SINK, AffineExpr(1, 0, 0)),
            Arc(SOURCE, 1, AffineExpr(1, 1, 1)),
            Arc(1, 2, AffineExpr.const(2)),
            Arc(2, 1, AffineExpr.const(1)),
            Arc(2, SINK, AffineExpr.const(F(3, 2))),
        ),
    )
    p = ParamPoint(F(1, 3), F(1, 5))
    best, _ = naive_min_cuts(net, p)
    assert max_flow(net, p).value == best


def _check_flow(net, p, res):
    caps = net.capacities_at(p)
    for key, f in res.flow.items():
        assert 0 <= f <= caps[key]
    for j in range(1, net.n + 1):
        inflow = sum(f for (t, h), f in res.flow.items() if h == j)
        outflow = sum(f for (t, h), f in res.flow.items() if t == j)
        assert inflow == outflow
    into_t = sum(f for (t, h), f in res.flow.items() if h == SINK)
    assert res.value == into_t


@settings(max_examples=150, deadline=None)
@given(ssm_networks(), points)
def test_duality_and_cut_bracketing(net, p):
    res = max_flow(net, p)
    best, cuts = naive_min_cuts(net, p)
    assert res.value == best
    assert brute_force_min_cuts(net, p) == cuts
    assert res.min_cut_minimal in cuts and res.min_cut_maximal in cuts
    for T in cuts:
        assert res.min_cut_minimal.issubset(T) and T.issubset(res.min_cut_maximal)
    assert res.unique == (len(cuts) == 1)
    _check_flow(net, p, res)


@settings(max_examples=150, deadline=None)
@given(ssm_networks(), ordered_points())
def test_nested_and_monotone(net, pair):
    p, q = pair
    a, b = max_flow(net, p), max_flow(net, q)
    assert a.min_cut_minimal.issubset(b.min_cut_minimal)
    assert a.min_cut_maximal.issubset(b.min_cut_maximal)
    assert a.value <= b.value


@settings(max_examples=60, deadline=None)
@given(ssm_networks(strict=False), ordered_points())
def test_nested_general_ssm(net, pair):
    p, q = pair
    a, b = max_flow(net, p), max_flow(net, q)
    assert a.min_cut_minimal.issubset(b.min_cut_minimal)
    assert a.min_cut_maximal.issubset(b.min_cut_maximal)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_family_points_have_unique_cuts(n):
    net, _, certs = build_family(n)
    for cert in certs:
        res = max_flow(net, cert.point)
        assert res.unique and res.min_cut_minimal == cert.cut
