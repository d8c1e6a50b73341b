from fractions import Fraction as F

import pytest

from ssmcut.construction import (
    LimitExceeded,
    build_family,
    family_constants,
    family_flow,
    family_network,
    family_point,
)
from ssmcut.core import SINK, SOURCE, AffineExpr, CutSet, ParamPoint, all_cuts


def closed_form_constants(n):
    """Independent route: a^m_j = 4^(m-j) phi^j and b^m_j = prod_{k=j+1..m} (1 + theta^k)."""
    phi, theta = {1: 1}, {}

    def a(m, j):
        return 4 ** (m - j) * phi[j]

    def b(m, j):
        out = 1
        for k in range(j + 1, m + 1):
            out *= 1 + theta[k]
        return out

    for k in range(2, n + 1):
        theta[k] = 3 * a(k - 1, k - 1)
        phi[k] = 4 if k == 2 else 4 * sum(theta[k] * b(k - 1, j) - 3 * a(k - 1, j) for j in range(1, k))
    return theta, phi, a, b


def test_constants_small_levels():
    c = family_constants(3)
    assert (c.theta[2], c.phi[2]) == (3, 4)
    assert (c.theta[3], c.phi[3]) == (12, 144)


def test_constants_match_closed_form():
    c = family_constants(9)
    theta, phi, a, b = closed_form_constants(9)
    assert c.theta == theta and c.phi == {k: v for k, v in phi.items() if k >= 2}
    assert c.phi[4] == 111936 and c.theta[4] == 432
    for m in range(1, 10):
        assert c.a[m] == [a(m, j) for j in range(1, m + 1)]
        assert c.b[m] == [b(m, j) for j in range(1, m + 1)]


def test_constants_domain():
    with pytest.raises(ValueError):
        family_constants(1)


def test_coefficient_recursions():
    c = family_constants(8)
    for n in range(2, 9):
        for j in range(1, n):
            assert c.a[n][j - 1] == 4 * c.a[n - 1][j - 1]
            assert c.b[n][j - 1] == (1 + c.theta[n]) * c.b[n - 1][j - 1]
            assert c.internal(n, j) >= 0
        assert (c.a[n][n - 1], c.b[n][n - 1]) == (c.phi[n], 1)
        assert c.internal(n, n - 1) == 0
    for n in range(4, 9):
        assert c.a[n - 1] == sorted(c.a[n - 1])
        assert c.b[n - 1] == sorted(c.b[n - 1], reverse=True)
    for n in range(3, 9):
        assert c.phi[n] >= 3 * c.phi[n - 1] ** 2


def test_base_case():
    net, _, certs = build_family(1)
    assert net.capacity(SOURCE, 1) == AffineExpr(1, 1, 0)
    assert net.capacity(1, SINK) == AffineExpr.const(1)
    empty, full = certs
    assert empty.cut == CutSet(0) and empty.point == ParamPoint(F(1, 4), F(1, 4))
    assert empty.flow == {(SOURCE, 1): F(1, 2), (1, SINK): F(1, 2)}
    assert full.cut == CutSet(1) and full.point == ParamPoint(F(3, 4), F(3, 4))
    assert full.flow == {(SOURCE, 1): 1, (1, SINK): 1}


def test_n2_network_and_points():
    net, _, certs = build_family(2)
    assert net.capacity(SOURCE, 1) == AffineExpr(4, 4, 0)
    assert net.capacity(1, SINK) == AffineExpr.const(4)
    assert net.capacity(SOURCE, 2) == AffineExpr(4, 1, 0)
    assert net.capacity(2, SINK) == AffineExpr.const(2)
    assert net.capacity(2, 1) == AffineExpr.const(0)
    expected = {
        0: (F(1, 16), F(13, 16)),
        1: (F(3, 16), F(15, 16)),
        2: (F(13, 16), F(1, 16)),
        3: (F(15, 16), F(3, 16)),
    }
    assert {c.cut.mask: (c.point.lam, c.point.mu) for c in certs} == expected


def test_family_point_examples():
    assert family_point(1, CutSet(0)) == ParamPoint(F(1, 4), F(1, 4))
    assert family_point(2, CutSet.of([2])) == ParamPoint(F(13, 16), F(1, 16))
    assert family_point(3, CutSet.of([3])) == ParamPoint(F(49, 64), F(1, 16))


def test_family_flow_examples():
    x = family_flow(2, CutSet(0))
    assert x[(SOURCE, 1)] == x[(1, SINK)] == F(7, 2)
    assert x[(SOURCE, 2)] == x[(2, SINK)] == F(17, 16)
    assert x[(2, 1)] == 0
    x = family_flow(2, CutSet.of([2]))
    assert x[(SOURCE, 1)] == x[(1, SINK)] == F(7, 2)
    assert x[(2, 1)] == 0
    assert x[(SOURCE, 2)] == x[(2, SINK)] == 2


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_single_certificates_match_bulk_build(n):
    net, c, certs = build_family(n)
    assert len(certs) == 2**n
    assert [cert.cut for cert in certs] == list(all_cuts(n))
    for cert in certs:
        assert family_point(n, cert.cut, c) == cert.point
        assert family_flow(n, cert.cut, c) == cert.flow
        assert set(cert.flow) == set(net.arc_keys())
    assert len({cert.point for cert in certs}) == 2**n


@pytest.mark.parametrize("n", range(2, 8))
def test_points_in_construction_boxes(n):
    c = family_constants(n)
    th = c.theta[n]
    for S in all_cuts(n - 1):
        p = family_point(n, S, c)
        q = family_point(n, S.with_node(n), c)
        assert 0 < p.lam < F(1, 4) and F(th, 1 + th) < p.mu < 1
        assert F(3, 4) < q.lam < 1 and 0 < q.mu < F(1, 1 + th)
        # with-n points are the without-n points shifted
        assert (q.lam - p.lam, q.mu - p.mu) == (F(3, 4), -F(th, 1 + th))


@pytest.mark.parametrize("n", range(2, 8))
def test_update_gap_identities(n):
    net = family_network(n)
    prev = family_network(n - 1)
    c = family_constants(n)
    for S in all_cuts(n - 1):
        p_prev = family_point(n - 1, S, c)
        p_without = family_point(n, S, c)
        p_with = family_point(n, S.with_node(n), c)
        for j in range(1, n):
            u_prev = prev.capacity(SOURCE, j)(p_prev)
            assert net.capacity(SOURCE, j)(p_without) == u_prev + c.theta[n] * c.b[n - 1][j - 1]
            assert net.capacity(SOURCE, j)(p_with) == u_prev + 3 * c.a[n - 1][j - 1]
        phi = c.phi[n]
        assert net.capacity(SOURCE, n)(p_without) < F(phi, 2)
        gaps = sum(c.internal(n, j) for j in range(1, n))
        if n > 2:  # phi^2 is fixed at 4 rather than given by the sum
            assert 4 * gaps == phi
        assert net.capacity(SOURCE, n)(p_with) > F(phi, 2) + gaps


def test_certificate_limit():
    with pytest.raises(LimitExceeded):
        build_family(13)
    net, _, certs = build_family(3, max_n=3)
    assert len(certs) == 8


def test_rejects_bad_cut():
    with pytest.raises(ValueError):
        family_point(2, CutSet.of([3]))
