"""Certificate checking and the growth-bound verifiers.

A flow certifies that ``S`` is the *unique* min cut at a point when it is
feasible and satisfies strong complementary slackness: source arcs into S
and sink arcs out of the complement have slack, the complementary source
and sink arcs are saturated, forward crossing arcs are saturated and
backward crossing arcs carry nothing.  All comparisons are exact.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .construction import DEFAULT_MAX_N, _tables, build_family
from .core import SINK, SOURCE, CutSet, ParamNetwork, ParamPoint
from .maxflow import brute_force_min_cuts, max_flow


class MissingArc(ValueError):
    pass


@dataclass(frozen=True)
class Violation:
    arc: object
    condition: str
    lhs: Fraction
    rhs: Fraction

    def __str__(self):
        return f"{self.condition} at {self.arc}: {self.lhs} vs {self.rhs}"


@dataclass
class ScsReport:
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.passed


def check_feasible(net: ParamNetwork, p: ParamPoint, x: dict) -> ScsReport:
    keys = set(net.arc_keys())
    if set(x) != keys:
        missing = sorted(map(str, keys - set(x)))
        extra = sorted(map(str, set(x) - keys))
        raise MissingArc(f"flow domain mismatch; missing {missing}, unexpected {extra}")
    report = ScsReport()
    balance = {j: Fraction(0) for j in range(1, net.n + 1)}
    for arc in net.arcs:
        f, u = x[arc.key], arc.capacity(p)
        if f < 0:
            report.violations.append(Violation(arc.key, "nonnegative", f, Fraction(0)))
        if f > u:
            report.violations.append(Violation(arc.key, "capacity", f, u))
        if arc.head in balance:
            balance[arc.head] += f
        if arc.tail in balance:
            balance[arc.tail] -= f
    for j, b in balance.items():
        if b != 0:
            report.violations.append(Violation(j, "conservation", b, Fraction(0)))
    return report


def check_scs(net: ParamNetwork, p: ParamPoint, S: CutSet, x: dict) -> ScsReport:
    """Feasibility plus the slackness pattern for ``S``.

    A source or sink arc absent from the network counts as capacity zero
    with zero flow, so a node in S without a source arc fails the slack
    clause; otherwise uniqueness would not follow.
    """
    report = check_feasible(net, p, x)
    if not report.passed:
        return report
    v = report.violations

    def arc_pair(tail, head):
        if net.has_arc(tail, head):
            return x[(tail, head)], net.capacity(tail, head)(p)
        return Fraction(0), Fraction(0)

    for j in range(1, net.n + 1):
        fs, us = arc_pair(SOURCE, j)
        ft, ut = arc_pair(j, SINK)
        if j in S:
            if not fs < us:
                v.append(Violation((SOURCE, j), "source_slack_in_cut", fs, us))
            if ft != ut:
                v.append(Violation((j, SINK), "sink_saturated_in_cut", ft, ut))
        else:
            if fs != us:
                v.append(Violation((SOURCE, j), "source_saturated_outside_cut", fs, us))
            if not ft < ut:
                v.append(Violation((j, SINK), "sink_slack_outside_cut", ft, ut))
    for arc in net.arcs:
        if arc.tail == SOURCE and arc.head == SINK:
            f, u = x[arc.key], arc.capacity(p)
            if f != u:
                v.append(Violation(arc.key, "direct_arc_saturated", f, u))
            continue
        if arc.tail == SOURCE or arc.head == SINK:
            continue
        f = x[arc.key]
        if arc.tail in S and arc.head not in S:
            u = arc.capacity(p)
            if f != u:
                v.append(Violation(arc.key, "forward_crossing_saturated", f, u))
        elif arc.tail not in S and arc.head in S:
            if f != 0:
                v.append(Violation(arc.key, "backward_crossing_empty", f, Fraction(0)))
    return report


@dataclass(frozen=True)
class Failure:
    check: str
    subject: str
    detail: str

    def __str__(self):
        return f"{self.check} [{self.subject}] {self.detail}"


@dataclass
class VerificationReport:
    n: int
    kind: str = "certificates"
    checks_run: int = 0
    failures: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, check: str, subject, detail: str = ""):
        self.checks_run += 1
        if not ok:
            self.failures.append(Failure(check, str(subject), detail))
        return ok


def verify_theorem_main(n: int, max_n: int = DEFAULT_MAX_N) -> VerificationReport:
    """Check every certificate of the level-n family four ways."""
    start = time.perf_counter()
    net, _, certs = build_family(n, max_n=max_n)
    report = VerificationReport(n, "certificates")
    report.check(len(certs) == 2**n, "certificate_count", n, f"{len(certs)} certificates")
    report.check(len({c.point for c in certs}) == len(certs), "distinct_points", n)
    for cert in certs:
        S, p = cert.cut, cert.point
        report.check(p.in_open_unit_square(), "point_in_unit_square", S, f"({p.lam}, {p.mu})")
        feas = check_feasible(net, p, cert.flow)
        report.check(feas.passed, "feasible", S, "; ".join(map(str, feas.violations)))
        scs = check_scs(net, p, S, cert.flow)
        report.check(scs.passed, "scs", S, "; ".join(map(str, scs.violations)))
        res = max_flow(net, p)
        report.check(
            res.unique and res.min_cut_minimal == S,
            "unique_min_cut",
            S,
            f"minimal={res.min_cut_minimal} maximal={res.min_cut_maximal}",
        )
        brute = brute_force_min_cuts(net, p)
        report.check(brute == [S], "brute_force", S, "min cuts " + " ".join(map(str, brute)))
    report.elapsed = time.perf_counter() - start
    return report


UPPER_BOUND_REFINEMENT = 8


def phi_upper_check(phi: int, n: int, max_refine: int = UPPER_BOUND_REFINEMENT) -> str:
    """Decide ``17*phi <= 2**(2**(n + 1/2))`` exactly where possible.

    With ``r = isqrt(2**(2n+1+2k))`` the exponent satisfies
    ``r/2^k <= 2**(n + 1/2) < (r+1)/2^k``, so ``(17 phi)**(2**k) <= 2**r``
    proves the bound and ``(17 phi)**(2**k) > 2**(r+1)`` refutes it.  k = 0 is
    the plain integer-square-root test; k grows until one side decides.
    The bit-length test is the fallback necessary condition.  Returns
    ``"pass"``, ``"fail"`` or ``"inconclusive"``.
    """
    x = 17 * phi
    if (x.bit_length() - 1) ** 2 > 2 ** (2 * n + 1):
        return "fail"
    for k in range(max_refine + 1):
        r = isqrt(2 ** (2 * n + 1 + 2 * k))
        power = x ** (2**k)
        if power <= 2**r:
            return "pass"
        if power > 2 ** (r + 1):
            return "fail"
    return "inconclusive"


def verify_growth_bounds(n_max: int, extra: bool = False) -> VerificationReport:
    """Exact checks of phi growth, internal-arc nonnegativity and the data-size bounds."""
    if n_max < 3:
        raise ValueError("growth bounds start at n = 3")
    start = time.perf_counter()
    c = _tables(n_max)
    report = VerificationReport(n_max, "bounds")
    for k in range(2, n_max + 1):
        caps = [c.internal(k, j) for j in range(1, k)]
        report.check(all(u >= 0 for u in caps), "internal_nonnegative", k, f"min {min(caps)}")
        report.check(caps[-1] == 0, "last_internal_zero", k, f"u_{k},{k - 1} = {caps[-1]}")
    for k in range(3, n_max + 1):
        ph, prev = c.phi[k], c.phi[k - 1]
        report.check(ph >= 3 * prev**2, "phi_growth", k, f"{ph} < {3 * prev**2}")
        report.check(2 ** (2**k) <= 3 * ph, "phi_lower_bound", k, "2^(2^n) > 3 phi")
        verdict = phi_upper_check(ph, k)
        if verdict == "inconclusive":
            report.checks_run += 1
            report.inconclusive.append(Failure("phi_upper_bound", str(k), "sufficient test failed"))
        else:
            report.check(verdict == "pass", "phi_upper_bound", k, "17 phi > 2^(2^(n+1/2))")
        if extra and k >= 4:
            a2, b2 = c.a[k - 2], c.b[k - 2]
            report.check(3 * sum(a2) <= prev, "sum_a_bound", k, f"{3 * sum(a2)} > {prev}")
            report.check(48 * sum(b2) <= 5 * prev, "sum_b_bound", k, f"{48 * sum(b2)} > {5 * prev}")
            a1, b1 = c.a[k - 1], c.b[k - 1]
            report.check(a1 == sorted(a1), "a_nondecreasing", k)
            report.check(b1 == sorted(b1, reverse=True), "b_nonincreasing", k)
    report.elapsed = time.perf_counter() - start
    return report
