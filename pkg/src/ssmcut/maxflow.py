"""Exact max flow / min cut at a fixed parameter point.

Shortest augmenting paths (Edmonds-Karp) over Fractions.  The minimal min
cut is the residual reachability set of ``s``; the maximal one is the set
of nodes that cannot reach ``t`` in the residual graph.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .construction import FlowAssignment, LimitExceeded
from .core import SINK, SOURCE, CutSet, ParamNetwork, ParamPoint, all_cut_capacities

BRUTE_FORCE_LIMIT = 20


class NegativeCapacity(ValueError):
    def __init__(self, arc, value):
        super().__init__(f"arc {arc[0]}->{arc[1]} has negative capacity {value}")
        self.arc = arc
        self.value = value


@dataclass(frozen=True)
class FlowResult:
    value: Fraction
    flow: FlowAssignment
    min_cut_minimal: CutSet
    min_cut_maximal: CutSet

    @property
    def unique(self) -> bool:
        return self.min_cut_minimal == self.min_cut_maximal


def evaluated_capacities(net: ParamNetwork, p: ParamPoint) -> dict:
    caps = net.capacities_at(p)
    for key, value in caps.items():
        if value < 0:
            raise NegativeCapacity(key, value)
    return caps


def _index(node, n):
    if node == SOURCE:
        return 0
    if node == SINK:
        return n + 1
    return node


def max_flow(net: ParamNetwork, p: ParamPoint) -> FlowResult:
    caps = evaluated_capacities(net, p)
    n = net.n
    keys = list(caps)
    tails = [_index(k[0], n) for k in keys]
    heads = [_index(k[1], n) for k in keys]
    cap = [caps[k] for k in keys]
    flow = [Fraction(0)] * len(keys)
    # residual moves: (arc index, +1 forward / -1 backward)
    adj = [[] for _ in range(n + 2)]
    for i, (u, v) in enumerate(zip(tails, heads)):
        adj[u].append((i, 1, v))
        adj[v].append((i, -1, u))
    s, t = 0, n + 1

    def residual(i, d):
        return cap[i] - flow[i] if d > 0 else flow[i]

    while True:
        pred = [None] * (n + 2)
        pred[s] = (-1, 0, -1)
        queue = deque([s])
        while queue and pred[t] is None:
            u = queue.popleft()
            for i, d, v in adj[u]:
                if pred[v] is None and residual(i, d) > 0:
                    pred[v] = (i, d, u)
                    queue.append(v)
        if pred[t] is None:
            break
        path, v = [], t
        while v != s:
            i, d, u = pred[v]
            path.append((i, d))
            v = u
        delta = min(residual(i, d) for i, d in path)
        for i, d in path:
            flow[i] += delta if d > 0 else -delta

    reach_s = _reach(adj, s, lambda i, d: residual(i, d) > 0)
    # reverse search: u reaches t if some residual move u -> v with v reaching t
    reach_t = _reach(adj, t, lambda i, d: residual(i, -d) > 0)
    minimal = CutSet.of(j for j in range(1, n + 1) if reach_s[j])
    maximal = CutSet.of(j for j in range(1, n + 1) if not reach_t[j])
    value = sum((flow[i] for i in range(len(keys)) if tails[i] == s), Fraction(0)) - sum(
        (flow[i] for i in range(len(keys)) if heads[i] == s), Fraction(0)
    )
    return FlowResult(value, dict(zip(keys, flow)), minimal, maximal)


def _reach(adj, start, ok):
    seen = [False] * len(adj)
    seen[start] = True
    stack = [start]
    while stack:
        u = stack.pop()
        for i, d, v in adj[u]:
            if not seen[v] and ok(i, d):
                seen[v] = True
                stack.append(v)
    return seen


def unique_min_cut(net: ParamNetwork, p: ParamPoint) -> CutSet | None:
    res = max_flow(net, p)
    return res.min_cut_minimal if res.unique else None


def brute_force_min_cuts(net: ParamNetwork, p: ParamPoint, limit: int = BRUTE_FORCE_LIMIT) -> list:
    """All minimum cuts by enumeration, ascending bitmask order."""
    if net.n > limit:
        raise LimitExceeded(f"n={net.n} exceeds the brute-force limit {limit}")
    evaluated_capacities(net, p)
    values = [form(p) for form in all_cut_capacities(net)]
    best = min(values)
    return [CutSet(m) for m, v in enumerate(values) if v == best]
