"""Feasible and minimum-cost flows in networks with lower and upper arc bounds.

Both solvers use the textbook lower-bound reduction: each arc's lower bound
is pre-sent, leaving node imbalances that a super-source/super-sink pair must
clear, and a zero-cost ``sink -> source`` return arc turns the s-t flow into a
circulation.  ``feasible_flow`` clears the imbalances with BFS augmenting
paths; ``min_cost_feasible_flow`` uses successive shortest paths with
Dijkstra and node potentials.  All quantities are integers.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass

from .errors import Infeasible, MalformedNetwork


@dataclass(frozen=True)
class Arc:
    tail: int
    head: int
    lower: int
    upper: int
    cost: int = 0


@dataclass(frozen=True)
class FlowNetwork:
    num_nodes: int
    source: int
    sink: int
    arcs: tuple
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple(self.arcs))
        object.__setattr__(self, "labels", tuple(self.labels))
        n = self.num_nodes
        if not (0 <= self.source < n and 0 <= self.sink < n) or self.source == self.sink:
            raise MalformedNetwork("source and sink must be distinct nodes")
        if self.labels and len(self.labels) != n:
            raise MalformedNetwork("one label per node")
        for k, a in enumerate(self.arcs):
            if not (0 <= a.tail < n and 0 <= a.head < n):
                raise MalformedNetwork(f"arc {k} is dangling")
            if a.tail == a.head:
                raise MalformedNetwork(f"arc {k} is a self-loop")
            if not 0 <= a.lower <= a.upper:
                raise MalformedNetwork(f"arc {k} has bounds [{a.lower}, {a.upper}]")
            if a.cost < 0:
                raise MalformedNetwork(f"arc {k} has negative cost")
            if a.head == self.source:
                raise MalformedNetwork("the source has incoming arcs")
            if a.tail == self.sink:
                raise MalformedNetwork("the sink has outgoing arcs")

    def label(self, v: int):
        return self.labels[v] if self.labels else v

    def dump(self) -> str:
        """Line-oriented text form, parsed back by :meth:`parse`."""
        lines = [f"nodes {self.num_nodes} source {self.source} sink {self.sink}"]
        for v, lab in enumerate(self.labels):
            lines.append(f"label {v} {_fmt_label(lab)}")
        for a in self.arcs:
            lines.append(f"arc {a.tail} {a.head} {a.lower} {a.upper} {a.cost}")
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "FlowNetwork":
        header = None
        labels: dict[int, str] = {}
        arcs = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            tok = line.split()
            try:
                if tok[0] == "nodes" and len(tok) == 6 and tok[2] == "source" and tok[4] == "sink":
                    header = (int(tok[1]), int(tok[3]), int(tok[5]))
                elif tok[0] == "label" and len(tok) >= 3:
                    labels[int(tok[1])] = " ".join(tok[2:])
                elif tok[0] == "arc" and len(tok) == 6:
                    arcs.append(Arc(*(int(x) for x in tok[1:])))
                else:
                    raise ValueError
            except ValueError:
                raise MalformedNetwork(f"line {lineno}: cannot parse {raw!r}") from None
        if header is None:
            raise MalformedNetwork("missing 'nodes' header")
        n, s, t = header
        labs = tuple(labels.get(v, str(v)) for v in range(n)) if labels else ()
        return cls(n, s, t, tuple(arcs), labs)


def _fmt_label(lab) -> str:
    if isinstance(lab, tuple):
        return ":".join(str(x) for x in lab)
    return str(lab)


@dataclass(frozen=True)
class FlowResult:
    feasible: bool
    flows: tuple = ()
    cost: int = 0
    value: int = 0

    def satisfies(self, net: FlowNetwork) -> bool:
        """Check bounds on every arc and conservation away from source and sink."""
        if not self.feasible or len(self.flows) != len(net.arcs):
            return False
        balance = [0] * net.num_nodes
        for a, f in zip(net.arcs, self.flows):
            if not a.lower <= f <= a.upper:
                return False
            balance[a.tail] -= f
            balance[a.head] += f
        return all(b == 0 for v, b in enumerate(balance) if v not in (net.source, net.sink))


class _Residual:
    """Adjacency-list residual graph; edge ``e`` and ``e ^ 1`` are mutual reverses."""

    def __init__(self, n: int):
        self.n = n
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []
        self.cost: list[int] = []

    def add(self, u: int, v: int, cap: int, cost: int) -> int:
        e = len(self.to)
        self.adj[u].append(e)
        self.to += [v, u]
        self.cap += [cap, 0]
        self.cost += [cost, -cost]
        self.adj[v].append(e + 1)
        return e


def _reduce(net: FlowNetwork):
    """Build the residual circulation problem; returns (graph, arc edge ids, S*, T*, demand)."""
    n = net.num_nodes
    g = _Residual(n + 2)
    ss, tt = n, n + 1
    excess = [0] * n
    ids = []
    for a in net.arcs:
        ids.append(g.add(a.tail, a.head, a.upper - a.lower, a.cost))
        excess[a.head] += a.lower
        excess[a.tail] -= a.lower
    big = sum(a.upper for a in net.arcs) + 1
    g.add(net.sink, net.source, big, 0)
    demand = 0
    for v, ex in enumerate(excess):
        if ex > 0:
            g.add(ss, v, ex, 0)
            demand += ex
        elif ex < 0:
            g.add(v, tt, -ex, 0)
    return g, ids, ss, tt, demand


def _result(net: FlowNetwork, g: _Residual, ids: list[int]) -> FlowResult:
    flows = tuple(a.lower + g.cap[e ^ 1] for a, e in zip(net.arcs, ids))
    cost = sum(f * a.cost for a, f in zip(net.arcs, flows))
    value = sum(f for a, f in zip(net.arcs, flows) if a.tail == net.source)
    return FlowResult(True, flows, cost, value)


def feasible_flow(net: FlowNetwork) -> FlowResult:
    """Any flow meeting every bound, or ``FlowResult(feasible=False)``."""
    g, ids, ss, tt, demand = _reduce(net)
    sent = 0
    while sent < demand:
        parent = [-1] * g.n
        parent[ss] = -2
        q = deque([ss])
        while q and parent[tt] == -1:
            u = q.popleft()
            for e in g.adj[u]:
                v = g.to[e]
                if g.cap[e] > 0 and parent[v] == -1:
                    parent[v] = e
                    q.append(v)
        if parent[tt] == -1:
            return FlowResult(False)
        push = demand - sent
        v = tt
        while v != ss:
            e = parent[v]
            push = min(push, g.cap[e])
            v = g.to[e ^ 1]
        v = tt
        while v != ss:
            e = parent[v]
            g.cap[e] -= push
            g.cap[e ^ 1] += push
            v = g.to[e ^ 1]
        sent += push
    return _result(net, g, ids)


def min_cost_feasible_flow(net: FlowNetwork) -> FlowResult:
    """A feasible flow of minimum total cost; raises Infeasible if none exists."""
    g, ids, ss, tt, demand = _reduce(net)
    inf = float("inf")
    pot = [0] * g.n
    sent = 0
    while sent < demand:
        dist = [inf] * g.n
        parent = [-1] * g.n
        dist[ss] = 0
        heap = [(0, ss)]
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist[u]:
                continue
            for e in g.adj[u]:
                if g.cap[e] <= 0:
                    continue
                v = g.to[e]
                nd = d + g.cost[e] + pot[u] - pot[v]
                if nd < dist[v]:
                    dist[v] = nd
                    parent[v] = e
                    heapq.heappush(heap, (nd, v))
        if dist[tt] == inf:
            raise Infeasible(f"only {sent} of {demand} units of lower-bound demand can be routed")
        for v in range(g.n):
            if dist[v] < inf:
                pot[v] += dist[v]
        push = demand - sent
        v = tt
        while v != ss:
            e = parent[v]
            push = min(push, g.cap[e])
            v = g.to[e ^ 1]
        v = tt
        while v != ss:
            e = parent[v]
            g.cap[e] -= push
            g.cap[e ^ 1] += push
            v = g.to[e ^ 1]
        sent += push
    return _result(net, g, ids)
