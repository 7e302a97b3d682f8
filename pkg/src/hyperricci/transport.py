"""Exact discrete optimal transport between two finitely supported measures.

The primal problem is solved with the transportation simplex (north-west
corner start, MODI pricing) over Fractions. Pairs at infinite distance are
not priced with a large constant: every cost is a pair ``(forbidden, d)``
compared lexicographically, so a forbidden cell only carries flow when no
finite plan exists. Pivoting follows Bland's rule over cells ordered by
(row, column), which makes runs terminate and be reproducible.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from . import _lp
from .hypergraph import VertexId
from .measures import DiscreteMeasure, MeasureError

Cost = Union[Callable[[VertexId, VertexId], float], Mapping[VertexId, Mapping[VertexId, float]]]


class TransportError(ValueError):
    pass


class InfeasibleTransport(TransportError):
    def __init__(self, vertex: VertexId, role: str):
        self.vertex = vertex
        self.role = role
        super().__init__(f"{role} at {vertex!r} has no finite-cost partner")


def vertex_sort_key(v: VertexId):
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return (0, v, "")
    return (1, 0, str(v))


def cost_function(cost: Cost) -> Callable[[VertexId, VertexId], float]:
    if callable(cost):
        return cost

    def lookup(u, v):
        try:
            return cost[u][v]
        except KeyError:
            raise TransportError(f"no cost given for pair ({u!r}, {v!r})") from None

    return lookup


@dataclass(frozen=True)
class TransportPlan:
    """Sparse coupling ``(u, v) -> mass``; zero entries are omitted."""

    entries: Mapping[tuple[VertexId, VertexId], Fraction] = field(default_factory=dict)

    def row_marginal(self) -> DiscreteMeasure:
        acc: dict = {}
        for (u, _), m in self.entries.items():
            acc[u] = acc.get(u, Fraction(0)) + m
        return DiscreteMeasure(acc)

    def column_marginal(self) -> DiscreteMeasure:
        acc: dict = {}
        for (_, v), m in self.entries.items():
            acc[v] = acc.get(v, Fraction(0)) + m
        return DiscreteMeasure(acc)

    def cost(self, cost: Cost) -> Fraction:
        d = cost_function(cost)
        return sum((m * d(u, v) for (u, v), m in self.entries.items()), Fraction(0))

    def __len__(self) -> int:
        return len(self.entries)


@dataclass(frozen=True)
class MassDecomposition:
    """Mass moved over distance 0, 1, 2 and 3 by a transport plan."""

    mu0: Fraction
    mu1: Fraction
    mu2: Fraction
    mu3: Fraction

    def __iter__(self):
        return iter((self.mu0, self.mu1, self.mu2, self.mu3))

    @property
    def total(self) -> Fraction:
        return self.mu0 + self.mu1 + self.mu2 + self.mu3

    @property
    def wasserstein(self) -> Fraction:
        return self.mu1 + 2 * self.mu2 + 3 * self.mu3

    @property
    def kappa(self) -> Fraction:
        return self.mu0 - self.mu2 - 2 * self.mu3


@dataclass(frozen=True)
class DualCertificate:
    """A potential ``f`` with ``f(u) - f(v) <= d(u, v)`` on mass/hole pairs and its bound."""

    potential: Mapping[VertexId, Fraction]
    bound: Fraction


def _check_measures(mu: DiscreteMeasure, nu: DiscreteMeasure) -> None:
    for name, m in (("source", mu), ("target", nu)):
        if not isinstance(m, DiscreteMeasure):
            raise TypeError(f"{name} must be a DiscreteMeasure")
        if m.total != 1:
            raise MeasureError(f"{name} measure has total mass {m.total}, expected 1")


def _ordered(m: DiscreteMeasure) -> list[VertexId]:
    return sorted(m.support, key=vertex_sort_key)


def _tree_path(basis: set[tuple[int, int]], i0: int, j0: int) -> list[tuple[int, int]]:
    """Basis cells on the tree path from column ``j0`` to row ``i0``."""
    adj: dict[tuple[str, int], list[tuple[tuple[str, int], tuple[int, int]]]] = {}
    for i, j in basis:
        adj.setdefault(("r", i), []).append((("c", j), (i, j)))
        adj.setdefault(("c", j), []).append((("r", i), (i, j)))
    start, goal = ("c", j0), ("r", i0)
    parent: dict = {start: None}
    stack = [start]
    while stack:
        node = stack.pop()
        if node == goal:
            break
        for nxt, cell in adj.get(node, ()):
            if nxt not in parent:
                parent[nxt] = (node, cell)
                stack.append(nxt)
    path = []
    node = goal
    while parent[node] is not None:
        node, cell = parent[node]
        path.append(cell)
    path.reverse()
    return path


def _potentials(basis, r, c, cost):
    u: list = [None] * r
    v: list = [None] * c
    u[0] = (0, Fraction(0))
    by_row: dict[int, list[int]] = {}
    by_col: dict[int, list[int]] = {}
    for i, j in basis:
        by_row.setdefault(i, []).append(j)
        by_col.setdefault(j, []).append(i)
    stack = [("r", 0)]
    while stack:
        kind, k = stack.pop()
        if kind == "r":
            for j in by_row.get(k, ()):
                if v[j] is None:
                    cb, cs = cost[k][j]
                    v[j] = (cb - u[k][0], cs - u[k][1])
                    stack.append(("c", j))
        else:
            for i in by_col.get(k, ()):
                if u[i] is None:
                    cb, cs = cost[i][k]
                    u[i] = (cb - v[k][0], cs - v[k][1])
                    stack.append(("r", i))
    return u, v


def _transport_simplex(supply: list[Fraction], demand: list[Fraction], cost) -> dict[tuple[int, int], Fraction]:
    r, c = len(supply), len(demand)
    s, d = list(supply), list(demand)
    flow: dict[tuple[int, int], Fraction] = {}
    i = j = 0
    while True:
        x = min(s[i], d[j])
        flow[(i, j)] = x
        s[i] -= x
        d[j] -= x
        if i == r - 1 and j == c - 1:
            break
        if s[i] == 0 and i < r - 1:
            i += 1
        else:
            j += 1
    basis = set(flow)
    while True:
        u, v = _potentials(basis, r, c, cost)
        entering = None
        for i in range(r):
            for j in range(c):
                if (i, j) in basis:
                    continue
                cb, cs = cost[i][j]
                if (cb - u[i][0] - v[j][0], cs - u[i][1] - v[j][1]) < (0, 0):
                    entering = (i, j)
                    break
            if entering:
                break
        if entering is None:
            return {cell: x for cell, x in flow.items() if x}
        path = _tree_path(basis, *entering)
        minus = path[0::2]
        plus = path[1::2]
        theta = min(flow[cell] for cell in minus)
        leaving = min(cell for cell in minus if flow[cell] == theta)
        flow[entering] = theta
        for cell in plus:
            flow[cell] += theta
        for cell in minus:
            flow[cell] -= theta
        basis.add(entering)
        basis.discard(leaving)
        del flow[leaving]


def wasserstein(mu: DiscreteMeasure, nu: DiscreteMeasure, cost: Cost) -> tuple[Fraction, TransportPlan]:
    """Exact 1-Wasserstein cost from ``mu`` to ``nu`` and one optimal basic plan.

    ``cost`` is a callable ``cost(u, v)`` or a nested mapping; infinite values
    mark pairs that may not carry mass. Raises :class:`InfeasibleTransport`
    when some mass or hole cannot be matched at finite cost.
    """
    _check_measures(mu, nu)
    d = cost_function(cost)
    rows, cols = _ordered(mu), _ordered(nu)
    dist = [[d(u, v) for v in cols] for u in rows]
    for i, u in enumerate(rows):
        if all(math.isinf(x) for x in dist[i]):
            raise InfeasibleTransport(u, "mass")
    for j, v in enumerate(cols):
        if all(math.isinf(dist[i][j]) for i in range(len(rows))):
            raise InfeasibleTransport(v, "hole")
    pair_cost = [[(1, Fraction(0)) if math.isinf(x) else (0, Fraction(x)) for x in row] for row in dist]
    flow = _transport_simplex([mu[u] for u in rows], [nu[v] for v in cols], pair_cost)
    for (i, j), x in sorted(flow.items()):
        if math.isinf(dist[i][j]):
            raise InfeasibleTransport(rows[i], "mass")
    entries = {(rows[i], cols[j]): x for (i, j), x in sorted(flow.items())}
    total = sum((x * dist[i][j] for (i, j), x in flow.items()), Fraction(0))
    return total, TransportPlan(entries)


def decompose(plan: TransportPlan, cost: Cost) -> MassDecomposition:
    """Split a plan's mass by the distance it travels (must be 0, 1, 2 or 3)."""
    d = cost_function(cost)
    mus = [Fraction(0)] * 4
    for (u, v), m in plan.entries.items():
        k = d(u, v)
        if k not in (0, 1, 2, 3):
            raise TransportError(f"pair ({u!r}, {v!r}) carries mass over distance {k}, expected 0..3")
        mus[int(k)] += m
    return MassDecomposition(*mus)


def lipschitz_violations(mu, nu, f: Mapping[VertexId, Fraction], cost: Cost) -> list[tuple[VertexId, VertexId]]:
    d = cost_function(cost)
    bad = []
    for u in _ordered(mu):
        for v in _ordered(nu):
            if f[u] - f[v] > d(u, v):
                bad.append((u, v))
    return bad


def dual_bound(mu: DiscreteMeasure, nu: DiscreteMeasure, f: Mapping[VertexId, object], cost: Cost) -> Fraction:
    """``sum f*mu - sum f*nu`` for a potential that is 1-Lipschitz on mass/hole pairs.

    Any such value is a lower bound on the transport cost.
    """
    _check_measures(mu, nu)
    missing = [w for w in (*mu.support, *nu.support) if w not in f]
    if missing:
        raise TransportError(f"potential undefined at {missing[0]!r}")
    f = {w: Fraction(f[w]) for w in (*mu.support, *nu.support)}
    bad = lipschitz_violations(mu, nu, f, cost)
    if bad:
        u, v = bad[0]
        raise TransportError(f"potential is not Lipschitz on pair ({u!r}, {v!r}): f(u) - f(v) > d(u, v)")
    return sum((f[u] * m for u, m in mu.items()), Fraction(0)) - sum((f[v] * m for v, m in nu.items()), Fraction(0))


def _plan_potentials(rows, cols, dist, flow_cells) -> tuple[list[Fraction], list[Fraction]]:
    """Row/column potentials ``phi_i + psi_j <= c_ij`` with equality on the plan.

    Bellman-Ford on the residual network of the optimal plan.
    """
    r = len(rows)
    arcs = []
    for i in range(r):
        for j in range(len(cols)):
            if not math.isinf(dist[i][j]):
                arcs.append((i, r + j, Fraction(dist[i][j])))
    for i, j in flow_cells:
        arcs.append((r + j, i, -Fraction(dist[i][j])))
    pi = [Fraction(0)] * (r + len(cols))
    for _ in range(len(pi) + 1):
        changed = False
        for a, b, w in arcs:
            if pi[a] + w < pi[b]:
                pi[b] = pi[a] + w
                changed = True
        if not changed:
            break
    else:
        raise TransportError("plan is not optimal: negative residual cycle")
    return [-p for p in pi[:r]], pi[r:]


def _lp_dual(mu, nu, d) -> dict[VertexId, Fraction]:
    nodes = sorted(set(mu.support) | set(nu.support), key=vertex_sort_key)
    index = {w: k for k, w in enumerate(nodes)}
    c = [mu.get(w) - nu.get(w) for w in nodes]
    A, b = [], []
    for u in _ordered(mu):
        for v in _ordered(nu):
            if u == v or math.isinf(d(u, v)):
                continue
            row = [Fraction(0)] * len(nodes)
            row[index[u]] += 1
            row[index[v]] -= 1
            A.append(row)
            b.append(Fraction(d(u, v)))
    _, x = _lp.maximize(c, A, b)
    return dict(zip(nodes, x))


def solve_dual(mu: DiscreteMeasure, nu: DiscreteMeasure, cost: Cost) -> DualCertificate:
    """A potential maximising the dual bound over ``supp mu | supp nu``.

    Row/column potentials of the optimal plan are merged into a single function
    by a c-transform; this is exact whenever the cost obeys the directed
    triangle inequality on the supports. Otherwise the restricted dual linear
    program is solved directly.
    """
    _check_measures(mu, nu)
    d = cost_function(cost)
    rows, cols = _ordered(mu), _ordered(nu)
    _, plan = wasserstein(mu, nu, d)
    dist = [[d(u, v) for v in cols] for u in rows]
    ri = {u: i for i, u in enumerate(rows)}
    cj = {v: j for j, v in enumerate(cols)}
    flow_cells = [(ri[u], cj[v]) for u, v in plan.entries]
    _, psi = _plan_potentials(rows, cols, dist, flow_cells)
    f: dict[VertexId, Fraction] = {}
    for i, u in enumerate(rows):
        f[u] = min(Fraction(dist[i][j]) - psi[j] for j in range(len(cols)) if not math.isinf(dist[i][j]))
    for j, v in enumerate(cols):
        if v not in f:
            f[v] = max(f[u] - Fraction(dist[i][j]) for i, u in enumerate(rows) if not math.isinf(dist[i][j]))
    if lipschitz_violations(mu, nu, f, d):
        f = _lp_dual(mu, nu, d)
    base = min(f.values())
    f = {w: f[w] - base for w in sorted(f, key=vertex_sort_key)}
    return DualCertificate(f, dual_bound(mu, nu, f, d))
