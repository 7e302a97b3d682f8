"""Constant-curvature families, hypertrees and hyperloops.

Partition families connect every vertex of one part to every vertex of the
next part along a fixed pattern of arrows and never add edges inside a part:

=========================  ==========================  ============
family                     arrows                      curvature
=========================  ==========================  ============
ricci1-tripartite          A->B, B->C, C->A            1
flat-bipartite             A->B                        0
flat-tripartite            A->B, B->C, A->C            0
ricci-neg2-quadripartite   A->B, B->C, C->D, D->A      -2
=========================  ==========================  ============

With unit granularity each arrow becomes all ``|X|*|Y|`` unit edges. With
grouped granularity ``(p, q)`` the source part is cut into consecutive groups
of ``p`` vertices, the target part into groups of ``q``, and one hyperedge
joins every pair of groups.
"""

from __future__ import annotations

import random
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from .curvature import curvature_all
from .hypergraph import DirectedHypergraph, Hyperedge, Vertex, VertexId, require_valid

ARROWS: dict[str, tuple[tuple[int, int], ...]] = {
    "ricci1-tripartite": ((0, 1), (1, 2), (2, 0)),
    "flat-bipartite": ((0, 1),),
    "flat-tripartite": ((0, 1), (1, 2), (0, 2)),
    "ricci-neg2-quadripartite": ((0, 1), (1, 2), (2, 3), (3, 0)),
}
NOMINAL_KAPPA = {
    "ricci1-tripartite": Fraction(1),
    "flat-bipartite": Fraction(0),
    "flat-tripartite": Fraction(0),
    "ricci-neg2-quadripartite": Fraction(-2),
}
FAMILIES = (*ARROWS, "hypertree", "hyperloop")
PART_NAMES = "abcd"


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """What to generate.

    ``sizes`` holds the part sizes for partition families. For ``hypertree``
    it is ``[edges]`` or ``[edges, max_tail, max_head]`` (defaults 6, 4, 4).
    For ``hyperloop`` it is ``[n]`` or ``[n, p]``: one hyperedge ``A -> A``
    with ``|A| = n``, plus ``p`` outside vertices wired symmetrically
    ``P -> A`` and ``A -> P``; only ``e1`` is a hyperloop. ``granularity`` is ``None`` for unit edges or
    ``(tail_group, head_group)``.
    """

    family: str
    sizes: Sequence[int] = ()
    granularity: tuple[int, int] | None = None
    seed: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise FamilyError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        sizes = tuple(self.sizes)
        object.__setattr__(self, "sizes", sizes)
        # a hyperloop may have no context vertices
        floors = [1, 0] if self.family == "hyperloop" else [1] * len(sizes)
        if any(not isinstance(s, int) or s < lo for s, lo in zip(sizes, floors + [1] * len(sizes))):
            raise FamilyError(f"sizes must be positive integers, got {sizes}")
        if self.family in ARROWS and len(sizes) != _arity(self.family):
            raise FamilyError(f"{self.family} needs {_arity(self.family)} part sizes, got {len(sizes)}")
        if self.family == "hypertree" and len(sizes) not in (0, 1, 3):
            raise FamilyError("hypertree sizes are [edges] or [edges, max_tail, max_head]")
        if self.family == "hyperloop" and len(sizes) not in (1, 2):
            raise FamilyError("hyperloop sizes are [n] or [n, p]")
        if self.granularity is not None:
            p, q = self.granularity
            if p < 1 or q < 1:
                raise FamilyError("group sizes must be positive")
            if self.family == "ricci1-tripartite" and p != q:
                # every part is both a tail and a head; unequal cuts make the
                # in- and out-neighbourhood measures differ
                raise FamilyError("ricci1-tripartite needs equal tail and head group sizes")


def _arity(family: str) -> int:
    return 1 + max(max(a) for a in ARROWS[family])


def _chunks(items: list, size: int) -> list[list]:
    return [items[k : k + size] for k in range(0, len(items), size)]


def _partition_family(spec: FamilySpec) -> DirectedHypergraph:
    parts = [[f"{PART_NAMES[k]}{i}" for i in range(1, n + 1)] for k, n in enumerate(spec.sizes)]
    p, q = spec.granularity or (1, 1)
    edges: list[tuple[list, list]] = []
    for src, dst in ARROWS[spec.family]:
        for tail in _chunks(parts[src], p):
            for head in _chunks(parts[dst], q):
                edges.append((tail, head))
    return DirectedHypergraph.build([v for part in parts for v in part], edges)


def _hyperloop(spec: FamilySpec) -> DirectedHypergraph:
    n, p = (spec.sizes + (0,))[:2]
    A = [f"x{i}" for i in range(1, n + 1)]
    P = [f"p{i}" for i in range(1, p + 1)]
    edges = [(A, A)]
    if P:
        edges += [(P, A), (A, P)]
    return DirectedHypergraph.build(A + P, edges)


class _TreeGrower:
    def __init__(self, rng: random.Random):
        self.rng = rng
        self.vertices: list[str] = []
        self.edges: list[tuple[list, list]] = []

    def fresh(self, k: int) -> list[str]:
        new = [f"v{len(self.vertices) + i}" for i in range(1, k + 1)]
        self.vertices.extend(new)
        return new

    def attach(self, anchor: str, incoming: bool, n: int, m: int) -> None:
        """Add a hyperedge that shares only ``anchor`` with what exists so far."""
        if incoming:
            self.edges.append((self.fresh(n), [anchor] + self.fresh(m - 1)))
        else:
            self.edges.append(([anchor] + self.fresh(n - 1), self.fresh(m)))


def _hypertree(spec: FamilySpec) -> DirectedHypergraph:
    n_edges, max_tail, max_head = {0: (6, 4, 4), 1: (spec.sizes[0], 4, 4)}.get(len(spec.sizes), spec.sizes)
    rng = random.Random(spec.seed)
    g = _TreeGrower(rng)
    g.edges.append((g.fresh(rng.randint(1, max_tail)), g.fresh(rng.randint(1, max_head))))
    while len(g.edges) < n_edges:
        anchor = rng.choice(g.vertices)
        g.attach(anchor, rng.random() < 0.5, rng.randint(1, max_tail), rng.randint(1, max_head))
    return DirectedHypergraph.build(g.vertices, g.edges)


def generate(spec: FamilySpec) -> DirectedHypergraph:
    if spec.family in ARROWS:
        H = _partition_family(spec)
    elif spec.family == "hyperloop":
        H = _hyperloop(spec)
    else:
        H = _hypertree(spec)
    require_valid(H)
    return H


def hypertree_edge(n: int, k: int, m: int, k_head: int) -> DirectedHypergraph:
    """A hypertree around one hyperedge ``e1`` with the requested shape.

    ``e1`` has ``n`` tail vertices, the first ``k`` of which have no incoming
    hyperedge, and ``m`` head vertices, the first ``k_head`` of which have no
    outgoing hyperedge. Every other tail vertex is fed by one unit edge from a
    fresh vertex; every other head vertex feeds one unit edge to a fresh vertex.
    """
    if not (0 <= k <= n and 0 <= k_head <= m and n >= 1 and m >= 1):
        raise FamilyError("need 0 <= k <= n, 0 <= k_head <= m, n, m >= 1")
    tail = [f"x{i}" for i in range(1, n + 1)]
    head = [f"y{j}" for j in range(1, m + 1)]
    edges = [(tail, head)]
    edges += [([f"u{i}"], [x]) for i, x in enumerate(tail[k:], start=1)]
    edges += [([y], [f"w{j}"]) for j, y in enumerate(head[k_head:], start=1)]
    return DirectedHypergraph.build(tail + head, edges)


def with_random_weights(H: DirectedHypergraph, seed: int = 0, max_num: int = 9, max_den: int = 4) -> DirectedHypergraph:
    """Copy of ``H`` with random positive rational vertex and edge weights."""
    rng = random.Random(seed)

    def draw() -> Fraction:
        return Fraction(rng.randint(1, max_num), rng.randint(1, max_den))

    vertices = {v: Vertex(v, x.label, draw()) for v, x in H.vertices.items()}
    edges = tuple(Hyperedge(e.id, e.tail, e.head, draw()) for e in H.edges)
    return DirectedHypergraph(vertices, edges)


def hypertree_kappa(H: DirectedHypergraph, e: Hyperedge | str, weighted: bool = False) -> Fraction:
    """Closed-form curvature of a hyperedge inside a hypertree.

    ``-2`` plus the (weight) fraction of tail vertices without incoming
    hyperedges plus the fraction of head vertices without outgoing ones.
    """
    e = H.resolve(e)

    def share(members: tuple[VertexId, ...], isolated: Callable[[VertexId], bool]) -> Fraction:
        w = (lambda v: H.weight(v)) if weighted else (lambda v: Fraction(1))
        return sum((w(v) for v in members if isolated(v)), Fraction(0)) / sum((w(v) for v in members), Fraction(0))

    return -2 + share(e.tail, lambda v: not H.incoming(v)) + share(e.head, lambda v: not H.outgoing(v))


@dataclass(frozen=True)
class EdgeCheck:
    edge_id: str
    kappa: Fraction
    expected: Fraction

    @property
    def passed(self) -> bool:
        return self.kappa == self.expected


@dataclass(frozen=True)
class FamilyVerification:
    checks: list[EdgeCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[EdgeCheck]:
        return [c for c in self.checks if not c.passed]


def verify_family(
    H: DirectedHypergraph,
    expected_kappa: Fraction | int | Callable[[DirectedHypergraph, Hyperedge], Fraction],
    weighted: bool | None = None,
) -> FamilyVerification:
    """Compare every edge's curvature with ``expected_kappa`` (exact equality).

    ``expected_kappa`` is a constant or a callable ``(H, edge) -> value``.
    """
    checks = []
    for e, report in zip(H.edges, curvature_all(H, weighted=weighted)):
        want = expected_kappa(H, e) if callable(expected_kappa) else Fraction(expected_kappa)
        checks.append(EdgeCheck(e.id, report.kappa, want))
    return FamilyVerification(checks)
