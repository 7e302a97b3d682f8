"""Directed hyperdistance: the fewest hyperedges needed to travel from u to v.

Traversing a hyperedge means entering it through any tail vertex and leaving
through every head vertex at once, so a breadth-first search over vertex
frontiers gives exact distances. Unreachable pairs get :data:`INFINITE`.
"""

from __future__ import annotations

import math
from collections.abc import Iterable

from .hypergraph import DirectedHypergraph, VertexId

INFINITE = math.inf


def is_infinite(d: float) -> bool:
    return d == INFINITE


def distances_from(H: DirectedHypergraph, source: VertexId, limit: float = INFINITE) -> dict[VertexId, int]:
    """Distances from ``source`` to every reachable vertex (at most ``limit`` away)."""
    H.outgoing(source)
    dist = {source: 0}
    frontier = [source]
    used: set[str] = set()
    depth = 0
    while frontier and depth < limit:
        depth += 1
        nxt = []
        for w in frontier:
            for e in H.outgoing(w):
                if e.id in used:
                    continue
                used.add(e.id)
                for v in e.head:
                    if v not in dist:
                        dist[v] = depth
                        nxt.append(v)
        frontier = nxt
    return dist


def distance(H: DirectedHypergraph, u: VertexId, v: VertexId) -> float:
    """Hyperdistance ``d(u, v)``; ``0`` when ``u == v``, :data:`INFINITE` if unreachable."""
    H.outgoing(v)
    return distances_from(H, u).get(v, INFINITE)


def distance_matrix(
    H: DirectedHypergraph, sources: Iterable[VertexId], targets: Iterable[VertexId]
) -> dict[VertexId, dict[VertexId, float]]:
    """Nested mapping ``m[u][v] == distance(H, u, v)``, one BFS per source."""
    targets = list(targets)
    for v in targets:
        H.outgoing(v)
    out = {}
    for u in sources:
        row = distances_from(H, u)
        out[u] = {v: row.get(v, INFINITE) for v in targets}
    return out
