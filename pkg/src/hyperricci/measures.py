"""In/out neighbourhood probability measures attached to a hyperedge ``A -> B``.

The tail measure spreads one unit of mass over the tail ``A``: each tail vertex
gets an equal (or weight-proportional) share, which stays put if the vertex has
no incoming hyperedge and otherwise is split evenly over its incoming
hyperedges and then over their tails. The head measure does the same with the
head ``B``, outgoing hyperedges and their heads.

When a vertex sits in the tail of one of its own incoming hyperedges, its share
for that hyperedge stays on the vertex, which keeps the measure normalised.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from fractions import Fraction
from typing import Literal

from .hypergraph import DirectedHypergraph, Hyperedge, VertexId


class MeasureError(ValueError):
    pass


class DiscreteMeasure(Mapping):
    """Finitely supported measure with exact rational masses.

    Zero masses are dropped. Iteration follows insertion order, which for
    measures built here is deterministic.
    """

    __slots__ = ("_masses",)

    def __init__(self, masses: Mapping[VertexId, object] | None = None):
        clean: dict[VertexId, Fraction] = {}
        for v, m in (masses or {}).items():
            m = Fraction(m)
            if m < 0:
                raise MeasureError(f"negative mass {m} at {v!r}")
            if m:
                clean[v] = m
        self._masses = clean

    @classmethod
    def dirac(cls, v: VertexId) -> DiscreteMeasure:
        return cls({v: 1})

    def __getitem__(self, v: VertexId) -> Fraction:
        return self._masses[v]

    def get(self, v, default=Fraction(0)):
        return self._masses.get(v, default)

    def __iter__(self) -> Iterator[VertexId]:
        return iter(self._masses)

    def __len__(self) -> int:
        return len(self._masses)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Mapping):
            return self._masses == {k: v for k, v in other.items() if v}
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._masses.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{v!r}: {m}" for v, m in self._masses.items())
        return f"DiscreteMeasure({{{body}}})"

    @property
    def support(self) -> tuple[VertexId, ...]:
        return tuple(self._masses)

    @property
    def total(self) -> Fraction:
        return sum(self._masses.values(), Fraction(0))

    def is_probability(self) -> bool:
        return self.total == 1


def _accumulate(acc: dict[VertexId, Fraction], v: VertexId, m: Fraction) -> None:
    acc[v] = acc.get(v, Fraction(0)) + m


def _neighbourhood_measure(
    H: DirectedHypergraph,
    members: tuple[VertexId, ...],
    direction: Literal["in", "out"],
    weighted: bool,
) -> DiscreteMeasure:
    acc: dict[VertexId, Fraction] = {}
    if weighted:
        total_w = sum((H.weight(x) for x in members), Fraction(0))
    for x in members:
        share = H.weight(x) / total_w if weighted else Fraction(1, len(members))
        around = H.incoming(x) if direction == "in" else H.outgoing(x)
        if not around:
            _accumulate(acc, x, share)
            continue
        if weighted:
            edge_total = sum((f.weight for f in around), Fraction(0))
        for f in around:
            far = f.tail if direction == "in" else f.head
            if weighted:
                far_w = sum((H.weight(z) for z in far), Fraction(0))
                per_edge = share * f.weight / edge_total
                for z in far:
                    _accumulate(acc, z, per_edge * H.weight(z) / far_w)
            else:
                per_z = share / (len(around) * len(far))
                for z in far:
                    _accumulate(acc, z, per_z)
    return DiscreteMeasure(acc)


def tail_measure(H: DirectedHypergraph, e: Hyperedge | str, weighted: bool = False) -> DiscreteMeasure:
    """Mass distribution around the tail of ``e`` (incoming neighbourhood).

    With ``weighted=False`` vertex and edge weights are ignored; with
    ``weighted=True`` tail shares are proportional to vertex weight, incoming
    hyperedges are picked proportionally to edge weight, and mass inside a
    hyperedge tail is split proportionally to vertex weight.
    """
    e = H.resolve(e)
    return _neighbourhood_measure(H, e.tail, "in", weighted)


def head_measure(H: DirectedHypergraph, e: Hyperedge | str, weighted: bool = False) -> DiscreteMeasure:
    """Hole distribution around the head of ``e`` (outgoing neighbourhood)."""
    e = H.resolve(e)
    return _neighbourhood_measure(H, e.head, "out", weighted)


def vertex_measure(
    H: DirectedHypergraph, x: VertexId, direction: Literal["in", "out"], weighted: bool = False
) -> DiscreteMeasure:
    """Neighbourhood measure of a single vertex, as if it were a whole tail ("in") or head ("out")."""
    H.outgoing(x)
    return _neighbourhood_measure(H, (x,), direction, weighted)
