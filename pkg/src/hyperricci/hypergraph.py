"""Directed hypergraphs: storage, validation, degrees and hyperedge edits."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any

VertexId = Hashable


class HypergraphError(ValueError):
    """Raised when an operation receives an unknown vertex/edge or an illegal edit."""


@dataclass(frozen=True)
class Vertex:
    id: VertexId
    label: str | None = None
    weight: Fraction = Fraction(1)


@dataclass(frozen=True)
class Hyperedge:
    """A directed hyperedge ``tail -> head``.

    ``tail`` and ``head`` are kept as tuples in the order given so that output
    is stable; membership tests go through :attr:`tail_set` / :attr:`head_set`.
    Duplicates are not rejected here, :func:`validate` reports them.
    """

    id: str
    tail: tuple[VertexId, ...]
    head: tuple[VertexId, ...]
    weight: Fraction = Fraction(1)

    @cached_property
    def tail_set(self) -> frozenset:
        return frozenset(self.tail)

    @cached_property
    def head_set(self) -> frozenset:
        return frozenset(self.head)

    @property
    def is_unit(self) -> bool:
        return len(self.tail) == 1 and len(self.head) == 1

    @property
    def is_hyperloop(self) -> bool:
        return bool(self.tail_set & self.head_set)

    def __str__(self) -> str:
        tail = ",".join(map(str, self.tail))
        head = ",".join(map(str, self.head))
        return f"{self.id}: {{{tail}}} -> {{{head}}}"


@dataclass(frozen=True)
class Violation:
    kind: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind} ({self.subject}): {self.message}"


@dataclass(frozen=True)
class DirectedHypergraph:
    """Vertex set plus a multiset of directed hyperedges.

    Instances are treated as immutable. Build them with :meth:`build` or the
    constructor; edits return new objects.
    """

    vertices: Mapping[VertexId, Vertex] = field(default_factory=dict)
    edges: tuple[Hyperedge, ...] = ()

    @classmethod
    def build(
        cls,
        vertices: Iterable[Any] = (),
        edges: Iterable[Any] = (),
        vertex_weights: Mapping[VertexId, Any] | None = None,
    ) -> DirectedHypergraph:
        """Convenience constructor.

        ``vertices`` may hold plain ids or :class:`Vertex` objects. ``edges``
        may hold :class:`Hyperedge` objects, ``(tail, head)`` pairs or
        ``(tail, head, weight)`` triples; ids ``e1, e2, ...`` are assigned in
        order when missing. Vertices mentioned only by edges are added.
        """
        vertex_weights = vertex_weights or {}
        vmap: dict[VertexId, Vertex] = {}
        for v in vertices:
            if not isinstance(v, Vertex):
                v = Vertex(v, weight=Fraction(vertex_weights.get(v, 1)))
            vmap[v.id] = v
        elist: list[Hyperedge] = []
        for k, e in enumerate(edges, start=1):
            if not isinstance(e, Hyperedge):
                tail, head, *rest = e
                weight = Fraction(rest[0]) if rest else Fraction(1)
                e = Hyperedge(f"e{k}", tuple(tail), tuple(head), weight)
            elist.append(e)
            for v in (*e.tail, *e.head):
                if v not in vmap:
                    vmap[v] = Vertex(v, weight=Fraction(vertex_weights.get(v, 1)))
        return cls(vmap, tuple(elist))

    def __len__(self) -> int:
        return len(self.vertices)

    def __contains__(self, v: object) -> bool:
        return v in self.vertices

    @cached_property
    def _edge_index(self) -> dict[str, Hyperedge]:
        return {e.id: e for e in self.edges}

    @cached_property
    def _incoming(self) -> dict[VertexId, tuple[Hyperedge, ...]]:
        acc: dict[VertexId, list[Hyperedge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for v in e.head_set:
                acc.setdefault(v, []).append(e)
        return {v: tuple(es) for v, es in acc.items()}

    @cached_property
    def _outgoing(self) -> dict[VertexId, tuple[Hyperedge, ...]]:
        acc: dict[VertexId, list[Hyperedge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            for v in e.tail_set:
                acc.setdefault(v, []).append(e)
        return {v: tuple(es) for v, es in acc.items()}

    def edge(self, edge_id: str) -> Hyperedge:
        try:
            return self._edge_index[edge_id]
        except KeyError:
            raise HypergraphError(f"unknown edge {edge_id!r}") from None

    def resolve(self, e: Hyperedge | str) -> Hyperedge:
        """Return the stored hyperedge for an id or an edge object."""
        if isinstance(e, Hyperedge):
            stored = self._edge_index.get(e.id)
            if stored != e:
                raise HypergraphError(f"edge {e.id!r} is not part of this hypergraph")
            return stored
        return self.edge(e)

    def _check_vertex(self, v: VertexId) -> None:
        if v not in self.vertices:
            raise HypergraphError(f"unknown vertex {v!r}")

    def incoming(self, v: VertexId) -> tuple[Hyperedge, ...]:
        """Hyperedges having ``v`` in their head, with multiplicity."""
        self._check_vertex(v)
        return self._incoming[v]

    def outgoing(self, v: VertexId) -> tuple[Hyperedge, ...]:
        """Hyperedges having ``v`` in their tail, with multiplicity."""
        self._check_vertex(v)
        return self._outgoing[v]

    def weight(self, v: VertexId) -> Fraction:
        self._check_vertex(v)
        return self.vertices[v].weight

    @property
    def is_weighted(self) -> bool:
        return any(v.weight != 1 for v in self.vertices.values()) or any(
            e.weight != 1 for e in self.edges
        )

    def replace_edge(self, edge_id: str, new: Hyperedge) -> DirectedHypergraph:
        self.edge(edge_id)
        return DirectedHypergraph(
            dict(self.vertices), tuple(new if e.id == edge_id else e for e in self.edges)
        )

    def with_edges(self, edges: Iterable[Hyperedge]) -> DirectedHypergraph:
        return DirectedHypergraph(dict(self.vertices), tuple(edges))


def validate(H: DirectedHypergraph) -> list[Violation]:
    """Check every structural invariant and return the violations found."""
    out: list[Violation] = []
    for vid, v in H.vertices.items():
        if v.id != vid:
            out.append(Violation("vertex-id-mismatch", repr(vid), f"keyed as {vid!r} but id is {v.id!r}"))
        if not v.weight > 0:
            out.append(Violation("nonpositive-weight", f"vertex {vid!r}", f"weight {v.weight} must be > 0"))
    seen: set[str] = set()
    for e in H.edges:
        subject = f"edge {e.id!r}"
        if e.id in seen:
            out.append(Violation("duplicate-edge-id", subject, "edge ids must be unique"))
        seen.add(e.id)
        for side, members in (("tail", e.tail), ("head", e.head)):
            if not members:
                out.append(Violation(f"empty-{side}", subject, f"{side} must be nonempty"))
            if len(set(members)) != len(members):
                out.append(Violation(f"duplicate-{side}-vertex", subject, f"{side} lists a vertex twice"))
            for v in members:
                if v not in H.vertices:
                    out.append(Violation("unknown-vertex", subject, f"{side} references unknown vertex {v!r}"))
        if not e.weight > 0:
            out.append(Violation("nonpositive-weight", subject, f"weight {e.weight} must be > 0"))
    return out


def require_valid(H: DirectedHypergraph) -> None:
    problems = validate(H)
    if problems:
        raise HypergraphError("invalid hypergraph: " + "; ".join(map(str, problems)))


def in_degree(H: DirectedHypergraph, v: VertexId) -> int:
    return len(H.incoming(v))


def out_degree(H: DirectedHypergraph, v: VertexId) -> int:
    return len(H.outgoing(v))


def corresponding_digraph(H: DirectedHypergraph) -> DirectedHypergraph:
    """Expand every hyperedge ``A -> B`` into the ``|A|*|B|`` unit edges ``x -> y``.

    Parallel unit edges are kept. Unit edges of the input keep their id; the
    others are named ``"<edge>:<x>-><y>"`` and inherit the hyperedge weight.
    """
    unit: list[Hyperedge] = []
    for e in H.edges:
        if e.is_unit:
            unit.append(e)
            continue
        for x in e.tail:
            for y in e.head:
                unit.append(Hyperedge(f"{e.id}:{x}->{y}", (x,), (y,), e.weight))
    return H.with_edges(unit)


def unit_edge_ids(H: DirectedHypergraph, e: Hyperedge | str) -> dict[tuple[VertexId, VertexId], str]:
    """Ids that :func:`corresponding_digraph` gives to the unit edges of ``e``."""
    e = H.resolve(e)
    if e.is_unit:
        return {(e.tail[0], e.head[0]): e.id}
    return {(x, y): f"{e.id}:{x}->{y}" for x in e.tail for y in e.head}


def edit_edge(
    H: DirectedHypergraph,
    e: Hyperedge | str,
    remove_tail: Iterable[VertexId] = (),
    remove_head: Iterable[VertexId] = (),
    add_tail: Iterable[VertexId] = (),
    add_head: Iterable[VertexId] = (),
) -> DirectedHypergraph:
    """Return a copy of ``H`` in which edge ``e`` has vertices removed/added.

    The edited edge keeps its id and weight. ``H`` is left untouched.
    """
    e = H.resolve(e)
    remove_tail, remove_head = set(remove_tail), set(remove_head)
    add_tail, add_head = list(dict.fromkeys(add_tail)), list(dict.fromkeys(add_head))
    if not remove_tail <= e.tail_set:
        raise HypergraphError(f"cannot remove {sorted(map(str, remove_tail - e.tail_set))} from tail of {e.id}")
    if not remove_head <= e.head_set:
        raise HypergraphError(f"cannot remove {sorted(map(str, remove_head - e.head_set))} from head of {e.id}")
    for v in (*add_tail, *add_head):
        H._check_vertex(v)
    tail = [v for v in e.tail if v not in remove_tail]
    head = [v for v in e.head if v not in remove_head]
    for side, current, extra in (("tail", tail, add_tail), ("head", head, add_head)):
        clash = set(current) & set(extra)
        if clash:
            raise HypergraphError(f"{sorted(map(str, clash))} already in {side} of {e.id}")
        current.extend(extra)
        if not current:
            raise HypergraphError(f"edit would leave the {side} of {e.id} empty")
    edited = Hyperedge(e.id, tuple(tail), tuple(head), e.weight)
    return H.replace_edge(e.id, edited)
