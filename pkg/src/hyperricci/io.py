"""JSON hypergraph documents with exact rational weights.

Document layout::

    {
      "version": 1,
      "vertices": [{"id": "a", "label": "optional", "weight": "1/3"}, ...],
      "edges": [{"id": "e1", "tail": ["a"], "head": ["b", "c"], "weight": "2"}, ...]
    }

Weights are strings in lowest terms (``"p/q"`` or an integer); JSON floats and
decimal strings are rejected. Edge ids default to ``e1, e2, ...`` in
document order.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any

from .hypergraph import DirectedHypergraph, Hyperedge, Vertex, validate

FORMAT_VERSION = 1
_RATIONAL = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class DocumentError(ValueError):
    pass


def format_rational(x: Fraction | int) -> str:
    return str(Fraction(x))


def parse_rational(value: Any, where: str = "value") -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"{where}: expected a rational, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if m:
            num, den = m.groups()
            if den is not None and int(den) == 0:
                raise DocumentError(f"{where}: zero denominator in {value!r}")
            return Fraction(int(num), int(den) if den else 1)
    raise DocumentError(f"{where}: {value!r} is not an exact rational (use 'p/q' or an integer)")


def _vertex_id(value: Any, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise DocumentError(f"{where}: vertex ids must be strings or integers, got {value!r}")
    return value


def from_document(doc: Any) -> DirectedHypergraph:
    """Build and validate a hypergraph from an already decoded document."""
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    version = doc.get("version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported document version {version!r}")
    unknown = set(doc) - {"version", "vertices", "edges"}
    if unknown:
        raise DocumentError(f"unknown top-level keys: {sorted(unknown)}")
    vertices: dict = {}
    for k, item in enumerate(doc.get("vertices", [])):
        where = f"vertices[{k}]"
        if not isinstance(item, dict):
            item = {"id": item}
        vid = _vertex_id(item.get("id"), where + ".id")
        if vid in vertices:
            raise DocumentError(f"{where}: duplicate vertex id {vid!r}")
        label = item.get("label")
        if label is not None and not isinstance(label, str):
            raise DocumentError(f"{where}.label must be a string")
        weight = parse_rational(item.get("weight", 1), where + ".weight")
        vertices[vid] = Vertex(vid, label, weight)
    edges = []
    for k, item in enumerate(doc.get("edges", [])):
        where = f"edges[{k}]"
        if not isinstance(item, dict):
            raise DocumentError(f"{where} must be an object")
        eid = item.get("id", f"e{k + 1}")
        if not isinstance(eid, str):
            raise DocumentError(f"{where}.id must be a string")
        sides = []
        for side in ("tail", "head"):
            members = item.get(side)
            if not isinstance(members, list):
                raise DocumentError(f"{where}.{side} must be a list of vertex ids")
            sides.append(tuple(_vertex_id(v, f"{where}.{side}") for v in members))
        weight = parse_rational(item.get("weight", 1), where + ".weight")
        edges.append(Hyperedge(eid, sides[0], sides[1], weight))
    H = DirectedHypergraph(vertices, tuple(edges))
    problems = validate(H)
    if problems:
        raise DocumentError("invalid hypergraph:\n" + "\n".join(f"  {p}" for p in problems))
    return H


def parse(text: str) -> DirectedHypergraph:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"syntax error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_document(doc)


def to_document(H: DirectedHypergraph) -> dict:
    vertices = []
    for v in H.vertices.values():
        item: dict[str, Any] = {"id": v.id}
        if v.label is not None:
            item["label"] = v.label
        if v.weight != 1:
            item["weight"] = format_rational(v.weight)
        vertices.append(item)
    edges = []
    for e in H.edges:
        item = {"id": e.id, "tail": list(e.tail), "head": list(e.head)}
        if e.weight != 1:
            item["weight"] = format_rational(e.weight)
        edges.append(item)
    return {"version": FORMAT_VERSION, "vertices": vertices, "edges": edges}


def serialize(H: DirectedHypergraph) -> str:
    return json.dumps(to_document(H), indent=2) + "\n"


def load(path) -> DirectedHypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(H: DirectedHypergraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(H))
