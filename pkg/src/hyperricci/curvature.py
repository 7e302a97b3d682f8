"""Ollivier-Ricci curvature of directed hyperedges and the bounds around it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from .hypergraph import (
    DirectedHypergraph,
    Hyperedge,
    VertexId,
    corresponding_digraph,
    edit_edge,
    require_valid,
    unit_edge_ids,
)
from .measures import DiscreteMeasure, head_measure, tail_measure, vertex_measure
from .metric import INFINITE, distances_from
from .transport import (
    DualCertificate,
    MassDecomposition,
    TransportPlan,
    decompose,
    solve_dual,
    wasserstein,
)

MAX_SUPPORT_DISTANCE = 3


class CurvatureError(RuntimeError):
    """An internal guarantee was broken (e.g. a mass farther than 3 from a hole)."""


@dataclass(frozen=True)
class CurvatureReport:
    edge_id: str
    kappa: Fraction
    wasserstein: Fraction
    decomposition: MassDecomposition
    plan: TransportPlan
    tail_measure: DiscreteMeasure
    head_measure: DiscreteMeasure
    dual: DualCertificate | None = None

    @property
    def duality_gap(self) -> Fraction | None:
        return None if self.dual is None else self.wasserstein - self.dual.bound


def _use_weights(H: DirectedHypergraph, weighted: bool | None) -> bool:
    return H.is_weighted if weighted is None else weighted


def support_distances(H: DirectedHypergraph, mu: DiscreteMeasure, nu: DiscreteMeasure) -> dict:
    """Distances from every mass to every hole; fails if any exceeds 3."""
    table = {}
    for u in mu:
        reach = distances_from(H, u, limit=MAX_SUPPORT_DISTANCE)
        row = {}
        for v in nu:
            d = reach.get(v, INFINITE)
            if d > MAX_SUPPORT_DISTANCE:
                raise CurvatureError(f"hole {v!r} is farther than {MAX_SUPPORT_DISTANCE} from mass {u!r}")
            row[v] = d
        table[u] = row
    return table


def curvature(
    H: DirectedHypergraph, e: Hyperedge | str, weighted: bool | None = None, dual: bool = False
) -> CurvatureReport:
    """Curvature ``1 - W(tail measure, head measure)`` of hyperedge ``e``.

    ``weighted=None`` uses the weighted measures exactly when ``H`` carries a
    non-unit weight. With ``dual=True`` a Kantorovich potential is attached.
    """
    e = H.resolve(e)
    w = _use_weights(H, weighted)
    mu = tail_measure(H, e, weighted=w)
    nu = head_measure(H, e, weighted=w)
    cost = support_distances(H, mu, nu)
    W, plan = wasserstein(mu, nu, cost)
    parts = decompose(plan, cost)
    kappa = 1 - W
    if parts.kappa != kappa or parts.total != 1:
        raise CurvatureError(f"mass decomposition of {e.id} is inconsistent with W={W}")
    cert = solve_dual(mu, nu, cost) if dual else None
    return CurvatureReport(e.id, kappa, W, parts, plan, mu, nu, cert)


def curvature_all(H: DirectedHypergraph, weighted: bool | None = None, dual: bool = False) -> list[CurvatureReport]:
    require_valid(H)
    w = _use_weights(H, weighted)
    return [curvature(H, e, weighted=w, dual=dual) for e in H.edges]


def pair_curvature(H: DirectedHypergraph, x: VertexId, y: VertexId, weighted: bool = False) -> Fraction:
    """Curvature of the unit step ``x -> y`` using the neighbourhoods of ``x`` and ``y`` in ``H``."""
    mu = vertex_measure(H, x, "in", weighted)
    nu = vertex_measure(H, y, "out", weighted)
    W, _ = wasserstein(mu, nu, support_distances(H, mu, nu))
    return 1 - W


def digraph_lower_bound(
    H: DirectedHypergraph,
    e: Hyperedge | str,
    weighted: bool | None = None,
    measures: Literal["hypergraph", "digraph"] = "hypergraph",
    digraph: DirectedHypergraph | None = None,
) -> Fraction:
    """Smallest curvature among the unit edges ``x -> y`` that ``e`` expands to.

    With ``measures="hypergraph"`` each unit edge is scored with the in/out
    neighbourhoods of ``x`` and ``y`` as seen in ``H``; averaging those optimal
    plans gives a plan for ``e``, so the result never exceeds ``kappa(e)``.

    ``measures="digraph"`` scores the unit edges inside the corresponding
    directed graph instead (pass ``digraph`` to reuse an expansion). There the
    neighbourhoods are reweighted by the expansion and the value is not a
    lower bound in general.
    """
    e = H.resolve(e)
    w = _use_weights(H, weighted)
    if measures == "hypergraph":
        return min(pair_curvature(H, x, y, w) for x in e.tail for y in e.head)
    if measures != "digraph":
        raise ValueError(f"unknown measures mode {measures!r}")
    G = corresponding_digraph(H) if digraph is None else digraph
    return min(curvature(G, uid, weighted=w).kappa for uid in unit_edge_ids(H, e).values())


def overlap_upper_bound(H: DirectedHypergraph, e: Hyperedge | str, weighted: bool | None = None) -> Fraction:
    """Shared mass ``sum_u min(mu(u), nu(u))`` of the tail and head measures."""
    w = _use_weights(H, weighted)
    mu, nu = tail_measure(H, e, weighted=w), head_measure(H, e, weighted=w)
    return sum((min(m, nu.get(u)) for u, m in mu.items()), Fraction(0))


@dataclass(frozen=True)
class EdgeEdit:
    remove_tail: frozenset = frozenset()
    remove_head: frozenset = frozenset()
    add_tail: tuple = ()
    add_head: tuple = ()

    @property
    def is_removal(self) -> bool:
        return not (self.add_tail or self.add_head)

    @property
    def is_addition(self) -> bool:
        return not (self.remove_tail or self.remove_head)

    def bound(self, n: int, m: int) -> Fraction:
        """Largest curvature change allowed for an edge with tail size n, head size m.

        Removing ``l`` tail and ``l'`` head vertices: ``3l/n + 3l'/m``. Adding
        them: ``3(l/(l+n) + l'/(l'+m))``. Both capped at 3; a mixed edit is
        treated as the removal followed by the addition.
        """
        l, lh = len(self.remove_tail), len(self.remove_head)
        removal = 3 * Fraction(l, n) + 3 * Fraction(lh, m)
        n2, m2 = n - l, m - lh
        a, ah = len(self.add_tail), len(self.add_head)
        addition = 3 * (Fraction(a, a + n2) + Fraction(ah, ah + m2))
        return min(min(removal, 3) + min(addition, 3), Fraction(3))


def perturbation_delta(
    H: DirectedHypergraph, e: Hyperedge | str, edit: EdgeEdit, weighted: bool | None = None
) -> tuple[Fraction, Fraction]:
    """Curvature of ``e`` before and after applying ``edit`` to it."""
    e = H.resolve(e)
    w = _use_weights(H, weighted)
    H2 = edit_edge(H, e, edit.remove_tail, edit.remove_head, edit.add_tail, edit.add_head)
    return curvature(H, e, weighted=w).kappa, curvature(H2, e.id, weighted=w).kappa
