"""Exact Ollivier-Ricci curvature for directed hypergraphs."""

from .curvature import (
    CurvatureError,
    CurvatureReport,
    EdgeEdit,
    curvature,
    curvature_all,
    digraph_lower_bound,
    overlap_upper_bound,
    pair_curvature,
    perturbation_delta,
)
from .generators import FamilySpec, generate, hypertree_edge, hypertree_kappa, verify_family
from .hypergraph import (
    DirectedHypergraph,
    Hyperedge,
    HypergraphError,
    Vertex,
    Violation,
    corresponding_digraph,
    edit_edge,
    in_degree,
    out_degree,
    validate,
)
from .io import DocumentError, parse, serialize
from .measures import DiscreteMeasure, MeasureError, head_measure, tail_measure
from .metric import INFINITE, distance, distance_matrix
from .transport import (
    DualCertificate,
    InfeasibleTransport,
    MassDecomposition,
    TransportError,
    TransportPlan,
    decompose,
    dual_bound,
    solve_dual,
    wasserstein,
)

__version__ = "0.1.0"
