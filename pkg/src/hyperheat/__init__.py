"""Directed hypergraphs: Laplacians, heat semigroups and their positivity properties."""

from .classify import ClassificationReport, classify, is_inf_contractive, is_positive_generator
from .duality import SimplicialComplex, closure, coboundary, graph_dual_report, hodge_laplacian
from .hypergraph import (
    DirectedHypergraph,
    Hyperedge,
    HypergraphError,
    dual,
    dual_laplacian,
    incidence,
    laplacian,
)
from .semigroup import heat_operator, threshold_search
from .spectra import ConvergenceError, eigh, jacobi_eigh, spectrum_of

__version__ = "0.1.0"

__all__ = [
    "ClassificationReport",
    "ConvergenceError",
    "DirectedHypergraph",
    "Hyperedge",
    "HypergraphError",
    "SimplicialComplex",
    "classify",
    "closure",
    "coboundary",
    "dual",
    "dual_laplacian",
    "eigh",
    "graph_dual_report",
    "heat_operator",
    "hodge_laplacian",
    "incidence",
    "is_inf_contractive",
    "is_positive_generator",
    "jacobi_eigh",
    "laplacian",
    "spectrum_of",
    "threshold_search",
]
