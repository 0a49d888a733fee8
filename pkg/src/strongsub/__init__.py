"""Exact strong subgraph k-connectivity of small digraphs."""

from .connectivity import (
    CutCertificate,
    is_minimally_strong,
    is_strong,
    local_vertex_connectivity,
    minimal_strong_spanning_subgraph,
    strong_components,
    vertex_connectivity,
)
from .digraph import (
    Digraph,
    biorientation,
    canonical_form,
    delete_arcs,
    from_arc_list,
    is_isomorphic,
    min_degrees,
    parse_dg,
    underlying_graph,
)
from .errors import SearchLimitError, StrongSubError
from .packing import (
    KappaResult,
    Packing,
    SearchLimits,
    Subgraph,
    enumerate_candidates,
    kappa_k,
    kappa_k_after_deletions,
    kappa_S,
    kappa_S_bruteforce,
    kappa_S_decision,
    verify_packing,
)

__version__ = "0.1.0"
