"""Nilpotent graphs of finite commutative rings: construction, exact
invariants, spectra certification and theorem verdicts."""

from .graph import (
    ComponentDecomposition,
    NilpotentGraph,
    build_graph,
    components_classify,
    degree_check,
    is_bipartite_with_parts,
    to_dot,
)
from .invariants import (
    INF,
    CapExceeded,
    InvariantReport,
    chromatic_index,
    clique_number,
    compute_invariants,
    constructive_edge_coloring,
    dominating_number,
    girth,
    vertex_chromatic_number,
)
from .ring import (
    FiniteRing,
    NilData,
    RingSpec,
    build_ring,
    even_order_witness,
    is_nilpotent,
    nil_set,
    odd_halving_check,
    parse_ring_spec,
)
from .spectra import ExactMatrix, SpectrumPrediction, component_spectrum_prediction, matrix_build, nullity, verify_spectrum
from .theorems import Caps, TheoremVerdict, analyze_instance, construct_bipartition, sweep_verify, verify_instance

__version__ = "0.1.0"
