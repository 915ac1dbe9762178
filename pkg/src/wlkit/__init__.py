"""Weisfeiler-Lehman color refinement: 1-WL, k-WL and k-FWL over a shared engine."""

from .engine import (
    ColorTable,
    Coloring,
    ComparisonResult,
    RefinementResult,
    Verdict,
    compare,
    refine_many,
    run_refinement,
    same_partition,
)
from .graph import (
    AtomicType,
    Graph,
    GraphError,
    apply_permutation,
    atomic_type,
    build_graph,
    generate,
    neighbors,
)
from .oracle import enumerate_graphs, is_isomorphic
from .variants import AlgorithmDescriptor, Variant, kfwl, kwl, wl1

__version__ = "0.1.0"
