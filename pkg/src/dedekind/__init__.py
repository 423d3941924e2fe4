"""Dedekind numbers from the free distributive lattice D_n.

d(n+k) for k = 1..4 is computed from the intervals of D_n, reduced by
(anti)isomorphism classes of intervals and of pairs inside an interval.
"""
from .canon import (
    IntervalClass,
    PairClass,
    classify_intervals,
    classify_pairs,
    interval_graph,
    pair_graph,
)
from .enumeration import d_plus1, d_plus2, d_plus3
from .exact import PrecisionError
from .fca import FormalContext, build_context, irreducibles, position_context
from .intervals import (
    Interval,
    IntervalTable,
    build_interval_table,
    count_intervals,
    enumerate_intervals,
)
from .known import DEDEKIND, known_value
from .labeling import ColoredGraph, canonical_key, canonical_labeling
from .lattice import Lattice, generate_lattice, join, leq, meet
from .pipeline import RunManifest, run, verify
from .rank4 import d_plus4_direct, pair_trace, trace_gamma_squared

__version__ = "0.1.0"

__all__ = [
    "ColoredGraph", "DEDEKIND", "FormalContext", "Interval", "IntervalClass",
    "IntervalTable", "Lattice", "PairClass", "PrecisionError", "RunManifest",
    "build_context", "build_interval_table", "canonical_key", "canonical_labeling",
    "classify_intervals", "classify_pairs", "count_intervals", "d_plus1", "d_plus2",
    "d_plus3", "d_plus4_direct", "enumerate_intervals", "generate_lattice",
    "interval_graph", "irreducibles", "join", "known_value", "leq", "meet",
    "pair_graph", "pair_trace", "position_context", "run", "trace_gamma_squared",
    "verify",
]
