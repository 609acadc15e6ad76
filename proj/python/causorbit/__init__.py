"""Causal screening of time-series panels and orbit/attractor analysis.

Node sets are lists of 0-based indices; JSON reports use 1-based ids.
"""

from ._core import (
    CausalGraph,
    ConfigError,
    DomainError,
    ParseError,
    TimeSeriesTable,
    ValidationError,
    analyze_graph,
    analyze_series,
    attractors,
    basin,
    binarize,
    builtin_catalog,
    conditioning,
    correlation_matrix,
    covers,
    image,
    is_invariant,
    is_loop,
    load_table,
    orbit,
    orbit_intersection,
    pearson,
    reachability_matrix,
    run_cli,
    select_pairs,
    strongly_connected_components,
    summary_text,
    to_dot,
    weak_components,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
