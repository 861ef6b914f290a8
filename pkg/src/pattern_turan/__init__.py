"""Pattern Lagrangians, P-constructions and their forbidden families."""

__version__ = "0.1.0"

from .pattern import (  # noqa: F401
    Hypergraph,
    Pattern,
    PatternError,
    complete_graph_pattern,
    density_one_check,
    example_pattern,
    is_hereditary,
    link,
    link_dominance_report,
    pattern_automorphisms,
    remove_index,
    validate_pattern,
)
