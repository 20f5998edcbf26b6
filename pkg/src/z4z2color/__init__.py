"""Proper Z4 x Z2 edge-colorings of cubic graphs.

A proper Z4 x Z2-coloring gives every edge a nonzero group element so that
adjacent edges differ and the three colors at each vertex sum to zero.  The
package builds such colorings from 2-factor / matching structures, repairs
structures that do not directly work, checks everything against a
brute-force oracle, and emits re-verifiable certificates.
"""

from .coloring import (
    Certificate,
    EdgeColoring,
    GroupElement,
    Witness,
    check_certificate,
    construct,
    extract,
    from_3_edge_coloring,
    verify,
    zero_sum_blocks,
)
from .factor import TwoFactor, enumerate_perfect_matchings, oddness, two_factor
from .graph import CubicGraph, EdgeSet, edge_reduction
from .graph6 import parse_graph6, to_graph6
from .oracle import brute_force_z4z2, characterization_search, is_3_edge_colorable, reduction_number, resistance
from .pipeline import PipelineConfig, PipelineReport, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CubicGraph",
    "EdgeColoring",
    "EdgeSet",
    "GroupElement",
    "PipelineConfig",
    "PipelineReport",
    "TwoFactor",
    "Witness",
    "brute_force_z4z2",
    "characterization_search",
    "check_certificate",
    "construct",
    "edge_reduction",
    "enumerate_perfect_matchings",
    "extract",
    "from_3_edge_coloring",
    "is_3_edge_colorable",
    "oddness",
    "parse_graph6",
    "reduction_number",
    "resistance",
    "run_pipeline",
    "to_graph6",
    "two_factor",
    "verify",
    "zero_sum_blocks",
]
