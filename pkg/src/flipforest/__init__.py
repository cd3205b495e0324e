"""Flip sequences between non-crossing spanning trees of points in convex position."""

from .core import (
    Edge,
    Flip,
    FlipSeq,
    NcTree,
    Relabeling,
    apply_flip,
    cyclic_strictly_between,
    edge,
    edges_cross,
    fundamental_cycle,
    half_delta,
    relabel,
    symmetric_difference,
    validate_sequence,
    validate_tree,
)

__version__ = "0.1.0"
