"""Colour-biased Hamilton cycles: constructions, matchings, rotation-extension."""

from .graph import (
    EdgeColouring,
    Graph,
    GraphError,
    HamiltonCycle,
    LinearForest,
    Matching,
    colour_class,
    colour_count_in_cycle,
    residual_ratio,
)

__version__ = "0.1.0"

__all__ = [
    "EdgeColouring",
    "Graph",
    "GraphError",
    "HamiltonCycle",
    "LinearForest",
    "Matching",
    "colour_class",
    "colour_count_in_cycle",
    "residual_ratio",
]
