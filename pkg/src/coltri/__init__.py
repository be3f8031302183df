"""Combinatorics of colored triangulations built from prescribed bubbles."""

from .colored_graph import (
    BLACK,
    WHITE,
    ColoredGraph,
    FaceCensus,
    GraphError,
    GraphPower,
    boundary_bubble,
    canonical_key,
    faces,
    graph_power,
    gurau_degree,
    validate,
)
from .bubble_catalog import (
    BubbleSpec,
    Pairing,
    best_pairing,
    closure,
    is_melonic,
    melonic_bubble,
    necklace_bubble,
    quartic_melonic,
    quartic_necklace,
    two_vertex_bubble,
)

from .gluing_space import GluingEnumeration, empirical_enhancement, enumerate_gluings, melonic_g2_series
from .enhancement import EnhancementRecord, inherited_enhancement, pairing_enhancement, slice_enhancement
from .stuffed_maps import CombinatorialMap, StuffedWalshMap, from_stuffed_map, projected_map, to_stuffed_map
from .quartic_gf import critical_points, dominant_critical_point, quartic_series, singular_exponent

__version__ = "0.1.0"
