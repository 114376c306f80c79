"""Total coloring of pseudo-outerplanar graphs.

Pseudo-outerplanar graphs are the graphs whose blocks can be drawn with all
vertices on a circle and every edge a chord crossed at most once. With
maximum degree Δ >= 5 they have total chromatic number Δ + 1; the
:mod:`poptotal.engine` module builds such colorings constructively.
"""

from .corpus import GeneratorSpec, enumerate_pseudo_outerplanar, fixture, random_pseudo_outerplanar
from .dot import export_dot
from .embedding import BlockEmbedding, CircularEmbedding, validate_embedding
from .engine import NotPseudoOuterplanar, total_color, total_color_with_trace
from .graph import Graph, TotalColoring, blocks, verify_total_coloring
from .oracle import is_k_total_colorable, total_chromatic_number
from .structure import Configuration, find_configuration, validate_configuration

__version__ = "0.1.0"

__all__ = [
    "BlockEmbedding",
    "CircularEmbedding",
    "Configuration",
    "GeneratorSpec",
    "Graph",
    "NotPseudoOuterplanar",
    "TotalColoring",
    "blocks",
    "enumerate_pseudo_outerplanar",
    "export_dot",
    "find_configuration",
    "fixture",
    "is_k_total_colorable",
    "random_pseudo_outerplanar",
    "total_chromatic_number",
    "total_color",
    "total_color_with_trace",
    "validate_configuration",
    "validate_embedding",
    "verify_total_coloring",
]
