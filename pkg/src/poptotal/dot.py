"""Graphviz DOT rendering of a graph, optionally colored and drawn on a circle."""

from __future__ import annotations

import math
from typing import List, Optional

from .embedding import CircularEmbedding
from .graph import Graph, TotalColoring

# graphviz ships a 12-color qualitative scheme; larger palettes keep only
# the palette_index attribute
_SCHEME = "set312"
_SCHEME_SIZE = 12


def _attrs(pairs: List[str]) -> str:
    return f" [{', '.join(pairs)}]" if pairs else ""


def _color_attrs(col: Optional[int], k: int, edge: bool) -> List[str]:
    if col is None:
        return []
    out = [f"palette_index={col}"]
    if k <= _SCHEME_SIZE:
        out.append(f"color={col}")
        if not edge:
            out.append(f"fillcolor={col}")
    return out


def export_dot(
    g: Graph,
    c: Optional[TotalColoring] = None,
    emb: Optional[CircularEmbedding] = None,
    radius: float = 3.0,
) -> str:
    """DOT text for ``g``; byte-identical for identical input.

    With ``c`` every node and edge carries its color as ``palette_index``.
    With ``emb`` nodes get pinned ``pos`` hints on a circle (use
    ``neato -n`` or ``fdp`` to honour them).
    """
    lines = ["graph G {"]
    graph_attrs = []
    if c is not None and c.k <= _SCHEME_SIZE:
        graph_attrs.append(f'node [colorscheme={_SCHEME}, style=filled]')
        graph_attrs.append(f'edge [colorscheme={_SCHEME}, penwidth=2]')
    if emb is not None:
        graph_attrs.append('layout=neato')
    lines += [f"  {a};" for a in graph_attrs]
    pos = {}
    if emb is not None and g.n:
        order = emb.global_order(g.n)
        for i, v in enumerate(order):
            angle = math.pi / 2 - 2 * math.pi * i / len(order)
            pos[v] = f'"{radius * math.cos(angle):.3f},{radius * math.sin(angle):.3f}!"'
    k = c.k if c is not None else 0
    for v in range(g.n):
        pairs = _color_attrs(c.get(v) if c is not None else None, k, edge=False)
        if v in pos:
            pairs.append(f"pos={pos[v]}")
        lines.append(f"  {v}{_attrs(pairs)};")
    for u, v in g.edges():
        pairs = _color_attrs(c.get((u, v)) if c is not None else None, k, edge=True)
        lines.append(f"  {u} -- {v}{_attrs(pairs)};")
    lines.append("}")
    return "\n".join(lines) + "\n"
