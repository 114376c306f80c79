"""Text and JSON file formats.

Edge list: first line ``"n m"``, then ``m`` lines ``"u v"`` (0-based, u < v).
Coloring JSON: ``{"k": int, "vertices": [...], "edges": [[u, v, color], ...]}``
with ``0`` marking an uncolored vertex. Embedding JSON:
``{"blocks": [{"order": [...], "edges": [[u, v], ...]}, ...]}``.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Union

from .embedding import BlockEmbedding, CircularEmbedding
from .graph import Graph, GraphError, TotalColoring, edge_key

PathLike = Union[str, Path]


class FormatError(ValueError):
    pass


def parse_edge_list(text: str) -> Graph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty edge list")
    try:
        header = [int(t) for t in lines[0]]
        if len(header) != 2:
            raise FormatError("header must be 'n m'")
        n, m = header
        edges = []
        for row in lines[1:]:
            if len(row) != 2:
                raise FormatError(f"bad edge line: {' '.join(row)!r}")
            u, v = int(row[0]), int(row[1])
            edges.append((u, v))
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from exc
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    try:
        return Graph.from_edges(n, edges)
    except GraphError as exc:
        raise FormatError(str(exc)) from exc


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    out = [f"{g.n} {len(edges)}"]
    out.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(out) + "\n"


def read_edge_list(path: PathLike) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path: PathLike) -> None:
    Path(path).write_text(format_edge_list(g))


def coloring_to_dict(c: TotalColoring, n: int) -> Dict[str, Any]:
    return {
        "k": c.k,
        "vertices": [c.vertex_colors.get(v, 0) for v in range(n)],
        "edges": [[u, v, col] for (u, v), col in sorted(c.edge_colors.items())],
    }


def coloring_from_dict(data: Dict[str, Any]) -> TotalColoring:
    try:
        k = int(data["k"])
        c = TotalColoring(k)
        for v, col in enumerate(data.get("vertices", [])):
            if int(col) != 0:
                c.vertex_colors[v] = int(col)
        for u, v, col in data.get("edges", []):
            if int(col) != 0:
                c.edge_colors[edge_key(int(u), int(v))] = int(col)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed coloring: {exc}") from exc
    return c


def read_coloring(path: PathLike) -> TotalColoring:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(str(exc)) from exc
    return coloring_from_dict(data)


def write_coloring(c: TotalColoring, n: int, path: PathLike) -> None:
    Path(path).write_text(json.dumps(coloring_to_dict(c, n)) + "\n")


def embedding_to_dict(emb: CircularEmbedding) -> Dict[str, Any]:
    return {
        "blocks": [
            {"order": list(b.order), "edges": [list(e) for e in sorted(b.edges)]}
            for b in emb.blocks
        ]
    }


def embedding_from_dict(data: Dict[str, Any]) -> CircularEmbedding:
    try:
        blocks = tuple(
            BlockEmbedding(
                tuple(int(v) for v in b["order"]),
                frozenset(edge_key(int(u), int(v)) for u, v in b["edges"]),
            )
            for b in data["blocks"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed embedding: {exc}") from exc
    return CircularEmbedding(blocks)


def read_embedding(path: PathLike) -> CircularEmbedding:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise FormatError(str(exc)) from exc
    return embedding_from_dict(data)


def write_embedding(emb: CircularEmbedding, path: PathLike) -> None:
    Path(path).write_text(json.dumps(embedding_to_dict(emb)) + "\n")
