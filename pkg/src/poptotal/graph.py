"""Simple undirected graphs, total colorings and block decomposition.

Vertices are dense 0-based integers. An edge is the tuple ``(u, v)`` with
``u < v``. A total-coloring *element* is either a vertex (an ``int``) or an
edge (a ``tuple``); colors are positive integers ``1..k``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

Edge = Tuple[int, int]
Element = Union[int, Edge]


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class GraphError(ValueError):
    """Bad vertex id, missing edge, self-loop or similar structural misuse."""


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph."""

    adjacency: Tuple[FrozenSet[int], ...]

    def __post_init__(self) -> None:
        n = len(self.adjacency)
        for v, nbrs in enumerate(self.adjacency):
            for w in nbrs:
                if w == v:
                    raise GraphError(f"self-loop at vertex {v}")
                if not 0 <= w < n:
                    raise GraphError(f"neighbor {w} of {v} out of range")
                if v not in self.adjacency[w]:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj: List[set] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if v in adj[u]:
                raise GraphError(f"parallel edge ({u}, {v})")
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(frozenset(a) for a in adj))

    @classmethod
    def empty(cls, n: int = 0) -> "Graph":
        return cls(tuple(frozenset() for _ in range(n)))

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    n = vertex_count

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def neighbors(self, v: int) -> FrozenSet[int]:
        self._check(v)
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        self._check(v)
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.adjacency[u]

    def edges(self) -> List[Edge]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adjacency[u]) if u < v]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def elements(self) -> List[Element]:
        """Vertices first, then edges in sorted order."""
        return list(range(self.n)) + self.edges()

    def _check(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range for n={self.n}")


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def delete_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise GraphError(f"edge ({u}, {v}) not in graph")
    adj = list(g.adjacency)
    adj[u] = adj[u] - {v}
    adj[v] = adj[v] - {u}
    return Graph(tuple(adj))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    g._check(u)
    g._check(v)
    if u == v or g.has_edge(u, v):
        raise GraphError(f"cannot add edge ({u}, {v})")
    adj = list(g.adjacency)
    adj[u] = adj[u] | {v}
    adj[v] = adj[v] | {u}
    return Graph(tuple(adj))


def delete_vertices(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Remove ``vertices`` and relabel the survivors densely.

    Returns the subgraph and a remap table ``old id -> new id`` covering
    every surviving vertex; relative order of ids is preserved.
    """
    doomed = set(vertices)
    for v in doomed:
        g._check(v)
    remap: Dict[int, int] = {}
    for v in range(g.n):
        if v not in doomed:
            remap[v] = len(remap)
    adj = [frozenset(remap[w] for w in g.adjacency[v] if w in remap) for v in remap]
    return Graph(tuple(adj)), remap


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    keep = set(vertices)
    return delete_vertices(g, [v for v in range(g.n) if v not in keep])


def element_neighbors(g: Graph, element: Element) -> List[Element]:
    """Elements that must receive a color different from ``element``."""
    if isinstance(element, tuple):
        u, v = element
        out: List[Element] = [u, v]
        out.extend(edge_key(u, w) for w in sorted(g.adjacency[u]) if w != v)
        out.extend(edge_key(v, w) for w in sorted(g.adjacency[v]) if w != u)
        return out
    nbrs = sorted(g.adjacency[element])
    return list(nbrs) + [edge_key(element, w) for w in nbrs]


# ---------------------------------------------------------------------------
# Total colorings


@dataclass
class TotalColoring:
    """Partial or complete total coloring with palette ``{1..k}``.

    Functions in this package never mutate a coloring they receive; they
    work on :meth:`copy`.
    """

    k: int
    vertex_colors: Dict[int, int] = field(default_factory=dict)
    edge_colors: Dict[Edge, int] = field(default_factory=dict)

    def copy(self) -> "TotalColoring":
        return TotalColoring(self.k, dict(self.vertex_colors), dict(self.edge_colors))

    def get(self, element: Element) -> Optional[int]:
        if isinstance(element, tuple):
            return self.edge_colors.get(edge_key(*element))
        return self.vertex_colors.get(element)

    def set(self, element: Element, color: int) -> None:
        if isinstance(element, tuple):
            self.edge_colors[edge_key(*element)] = color
        else:
            self.vertex_colors[element] = color

    def unset(self, element: Element) -> None:
        if isinstance(element, tuple):
            self.edge_colors.pop(edge_key(*element), None)
        else:
            self.vertex_colors.pop(element, None)

    def colors_used(self) -> set:
        return set(self.vertex_colors.values()) | set(self.edge_colors.values())

    def is_complete(self, g: Graph) -> bool:
        return len(self.vertex_colors) == g.n and len(self.edge_colors) == g.edge_count

    def __len__(self) -> int:
        return len(self.vertex_colors) + len(self.edge_colors)


@dataclass(frozen=True)
class Violation:
    """One properness failure.

    ``kind`` is one of ``"color-range"``, ``"unknown-element"``,
    ``"adjacent-vertices"``, ``"incident-edges"`` or ``"edge-endpoint"``.
    For single-element kinds ``second`` is ``None``.
    """

    kind: str
    first: Element
    second: Optional[Element] = None
    color: Optional[int] = None

    def __str__(self) -> str:
        if self.second is None:
            return f"{self.kind}: {self.first} (color {self.color})"
        return f"{self.kind}: {self.first} and {self.second} share color {self.color}"


def iter_violations(g: Graph, c: TotalColoring) -> Iterator[Violation]:
    for v, col in sorted(c.vertex_colors.items()):
        if not 0 <= v < g.n:
            yield Violation("unknown-element", v, color=col)
        elif not 1 <= col <= c.k:
            yield Violation("color-range", v, color=col)
    for e, col in sorted(c.edge_colors.items()):
        if not g.has_edge(*e):
            yield Violation("unknown-element", e, color=col)
        elif not 1 <= col <= c.k:
            yield Violation("color-range", e, color=col)
    vc = c.vertex_colors
    ec = c.edge_colors
    for u, v in g.edges():
        cu, cv, cuv = vc.get(u), vc.get(v), ec.get((u, v))
        if cu is not None and cu == cv:
            yield Violation("adjacent-vertices", u, v, cu)
        if cuv is not None:
            if cuv == cu:
                yield Violation("edge-endpoint", u, (u, v), cuv)
            if cuv == cv:
                yield Violation("edge-endpoint", v, (u, v), cuv)
    for v in range(g.n):
        seen: Dict[int, Edge] = {}
        for w in sorted(g.adjacency[v]):
            e = edge_key(v, w)
            col = ec.get(e)
            if col is None:
                continue
            if col in seen:
                yield Violation("incident-edges", seen[col], e, col)
            else:
                seen[col] = e


def verify_total_coloring(g: Graph, c: TotalColoring) -> Optional[Violation]:
    """Return the first violation found, or ``None`` if ``c`` is proper.

    Only assigned elements are checked, so partial colorings are fine.
    """
    return next(iter_violations(g, c), None)


def is_proper(g: Graph, c: TotalColoring) -> bool:
    return verify_total_coloring(g, c) is None


# ---------------------------------------------------------------------------
# Blocks


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: Tuple[FrozenSet[Edge], ...]
    cut_vertices: FrozenSet[int]
    # cut vertex -> indices of the blocks containing it
    block_tree: Dict[int, Tuple[int, ...]]

    def block_vertices(self, i: int) -> List[int]:
        return sorted({v for e in self.blocks[i] for v in e})


def blocks(g: Graph) -> BlockDecomposition:
    """Biconnected components via iterative DFS with lowpoints."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    found: List[FrozenSet[Edge]] = []
    timer = 0
    for root in range(n):
        if disc[root] != -1 or not g.adjacency[root]:
            continue
        disc[root] = low[root] = timer
        timer += 1
        edge_stack: List[Edge] = []
        stack = [(root, -1, iter(sorted(g.adjacency[root])))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    edge_stack.append(edge_key(v, w))
                    disc[w] = low[w] = timer
                    timer += 1
                    stack.append((w, v, iter(sorted(g.adjacency[w]))))
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    edge_stack.append(edge_key(v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                comp = set()
                target = edge_key(parent, v)
                while True:
                    e = edge_stack.pop()
                    comp.add(e)
                    if e == target:
                        break
                found.append(frozenset(comp))
    found.sort(key=lambda b: min(b))
    membership: Dict[int, List[int]] = {}
    for i, b in enumerate(found):
        for v in {x for e in b for x in e}:
            membership.setdefault(v, []).append(i)
    tree = {v: tuple(ix) for v, ix in sorted(membership.items()) if len(ix) >= 2}
    return BlockDecomposition(tuple(found), frozenset(tree), tree)
