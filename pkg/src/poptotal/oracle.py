"""Exact total coloring by backtracking over the conflict graph.

The conflict graph has one node per vertex and per edge of the input; two
nodes conflict when the elements are adjacent or incident. A k-total
coloring is a proper k-coloring of that graph.
"""

from __future__ import annotations

import random
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from .graph import Element, Graph, TotalColoring, edge_key, element_neighbors

DEFAULT_MAX_ELEMENTS = 45


class OracleCapError(ValueError):
    """The instance has more elements than the search is allowed to handle."""


def conflict_graph(g: Graph) -> Tuple[List[Element], List[List[int]]]:
    elements = g.elements()
    index = {e: i for i, e in enumerate(elements)}
    nbrs = [[index[f] for f in element_neighbors(g, e)] for e in elements]
    return elements, nbrs


def _search_order(nbrs: List[List[int]], first: Sequence[int]) -> List[int]:
    # static most-constrained-first: grow from the densest element, always
    # taking the element with most already-ordered neighbours
    n = len(nbrs)
    order = list(first)
    placed = [False] * n
    hits = [0] * n
    for i in order:
        placed[i] = True
        for j in nbrs[i]:
            hits[j] += 1
    while len(order) < n:
        best = max((i for i in range(n) if not placed[i]), key=lambda i: (hits[i], len(nbrs[i]), -i))
        order.append(best)
        placed[best] = True
        for j in nbrs[best]:
            hits[j] += 1
    return order


def _backtrack(
    nbrs: List[List[int]],
    k: int,
    fixed: Dict[int, int],
    rng: Optional[random.Random],
) -> Optional[List[int]]:
    n = len(nbrs)
    color = [0] * n
    # forbid[i][c]: number of coloured conflict-neighbours of i using colour c
    forbid = [[0] * (k + 1) for _ in range(n)]
    for i, c in fixed.items():
        if not 1 <= c <= k or forbid[i][c]:
            return None
        color[i] = c
        for j in nbrs[i]:
            forbid[j][c] += 1
    for i, c in fixed.items():
        if any(color[j] == c for j in nbrs[i]):
            return None
    order = [i for i in _search_order(nbrs, sorted(fixed)) if i not in fixed]
    symmetric = not fixed and rng is None
    palette = list(range(1, k + 1))

    def place(i: int, c: int) -> bool:
        color[i] = c
        ok = True
        for j in nbrs[i]:
            row = forbid[j]
            row[c] += 1
            if ok and not color[j] and row[c] == 1 and all(row[1:]):
                ok = False
        return ok

    def lift(i: int, c: int) -> None:
        color[i] = 0
        for j in nbrs[i]:
            forbid[j][c] -= 1

    def rec(pos: int, used: int) -> bool:
        if pos == len(order):
            return True
        i = order[pos]
        row = forbid[i]
        top = min(k, used + 1) if symmetric else k
        choices = [c for c in palette[:top] if not row[c]]
        if rng is not None:
            rng.shuffle(choices)
        for c in choices:
            if place(i, c) and rec(pos + 1, max(used, c)):
                return True
            lift(i, c)
        return False

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 100)
    try:
        return color if rec(0, 0) else None
    finally:
        sys.setrecursionlimit(limit)


def find_total_coloring(
    g: Graph,
    k: int,
    fixed: Optional[TotalColoring] = None,
    seed: Optional[int] = None,
    max_elements: Optional[int] = None,
) -> Optional[TotalColoring]:
    """A k-total coloring of ``g`` extending ``fixed``, or ``None``.

    With ``seed`` the colour tried first at every node is randomised, which
    samples diverse colorings; without it the search is deterministic and
    uses colour-permutation symmetry breaking.
    """
    if k < 1:
        raise ValueError("k must be positive")
    elements, nbrs = conflict_graph(g)
    if max_elements is not None and len(elements) > max_elements:
        raise OracleCapError(f"{len(elements)} elements exceed the cap of {max_elements}")
    index = {e: i for i, e in enumerate(elements)}
    pinned: Dict[int, int] = {}
    if fixed is not None:
        for v, c in fixed.vertex_colors.items():
            pinned[index[v]] = c
        for e, c in fixed.edge_colors.items():
            pinned[index[edge_key(*e)]] = c
    rng = random.Random(seed) if seed is not None else None
    colors = _backtrack(nbrs, k, pinned, rng)
    if colors is None:
        return None
    out = TotalColoring(k)
    for e, c in zip(elements, colors):
        out.set(e, c)
    return out


def is_k_total_colorable(
    g: Graph, k: int, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> Tuple[bool, Optional[TotalColoring]]:
    witness = find_total_coloring(g, k, max_elements=max_elements)
    return witness is not None, witness


def total_chromatic_number_with_witness(
    g: Graph, max_elements: int = DEFAULT_MAX_ELEMENTS
) -> Tuple[int, TotalColoring]:
    n_elements = g.n + g.edge_count
    if n_elements > max_elements:
        raise OracleCapError(f"{n_elements} elements exceed the cap of {max_elements}")
    if g.n == 0:
        return 0, TotalColoring(0)
    k = g.max_degree() + 1
    while True:
        witness = find_total_coloring(g, k)
        if witness is not None:
            return k, witness
        k += 1


def total_chromatic_number(g: Graph, max_elements: int = DEFAULT_MAX_ELEMENTS) -> int:
    return total_chromatic_number_with_witness(g, max_elements)[0]


def naive_is_k_total_colorable(g: Graph, k: int) -> bool:
    """Plain backtracking in a fixed walk order, no pruning tricks.

    Deliberately shares nothing with the main search beyond the graph type;
    it exists to cross-check :func:`is_k_total_colorable`.
    """
    # vertices in breadth-first order from a busiest vertex, each followed
    # by its edges not listed yet
    walk: List[int] = []
    listed = set()
    for root in sorted(range(g.n), key=lambda v: (-g.degree(v), v)):
        if root in listed:
            continue
        walk.append(root)
        listed.add(root)
        i = len(walk) - 1
        while i < len(walk):
            for u in sorted(g.adjacency[walk[i]]):
                if u not in listed:
                    walk.append(u)
                    listed.add(u)
            i += 1
    done = set()
    elements: List[Element] = []
    for v in walk:
        elements.append(v)
        elements.extend(edge_key(u, v) for u in sorted(g.adjacency[v]) if u not in done)
        done.add(v)
    earlier: List[List[int]] = []
    for i, e in enumerate(elements):
        clash = []
        for j in range(i):
            f = elements[j]
            if _conflict(g, e, f):
                clash.append(j)
        earlier.append(clash)
    colors = [0] * len(elements)

    def rec(i: int) -> bool:
        if i == len(elements):
            return True
        for c in range(1, k + 1):
            if all(colors[j] != c for j in earlier[i]):
                colors[i] = c
                if rec(i + 1):
                    return True
        colors[i] = 0
        return False

    return rec(0)


def _conflict(g: Graph, a: Element, b: Element) -> bool:
    if isinstance(a, int) and isinstance(b, int):
        return g.has_edge(a, b)
    if isinstance(a, tuple) and isinstance(b, tuple):
        return bool(set(a) & set(b))
    v, e = (a, b) if isinstance(a, int) else (b, a)
    return v in e


def naive_total_chromatic_number(g: Graph) -> int:
    if g.n == 0:
        return 0
    k = 1
    while not naive_is_k_total_colorable(g, k):
        k += 1
    return k
