"""Random and exhaustive pseudo-outerplanar graphs, plus named fixtures.

Throughout, a *drawing* is a single circular order of all vertices in which
every edge, read as a chord, is crossed by at most one other edge. A graph
has such a drawing iff each of its blocks does (blocks can be spliced into
one circle at their cut vertices without new crossings).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .embedding import CircularEmbedding, splice_orders
from .graph import Graph, blocks

MAX_ENUMERATION_N = 9


# ---------------------------------------------------------------------------
# Random generation


@dataclass(frozen=True)
class GeneratorSpec:
    """Parameters of :func:`random_pseudo_outerplanar`.

    ``density`` is the probability that a candidate chord is tried at all;
    ``maximal=True`` tries every candidate, so the drawing ends up
    saturated (no further chord can be added).
    """

    n: int
    density: float = 1.0
    seed: int = 0
    include_outer_cycle: bool = True
    maximal: bool = False


def random_pseudo_outerplanar(spec: GeneratorSpec) -> Tuple[Graph, CircularEmbedding]:
    if spec.n < 1:
        raise ValueError("n must be at least 1")
    n = spec.n
    rng = random.Random(spec.seed)
    labels = list(range(n))
    rng.shuffle(labels)  # labels[p] is the vertex sitting at circle position p
    nbr: List[set] = [set() for _ in range(n)]  # by position
    crossed = [[0] * n for _ in range(n)]

    def crossing(a: int, b: int) -> List[Tuple[int, int]]:
        hits = []
        for i in range(a + 1, b):
            for j in nbr[i]:
                if j < a or j > b:
                    hits.append((i, j))
                    if len(hits) > 1:
                        return hits
        return hits

    if spec.include_outer_cycle and n >= 3:
        for p in range(n):
            q = (p + 1) % n
            nbr[p].add(q)
            nbr[q].add(p)
    elif spec.include_outer_cycle and n == 2:
        nbr[0].add(1)
        nbr[1].add(0)
    candidates = [(a, b) for a, b in combinations(range(n), 2) if b not in nbr[a]]
    rng.shuffle(candidates)
    for a, b in candidates:
        if not spec.maximal and rng.random() >= spec.density:
            continue
        hits = crossing(a, b)
        if len(hits) > 1 or any(crossed[i][j] for i, j in hits):
            continue
        for i, j in hits:
            crossed[i][j] = crossed[j][i] = 1
            crossed[a][b] = crossed[b][a] = 1
        nbr[a].add(b)
        nbr[b].add(a)
    edges = [(labels[p], labels[q]) for p in range(n) for q in nbr[p] if p < q]
    g = Graph.from_edges(n, edges)
    return g, CircularEmbedding.from_order(g, labels)


# ---------------------------------------------------------------------------
# Canonical form (individualisation-refinement on bitmask adjacency)


def _refine(adj: Sequence[int], cells: List[List[int]]) -> List[List[int]]:
    while True:
        masks = [sum(1 << v for v in cell) for cell in cells]
        out: List[List[int]] = []
        for cell in cells:
            if len(cell) == 1:
                out.append(cell)
                continue
            groups: Dict[Tuple[int, ...], List[int]] = {}
            for v in cell:
                sig = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            out.extend(groups[s] for s in sorted(groups))
        if len(out) == len(cells):
            return out
        cells = out


def canonical_form(g: Union[Graph, Sequence[int]]) -> Tuple[int, Tuple[int, ...]]:
    """Isomorphism-invariant key: equal keys iff the graphs are isomorphic."""
    adj = _bitmasks(g) if isinstance(g, Graph) else list(g)
    n = len(adj)
    best: List[Optional[Tuple[int, ...]]] = [None]

    def leaf(cells: List[List[int]]) -> None:
        lab = [c[0] for c in cells]
        pos = {v: i for i, v in enumerate(lab)}
        rows = tuple(sum(1 << pos[w] for w in _bits(adj[v])) for v in lab)
        if best[0] is None or rows < best[0]:
            best[0] = rows

    def search(cells: List[List[int]]) -> None:
        cells = _refine(adj, cells)
        i = next((j for j, c in enumerate(cells) if len(c) > 1), None)
        if i is None:
            leaf(cells)
            return
        cell = cells[i]
        tried: List[int] = []
        for v in cell:
            # swapping twins is an automorphism fixing the partition
            if any((adj[v] & ~(1 << w)) == (adj[w] & ~(1 << v)) for w in tried):
                continue
            tried.append(v)
            search(cells[:i] + [[v], [w for w in cell if w != v]] + cells[i + 1:])

    if n:
        search([list(range(n))])
    return n, best[0] or ()


def _bitmasks(g: Graph) -> List[int]:
    return [sum(1 << w for w in g.adjacency[v]) for v in range(g.n)]


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _graph_from_masks(adj: Sequence[int]) -> Graph:
    return Graph(tuple(frozenset(_bits(m)) for m in adj))


# ---------------------------------------------------------------------------
# Drawing search for small graphs (enumeration support only)


def _block_drawing(verts: List[int], nb: Dict[int, set]) -> Optional[List[int]]:
    """Insert the vertices one by one (densest first) into a growing circle.

    Crossings between chords whose four endpoints are already on the
    circle never change later, so a chord crossed twice prunes the branch.
    """
    seq = [max(verts, key=lambda v: (len(nb[v]), -v))]
    while len(seq) < len(verts):
        placed = set(seq)
        seq.append(max((v for v in verts if v not in placed),
                       key=lambda v: (len(nb[v] & placed), len(nb[v]), -v)))
    circle: List[int] = []
    chords: List[Tuple[int, int]] = []
    count: Dict[Tuple[int, int], int] = {}

    def rec(i: int) -> bool:
        if i == len(seq):
            return True
        w = seq[i]
        new = [(w, q) for q in nb[w] if q in circle]
        # two or three points on a circle have one order up to reflection
        for at in range(1, len(circle) + 1) if i >= 3 else [len(circle)]:
            circle.insert(at, w)
            pos = {v: j for j, v in enumerate(circle)}
            bumped: List[Tuple[int, int]] = []
            ok = True
            for chord in new:
                pw, pq = sorted((pos[chord[0]], pos[chord[1]]))
                hits = [h for h in chords
                        if (pw < pos[h[0]] < pq) != (pw < pos[h[1]] < pq)
                        and chord[1] not in h]
                if len(hits) > 1:
                    ok = False
                    break
                for h in hits:
                    bumped += [h, chord]
            if ok:
                for key in bumped:
                    count[key] = count.get(key, 0) + 1
                if all(count[key] <= 1 for key in bumped):
                    chords.extend(new)
                    if rec(i + 1):
                        return True
                    del chords[len(chords) - len(new):]
                for key in bumped:
                    count[key] -= 1
            circle.pop(at)
        return False

    return list(circle) if rec(0) else None


_block_cache: Dict[Tuple[int, Tuple[int, ...]], bool] = {}


def find_drawing(g: Graph) -> Optional[List[int]]:
    """Circular order of all vertices with every edge crossed at most once.

    Exhaustive over circular orders of each block, so only meant for the
    small graphs met during enumeration.
    """
    dec = blocks(g)
    block_orders: List[List[int]] = []
    for b in dec.blocks:
        verts = sorted({v for e in b for v in e})
        nb: Dict[int, set] = {v: set() for v in verts}
        for u, v in b:
            nb[u].add(v)
            nb[v].add(u)
        key = None
        if len(verts) > 4:
            index = {v: i for i, v in enumerate(verts)}
            key = canonical_form([sum(1 << index[w] for w in nb[v]) for v in verts])
            if _block_cache.get(key) is False:
                return None
        order = _block_drawing(verts, nb)
        if key is not None:
            _block_cache[key] = order is not None
        if order is None:
            return None
        block_orders.append(order)
    return splice_orders(g.n, block_orders)


def _insert_drawing(adj: Sequence[int], order: List[int], w: int) -> Optional[List[int]]:
    # try every gap of an existing drawing for the new vertex w
    n = len(order) + 1
    for gap in range(n - 1):
        cand = order[: gap + 1] + [w] + order[gap + 1:]
        if _drawing_ok(adj, cand):
            return cand
    return None


def _drawing_ok(adj: Sequence[int], order: List[int]) -> bool:
    pos = {v: i for i, v in enumerate(order)}
    chords = [(pos[u], pos[v]) for u in order for v in _bits(adj[u]) if pos[u] < pos[v]]
    count = [0] * len(chords)
    for i, (a, b) in enumerate(chords):
        for j in range(i + 1, len(chords)):
            c, d = chords[j]
            if (a < c < b) != (a < d < b) and len({a, b, c, d}) == 4:
                count[i] += 1
                count[j] += 1
                if count[i] > 1 or count[j] > 1:
                    return False
    return True


# ---------------------------------------------------------------------------
# Exhaustive enumeration


@lru_cache(maxsize=None)
def _level(n: int, last_min_degree: int = 0) -> Tuple[Tuple[Tuple[int, ...], Tuple[int, ...]], ...]:
    """All graphs on exactly ``n`` vertices with a drawing, one per class.

    Entries are ``(bitmask adjacency, circular order)``. The class is closed
    under vertex deletion, so every member arises from a member on n - 1
    vertices plus one new vertex.
    """
    if n == 1:
        return (((0,), (0,)),)
    parents = _level(n - 1)
    parent_keys = _level_keys(n - 1)
    seen: Dict[Tuple[int, Tuple[int, ...]], Tuple[Tuple[int, ...], Tuple[int, ...]]] = {}
    rejected = set()
    w = n - 1
    for adj_h, order_h in parents:
        degs = [m.bit_count() for m in adj_h]
        if last_min_degree >= 2 and min(degs) == 0:
            continue
        must = sum(1 << v for v in range(n - 1) if degs[v] < last_min_degree)
        for s in range(1 << (n - 1)):
            if (s & must) != must or s.bit_count() < last_min_degree:
                continue
            adj = [m | ((s >> v) & 1) << w for v, m in enumerate(adj_h)] + [s]
            key = canonical_form(adj)
            if key in seen or key in rejected:
                continue
            order = _insert_drawing(adj, list(order_h), w)
            if order is None and all(canonical_form(_drop(adj, v)) in parent_keys for v in range(n - 1)):
                order = find_drawing(_graph_from_masks(adj))
            if order is None:
                rejected.add(key)
            else:
                seen[key] = (tuple(adj), tuple(order))
    return tuple(seen[k] for k in sorted(seen))


@lru_cache(maxsize=None)
def _level_keys(n: int) -> frozenset:
    return frozenset(canonical_form(adj) for adj, _ in _level(n))


def _drop(adj: Sequence[int], v: int) -> List[int]:
    low = (1 << v) - 1
    return [(m & low) | ((m >> 1) & ~low) for u, m in enumerate(adj) if u != v]


def enumerate_pseudo_outerplanar(
    n: int, min_degree: int = 0, with_embedding: bool = False
) -> Iterator[Union[Graph, Tuple[Graph, CircularEmbedding]]]:
    """Every pseudo-outerplanar graph on 1..n vertices, up to isomorphism.

    ``min_degree`` filters the output (and prunes the last level's search).
    """
    if n > MAX_ENUMERATION_N:
        raise ValueError(f"enumeration is capped at n={MAX_ENUMERATION_N}")
    for size in range(1, n + 1):
        level = _level(size, 2 if size == n and min_degree >= 2 else 0)
        for adj, order in level:
            if min(m.bit_count() for m in adj) < min_degree:
                continue
            g = _graph_from_masks(adj)
            if with_embedding:
                yield g, CircularEmbedding.from_order(g, order)
            else:
                yield g


# ---------------------------------------------------------------------------
# Fixtures


def _k(n: int) -> List[Tuple[int, int]]:
    return list(combinations(range(n), 2))


def _fixture_data(name: str) -> Tuple[int, List[Tuple[int, int]], Optional[List[int]]]:
    if name in ("K4", "sharpness-witness"):
        return 4, _k(4), [0, 1, 2, 3]
    if name == "K23":
        # parts {0, 1} and {2, 3, 4}
        return 5, [(a, b) for a in (0, 1) for b in (2, 3, 4)], [0, 2, 1, 3, 4]
    if name == "C4":
        return 4, [(0, 1), (1, 2), (2, 3), (0, 3)], [0, 1, 2, 3]
    if name == "claim3-gadget":
        # u=0 x=1 v=2 y=3 form the C3 square with chord uv; x and y reach
        # degree 5 through a fan over 4..7
        x, u, v, y, b1, b2, a2, a1 = 1, 0, 2, 3, 4, 5, 6, 7
        edges = [(u, x), (u, y), (v, x), (v, y), (u, v), (x, y),
                 (y, b1), (b1, b2), (b2, a2), (a2, a1), (a1, x), (x, a2), (y, b2)]
        return 8, edges, [x, u, v, y, b1, b2, a2, a1]
    if name == "claim4-gadget":
        # path x'-u-x-v-y-w-y' = 0..6; the outer path y'-7-8-x' and the
        # chord x'y' push x' and y' to degree 5
        xp, u, x, v, y, w, yp = range(7)
        p, q = 7, 8
        edges = [(xp, u), (u, x), (x, v), (v, y), (y, w), (w, yp),
                 (x, xp), (y, yp), (x, y), (xp, y), (x, yp),
                 (yp, p), (p, q), (q, xp), (xp, yp)]
        return 9, edges, [xp, u, x, v, y, w, yp, p, q]
    raise KeyError(f"unknown fixture {name!r}")


FIXTURES = ("K4", "K23", "C4", "claim3-gadget", "claim4-gadget", "sharpness-witness")


def fixture(name: str) -> Tuple[Graph, Optional[CircularEmbedding]]:
    n, edges, order = _fixture_data(name)
    g = Graph.from_edges(n, edges)
    return g, (CircularEmbedding.from_order(g, order) if order is not None else None)
