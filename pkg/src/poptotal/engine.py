"""(M+1)-total coloring of pseudo-outerplanar graphs by reduce-and-replay.

The graph is split into blocks. Each block is shrunk one step at a time:
a vertex of degree <= 1 is peeled, otherwise a reducible configuration is
located and the matching elements are deleted. The empty graph is then
colored trivially and the steps are replayed backwards, each one extending
the coloring of the smaller graph to the larger one. Finally the block
colorings are glued at the cut vertices by permuting colors.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from .embedding import CircularEmbedding, validate_embedding
from .graph import (
    BlockDecomposition,
    Edge,
    Element,
    Graph,
    TotalColoring,
    blocks,
    delete_edge,
    delete_vertices,
    edge_key,
    element_neighbors,
    induced_subgraph,
    verify_total_coloring,
)
from .oracle import DEFAULT_MAX_ELEMENTS, find_total_coloring
from .structure import Configuration, find_configuration

log = logging.getLogger(__name__)

MIN_M = 5
LOCAL_SEARCH_CAP = 9


class NotPseudoOuterplanar(ValueError):
    """No reducible configuration exists in a residual graph of minimum
    degree >= 2, so the input cannot be pseudo-outerplanar."""


class ExtensionError(AssertionError):
    """A claim procedure hit a state its case analysis rules out."""


@dataclass(frozen=True)
class ReductionStep:
    """One shrinking step.

    Vertex and edge ids are those of the block being reduced (not the dense
    ids of the shrinking working graph). ``remap`` maps dense ids of the
    pre-step working graph to dense ids of the post-step graph; ``None``
    means the vertex set is unchanged.
    """

    tag: str
    deleted_vertices: Tuple[int, ...] = ()
    deleted_edges: Tuple[Edge, ...] = ()
    witness: Optional[Configuration] = None
    remap: Optional[Dict[int, int]] = None


@dataclass(frozen=True)
class Divergence:
    """A claim procedure failed and the local search had to finish the job."""

    tag: str
    witness: Optional[Configuration]
    reason: str


@dataclass
class Trace:
    m: Optional[int]
    decomposition: Optional[BlockDecomposition] = None
    block_steps: List[List[ReductionStep]] = field(default_factory=list)
    divergences: List[Divergence] = field(default_factory=list)
    route: str = "reduction"


class PeelResult(NamedTuple):
    core: Graph
    stack: List[int]
    remap: Dict[int, int]


# ---------------------------------------------------------------------------
# Availability and local search


def available(
    g: Graph, c: TotalColoring, element: Element, ignore: Sequence[Element] = ()
) -> List[int]:
    """Colors of ``{1..k}`` not used on any colored conflicting element.

    Elements in ``ignore`` are treated as uncolored.
    """
    skip = {edge_key(*e) if isinstance(e, tuple) else e for e in ignore}
    used = set()
    for f in element_neighbors(g, element):
        if f in skip:
            continue
        col = c.get(f)
        if col is not None:
            used.add(col)
    return [col for col in range(1, c.k + 1) if col not in used]


def _norm(e: Element) -> Element:
    return edge_key(*e) if isinstance(e, tuple) else e


def iter_exhaustive_extensions(
    g: Graph, partial: TotalColoring, elements: Sequence[Element]
) -> Iterator[TotalColoring]:
    """Every proper assignment of ``elements`` on top of ``partial``.

    Colors already on ``elements`` are discarded first.
    """
    elements = [_norm(e) for e in elements]
    work = partial.copy()
    for e in elements:
        work.unset(e)

    def rec(i: int) -> Iterator[TotalColoring]:
        if i == len(elements):
            yield work.copy()
            return
        e = elements[i]
        for col in available(g, work, e):
            work.set(e, col)
            yield from rec(i + 1)
            work.unset(e)

    yield from rec(0)


def local_exhaustive_extend(
    g: Graph,
    partial: TotalColoring,
    elements: Sequence[Element],
    m: Optional[int] = None,
    max_elements: int = LOCAL_SEARCH_CAP,
) -> Optional[TotalColoring]:
    """First proper completion of ``elements`` (smallest colors first), or None."""
    if len(elements) > max_elements:
        raise ValueError(f"{len(elements)} elements exceed the local search cap of {max_elements}")
    if m is not None and partial.k != m + 1:
        raise ValueError("palette size does not match M + 1")
    return next(iter_exhaustive_extensions(g, partial, elements), None)


def _require(cond: bool, msg: str) -> None:
    if not cond:
        raise ExtensionError(msg)


def _first(items, msg: str):
    for item in items:
        return item
    raise ExtensionError(msg)


def _color_smallest(g: Graph, c: TotalColoring, element: Element) -> None:
    free = available(g, c, element)
    _require(bool(free), f"no color left for {element}")
    c.set(element, free[0])


def _check_local(g: Graph, c: TotalColoring, elements: Sequence[Element]) -> None:
    for e in elements:
        col = c.get(e)
        _require(col is not None and 1 <= col <= c.k, f"{e} left uncolored")
        for f in element_neighbors(g, e):
            _require(c.get(f) != col, f"{e} clashes with {f}")


# ---------------------------------------------------------------------------
# Extension procedures


def extend_peel(g: Graph, partial: TotalColoring, v: int) -> TotalColoring:
    """Color a vertex of degree <= 1 and its edge."""
    c = partial.copy()
    for w in sorted(g.adjacency[v]):
        _color_smallest(g, c, edge_key(v, w))
    _color_smallest(g, c, v)
    return c


def extend_claim1(g: Graph, partial: TotalColoring, witness: Tuple[int, int]) -> TotalColoring:
    """Put back the edge uv where d(u) = 2 and d(v) <= M - 1.

    At most 2 + (d(v) - 1) <= M colors are blocked for uv once u's color is
    erased, so one of the M + 1 survives; u then avoids four colors.
    """
    u, v = witness
    c = partial.copy()
    c.unset(u)
    _color_smallest(g, c, edge_key(u, v))
    _color_smallest(g, c, u)
    _check_local(g, c, [u, edge_key(u, v)])
    return c


def extend_claim2(g: Graph, partial: TotalColoring, witness: Tuple[int, int, int, int]) -> TotalColoring:
    """Put back u and v of a 4-cycle u-x-v-y with d(u) = d(v) = 2.

    Each cycle edge keeps at least two free colors; a 4-cycle is
    2-edge-choosable, and the 16 choices are scanned directly.
    """
    u, x, v, y = witness
    ring = [edge_key(u, x), edge_key(x, v), edge_key(v, y), edge_key(y, u)]
    c = partial.copy()
    for e in ring + [u, v]:
        c.unset(e)
    lists = [available(g, c, e)[:2] for e in ring]
    _require(all(len(lst) == 2 for lst in lists), "a 4-cycle edge has fewer than two free colors")
    for pick in product(*lists):
        if all(pick[i] != pick[(i + 1) % 4] for i in range(4)):
            break
    else:
        raise ExtensionError("no list edge coloring of the 4-cycle")
    for e, col in zip(ring, pick):
        c.set(e, col)
    _color_smallest(g, c, u)
    _color_smallest(g, c, v)
    _check_local(g, c, ring + [u, v])
    return c


def extend_claim3(
    g: Graph, partial: TotalColoring, witness: Tuple[int, int, int, int], m: int
) -> TotalColoring:
    """Put back the chord uv of a 4-cycle u-x-v-y with d(u) = d(v) = 3.

    Only six elements constrain uv (after u is moved off v's color, if the
    smaller graph gave them the same one). When all M + 1 = 6 colors are taken the
    colors are renamed so ux, uy, vx, vy, u, v read 1..6 and u or v is
    recolored before uv is placed.
    """
    u, x, v, y = witness
    uv = edge_key(u, v)
    c = partial.copy()
    c.unset(uv)
    if c.get(u) == c.get(v):
        # u and v were not adjacent in G - uv; u has degree 2 there, so
        # at most five colors block it once v counts as a neighbour
        _color_smallest(g, c, u)
    free = available(g, c, uv)
    if free:
        c.set(uv, free[0])
        _check_local(g, c, [uv])
        return c
    _require(m == 5, "uv blocked although M > 5")
    named = [c.get(edge_key(u, x)), c.get(edge_key(u, y)), c.get(edge_key(v, x)),
             c.get(edge_key(v, y)), c.get(u), c.get(v)]
    _require(len(set(named)) == 6 and None not in named, "uv blocked by fewer than six colors")
    back = {i + 1: col for i, col in enumerate(named)}  # normalized -> actual
    to = {col: i for i, col in back.items()}
    cx, cy = to.get(c.get(x)), to.get(c.get(y))
    if cx != 4:
        c.set(u, back[4])
        c.set(uv, back[5])
    elif cy != 3:
        c.set(u, back[3])
        c.set(uv, back[5])
    else:
        c.set(v, back[1])
        c.set(uv, back[6])
    _check_local(g, c, [u, v, uv])
    return c


def extend_claim4(
    g: Graph, partial: TotalColoring, witness: Tuple[int, ...], m: int
) -> TotalColoring:
    """Put back u, v, w of the path x'-u-x-v-y-w-y'.

    Free lists are cut to the guaranteed sizes (one color for ux' and wy',
    two for ux = vx and vy = wy). If ux' and wy' end up with the same color
    c and c is free at ux, the colors of ux' and xx' are swapped first.
    """
    xp, u, x, v, y, w, yp = witness
    e_uxp, e_ux, e_vx = edge_key(u, xp), edge_key(u, x), edge_key(v, x)
    e_vy, e_wy, e_wyp = edge_key(v, y), edge_key(w, y), edge_key(w, yp)
    new_edges = [e_uxp, e_ux, e_vx, e_vy, e_wy, e_wyp]
    c = partial.copy()
    for e in new_edges + [u, v, w]:
        c.unset(e)

    def base(e: Edge, size: int) -> List[int]:
        lst = available(g, c, e, ignore=new_edges)
        _require(len(lst) >= size, f"{e} has fewer than {size} free colors")
        return lst[:size]

    (a1,) = base(e_uxp, 1)
    (a2,) = base(e_wyp, 1)
    inner_x, inner_y = base(e_ux, 2), base(e_vy, 2)
    _require(inner_x == base(e_vx, 2) and inner_y == base(e_wy, 2), "paired free lists differ")
    c.set(e_uxp, a1)
    c.set(e_wyp, a2)
    if a1 == a2 and a1 in inner_x:
        e_xxp = edge_key(x, xp)
        swapped = c.get(e_xxp)
        c.set(e_uxp, swapped)
        c.set(e_xxp, a1)
        a1 = swapped
        inner_x = base(e_ux, 2)
    if a1 in inner_x:
        c.set(e_ux, _first((col for col in inner_x if col != a1), "ux blocked"))
        c.set(e_vx, a1)
    else:
        vx = _first((col for col in inner_x if col != a2), "vx blocked")
        c.set(e_vx, vx)
        c.set(e_ux, _first((col for col in inner_x if col != vx), "ux blocked"))
    vx = c.get(e_vx)
    _require(vx != a2, "vx and wy' share a color")
    vy, wy = _first(
        ((p, q) for p in inner_y if p != vx for q in inner_y if q not in (a2, p)),
        "vy and wy cannot both be colored",
    )
    c.set(e_vy, vy)
    c.set(e_wy, wy)
    for z in (u, v, w):
        _color_smallest(g, c, z)
    _check_local(g, c, new_edges + [u, v, w, edge_key(x, xp)])
    return c


# ---------------------------------------------------------------------------
# Reduction


def peel_low_degree(g: Graph) -> PeelResult:
    """Repeatedly strip vertices of degree <= 1 (smallest id first)."""
    cur, ids = g, list(range(g.n))
    stack: List[int] = []
    while True:
        low = next((v for v in range(cur.n) if len(cur.adjacency[v]) <= 1), None)
        if low is None:
            break
        stack.append(ids[low])
        cur, remap = delete_vertices(cur, [low])
        ids = [ids[old] for old in sorted(remap, key=remap.get)]
    return PeelResult(cur, stack, {old: new for new, old in enumerate(ids)})


def _reduce(g: Graph) -> List[ReductionStep]:
    cur, ids = g, list(range(g.n))
    steps: List[ReductionStep] = []
    while cur.n:
        low = next((v for v in range(cur.n) if len(cur.adjacency[v]) <= 1), None)
        if low is not None:
            tag, cfg, dead_v, dead_e = "PEEL", None, [low], []
        else:
            cfg = find_configuration(cur)
            if cfg is None:
                raise NotPseudoOuterplanar(
                    f"no reducible configuration in a residual graph with {cur.n} vertices, "
                    f"{cur.edge_count} edges and minimum degree {cur.min_degree()}"
                )
            vs, tag = cfg.vertices, cfg.variant
            if tag == "C1":
                dead_v, dead_e = [], [(vs[0], vs[1])]
            elif tag == "C2":
                dead_v, dead_e = [vs[0], vs[2]], []
            elif tag == "C3":
                dead_v, dead_e = [], [(vs[0], vs[2])]
            else:
                dead_v, dead_e = [vs[1], vs[3], vs[5]], []
            cfg = Configuration(tag, tuple(ids[v] for v in vs))
        gone = {edge_key(a, b) for a in dead_v for b in cur.adjacency[a]} | {edge_key(*e) for e in dead_e}
        step_vertices = tuple(sorted(ids[v] for v in dead_v))
        step_edges = tuple(sorted(edge_key(ids[a], ids[b]) for a, b in gone))
        if dead_v:
            cur, remap = delete_vertices(cur, dead_v)
            ids = [ids[old] for old in sorted(remap, key=remap.get)]
        else:
            remap = None
            cur = delete_edge(cur, *dead_e[0])
        steps.append(ReductionStep(tag, step_vertices, step_edges, cfg, remap))
    return steps


def _replay_step(
    g: Graph, c: TotalColoring, step: ReductionStep, m: int, trace: Optional[Trace]
) -> TotalColoring:
    cfg = step.witness
    try:
        if step.tag == "PEEL":
            return extend_peel(g, c, step.deleted_vertices[0])
        assert cfg is not None
        if step.tag == "C1":
            return extend_claim1(g, c, cfg.vertices)
        if step.tag == "C2":
            return extend_claim2(g, c, cfg.vertices)
        if step.tag == "C3":
            return extend_claim3(g, c, cfg.vertices, m)
        return extend_claim4(g, c, cfg.vertices, m)
    except ExtensionError as exc:
        elements: List[Element] = list(step.deleted_vertices) + list(step.deleted_edges)
        if step.tag == "C1":
            elements.append(cfg.vertices[0])
        elif step.tag == "C3":
            elements += [cfg.vertices[0], cfg.vertices[2]]
        log.warning("claim procedure %s diverged on %s: %s", step.tag, cfg, exc)
        if trace is not None:
            trace.divergences.append(Divergence(step.tag, cfg, str(exc)))
        done = local_exhaustive_extend(g, c, elements, max_elements=len(elements))
        if done is None:
            raise
        return done


def _color_block(g: Graph, m: int, check: bool, trace: Optional[Trace]) -> TotalColoring:
    steps = _reduce(g)
    if trace is not None:
        trace.block_steps.append(steps)
    adj: List[set] = [set() for _ in range(g.n)]
    c = TotalColoring(m + 1)
    for step in reversed(steps):
        for a, b in step.deleted_edges:
            adj[a].add(b)
            adj[b].add(a)
        host = Graph(tuple(frozenset(a) for a in adj))
        c = _replay_step(host, c, step, m, trace)
        if check:
            bad = verify_total_coloring(host, c)
            if bad is not None:
                raise ExtensionError(f"after replaying {step.tag} {step.witness}: {bad}")
    return c


# ---------------------------------------------------------------------------
# Gluing blocks


def merge_block_colorings(
    block_colorings: Sequence[TotalColoring], decomposition: BlockDecomposition, m: int
) -> TotalColoring:
    """Glue proper colorings of the blocks into one coloring of the graph.

    Blocks are visited along the block tree; each new block meets the
    colored part in exactly one cut vertex v, and its colors are permuted so
    that v keeps its color and v's new edges avoid v's old edge colors.
    """
    k = m + 1
    out = TotalColoring(k)
    done = [False] * len(decomposition.blocks)
    for start in range(len(decomposition.blocks)):
        if done[start]:
            continue
        done[start] = True
        _absorb(out, block_colorings[start], {})
        queue = [start]
        while queue:
            bi = queue.pop(0)
            for v in decomposition.block_vertices(bi):
                for bj in decomposition.block_tree.get(v, ()):
                    if done[bj]:
                        continue
                    done[bj] = True
                    _absorb(out, block_colorings[bj], _gluing_permutation(out, block_colorings[bj], v, k))
                    queue.append(bj)
    return out


def _gluing_permutation(merged: TotalColoring, block: TotalColoring, v: int, k: int) -> Dict[int, int]:
    taken = {col for e, col in merged.edge_colors.items() if v in e}
    mine = sorted(col for e, col in block.edge_colors.items() if v in e)
    target_v = merged.vertex_colors[v]
    fresh = [col for col in range(1, k + 1) if col != target_v and col not in taken]
    if len(fresh) < len(mine):
        raise ValueError(f"cut vertex {v} has more than {k - 1} incident edges")
    perm = {block.vertex_colors[v]: target_v}
    perm.update(zip(mine, fresh))
    rest_src = [col for col in range(1, k + 1) if col not in perm]
    rest_dst = [col for col in range(1, k + 1) if col not in perm.values()]
    perm.update(zip(rest_src, rest_dst))
    return perm


def _absorb(out: TotalColoring, block: TotalColoring, perm: Dict[int, int]) -> None:
    for v, col in block.vertex_colors.items():
        out.vertex_colors[v] = perm.get(col, col)
    for e, col in block.edge_colors.items():
        out.edge_colors[e] = perm.get(col, col)


# ---------------------------------------------------------------------------
# Entry points


def _split(g: Graph) -> Tuple[BlockDecomposition, List[Tuple[Graph, List[int]]]]:
    dec = blocks(g)
    parts = []
    for i in range(len(dec.blocks)):
        verts = dec.block_vertices(i)
        sub, _ = induced_subgraph(g, verts)
        parts.append((sub, verts))
    return dec, parts


def _lift(c: TotalColoring, verts: List[int]) -> TotalColoring:
    out = TotalColoring(c.k)
    for v, col in c.vertex_colors.items():
        out.vertex_colors[verts[v]] = col
    for (a, b), col in c.edge_colors.items():
        out.edge_colors[edge_key(verts[a], verts[b])] = col
    return out


def total_color_with_trace(
    g: Graph,
    m: Optional[int] = None,
    embedding: Optional[CircularEmbedding] = None,
    check: bool = False,
    oracle_cap: int = DEFAULT_MAX_ELEMENTS,
) -> Tuple[TotalColoring, Trace]:
    """Total coloring of ``g`` together with the reduction record.

    With ``m`` given the result uses at most ``m + 1`` colors and
    ``m >= max(Δ, 5)`` is required. Without it, ``m = Δ`` when Δ >= 5;
    for Δ <= 4 blocks are colored by exact search (Δ + 2 colors, then
    Δ + 1 if possible) and the reduction with ``m = 5`` is the fallback
    when a block is too large for the search.
    """
    if embedding is not None:
        bad = validate_embedding(g, embedding)
        if bad is not None:
            raise NotPseudoOuterplanar(f"embedding violates the crossing condition: {bad}")
    delta = g.max_degree()
    if m is not None and m < max(delta, MIN_M):
        raise ValueError(f"M={m} must be at least max(Δ={delta}, {MIN_M})")
    if m is None and delta <= 4:
        found = _exact_route(g, delta, oracle_cap)
        if found is not None:
            return found
        m = MIN_M
    if m is None:
        m = delta
    trace = Trace(m)
    dec, parts = _split(g)
    trace.decomposition = dec
    colored = []
    for sub, verts in parts:
        colored.append(_lift(_color_block(sub, m, check, trace), verts))
    out = merge_block_colorings(colored, dec, m)
    for v in range(g.n):
        if not g.adjacency[v]:
            out.vertex_colors[v] = 1
    return out, trace


def _exact_route(g: Graph, delta: int, cap: int) -> Optional[Tuple[TotalColoring, Trace]]:
    dec, parts = _split(g)
    # the reduction still runs so that inputs outside the class are rejected
    steps = [_reduce(sub) for sub, _ in parts]
    if any(sub.n + sub.edge_count > cap for sub, _ in parts):
        return None
    best = None
    for k in (delta + 2, delta + 1):
        colored = []
        for sub, verts in parts:
            found = find_total_coloring(sub, k)
            if found is None:
                break
            colored.append(_lift(found, verts))
        else:
            best = (k, colored)
            continue
        break
    if best is None:  # pragma: no cover - every graph with Δ <= 4 has a (Δ+2)-total coloring
        return None
    k, colored = best
    out = merge_block_colorings(colored, dec, k - 1)
    for v in range(g.n):
        if not g.adjacency[v]:
            out.vertex_colors[v] = 1
    if g.n and not g.edge_count:
        out = TotalColoring(1, dict(out.vertex_colors))
    trace = Trace(None, dec, steps, route="exact")
    return out, trace


def total_color(
    g: Graph,
    m: Optional[int] = None,
    embedding: Optional[CircularEmbedding] = None,
    check: bool = False,
) -> TotalColoring:
    """Proper total coloring with at most ``m + 1`` colors (see
    :func:`total_color_with_trace`)."""
    return total_color_with_trace(g, m, embedding, check)[0]
