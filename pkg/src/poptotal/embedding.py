"""Per-block circular embeddings and the at-most-one-crossing check."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Mapping, Optional, Sequence, Tuple

from .graph import Edge, Graph, blocks, edge_key


class EmbeddingError(ValueError):
    """The embedding does not describe the graph it is paired with."""


@dataclass(frozen=True)
class BlockEmbedding:
    order: Tuple[int, ...]
    edges: FrozenSet[Edge]

    def positions(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}


@dataclass(frozen=True)
class CircularEmbedding:
    blocks: Tuple[BlockEmbedding, ...]

    @classmethod
    def from_order(cls, g: Graph, order: Sequence[int]) -> "CircularEmbedding":
        """Split one circular order of the whole vertex set into block orders.

        Restricting a circle order to a subset keeps the relative position
        of every endpoint, so crossings within a block are unchanged.
        """
        pos = {v: i for i, v in enumerate(order)}
        out = []
        for b in blocks(g).blocks:
            verts = sorted({v for e in b for v in e}, key=lambda v: pos[v])
            out.append(BlockEmbedding(tuple(verts), b))
        return cls(tuple(out))

    def global_order(self, n: int) -> List[int]:
        """One circular order of all ``n`` vertices inducing every block order."""
        return splice_orders(n, [list(b.order) for b in self.blocks])


def splice_orders(n: int, block_orders: Sequence[Sequence[int]]) -> List[int]:
    """Merge per-block circular orders into one order of ``0..n-1``.

    Walking the block tree, a child block's circle is cut open at the
    shared cut vertex and inserted right after it, so the blocks occupy
    disjoint arcs and no chords of different blocks interleave. Vertices in
    no block go last.
    """
    vertex_blocks: Dict[int, List[int]] = {}
    for i, order in enumerate(block_orders):
        for v in order:
            vertex_blocks.setdefault(v, []).append(i)
    done = [False] * len(block_orders)
    circle: List[int] = []
    for start in range(len(block_orders)):
        if done[start]:
            continue
        done[start] = True
        comp = list(block_orders[start])
        queue = [start]
        while queue:
            bi = queue.pop(0)
            for v in block_orders[bi]:
                for bj in vertex_blocks[v]:
                    if done[bj]:
                        continue
                    done[bj] = True
                    child = list(block_orders[bj])
                    k = child.index(v)
                    at = comp.index(v)
                    comp[at + 1:at + 1] = child[k + 1:] + child[:k]
                    queue.append(bj)
        circle.extend(comp)
    seen = set(circle)
    circle.extend(v for v in range(n) if v not in seen)
    return circle


@dataclass(frozen=True)
class CrossingViolation:
    block: int
    chord: Edge
    crossed_by: Tuple[Edge, ...]

    def __str__(self) -> str:
        return f"chord {self.chord} in block {self.block} is crossed by {list(self.crossed_by)}"


def _interleaved(pos: Mapping[int, int], e1: Edge, e2: Edge) -> bool:
    a, b = sorted((pos[e1[0]], pos[e1[1]]))
    c, d = pos[e2[0]], pos[e2[1]]
    return (a < c < b) != (a < d < b)


def chords_cross(order: Sequence[int], e1: Sequence[int], e2: Sequence[int]) -> bool:
    """True iff the two chords interleave on the circle ``order``.

    Chords sharing an endpoint never cross.
    """
    pos = {v: i for i, v in enumerate(order)}
    for v in (*e1, *e2):
        if v not in pos:
            raise EmbeddingError(f"vertex {v} is not on the circle")
    if set(e1) & set(e2):
        return False
    return _interleaved(pos, tuple(e1), tuple(e2))


def crossing_pairs(block: BlockEmbedding) -> Dict[Edge, List[Edge]]:
    pos = block.positions()
    chords = sorted(block.edges)
    crossed: Dict[Edge, List[Edge]] = {e: [] for e in chords}
    for i, e in enumerate(chords):
        for f in chords[i + 1:]:
            if e[0] in f or e[1] in f:
                continue
            if _interleaved(pos, e, f):
                crossed[e].append(f)
                crossed[f].append(e)
    return crossed


def _check_block(i: int, block: BlockEmbedding) -> None:
    if len(set(block.order)) != len(block.order):
        raise EmbeddingError(f"block {i}: repeated vertex in circular order")
    on_circle = set(block.order)
    touched = {v for e in block.edges for v in e}
    if touched - on_circle:
        raise EmbeddingError(f"block {i}: chord endpoints {sorted(touched - on_circle)} missing from order")
    if on_circle - touched:
        raise EmbeddingError(f"block {i}: vertices {sorted(on_circle - touched)} carry no chord")


def validate_embedding(g: Graph, emb: CircularEmbedding) -> Optional[CrossingViolation]:
    """Return ``None`` when every chord is crossed at most once.

    Raises :class:`EmbeddingError` if the embedded blocks are not exactly
    the blocks of ``g``.
    """
    expected = set(blocks(g).blocks)
    given = [b.edges for b in emb.blocks]
    if len(given) != len(set(given)) or set(given) != expected:
        raise EmbeddingError("embedding blocks do not match the blocks of the graph")
    for i, block in enumerate(emb.blocks):
        _check_block(i, block)
        for chord, others in sorted(crossing_pairs(block).items()):
            if len(others) >= 2:
                return CrossingViolation(i, chord, tuple(others))
    return None


def induced_embedding(
    emb: CircularEmbedding, sub: Graph, remap: Optional[Mapping[int, int]] = None
) -> CircularEmbedding:
    """Drawing of the subgraph ``sub`` inherited from ``emb``.

    ``remap`` maps old vertex ids to ids in ``sub`` (identity when omitted).
    Each block of ``sub`` lies inside one old block; its order is the old
    block's order restricted to the surviving vertices.
    """
    if remap is None:
        back = {v: v for v in range(sub.n)}
    else:
        back = {new: old for old, new in remap.items()}
        if len(back) != len(remap) or set(back) != set(range(sub.n)):
            raise EmbeddingError("remap table does not match the subgraph")
    owner: Dict[Edge, int] = {}
    for i, b in enumerate(emb.blocks):
        for e in b.edges:
            owner[e] = i
    out = []
    for b in blocks(sub).blocks:
        old_edges = {edge_key(back[u], back[v]) for u, v in b}
        homes = {owner.get(e) for e in old_edges}
        if None in homes or len(homes) != 1:
            raise EmbeddingError("subgraph edge is not a chord of the original embedding")
        (home,) = homes
        keep = {v for e in old_edges for v in e}
        fwd = {old: new for new, old in back.items()}
        order = tuple(fwd[v] for v in emb.blocks[home].order if v in keep)
        out.append(BlockEmbedding(order, b))
    return CircularEmbedding(tuple(out))
