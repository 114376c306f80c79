"""Detection of the four reducible configurations.

Every pseudo-outerplanar graph with minimum degree at least two contains one
of them:

* ``C1 (u, v)``: edge uv with d(u) = 2 and d(v) <= 4;
* ``C2 (u, x, v, y)``: 4-cycle u-x-v-y with d(u) = d(v) = 2;
* ``C3 (u, x, v, y)``: 4-cycle u-x-v-y with d(u) = d(v) = 3 and uv an edge;
* ``C4 (x', u, x, v, y, w, y')``: path x'-u-x-v-y-w-y' with
  d(u) = d(v) = d(w) = 2, d(x) = d(y) = 5 and edges xx', yy', xy, x'y, xy'.

A graph of minimum degree >= 2 without any of them is therefore not
pseudo-outerplanar.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Tuple

from .graph import Graph

VARIANTS = ("C1", "C2", "C3", "C4")
_ARITY = {"C1": 2, "C2": 4, "C3": 4, "C4": 7}


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class Configuration:
    variant: str
    vertices: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.variant not in _ARITY:
            raise ValueError(f"unknown variant {self.variant!r}")
        if len(self.vertices) != _ARITY[self.variant]:
            raise ValueError(f"{self.variant} takes {_ARITY[self.variant]} vertices")

    def to_dict(self) -> dict:
        return {"variant": self.variant, "vertices": list(self.vertices)}


def _c1(g: Graph) -> List[Tuple[int, ...]]:
    adj = g.adjacency
    return [(u, v) for u in range(g.n) if len(adj[u]) == 2 for v in sorted(adj[u]) if len(adj[v]) <= 4]


def _four_cycles(g: Graph, deg: int, chord: bool) -> List[Tuple[int, ...]]:
    # u and v share the neighbourhood {x, y} (plus each other when chord)
    adj = g.adjacency
    found = []
    for u in range(g.n):
        if len(adj[u]) != deg:
            continue
        if chord:
            partners = [v for v in adj[u] if len(adj[v]) == deg]
        else:
            x0 = min(adj[u])
            partners = [v for v in adj[x0] if v != u and len(adj[v]) == deg and v not in adj[u]]
        for v in partners:
            rest_u = adj[u] - {v}
            if len(rest_u) != 2 or rest_u != adj[v] - {u}:
                continue
            x, y = sorted(rest_u)
            found.append((u, x, v, y))
            found.append((u, y, v, x))
    return found


def _c4(g: Graph) -> List[Tuple[int, ...]]:
    adj = g.adjacency
    found = []
    for v in range(g.n):
        if len(adj[v]) != 2:
            continue
        for x, y in (sorted(adj[v]), sorted(adj[v])[::-1]):
            if len(adj[x]) != 5 or len(adj[y]) != 5 or y not in adj[x]:
                continue
            for u in sorted(adj[x]):
                if u == v or len(adj[u]) != 2:
                    continue
                (xp,) = adj[u] - {x}
                for w in sorted(adj[y]):
                    if w in (v, u) or len(adj[w]) != 2:
                        continue
                    (yp,) = adj[w] - {y}
                    path = (xp, u, x, v, y, w, yp)
                    if len(set(path)) == 7 and _c4_edges_ok(g, path):
                        found.append(path)
    return found


def _c4_edges_ok(g: Graph, path: Tuple[int, ...]) -> bool:
    xp, _, x, _, y, _, yp = path
    return all(g.has_edge(a, b) for a, b in ((x, xp), (y, yp), (x, y), (xp, y), (x, yp)))


def _candidates(g: Graph, variant: str) -> List[Tuple[int, ...]]:
    if variant == "C1":
        return _c1(g)
    if variant == "C2":
        return _four_cycles(g, 2, chord=False)
    if variant == "C3":
        return _four_cycles(g, 3, chord=True)
    return _c4(g)


def find_configuration(g: Graph) -> Optional[Configuration]:
    """First reducible configuration, trying C1..C4 in order.

    Within a variant the lexicographically smallest witness tuple wins.
    Raises :class:`PreconditionError` if some vertex has degree <= 1.
    """
    if g.n and g.min_degree() < 2:
        low = min(v for v in range(g.n) if len(g.adjacency[v]) < 2)
        raise PreconditionError(f"vertex {low} has degree {len(g.adjacency[low])} < 2")
    for variant in VARIANTS:
        cands = _candidates(g, variant)
        if cands:
            return Configuration(variant, min(cands))
    return None


def validate_configuration(g: Graph, cfg: Configuration) -> bool:
    vs = cfg.vertices
    if any(not 0 <= v < g.n for v in vs) or len(set(vs)) != len(vs):
        return False
    d = [g.degree(v) for v in vs]
    if cfg.variant == "C1":
        u, v = vs
        return g.has_edge(u, v) and d[0] == 2 and d[1] <= 4
    if cfg.variant in ("C2", "C3"):
        u, x, v, y = vs
        cycle = all(g.has_edge(a, b) for a, b in ((u, x), (x, v), (v, y), (y, u)))
        if cfg.variant == "C2":
            return cycle and d[0] == d[2] == 2
        return cycle and d[0] == d[2] == 3 and g.has_edge(u, v)
    xp, u, x, v, y, w, yp = vs
    path = all(g.has_edge(a, b) for a, b in zip(vs, vs[1:]))
    return path and d[1] == d[3] == d[5] == 2 and d[2] == d[4] == 5 and _c4_edges_ok(g, vs)


def all_configurations(g: Graph) -> List[Configuration]:
    """Every witness of every variant (testing aid)."""
    return [Configuration(var, t) for var in VARIANTS for t in sorted(_candidates(g, var))]


__all__ = [
    "Configuration",
    "PreconditionError",
    "VARIANTS",
    "all_configurations",
    "find_configuration",
    "validate_configuration",
]
