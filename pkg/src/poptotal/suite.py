"""Acceptance battery: the six checks behind ``poptotal paper-suite``.

Each ``criterion_*`` function returns a :class:`CriterionResult`; the
battery is deterministic for a fixed seed.
"""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from .corpus import GeneratorSpec, enumerate_pseudo_outerplanar, fixture, random_pseudo_outerplanar
from .engine import (
    NotPseudoOuterplanar,
    _reduce,
    _split,
    available,
    extend_claim1,
    extend_claim2,
    extend_claim3,
    extend_claim4,
    iter_exhaustive_extensions,
    local_exhaustive_extend,
    total_color,
    total_color_with_trace,
)
from .graph import Element, Graph, TotalColoring, delete_edge, edge_key, verify_total_coloring
from .oracle import (
    DEFAULT_MAX_ELEMENTS,
    find_total_coloring,
    naive_is_k_total_colorable,
    total_chromatic_number,
)
from .structure import find_configuration, validate_configuration


@dataclass
class CriterionResult:
    ident: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0
    command: str = ""
    counts: Dict[str, int] = field(default_factory=dict)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"[{verdict}] criterion {self.ident}: {self.name} ({self.detail}; {self.seconds:.1f}s)"

    def to_dict(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            del out["seconds"]
        return out


def _timed(fn: Callable[..., CriterionResult]) -> Callable[..., CriterionResult]:
    def run(*args, **kwargs) -> CriterionResult:
        start = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - start
        return res

    run.__name__ = fn.__name__
    run.__doc__ = fn.__doc__
    return run


# ---------------------------------------------------------------------------
# 1. engine on random graphs


def random_high_degree_graphs(count: int, seed: int, n_max: int = 60) -> Iterator[Tuple[GeneratorSpec, Graph]]:
    """Seeded random pseudo-outerplanar graphs with Δ >= 5, n <= n_max."""
    rng = random.Random(seed)
    made = 0
    while made < count:
        spec = GeneratorSpec(
            n=rng.randint(6, n_max),
            density=rng.choice([0.3, 0.6, 1.0]),
            seed=rng.getrandbits(32),
            include_outer_cycle=rng.random() < 0.8,
            maximal=rng.random() < 0.3,
        )
        g, _ = random_pseudo_outerplanar(spec)
        if g.max_degree() >= 5:
            made += 1
            yield spec, g


@_timed
def criterion_engine_random(count: int = 1000, seed: int = 0, budget: float = 120.0) -> CriterionResult:
    bad: List[str] = []
    divergences = 0
    start = time.perf_counter()
    for spec, g in random_high_degree_graphs(count, seed):
        delta = g.max_degree()
        try:
            c, trace = total_color_with_trace(g, m=delta)
        except NotPseudoOuterplanar as exc:
            bad.append(f"{spec}: {exc}")
            continue
        divergences += len(trace.divergences)
        problem = verify_total_coloring(g, c)
        if problem is not None or not c.is_complete(g) or len(c.colors_used()) > delta + 1:
            bad.append(f"{spec}: {problem or 'too many colors'}")
    elapsed = time.perf_counter() - start
    ok = not bad and divergences == 0 and elapsed < budget
    over = "" if elapsed < budget else f", over the {budget:.0f}s budget"
    detail = f"{count} graphs, {len(bad)} failures, {divergences} divergences{over}"
    return CriterionResult(1, "engine gives Δ+1 colors for Δ >= 5", ok, detail,
                           counts={"graphs": count, "failures": len(bad), "divergences": divergences})


# ---------------------------------------------------------------------------
# 2, 6. oracle over the enumerated corpus


@_timed
def criterion_small_graphs(n_max: int = 8) -> CriterionResult:
    graphs = high = bad = 0
    for g in enumerate_pseudo_outerplanar(n_max):
        graphs += 1
        delta = g.max_degree()
        chi = total_chromatic_number(g)
        if chi > delta + 2 or (delta >= 5 and chi != delta + 1):
            bad += 1
        high += delta >= 5
    detail = f"{graphs} graphs with n <= {n_max}, {high} with Δ >= 5, {bad} violations"
    return CriterionResult(2, "χ'' <= Δ+2, and = Δ+1 when Δ >= 5", bad == 0 and graphs > 0, detail,
                           counts={"graphs": graphs, "high_degree": high, "violations": bad})


@_timed
def criterion_lower_bound(n_max: int = 8, seed: int = 0, extra: int = 200, naive_cap: int = 14) -> CriterionResult:
    """Oracle values never drop below Δ+1; on small graphs an independent
    naive search confirms that Δ colors really are too few."""
    tested = naive_checked = bad = 0
    pool: List[Graph] = list(enumerate_pseudo_outerplanar(n_max))
    rng = random.Random(seed)
    for _ in range(extra):
        g, _ = random_pseudo_outerplanar(GeneratorSpec(rng.randint(2, 10), rng.random(), rng.getrandbits(32)))
        if g.n + g.edge_count <= DEFAULT_MAX_ELEMENTS:
            pool.append(g)
    for g in pool:
        tested += 1
        delta = g.max_degree()
        chi = total_chromatic_number(g)
        if chi < delta + 1:
            bad += 1
        if g.n + g.edge_count <= naive_cap:
            naive_checked += 1
            if naive_is_k_total_colorable(g, delta) or not naive_is_k_total_colorable(g, chi):
                bad += 1
    detail = f"{tested} graphs, {naive_checked} cross-checked naively, {bad} violations"
    return CriterionResult(6, "χ'' >= Δ+1 on every tested graph", bad == 0, detail,
                           counts={"graphs": tested, "naive": naive_checked, "violations": bad})


# ---------------------------------------------------------------------------
# 3. configurations


@_timed
def criterion_configurations(n_max: int = 9) -> CriterionResult:
    graphs = missing = invalid = 0
    by_variant: Dict[str, int] = {}
    for g in enumerate_pseudo_outerplanar(n_max, min_degree=2):
        graphs += 1
        cfg = find_configuration(g)
        if cfg is None:
            missing += 1
            continue
        by_variant[cfg.variant] = by_variant.get(cfg.variant, 0) + 1
        if not validate_configuration(g, cfg):
            invalid += 1
    spread = ", ".join(f"{k}={v}" for k, v in sorted(by_variant.items()))
    detail = f"{graphs} graphs with δ >= 2 and n <= {n_max}, {missing} without witness, {invalid} invalid ({spread})"
    return CriterionResult(3, "every δ >= 2 graph has a configuration", graphs > 0 and not missing and not invalid,
                           detail, counts={"graphs": graphs, "missing": missing, "invalid": invalid, **by_variant})


# ---------------------------------------------------------------------------
# 4. sharpness


@_timed
def criterion_sharpness() -> CriterionResult:
    g, _ = fixture("sharpness-witness")
    chi = total_chromatic_number(g)
    delta = g.max_degree()
    ok = delta == 3 and chi == 5 == delta + 2
    return CriterionResult(4, "χ''(K4) = 5 = Δ+2", ok, f"Δ={delta}, χ''={chi}")


# ---------------------------------------------------------------------------
# 5. claim procedures


@dataclass
class ClaimInstance:
    claim: str
    host: Graph
    partial: TotalColoring
    witness: Tuple[int, ...]
    m: int
    elements: List[Element]
    branch: str = ""


def claim_elements(claim: str, witness: Sequence[int], branch: str = "") -> List[Element]:
    """Elements a claim procedure may (re)color."""
    if claim == "C1":
        u, v = witness
        return [u, edge_key(u, v)]
    if claim == "C2":
        u, x, v, y = witness
        return [edge_key(u, x), edge_key(x, v), edge_key(v, y), edge_key(y, u), u, v]
    if claim == "C3":
        u, _, v, _ = witness
        return [u, v, edge_key(u, v)]
    xp, u, x, v, y, w, yp = witness
    out: List[Element] = [edge_key(u, xp), edge_key(u, x), edge_key(v, x), edge_key(v, y),
                          edge_key(w, y), edge_key(w, yp), u, v, w]
    if branch == "swap":
        out.append(edge_key(x, xp))
    return out


def _permute(c: TotalColoring, rng: random.Random) -> TotalColoring:
    perm = list(range(1, c.k + 1))
    rng.shuffle(perm)
    out = TotalColoring(c.k)
    for v, col in c.vertex_colors.items():
        out.vertex_colors[v] = perm[col - 1]
    for e, col in c.edge_colors.items():
        out.edge_colors[e] = perm[col - 1]
    return out


def _smaller_coloring(host: Graph, gone_edges: Sequence, gone_vertices: Sequence[int], k: int,
                      rng: random.Random) -> Optional[TotalColoring]:
    # color host minus the deleted elements, keeping vertex ids
    dead = {edge_key(*e) for e in gone_edges}
    dead |= {edge_key(a, b) for a in gone_vertices for b in host.adjacency[a]}
    smaller = Graph.from_edges(host.n, [e for e in host.edges() if e not in dead])
    if smaller.n + smaller.edge_count <= DEFAULT_MAX_ELEMENTS:
        c = find_total_coloring(smaller, k, seed=rng.getrandbits(32))
    else:
        c = _permute(total_color(smaller, m=k - 1), rng)
    if c is None:
        return None
    for v in gone_vertices:
        c.unset(v)
    return c


def _reduction_instances(claim: str, rng: random.Random, want: int, tries: int = 4000) -> List[ClaimInstance]:
    """Instances met while reducing random graphs, each with a random
    coloring of the smaller graph."""
    out: List[ClaimInstance] = []
    for _ in range(tries):
        if len(out) >= want:
            break
        spec = GeneratorSpec(rng.randint(5, 14), rng.choice([0.3, 0.6, 1.0]), rng.getrandbits(32))
        g, _ = random_pseudo_outerplanar(spec)
        _, parts = _split(g)
        for sub, _verts in parts:
            adj: List[set] = [set() for _ in range(sub.n)]
            steps = _reduce(sub)
            hosts = []
            for step in reversed(steps):
                for a, b in step.deleted_edges:
                    adj[a].add(b)
                    adj[b].add(a)
                hosts.append((step, Graph(tuple(frozenset(a) for a in adj))))
            for step, host in hosts:
                if step.tag != claim or len(out) >= want:
                    continue
                m = max(host.max_degree(), 5)
                partial = _smaller_coloring(host, step.deleted_edges, step.deleted_vertices, m + 1, rng)
                if partial is None:
                    continue
                wit = step.witness.vertices
                out.append(ClaimInstance(claim, host, partial, wit, m, claim_elements(claim, wit), "reduction"))
    return out


def _claim3_saturated(rng: random.Random, count: int) -> List[ClaimInstance]:
    g, _ = fixture("claim3-gadget")
    u, x, v, y = 0, 1, 2, 3
    smaller = delete_edge(g, u, v)
    # normalized pattern: ux=1 uy=2 vx=3 vy=4 u=5 v=6, with (c(x), c(y)) steering the branch
    cases = [("recolor-u", 2, None), ("recolor-u-via-y", 4, 1), ("recolor-v", 4, 3)]
    out: List[ClaimInstance] = []
    i = 0
    while len(out) < count:
        branch, cx, cy = cases[i % len(cases)]
        i += 1
        fixed = TotalColoring(6)
        for e, col in (((u, x), 1), ((u, y), 2), ((v, x), 3), ((v, y), 4)):
            fixed.set(edge_key(*e), col)
        fixed.set(u, 5)
        fixed.set(v, 6)
        fixed.set(x, cx)
        if cy is not None:
            fixed.set(y, cy)
        c = find_total_coloring(smaller, 6, fixed=fixed, seed=rng.getrandbits(32))
        if c is None:
            continue
        wit = (u, x, v, y)
        out.append(ClaimInstance("C3", g, _permute(c, rng), wit, 5, claim_elements("C3", wit), branch))
    return out


def claim4_branch(g: Graph, partial: TotalColoring, witness: Sequence[int]) -> str:
    xp, u, x, v, y, w, yp = witness
    new = claim_elements("C4", witness)[:6]
    a1 = available(g, partial, new[0], ignore=new)[0]
    a2 = available(g, partial, new[5], ignore=new)[0]
    if a1 != a2:
        return "distinct"
    return "swap" if a1 in available(g, partial, new[1], ignore=new)[:2] else "shared"


def _claim4_gadget(rng: random.Random, count: int, min_swap: int) -> List[ClaimInstance]:
    g, _ = fixture("claim4-gadget")
    wit = tuple(range(7))
    k = 6
    out: List[ClaimInstance] = []
    swaps = 0
    for _ in range(200 * count):
        if len(out) >= count and swaps >= min_swap:
            break
        partial = _smaller_coloring(g, (), (1, 3, 5), k, rng)
        branch = claim4_branch(g, partial, wit)
        if branch != "swap" and len(out) >= count - (min_swap - swaps):
            continue
        swaps += branch == "swap"
        out.append(ClaimInstance("C4", g, partial, wit, k - 1, claim_elements("C4", wit, branch), branch))
    return out


def claim_instances(claim: str, count: int = 50, seed: int = 0) -> List[ClaimInstance]:
    """``count`` instances for one claim (C1..C4), deterministic in ``seed``."""
    rng = random.Random(f"{claim}:{seed}")
    if claim in ("C1", "C2"):
        return _reduction_instances(claim, rng, count)
    if claim == "C3":
        sat = _claim3_saturated(rng, count // 2)
        return sat + _reduction_instances("C3", rng, count - len(sat))
    return _claim4_gadget(rng, count, min_swap=max(count // 5, 1))


def run_claim(inst: ClaimInstance) -> TotalColoring:
    if inst.claim == "C1":
        return extend_claim1(inst.host, inst.partial, inst.witness)
    if inst.claim == "C2":
        return extend_claim2(inst.host, inst.partial, inst.witness)
    if inst.claim == "C3":
        return extend_claim3(inst.host, inst.partial, inst.witness, inst.m)
    return extend_claim4(inst.host, inst.partial, inst.witness, inst.m)


def check_instance(inst: ClaimInstance) -> Optional[str]:
    """None when the claim procedure succeeds and exhaustive search, over
    the same elements, both finds some extension and lists this one."""
    out = run_claim(inst)
    bad = verify_total_coloring(inst.host, out)
    if bad is not None:
        return str(bad)
    if not out.is_complete(inst.host) or out.k != inst.m + 1:
        return "incomplete coloring"
    cap = max(len(inst.elements), 9)
    if local_exhaustive_extend(inst.host, inst.partial, inst.elements, max_elements=cap) is None:
        return "exhaustive search found nothing"
    if not any(ext == out for ext in iter_exhaustive_extensions(inst.host, inst.partial, inst.elements)):
        return "output not among the exhaustive extensions"
    return None


@_timed
def criterion_claims(per_claim: int = 50, seed: int = 0) -> CriterionResult:
    counts: Dict[str, int] = {}
    failures: List[str] = []
    for claim in ("C1", "C2", "C3", "C4"):
        insts = claim_instances(claim, per_claim, seed)
        counts[claim] = len(insts)
        for inst in insts:
            key = f"{claim}:{inst.branch}"
            counts[key] = counts.get(key, 0) + 1
            try:
                problem = check_instance(inst)
            except AssertionError as exc:
                problem = f"raised {exc}"
            if problem is not None:
                failures.append(f"{claim} {inst.witness}: {problem}")
    enough = all(counts.get(c, 0) >= per_claim for c in ("C1", "C2", "C3", "C4"))
    branches = counts.get("C3:recolor-v", 0) > 0 and counts.get("C4:swap", 0) > 0
    detail = ", ".join(f"{k}={v}" for k, v in sorted(counts.items())) + f"; {len(failures)} failures"
    return CriterionResult(5, "claim procedures extend every engineered instance",
                           enough and branches and not failures, detail, counts=counts)


# ---------------------------------------------------------------------------
# the whole battery


def run_suite(seed: int = 0, quick: bool = False, only: Optional[Sequence[int]] = None) -> List[CriterionResult]:
    """Run the acceptance battery; ``quick`` shrinks the corpora."""
    plan: List[Tuple[int, Callable[[], CriterionResult]]] = [
        (1, lambda: criterion_engine_random(200 if quick else 1000, seed)),
        (2, lambda: criterion_small_graphs(7 if quick else 8)),
        (3, lambda: criterion_configurations(8 if quick else 9)),
        (4, criterion_sharpness),
        (5, lambda: criterion_claims(50, seed)),
        (6, lambda: criterion_lower_bound(7 if quick else 8, seed)),
    ]
    results = []
    for ident, fn in plan:
        if only and ident not in only:
            continue
        res = fn()
        res.command = f"poptotal paper-suite --seed {seed} --only {ident}" + (" --quick" if quick else "")
        results.append(res)
    return sorted(results, key=lambda r: r.ident)
