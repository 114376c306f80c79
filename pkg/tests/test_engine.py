import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poptotal.corpus import GeneratorSpec, enumerate_pseudo_outerplanar, fixture, random_pseudo_outerplanar
from poptotal.embedding import CircularEmbedding
from poptotal.engine import (
    ExtensionError,
    NotPseudoOuterplanar,
    _reduce,
    available,
    extend_claim1,
    extend_claim2,
    extend_claim3,
    extend_claim4,
    local_exhaustive_extend,
    merge_block_colorings,
    peel_low_degree,
    total_color,
    total_color_with_trace,
)
from poptotal.graph import (
    Graph,
    TotalColoring,
    blocks,
    delete_edge,
    delete_vertices,
    edge_key,
    verify_total_coloring,
)
from poptotal.oracle import find_total_coloring, total_chromatic_number


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def assert_valid(g, c, max_colors):
    assert verify_total_coloring(g, c) is None
    assert c.is_complete(g)
    assert c.k <= max_colors and all(col <= max_colors for col in c.colors_used())


# -- total_color ---------------------------------------------------------------


def test_k4_with_m5():
    c = total_color(complete(4), m=5)
    assert_valid(complete(4), c, 6)


def test_star_needs_six():
    g = star(5)
    c = total_color(g, m=5)
    assert_valid(g, c, 6)
    around_center = {c.get(0)} | {c.get((0, i)) for i in range(1, 6)}
    assert len(around_center) == 6


def test_empty_and_edgeless():
    c = total_color(Graph.empty(0), m=5)
    assert len(c) == 0
    g = Graph.empty(3)
    assert_valid(g, total_color(g), 6)


def test_delta_six_uses_seven():
    seen = 0
    for seed in range(400):
        g, emb = random_pseudo_outerplanar(GeneratorSpec(20 + seed % 20, 0.3 + (seed % 7) / 10, seed))
        if g.max_degree() != 6:
            continue
        c = total_color(g, m=6, embedding=emb, check=True)
        assert_valid(g, c, 7)
        seen += 1
    assert seen >= 5


def test_m_below_bound_rejected():
    g, _ = fixture("claim4-gadget")
    with pytest.raises(ValueError):
        total_color(g, m=4)
    with pytest.raises(ValueError):
        total_color(complete(4), m=3)


def test_low_degree_route_is_exact():
    c, trace = total_color_with_trace(complete(4))
    assert trace.route == "exact"
    assert_valid(complete(4), c, 5)
    cyc = Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)])
    assert_valid(cyc, total_color(cyc), 3)


def test_low_degree_route_optimal_per_block():
    for g in enumerate_pseudo_outerplanar(6):
        if g.max_degree() > 4 or not g.edge_count:
            continue
        c = total_color(g)
        assert_valid(g, c, g.max_degree() + 2)
        assert len(c.colors_used()) == total_chromatic_number(g)


def test_not_pseudo_outerplanar():
    with pytest.raises(NotPseudoOuterplanar):
        total_color(complete(5), m=5)
    k33 = Graph.from_edges(6, [(a, b) for a in range(3) for b in range(3, 6)])
    with pytest.raises(NotPseudoOuterplanar):
        total_color(k33)


def test_bad_embedding_rejected():
    k4 = complete(4)
    wrong = CircularEmbedding.from_order(complete(5), [0, 1, 2, 3, 4])
    with pytest.raises(ValueError):
        total_color(k4, embedding=wrong)


@given(st.integers(6, 45), st.floats(0.2, 1.0), st.integers(0, 2**32), st.booleans(), st.integers(0, 2))
@settings(max_examples=120, deadline=None)
def test_end_to_end_property(n, density, seed, maximal, extra):
    g, emb = random_pseudo_outerplanar(GeneratorSpec(n, density, seed, maximal=maximal))
    m = max(g.max_degree(), 5) + extra
    c, trace = total_color_with_trace(g, m=m, embedding=emb, check=True)
    assert_valid(g, c, m + 1)
    assert not trace.divergences


def test_deterministic():
    g, _ = random_pseudo_outerplanar(GeneratorSpec(40, 0.8, 5))
    assert total_color(g) == total_color(Graph(g.adjacency))


# -- reduction record --------------------------------------------------------


def test_peel_examples():
    p4 = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])
    core, stack, _ = peel_low_degree(p4)
    assert core.n == 0 and len(stack) == 4
    tri = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    core, stack, remap = peel_low_degree(tri)
    assert (core.n, core.edge_count) == (3, 3) and stack == [3]
    assert remap == {0: 0, 1: 1, 2: 2}
    k4 = complete(4)
    core, stack, _ = peel_low_degree(k4)
    assert core == k4 and stack == []


def test_steps_shrink_and_replay():
    for seed in range(30):
        g, _ = random_pseudo_outerplanar(GeneratorSpec(18, 0.9, seed))
        for b in blocks(g).blocks:
            verts = sorted({v for e in b for v in e})
            sub, _ = delete_vertices(g, [v for v in range(g.n) if v not in verts])
            edges = set(sub.edges())
            alive = set(range(sub.n))
            size = len(alive) + len(edges)
            for step in _reduce(sub):
                assert set(step.deleted_edges) <= edges
                edges -= set(step.deleted_edges)
                alive -= set(step.deleted_vertices)
                assert all(a in alive and b in alive for a, b in edges)
                assert len(alive) + len(edges) < size
                size = len(alive) + len(edges)
            assert not alive and not edges


# -- claim procedures ----------------------------------------------------------


def _fill(g, k, fixed, seed=0):
    c = find_total_coloring(g, k, fixed=fixed, seed=seed)
    assert c is not None
    return c


def test_claim1_tight_count():
    # d(v) = 4 with M = 5: c(v), c(uw) and three edges at v leave one color
    g = Graph.from_edges(6, [(0, 1), (0, 2), (1, 3), (1, 4), (1, 5), (2, 3)])
    u, v = 0, 1
    smaller = delete_edge(g, u, v)
    fixed = TotalColoring(6, {v: 1}, {(0, 2): 2, (1, 3): 3, (1, 4): 4, (1, 5): 5})
    partial = _fill(smaller, 6, fixed)
    out = extend_claim1(g, partial, (u, v))
    assert out.get((u, v)) == 6
    assert verify_total_coloring(g, out) is None and out.is_complete(g)
    assert out.get(u) not in {out.get(v), out.get(2), out.get((0, 1)), out.get((0, 2))}


def test_claim1_roomy_case_takes_smallest():
    # d(v) = 2: uv sees c(v), c(uw) and one more edge, leaving at least three
    g = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])
    partial = _fill(delete_edge(g, 0, 1), 6, TotalColoring(6, {1: 2}, {(0, 2): 1, (1, 2): 3}))
    out = extend_claim1(g, partial, (0, 1))
    free = available(g, _without(partial, [0]), (0, 1))
    assert len(free) >= 3 and out.get((0, 1)) == free[0]


def _without(c, elements):
    out = c.copy()
    for e in elements:
        out.unset(e)
    return out


def _claim2_host():
    # square u=0 x=1 v=2 y=3; x and y carry three more edges each
    edges = [(0, 1), (1, 2), (2, 3), (0, 3), (1, 4), (1, 5), (1, 6), (3, 7), (3, 8), (3, 9)]
    return Graph.from_edges(10, edges)


def test_claim2_all_lists_equal():
    g = _claim2_host()
    fixed = TotalColoring(6, {1: 6, 3: 6}, {(1, 4): 3, (1, 5): 4, (1, 6): 5, (3, 7): 3, (3, 8): 4, (3, 9): 5})
    smaller, remap = delete_vertices(g, [0, 2])
    back = {new: old for old, new in remap.items()}
    partial = _lift(_fill(smaller, 6, _push(fixed, remap)), back)
    ring = [(0, 1), (1, 2), (2, 3), (0, 3)]
    assert all(available(g, partial, e) == [1, 2] for e in ring)
    out = extend_claim2(g, partial, (0, 1, 2, 3))
    colors = [out.get(e) for e in ring]
    assert sorted(colors) == [1, 1, 2, 2] and colors[0] != colors[1] != colors[2] != colors[3]
    assert verify_total_coloring(g, out) is None and out.is_complete(g)


def test_claim2_mixed_lists():
    g = _claim2_host()
    fixed = TotalColoring(6, {1: 6, 3: 6}, {(1, 4): 3, (1, 5): 4, (1, 6): 5, (3, 7): 1, (3, 8): 4, (3, 9): 5})
    smaller, remap = delete_vertices(g, [0, 2])
    back = {new: old for old, new in remap.items()}
    partial = _lift(_fill(smaller, 6, _push(fixed, remap)), back)
    assert available(g, partial, (2, 3)) == [2, 3]
    out = extend_claim2(g, partial, (0, 1, 2, 3))
    assert verify_total_coloring(g, out) is None and out.is_complete(g)


def _push(c, remap):
    out = TotalColoring(c.k)
    for v, col in c.vertex_colors.items():
        out.vertex_colors[remap[v]] = col
    for (a, b), col in c.edge_colors.items():
        out.edge_colors[edge_key(remap[a], remap[b])] = col
    return out


def _lift(c, back):
    out = TotalColoring(c.k)
    for v, col in c.vertex_colors.items():
        out.vertex_colors[back[v]] = col
    for (a, b), col in c.edge_colors.items():
        out.edge_colors[edge_key(back[a], back[b])] = col
    return out


def _claim3_partial(cx, cy, k=6, seed=0):
    g, _ = fixture("claim3-gadget")
    u, x, v, y = 0, 1, 2, 3
    fixed = TotalColoring(k, {u: 5, v: 6}, {(u, x): 1, (u, y): 2, (v, x): 3, (v, y): 4})
    if cx is not None:
        fixed.set(x, cx)
    if cy is not None:
        fixed.set(y, cy)
    return g, _fill(delete_edge(g, u, v), k, fixed, seed)


def test_claim3_direct_when_m_is_six():
    g, partial = _claim3_partial(None, None, k=7)
    out = extend_claim3(g, partial, (0, 1, 2, 3), 6)
    assert out.get((0, 2)) == 7 and out.get(0) == 5 and out.get(2) == 6
    assert verify_total_coloring(g, out) is None


def test_claim3_recolor_u():
    g, partial = _claim3_partial(2, None)
    out = extend_claim3(g, partial, (0, 1, 2, 3), 5)
    assert out.get(0) == 4 and out.get((0, 2)) == 5
    assert verify_total_coloring(g, out) is None and out.is_complete(g)


def test_claim3_recolor_v():
    g, partial = _claim3_partial(4, 3)
    out = extend_claim3(g, partial, (0, 1, 2, 3), 5)
    assert out.get(2) == 1 and out.get((0, 2)) == 6
    assert verify_total_coloring(g, out) is None and out.is_complete(g)


def test_claim3_handles_equal_endpoint_colors():
    # without the edge uv, u and v may share a color in the smaller graph
    g, _ = fixture("claim3-gadget")
    smaller = delete_edge(g, 0, 2)
    partial = _fill(smaller, 6, TotalColoring(6, {0: 1, 2: 1}))
    out = extend_claim3(g, partial, (0, 1, 2, 3), 5)
    assert verify_total_coloring(g, out) is None and out.is_complete(g)


def _claim4_partials():
    g, _ = fixture("claim4-gadget")
    smaller, remap = delete_vertices(g, [1, 3, 5])
    back = {new: old for old, new in remap.items()}
    for seed in range(3000):
        yield g, _lift(find_total_coloring(smaller, 6, seed=seed), back)


def _claim4_lists(g, partial):
    new = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]
    return (available(g, partial, (0, 1), ignore=new)[:1], available(g, partial, (5, 6), ignore=new)[:1],
            available(g, partial, (1, 2), ignore=new)[:2])


def _permuted(c, perm):
    out = TotalColoring(c.k)
    out.vertex_colors = {v: perm[col] for v, col in c.vertex_colors.items()}
    out.edge_colors = {e: perm[col] for e, col in c.edge_colors.items()}
    return out


def test_claim4_distinct_pendant_lists():
    # relabel colors so that A(ux') = {1}, A(wy') = {2}, A(ux) = {1, 3}
    for g, partial in _claim4_partials():
        (a1,), (a2,), inner = _claim4_lists(g, partial)
        if a1 == a2 or a1 not in inner or a2 in inner:
            continue
        other = inner[0] if inner[1] == a1 else inner[1]
        rest = [col for col in range(1, 7) if col not in (a1, a2, other)]
        perm = dict(zip([a1, a2, other] + rest, [1, 2, 3, 4, 5, 6]))
        relabeled = _permuted(partial, perm)
        if _claim4_lists(g, relabeled) != ([1], [2], [1, 3]):
            continue
        out = extend_claim4(g, relabeled, tuple(range(7)), 5)
        assert (out.get((0, 1)), out.get((5, 6)), out.get((1, 2)), out.get((2, 3))) == (1, 2, 3, 1)
        assert verify_total_coloring(g, out) is None and out.is_complete(g)
        return
    pytest.fail("no instance of the distinct-list case found")


def test_claim4_shared_list_without_swap():
    for g, partial in _claim4_partials():
        (a1,), (a2,), inner = _claim4_lists(g, partial)
        if a1 != a2 or a1 in inner:
            continue
        out = extend_claim4(g, partial, tuple(range(7)), 5)
        assert out.get((2, 3)) != out.get((5, 6))
        assert out.get((1, 2)) in inner and out.get((1, 2)) != out.get((2, 3))
        assert verify_total_coloring(g, out) is None and out.is_complete(g)
        return
    pytest.fail("no instance of the shared-list case found")


def test_claim4_swap_branch():
    for g, partial in _claim4_partials():
        (a1,), (a2,), inner = _claim4_lists(g, partial)
        if a1 != a2 or a1 not in inner:
            continue
        old_xxp = partial.get((0, 2))
        out = extend_claim4(g, partial, tuple(range(7)), 5)
        assert out.get((0, 2)) == a1 and out.get((0, 1)) == old_xxp
        assert verify_total_coloring(g, out) is None and out.is_complete(g)
        return
    pytest.fail("no instance of the swap case found")


def test_claim_procedures_raise_on_broken_preconditions():
    # x of degree 6 under M = 5: its four outside edges and c(x) leave ux one color
    g = Graph.from_edges(8, [(0, 1), (1, 2), (2, 3), (0, 3), (1, 4), (1, 5), (1, 6), (1, 7)])
    partial = TotalColoring(6, {1: 1}, {(1, 4): 3, (1, 5): 4, (1, 6): 5, (1, 7): 6})
    with pytest.raises(ExtensionError):
        extend_claim2(g, partial, (0, 1, 2, 3))


# -- merging and local search --------------------------------------------------


def test_merge_two_triangles():
    g = Graph.from_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])
    dec = blocks(g)
    parts = []
    for i in range(len(dec.blocks)):
        sub = Graph.from_edges(5, sorted(dec.blocks[i]))
        c = find_total_coloring(sub, 6)
        keep = set(dec.block_vertices(i))
        c.vertex_colors = {v: col for v, col in c.vertex_colors.items() if v in keep}
        parts.append(c)
    merged = merge_block_colorings(parts, dec, 5)
    assert verify_total_coloring(g, merged) is None and merged.is_complete(g)


def test_merge_single_block_is_identity():
    g = complete(4)
    c = find_total_coloring(g, 6)
    assert merge_block_colorings([c], blocks(g), 5) == c


def test_merge_bridge():
    g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    dec = blocks(g)
    parts = []
    for i in range(len(dec.blocks)):
        c = find_total_coloring(Graph.from_edges(4, sorted(dec.blocks[i])), 6)
        keep = set(dec.block_vertices(i))
        c.vertex_colors = {v: col for v, col in c.vertex_colors.items() if v in keep}
        parts.append(c)
    merged = merge_block_colorings(parts, dec, 5)
    assert verify_total_coloring(g, merged) is None and merged.is_complete(g)


def test_merge_rejects_overfull_cut_vertex():
    g = star(6)
    dec = blocks(g)
    parts = [TotalColoring(6, {0: 1, i + 1: 2}, {(0, i + 1): 3}) for i in range(6)]
    with pytest.raises(ValueError):
        merge_block_colorings(parts, dec, 5)


def test_local_exhaustive_examples():
    g = complete(3)
    partial = find_total_coloring(g, 5)
    assert local_exhaustive_extend(g, partial, []) == partial
    stuck = TotalColoring(3, {0: 1, 1: 2}, {(1, 2): 3, (0, 2): 1})
    assert local_exhaustive_extend(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]), stuck, [(0, 1)]) is None
    with pytest.raises(ValueError):
        local_exhaustive_extend(g, partial, g.elements() + [0, 1, 2, 0])


def test_local_exhaustive_solves_claim2_elements():
    rng = random.Random(3)
    g = _claim2_host()
    smaller, remap = delete_vertices(g, [0, 2])
    back = {new: old for old, new in remap.items()}
    for _ in range(20):
        partial = _lift(find_total_coloring(smaller, 6, seed=rng.getrandbits(32)), back)
        elems = [(0, 1), (1, 2), (2, 3), (0, 3), 0, 2]
        assert local_exhaustive_extend(g, partial, elems, m=5) is not None
