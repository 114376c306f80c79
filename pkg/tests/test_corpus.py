import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from poptotal.corpus import (
    FIXTURES,
    MAX_ENUMERATION_N,
    GeneratorSpec,
    canonical_form,
    enumerate_pseudo_outerplanar,
    find_drawing,
    fixture,
    random_pseudo_outerplanar,
)
from poptotal.embedding import CircularEmbedding, validate_embedding
from poptotal.graph import Graph
from poptotal.oracle import total_chromatic_number
from poptotal.structure import Configuration, validate_configuration


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def brute_force_drawable(g):
    # try every circular order of the whole vertex set
    for rest in itertools.permutations(range(1, g.n)):
        emb = CircularEmbedding.from_order(g, (0,) + rest)
        if validate_embedding(g, emb) is None:
            return True
    return g.n == 0


# -- random generation -------------------------------------------------------


def test_single_vertex():
    g, emb = random_pseudo_outerplanar(GeneratorSpec(1))
    assert g.n == 1 and g.edge_count == 0 and emb.blocks == ()


@pytest.mark.parametrize("seed", range(8))
def test_maximal_twenty_is_valid(seed):
    g, emb = random_pseudo_outerplanar(GeneratorSpec(20, seed=seed, maximal=True))
    assert validate_embedding(g, emb) is None
    assert g.max_degree() >= 5


def test_seeded_determinism():
    spec = GeneratorSpec(30, 0.5, seed=99)
    assert random_pseudo_outerplanar(spec) == random_pseudo_outerplanar(spec)
    assert random_pseudo_outerplanar(spec)[0] != random_pseudo_outerplanar(GeneratorSpec(30, 0.5, seed=98))[0]


@given(st.integers(1, 40), st.floats(0, 1), st.integers(0, 2**32), st.booleans(), st.booleans())
@settings(max_examples=60, deadline=None)
def test_generated_graphs_validate(n, density, seed, outer, maximal):
    g, emb = random_pseudo_outerplanar(GeneratorSpec(n, density, seed, outer, maximal))
    assert validate_embedding(g, emb) is None


def test_bad_spec():
    with pytest.raises(ValueError):
        random_pseudo_outerplanar(GeneratorSpec(0))


# -- canonical form and recognition -------------------------------------------


@given(st.integers(1, 8), st.data())
@settings(max_examples=60)
def test_canonical_form_is_isomorphism_invariant(n, data):
    pairs = list(itertools.combinations(range(n), 2))
    edges = data.draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    perm = data.draw(st.permutations(range(n)))
    g = Graph.from_edges(n, edges)
    h = Graph.from_edges(n, [(perm[a], perm[b]) for a, b in edges])
    assert canonical_form(g) == canonical_form(h)


def test_canonical_form_separates_non_isomorphic():
    atlas = [Graph.from_edges(a.number_of_nodes(), a.edges()) for a in nx.graph_atlas_g()[1:400]]
    keys = [canonical_form(g) for g in atlas]
    assert len(set(keys)) == len(keys)


def test_recognition_matches_brute_force_on_atlas():
    for a in nx.graph_atlas_g()[1:]:
        if a.number_of_nodes() > 6:
            break
        g = Graph.from_edges(a.number_of_nodes(), a.edges())
        assert (find_drawing(g) is not None) == brute_force_drawable(g), list(a.edges())


def test_find_drawing_returns_valid_orders():
    for name in ("K4", "K23", "claim3-gadget", "claim4-gadget"):
        g, _ = fixture(name)
        order = find_drawing(g)
        assert order is not None
        assert validate_embedding(g, CircularEmbedding.from_order(g, order)) is None
    k5 = Graph.from_edges(5, itertools.combinations(range(5), 2))
    assert find_drawing(k5) is None


# -- enumeration ----------------------------------------------------------------


def test_enumeration_counts_and_members():
    # cumulative class sizes up to isomorphism
    counts = [sum(1 for _ in enumerate_pseudo_outerplanar(n)) for n in range(1, 8)]
    assert counts == [1, 3, 7, 18, 49, 170, 720]
    three = {canonical_form(g) for g in enumerate_pseudo_outerplanar(3)}
    assert canonical_form(Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])) in three
    four = {canonical_form(g) for g in enumerate_pseudo_outerplanar(4)}
    assert canonical_form(Graph.from_edges(4, itertools.combinations(range(4), 2))) in four
    five = {canonical_form(g) for g in enumerate_pseudo_outerplanar(5)}
    assert canonical_form(fixture("K23")[0]) in five
    assert canonical_form(Graph.from_edges(5, itertools.combinations(range(5), 2))) not in five


def test_enumeration_is_duplicate_free():
    graphs = [to_nx(g) for g in enumerate_pseudo_outerplanar(6)]
    for a, b in itertools.combinations(graphs, 2):
        if a.number_of_nodes() == b.number_of_nodes() and a.number_of_edges() == b.number_of_edges():
            assert not nx.is_isomorphic(a, b)


def test_enumeration_matches_networkx_atlas_count():
    small = [a for a in nx.graph_atlas_g()[1:] if a.number_of_nodes() <= 6]
    drawable = sum(1 for a in small if brute_force_drawable(Graph.from_edges(a.number_of_nodes(), a.edges())))
    assert drawable == sum(1 for _ in enumerate_pseudo_outerplanar(6))


def test_enumerated_embeddings_validate():
    for g, emb in enumerate_pseudo_outerplanar(7, with_embedding=True):
        assert validate_embedding(g, emb) is None


def test_min_degree_filter():
    graphs = list(enumerate_pseudo_outerplanar(6, min_degree=2))
    assert graphs and all(g.min_degree() >= 2 for g in graphs)
    assert len(graphs) == sum(1 for g in enumerate_pseudo_outerplanar(6) if g.min_degree() >= 2)


def test_enumeration_cap():
    with pytest.raises(ValueError):
        list(enumerate_pseudo_outerplanar(MAX_ENUMERATION_N + 1))


# -- fixtures ------------------------------------------------------------------


def test_fixtures_validate():
    for name in FIXTURES:
        g, emb = fixture(name)
        if emb is not None:
            assert validate_embedding(g, emb) is None
    with pytest.raises(KeyError):
        fixture("petersen")


def test_k23_fixture():
    g, _ = fixture("K23")
    assert (g.n, g.edge_count) == (5, 6)
    assert nx.is_bipartite(to_nx(g))


def test_gadgets():
    g3, _ = fixture("claim3-gadget")
    assert validate_configuration(g3, Configuration("C3", (0, 1, 2, 3)))
    assert g3.max_degree() >= 5
    g4, _ = fixture("claim4-gadget")
    assert validate_configuration(g4, Configuration("C4", tuple(range(7))))
    assert g4.max_degree() >= 5


def test_sharpness_witness():
    g, _ = fixture("sharpness-witness")
    assert g.max_degree() == 3
    assert total_chromatic_number(g) == 5
