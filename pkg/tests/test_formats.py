import json

import pytest

from poptotal.corpus import GeneratorSpec, random_pseudo_outerplanar
from poptotal.formats import (
    FormatError,
    coloring_from_dict,
    coloring_to_dict,
    embedding_from_dict,
    embedding_to_dict,
    format_edge_list,
    parse_edge_list,
    read_coloring,
    read_edge_list,
    read_embedding,
    write_coloring,
    write_edge_list,
    write_embedding,
)
from poptotal.graph import Graph, TotalColoring


def test_parse_edge_list_with_comments():
    g = parse_edge_list("# triangle\n3 3\n0 1\n1 2\n\n0 2\n")
    assert g.n == 3 and g.edges() == [(0, 1), (0, 2), (1, 2)]


@pytest.mark.parametrize(
    "text",
    ["", "3\n", "3 2\n0 1\n", "3 1\n0 1 2\n", "2 1\n0 x\n", "2 1\n0 0\n", "2 1\n0 5\n"],
)
def test_parse_edge_list_errors(text):
    with pytest.raises(FormatError):
        parse_edge_list(text)


def test_edge_list_file_roundtrip(tmp_path):
    for seed in range(5):
        g, emb = random_pseudo_outerplanar(GeneratorSpec(12, 0.7, seed))
        write_edge_list(g, tmp_path / "g.txt")
        assert read_edge_list(tmp_path / "g.txt") == g
        write_embedding(emb, tmp_path / "g.json")
        assert read_embedding(tmp_path / "g.json") == emb
    assert format_edge_list(Graph.empty(2)) == "2 0\n"


def test_coloring_roundtrip(tmp_path):
    c = TotalColoring(4, {0: 1, 2: 3}, {(0, 1): 2})
    data = coloring_to_dict(c, 3)
    assert data == {"k": 4, "vertices": [1, 0, 3], "edges": [[0, 1, 2]]}
    assert coloring_from_dict(data) == c
    write_coloring(c, 3, tmp_path / "c.json")
    assert read_coloring(tmp_path / "c.json") == c


@pytest.mark.parametrize("payload", ['{"vertices": []}', '{"k": 3, "edges": [[0, 1]]}', "not json"])
def test_coloring_errors(tmp_path, payload):
    (tmp_path / "c.json").write_text(payload)
    with pytest.raises(FormatError):
        read_coloring(tmp_path / "c.json")


def test_embedding_dict_errors():
    with pytest.raises(FormatError):
        embedding_from_dict({"blocks": [{"order": [0, 1]}]})
    g, emb = random_pseudo_outerplanar(GeneratorSpec(6, seed=1))
    assert embedding_from_dict(json.loads(json.dumps(embedding_to_dict(emb)))) == emb
