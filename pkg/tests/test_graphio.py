import json

import pytest
from hypothesis import given

from mban import graphio
from mban.errors import FormatError
from mban.families import two_intersecting_cycles

from .conftest import digraphs


@given(digraphs(max_n=6))
def test_round_trip_every_format(g):
    for fmt in graphio.FORMATS:
        text = graphio.dumps(g, fmt)
        back = graphio.loads(text)
        assert back == g
        assert graphio.dumps(back, fmt) == text


def test_json_shape():
    g = two_intersecting_cycles(7, 4)
    doc = json.loads(graphio.to_json(g))
    assert doc["format"] == "mban-graph-v1"
    assert doc["n"] == 7
    assert doc["arcs"] == sorted(doc["arcs"])
    assert [4, 0] in doc["arcs"]


def test_dot_shape():
    text = graphio.to_dot(two_intersecting_cycles(7, 4))
    assert text.startswith("digraph {")
    assert "  4 -> 0;" in text.splitlines()


def test_isolated_nodes_survive_dot():
    g = graphio.from_edges("4\n0 1\n")
    assert graphio.from_dot(graphio.to_dot(g)).n == 4


@pytest.mark.parametrize(
    "text, where",
    [
        ('{"format": "mban-graph-v1", "n": 3, "arcs": [[0, 1]', "line 1"),
        ('{"format": "other", "n": 3, "arcs": []}', "format"),
        ('{"format": "mban-graph-v1", "n": 2, "arcs": [[0, 5]]}', "outside"),
        ('{"format": "mban-graph-v1", "n": 2, "arcs": [[0, 1], [0, 1]]}', "duplicate"),
        ("digraph {\n  0 -> 1;\n  a -> b;\n}\n", "line 3"),
        ("3\n0 1\n1 x\n", "line 3"),
        ("3\n0 1 2\n", "line 2"),
    ],
)
def test_parse_errors_name_the_location(text, where):
    with pytest.raises(FormatError, match=where):
        graphio.loads(text)
