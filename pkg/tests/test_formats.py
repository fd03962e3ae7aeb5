import pytest

from ehrhart_forge.families import Poset, birkhoff, complete_bipartite
from ehrhart_forge.formats import (
    ParseError,
    polytope_from_json,
    polytope_to_json,
    read_graph,
    read_poset,
    triangulation_from_text,
    triangulation_to_text,
    write_graph,
    write_poset,
)
from ehrhart_forge.polytope import faces_of
from ehrhart_forge.triangulation import VertexOrder, face_complex, pulling_triangulation


def test_polytope_roundtrip():
    B = birkhoff(3)
    assert polytope_from_json(polytope_to_json(B)) == B


def test_polytope_parse_errors():
    with pytest.raises(ParseError) as ei:
        polytope_from_json('{\n"ambient_dim": 2,\n"vertices": [[0,0],,]}')
    assert ei.value.line == 3
    with pytest.raises(ParseError):
        polytope_from_json('{"ambient_dim": 2, "vertices": [[0, 0, 1]]}')
    with pytest.raises(ParseError):
        polytope_from_json('{"ambient_dim": 1, "vertices": [[0]], "facets": [{"normal": [1]}]}')
    with pytest.raises(ParseError):
        polytope_from_json("[]")


def test_poset_file():
    P = read_poset("# grid\n4\n1 2\n1 3   # left\n2 4\n3 4\n")
    assert P == Poset(4, [(1, 2), (1, 3), (2, 4), (3, 4)])
    assert read_poset(write_poset(P)) == P


@pytest.mark.parametrize(
    "text,line",
    [("3\n1 2\n2 x\n", 3), ("2\n1 3\n", 2), ("2\n1\n", 2), ("two\n", 1)],
)
def test_poset_file_errors(text, line):
    with pytest.raises(ParseError) as ei:
        read_poset(text)
    assert ei.value.line == line
    assert f"line {line}" in str(ei.value)


def test_poset_file_cycle():
    with pytest.raises(ParseError):
        read_poset("2\n1 2\n2 1\n")


def test_graph_file():
    G = complete_bipartite(3, 3)
    assert read_graph(write_graph(G)) == G
    with pytest.raises(ParseError):
        read_graph("3 2\n1 2\n")
    with pytest.raises(ParseError) as ei:
        read_graph("3 1\n1 4\n")
    assert ei.value.line == 2


def test_triangulation_roundtrip():
    B = birkhoff(3)
    D = pulling_triangulation(face_complex(faces_of(B)), VertexOrder(range(6)))
    text = triangulation_to_text(D, 6, 4)
    assert text.splitlines()[0] == "6 4"
    D2, p, dim = triangulation_from_text(text)
    assert (D2, p, dim) == (D, 6, 4)
