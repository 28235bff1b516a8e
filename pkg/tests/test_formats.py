import pytest

from edgecolor.coloring import EdgeColoring
from edgecolor.errors import ParseError
from edgecolor.formats import (
    coloring_from_dict,
    coloring_to_dict,
    emit_graph,
    parse_graph,
)
from edgecolor.multigraph import build_multigraph

from conftest import greedy_coloring, random_simple


def test_round_trip_simple():
    g = random_simple(9, 0.5, 7)
    text = emit_graph(g, comments=["example"])
    g2 = parse_graph(text)
    assert emit_graph(g2, comments=["example"]) == text


def test_round_trip_multigraph():
    g = build_multigraph(5, [(0, 1, 3), (2, 3, 1), (1, 4, 2)])
    g2 = parse_graph(emit_graph(g))
    assert g2.vertex_count == 5
    assert g2.multiplicity(0, 1) == 3 and g2.multiplicity(1, 4) == 2


def test_parse_rejects_loops():
    with pytest.raises(ParseError):
        parse_graph("p multigraph 3 1\ne 1 1 1\n")


def test_parse_rejects_duplicate_pairs():
    with pytest.raises(ParseError):
        parse_graph("p multigraph 3 2\ne 0 1 1\ne 1 0 2\n")


def test_parse_rejects_bad_counts():
    with pytest.raises(ParseError):
        parse_graph("p multigraph 3 2\ne 0 1 1\n")
    with pytest.raises(ParseError):
        parse_graph("e 0 1 1\n")


def test_coloring_json_round_trip():
    g = random_simple(8, 0.6, 1)
    c = greedy_coloring(g, g.max_degree() + 1)
    c.unassign(next(iter(c.assignment)))
    data = coloring_to_dict(c, g)
    c2 = coloring_from_dict(data, g)
    assert c2.assignment == c.assignment
    assert len(data["uncolored"]) == 1
    assert data["k"] == c.k
