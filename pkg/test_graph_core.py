#!/usr/bin/env python3
"""
Tests for the colored-graph model: parsing, validation, regularity,
neighborhoods and c-components.
"""

import json
import sys

import pytest

from graph_core import (
    ColorId,
    ColoredGraph,
    c_components,
    graph_to_dict,
    neighborhood,
    parse_graph,
    regularity_report,
    serialize_graph,
    validate,
)
from graph_fixtures import colored_path3, complete_graph, mirrored_graph, paw_graph, two_disjoint_edges
from utils import DisconnectedGraphError, GraphInputError

PAW_DOCUMENT = {
    "vertices": [
        {"id": 1, "color": "r"},
        {"id": 2, "color": "r"},
        {"id": 3, "color": "b"},
        {"id": 4, "color": "p"},
    ],
    "edges": [
        {"u": 1, "v": 2, "color": "c"},
        {"u": 1, "v": 3, "color": "g"},
        {"u": 2, "v": 3, "color": "g"},
        {"u": 3, "v": 4, "color": "y"},
    ],
}


def document(vertices, edges):
    return json.dumps({
        "vertices": [{"id": v, "color": c} for v, c in vertices],
        "edges": [{"u": u, "v": v, "color": c} for u, v, c in edges],
    })


def test_parse_paw_graph():
    g = parse_graph(json.dumps(PAW_DOCUMENT))
    assert g.n == 4
    assert g.edges == ((1, 2), (1, 3), (2, 3), (3, 4))
    assert g.color(1) == g.color(2) == ColorId.vertex("r")
    assert g.edge_color(3, 1) == ColorId.edge("g")
    assert g == paw_graph()


def test_parse_single_vertex():
    g = parse_graph(document([(1, "r")], []))
    assert g.n == 1
    assert g.edges == ()


def test_color_namespaces_are_disjoint():
    # same textual label on a vertex and an edge stays two different colors
    g = parse_graph(document([(1, "x"), (2, "x")], [(1, 2, "x")]))
    assert g.color(1) != g.edge_color(1, 2)
    assert validate(g).valid


@pytest.mark.parametrize("text, fragment", [
    ("{not json", "JSON syntax"),
    (json.dumps([1, 2]), "Schema"),
    (json.dumps({"vertices": []}), "Schema"),
    (document([(1, "r"), (3, "r")], []), "contiguous"),
    (document([(1, "r"), (2, "r")], [(1, 1, "e")]), "Loop"),
    (document([(1, "r"), (2, "r")], [(1, 2, "e"), (2, 1, "e")]), "Duplicate"),
    (document([(1, "r"), (2, "r")], [(1, 5, "e")]), "unknown vertex"),
    (document([(1, "r"), (2, "")], []), "Missing color"),
    (document([(1, "r"), (2, "r")], [(1, 2, "vertex:r")]), "namespace"),
    (document([(1, "edge:e"), (2, "r")], [(1, 2, "e")]), "namespace"),
])
def test_parse_rejects_bad_documents(text, fragment):
    with pytest.raises(GraphInputError) as info:
        parse_graph(text)
    assert fragment in str(info.value)


def test_explicit_qualifier_in_own_namespace_is_accepted():
    g = parse_graph(document([(1, "vertex:r"), (2, "r")], [(1, 2, "edge:e")]))
    assert g.color(1) == g.color(2)
    assert g.edge_color(1, 2) == ColorId.edge("e")


def test_serialization_round_trip():
    g = mirrored_graph()
    text = serialize_graph(g)
    again = parse_graph(text)
    assert again == g
    assert serialize_graph(again) == text
    edges = graph_to_dict(g)["edges"]
    assert [(e["u"], e["v"]) for e in edges] == sorted((e["u"], e["v"]) for e in edges)


def test_labels_that_look_qualified_survive_a_round_trip():
    g = parse_graph(document(
        [(1, "vertex:edge:x"), (2, "vertex:vertex:a"), (3, "plain")],
        [(1, 2, "edge:vertex:y"), (2, 3, "edge:edge:z")],
    ))
    assert g.color(1) == ColorId.vertex("edge:x")
    assert g.color(2) == ColorId.vertex("vertex:a")
    assert g.edge_color(1, 2) == ColorId.edge("vertex:y")
    assert g.edge_color(2, 3) == ColorId.edge("edge:z")

    text = serialize_graph(g)
    assert parse_graph(text) == g
    colors = [v["color"] for v in graph_to_dict(g)["vertices"]]
    assert colors == ["vertex:edge:x", "vertex:vertex:a", "plain"]


def test_validate_paw_is_valid_and_connected():
    report = validate(paw_graph())
    assert report.valid
    assert report.connected


def test_validate_disconnected_graph():
    report = validate(two_disjoint_edges())
    assert report.valid
    assert not report.connected


def test_validate_reports_loop():
    g = ColoredGraph(
        n=2,
        vertex_colors=(ColorId.vertex("a"), ColorId.vertex("a")),
        edges=((1, 1), (1, 2)),
        edge_colors=(ColorId.edge("e"), ColorId.edge("e")),
    )
    kinds = [v.kind for v in validate(g).violations]
    assert "loop" in kinds


def test_validate_reports_missing_and_misplaced_colors():
    g = ColoredGraph(
        n=3,
        vertex_colors=(ColorId.vertex("a"), None, ColorId.edge("e")),
        edges=((1, 2), (2, 3)),
        edge_colors=(ColorId.edge("e"), None),
    )
    kinds = {v.kind for v in validate(g).violations}
    assert {"missing_vertex_color", "missing_edge_color", "namespace"} <= kinds


def test_regularity_of_paw_graph():
    report = regularity_report(paw_graph())
    assert report.edge_regular and report.vertex_regular


def test_colored_path_is_not_edge_regular():
    report = regularity_report(colored_path3())
    assert not report.edge_regular
    assert report.edge_witness == ((1, 2), (2, 3))


def test_all_distinct_colors_are_regular():
    report = regularity_report(complete_graph(4, distinct=True))
    assert report.edge_regular and report.vertex_regular


def test_vertex_regularity_witness():
    # 1 and 3 share a color but only 1 has a "t" edge
    g = ColoredGraph.build(["a", "b", "a"], {(1, 2): "t", (2, 3): "s"})
    report = regularity_report(g)
    assert not report.vertex_regular
    assert report.vertex_witness[:2] == (1, 3)


def test_neighborhoods():
    g = paw_graph()
    assert neighborhood(g, 3).vertices == frozenset({1, 2, 3, 4})
    leaf = neighborhood(g, 4)
    assert leaf.vertices == frozenset({3, 4})
    assert leaf.edges == ((3, 4),)
    lonely = ColoredGraph.build(["a", "a"], {})
    assert neighborhood(lonely, 1).vertices == frozenset({1})


def test_neighborhood_unknown_vertex():
    with pytest.raises(GraphInputError):
        neighborhood(paw_graph(), 9)


def test_c_components_of_mirrored_graph():
    parts = [sorted(s.vertices) for s in c_components(mirrored_graph(), 3)]
    assert parts == [[1, 3], [2, 3], list(range(3, 12))]


def test_c_components_of_paw():
    g = paw_graph()
    assert [sorted(s.vertices) for s in c_components(g, 3)] == [[1, 2, 3], [3, 4]]
    assert [sorted(s.vertices) for s in c_components(g, 4)] == [[1, 2, 3, 4]]


def test_c_components_partition_edges():
    g = mirrored_graph()
    for c in g.vertices:
        parts = c_components(g, c)
        for a in parts:
            for b in parts:
                if a is not b:
                    assert a.vertices & b.vertices == {c}
        edges = [e for s in parts for e in s.edges]
        assert sorted(edges) == sorted(g.edges)


def test_c_components_need_connected_graph():
    with pytest.raises(DisconnectedGraphError):
        c_components(two_disjoint_edges(), 1)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
