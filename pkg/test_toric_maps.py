#!/usr/bin/env python3
"""
Tests for the shortest-path exponent matrices, the row-span comparison and
the completion graph.
"""

import sys

import numpy as np
import pytest

from blockpath import path_lambda, shortest_path
from graph_core import ColorId, ColoredGraph
from graph_fixtures import (
    colored_path3,
    complete_graph,
    mirrored_graph,
    frets_heads,
    paw_graph,
    random_rcop_block_graph,
    single_vertex,
    two_disjoint_edges,
)
from markov import MarkovMove
from rational_linalg import rank
from symmetry import is_rcop
from toric_maps import (
    ExponentMatrix,
    SigmaIndex,
    completion,
    completion_color,
    exponent_matrix_endpoint,
    exponent_matrix_full,
    kernel_member,
    rowspan_equal,
    sigma_indices,
)
from utils import (
    DisconnectedGraphError,
    GraphInputError,
    NotBlockGraphError,
    NotRcopError,
    PreconditionError,
)

V = ColorId.vertex
E = ColorId.edge

PAW_ROWS = (V("r"), V("b"), V("p"), E("c"), E("g"), E("y"))
PAW_LABELS = ["11", "12", "13", "14", "22", "23", "24", "33", "34", "44"]
PAW_ENDPOINT = [
    [2, 2, 1, 1, 2, 1, 1, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 0, 2, 1, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 2],
    [0, 1, 0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0, 1, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0, 1, 0, 1, 0],
]


def rcop_corpus(count=10, max_vertices=12):
    return [paw_graph(), mirrored_graph()] + [random_rcop_block_graph(s, max_vertices) for s in range(count)]


def test_sigma_indices_are_lexicographic():
    assert [c.label(4) for c in sigma_indices(4)] == PAW_LABELS
    assert SigmaIndex(1, 10).label(11) == "1,10"
    assert str(SigmaIndex(2, 3)) == "(2,3)"


def test_paw_endpoint_matrix_is_golden():
    a = exponent_matrix_endpoint(paw_graph())
    assert a.rows == PAW_ROWS
    assert a.column_labels() == PAW_LABELS
    assert a.entries.tolist() == PAW_ENDPOINT


def test_single_vertex_matrix():
    a = exponent_matrix_endpoint(single_vertex())
    assert a.rows == (V("r"),)
    assert a.entries.tolist() == [[2]]


def test_single_edge_matrix():
    a = exponent_matrix_endpoint(complete_graph(2))
    assert a.rows == (V("v"), E("e"))
    assert a.entries.tolist() == [[2, 2, 2], [0, 1, 0]]


def test_full_matrix_counts_interior_vertices():
    b = exponent_matrix_full(paw_graph())
    column = dict(zip(b.rows, b.column(SigmaIndex(1, 4)).tolist()))
    assert column == {V("r"): 1, V("b"): 1, V("p"): 1, E("c"): 0, E("g"): 1, E("y"): 1}
    assert b.column(SigmaIndex(1, 1)).tolist() == [1, 0, 0, 0, 0, 0]


def test_edge_rows_agree_between_maps():
    for g in rcop_corpus(4):
        a, b = exponent_matrix_endpoint(g), exponent_matrix_full(g)
        for color in g.edge_color_classes():
            assert np.array_equal(a.row(color), b.row(color))


def test_column_sums():
    for g in rcop_corpus(4) + [colored_path3()]:
        a, b = exponent_matrix_endpoint(g), exponent_matrix_full(g)
        for index in a.cols:
            length = shortest_path(g, index.i, index.j).length
            assert a.column(index).sum() == 2 + length
            assert b.column(index).sum() == 2 * length + 1


def test_matrices_need_connected_block_graphs():
    with pytest.raises(DisconnectedGraphError):
        exponent_matrix_endpoint(two_disjoint_edges())
    with pytest.raises(NotBlockGraphError):
        exponent_matrix_full(frets_heads())


def test_matrix_serialization():
    a = exponent_matrix_endpoint(paw_graph())
    data = a.to_dict()
    assert data["rows"] == ["v:r", "v:b", "v:p", "e:c", "e:g", "e:y"]
    assert data["cols"][:3] == [[1, 1], [1, 2], [1, 3]]
    assert data["entries"] == PAW_ENDPOINT


def test_matrix_text_table():
    lines = exponent_matrix_endpoint(paw_graph()).to_text().splitlines()
    assert lines[0].split() == PAW_LABELS
    assert lines[1].split() == ["v:r"] + [str(x) for x in PAW_ENDPOINT[0]]
    assert len(lines) == 7
    frame = exponent_matrix_endpoint(paw_graph()).to_frame()
    assert frame.loc["e:c", "12"] == 1


def test_matrix_equality():
    assert exponent_matrix_endpoint(paw_graph()) == exponent_matrix_endpoint(paw_graph())
    assert exponent_matrix_endpoint(paw_graph()) != exponent_matrix_full(paw_graph())


@pytest.mark.parametrize("g", rcop_corpus(10))
def test_rowspans_agree_on_rcop_block_graphs(g):
    report = rowspan_equal(exponent_matrix_endpoint(g), exponent_matrix_full(g), g)
    assert report.equal
    assert report.ranks_equal
    assert report.edge_rows_equal
    assert set(report.identity_holds) == set(g.color_classes())


def test_paw_rowspan_report():
    g = paw_graph()
    report = rowspan_equal(exponent_matrix_endpoint(g), exponent_matrix_full(g), g)
    assert report.rank_a == report.rank_b == report.rank_stack == 6
    assert report.to_dict()["vertex_identity"] == {"v:r": True, "v:b": True, "v:p": True}


def test_rowspan_detects_a_missing_row():
    g = paw_graph()
    a, b = exponent_matrix_endpoint(g), exponent_matrix_full(g)
    shorter = ExponentMatrix(b.rows[:-1], b.cols, b.entries[:-1])
    report = rowspan_equal(a, shorter)
    assert report.rank_b == 5
    assert not report.equal


def test_rowspan_needs_shared_columns():
    with pytest.raises(PreconditionError):
        rowspan_equal(exponent_matrix_endpoint(paw_graph()), exponent_matrix_endpoint(complete_graph(2)))


def test_rank_equals_color_count():
    for g in rcop_corpus(10) + [single_vertex()]:
        a = exponent_matrix_endpoint(g)
        assert rank(a.entries) == len(g.color_classes()) + len(g.edge_color_classes())


def test_paw_completion():
    g = paw_graph()
    result = completion(g)
    assert result.new_edges() == [(1, 4), (2, 4)]
    color = result.graph.edge_color(1, 4)
    assert color == result.graph.edge_color(2, 4)
    assert color.label.startswith("cmp:")
    assert len(color.label) == len("cmp:") + 12
    assert result.graph.is_complete()
    assert is_rcop(result.graph)
    for u, v in g.edges:
        assert result.graph.edge_color(u, v) == g.edge_color(u, v)
    assert result.graph.vertex_colors == g.vertex_colors


def test_completion_serialization():
    data = completion(paw_graph()).to_dict()
    assert [(e["u"], e["v"]) for e in data["new_edges"]] == [(1, 4), (2, 4)]
    assert data["new_edges"][0]["lambda"] == {"endpoint_colors": ["v:p", "v:r"], "edge_colors": ["e:g", "e:y"]}
    assert len(data["graph"]["edges"]) == 6


def test_completion_of_complete_graph_adds_nothing():
    g = complete_graph(4)
    result = completion(g)
    assert result.new_edges() == []
    assert result.graph == g


def test_completion_with_distinct_colors():
    pendant = ColoredGraph.build(["a", "b", "c"], {(1, 2): "s", (2, 3): "t"})
    result = completion(pendant)
    assert result.new_edges() == [(1, 3)]
    assert result.graph.edge_color(1, 3).label.startswith("cmp:")


def test_completion_colors_are_deterministic():
    first = completion(mirrored_graph())
    second = completion(mirrored_graph())
    assert first.graph == second.graph
    assert len(first.new_edges()) == 55 - 11


def test_completion_color_collision():
    g = paw_graph()
    label = completion_color(path_lambda(shortest_path(g, 1, 4))).label
    clashing = g.recolored(edge_colors={(1, 2): label})
    with pytest.raises(GraphInputError):
        completion(clashing)


def test_completion_preconditions():
    with pytest.raises(NotRcopError):
        completion(colored_path3())
    with pytest.raises(NotBlockGraphError):
        completion(frets_heads())


def test_kernel_membership():
    a = exponent_matrix_endpoint(paw_graph())
    assert kernel_member(a, MarkovMove.from_sides([(1, 3), (3, 4)], [(1, 4), (3, 3)]))
    assert kernel_member(a, MarkovMove.from_sides([(1, 1)], [(2, 2)]))
    assert not kernel_member(a, MarkovMove.from_sides([(1, 2)], [(3, 4)]))


def test_zero_move_is_in_every_kernel():
    zero = MarkovMove((), ())
    assert kernel_member(exponent_matrix_endpoint(paw_graph()), zero)
    assert kernel_member(exponent_matrix_full(mirrored_graph()), zero)


def test_kernel_membership_rejects_foreign_indices():
    a = exponent_matrix_endpoint(paw_graph())
    with pytest.raises(PreconditionError):
        kernel_member(a, MarkovMove.from_sides([(1, 5)], [(2, 5)]))


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
