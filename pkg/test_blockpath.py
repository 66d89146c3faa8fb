#!/usr/bin/env python3
"""
Tests for block-graph recognition, unique shortest paths, Lambda multisets,
path equivalence and the structural audit.
"""

import sys
from itertools import combinations

import pytest

from blockpath import (
    BlockDecomposition,
    BlockFailure,
    PathRelation,
    is_block_graph,
    oriented_path,
    path_lambda,
    path_table,
    paths_equivalent,
    shortest_path,
    structural_audit,
)
from graph_core import ColorId, ColoredGraph
from graph_fixtures import (
    colored_path3,
    complete_graph,
    mirrored_graph,
    frets_heads,
    paw_graph,
    random_rcop_block_graph,
    two_disjoint_edges,
)
from utils import DisconnectedGraphError, GraphInputError, LimitExceededError, NonUniquePathError, NotBlockGraphError

V = ColorId.vertex
E = ColorId.edge


def test_paw_blocks():
    blocks = is_block_graph(paw_graph())
    assert isinstance(blocks, BlockDecomposition)
    assert [sorted(b) for b in blocks.blocks] == [[1, 2, 3], [3, 4]]
    assert blocks.cut_vertices == [3]


def test_four_cycle_is_not_a_block_graph():
    failure = is_block_graph(frets_heads())
    assert isinstance(failure, BlockFailure)
    assert failure.component == [1, 2, 3, 4]
    assert failure.non_edge == (1, 3)


def test_complete_graph_is_one_block():
    blocks = is_block_graph(complete_graph(5))
    assert [sorted(b) for b in blocks.blocks] == [[1, 2, 3, 4, 5]]
    assert blocks.cut_vertices == []


def test_single_vertex_is_one_block():
    blocks = is_block_graph(complete_graph(1))
    assert [sorted(b) for b in blocks.blocks] == [[1]]


def test_block_check_needs_connected_graph():
    with pytest.raises(DisconnectedGraphError):
        is_block_graph(two_disjoint_edges())


def test_paw_shortest_paths():
    g = paw_graph()
    p = shortest_path(g, 1, 4)
    assert p.vertices == (1, 3, 4)
    assert p.edge_colors == (E("g"), E("y"))
    assert p.vertex_colors == (V("r"), V("b"), V("p"))
    assert shortest_path(g, 1, 2).edge_colors == (E("c"),)
    trivial = shortest_path(g, 2, 2)
    assert trivial.vertices == (2,)
    assert trivial.edge_colors == ()


def test_path_serialization():
    p = shortest_path(paw_graph(), 4, 1)
    assert p.to_dict() == {"vertices": [4, 3, 1], "edge_colors": ["e:y", "e:g"]}
    assert p.normalized().vertices == (1, 3, 4)


def test_antipodal_pairs_of_the_cycle_are_not_unique():
    g = frets_heads()
    for u, v in [(1, 3), (2, 4)]:
        with pytest.raises(NonUniquePathError):
            shortest_path(g, u, v)
    assert shortest_path(g, 1, 2).vertices == (1, 2)


def test_non_unique_path_is_a_block_error():
    with pytest.raises(NotBlockGraphError):
        path_table(frets_heads())


def test_unknown_vertex():
    with pytest.raises(GraphInputError):
        shortest_path(paw_graph(), 1, 7)


def test_every_pair_has_a_path_in_block_graphs():
    for g in [mirrored_graph(), paw_graph()] + [random_rcop_block_graph(s, 12) for s in range(6)]:
        table = path_table(g)
        assert len(table) == g.n * (g.n + 1) // 2
        for (u, v), p in table.items():
            assert p.endpoints == (u, v)
            for a, b in zip(p.vertices, p.vertices[1:]):
                assert g.has_edge(a, b)


def test_lambda_multisets():
    g = paw_graph()
    lam = path_lambda(shortest_path(g, 1, 4))
    assert lam.endpoint_colors == tuple(sorted((V("r"), V("p"))))
    assert lam.edge_colors == tuple(sorted((E("g"), E("y"))))
    assert lam == path_lambda(shortest_path(g, 2, 4))
    loop = path_lambda(shortest_path(g, 1, 1))
    assert loop.endpoint_colors == (V("r"), V("r"))
    assert loop.edge_colors == ()


def test_path_equivalence():
    g = paw_graph()
    assert paths_equivalent(shortest_path(g, 1, 4), shortest_path(g, 2, 4)) == PathRelation.ISOMORPHIC
    assert paths_equivalent(shortest_path(g, 1, 2), shortest_path(g, 3, 4)) == PathRelation.NOT_EQUIVALENT
    p = shortest_path(g, 1, 4)
    assert paths_equivalent(p, p) == PathRelation.ISOMORPHIC
    assert paths_equivalent(p, p.reversed()) == PathRelation.ISOMORPHIC


def test_combinatorial_but_not_isomorphic():
    # 1->3 reads (a, b, c) over (s, t); 3->5 reads (c, d, a) over (t, s)
    g = ColoredGraph.build(
        ["a", "b", "c", "d", "a"],
        {(1, 2): "s", (2, 3): "t", (3, 4): "t", (4, 5): "s"},
    )
    p = shortest_path(g, 1, 3)
    q = shortest_path(g, 3, 5)
    assert path_lambda(p) == path_lambda(q)
    assert paths_equivalent(p, q) == PathRelation.COMBINATORIAL


def test_equivalent_paths_are_isomorphic_in_rcop_block_graphs():
    for g in [mirrored_graph(), paw_graph()] + [random_rcop_block_graph(s, 10) for s in range(5)]:
        paths = list(path_table(g).values())
        for p, q in combinations(paths, 2):
            assert paths_equivalent(p, q) != PathRelation.COMBINATORIAL


def test_oriented_path():
    g = paw_graph()
    assert oriented_path(g, 4, 1).vertices == (4, 3, 1)
    assert oriented_path(g, 1, 4).vertices == (1, 3, 4)


@pytest.mark.parametrize("g", [paw_graph(), mirrored_graph()] + [random_rcop_block_graph(s, 10) for s in range(6)])
def test_audit_passes_on_rcop_block_graphs(g):
    report = structural_audit(g)
    assert report.passed
    for check in report.checks:
        assert check.status in ("pass", "vacuous")
        assert check.witness is None


def test_audit_on_paw_runs_every_check():
    report = structural_audit(paw_graph())
    names = [c.name for c in report.checks]
    assert names == ["symmetric_paths", "two_per_color", "equivalent_isomorphic", "branch_exclusion", "union_path"]
    assert report.check("symmetric_paths").status == "pass"
    assert report.check("union_path").status == "pass"


def test_audit_on_colored_path_is_vacuous_for_symmetry():
    report = structural_audit(colored_path3())
    assert report.check("symmetric_paths").status == "vacuous"
    assert report.check("symmetric_paths").checked == 0


def test_audit_finds_asymmetric_path():
    # endpoints share a color but the edge colors are not a palindrome
    g = ColoredGraph.build(["a", "b", "a"], {(1, 2): "s", (2, 3): "t"})
    report = structural_audit(g)
    assert not report.passed
    check = report.check("symmetric_paths")
    assert check.status == "fail"
    assert check.witness["vertices"] == [1, 2, 3]


def test_audit_finds_three_colors_on_a_path():
    g = ColoredGraph.build(["a", "a", "a"], {(1, 2): "s", (2, 3): "s"})
    report = structural_audit(g)
    assert report.check("two_per_color").status == "fail"


def test_audit_size_guard(monkeypatch):
    import config
    monkeypatch.setattr(config, "AUDIT_MAX_VERTICES", 3)
    with pytest.raises(LimitExceededError):
        structural_audit(paw_graph())


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
