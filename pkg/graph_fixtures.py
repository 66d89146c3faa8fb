"""
Example graphs shared by the tests, the CLI samples under graphs/ and the
service smoke checks.
"""

import numpy as np

from graph_core import ColoredGraph
from symmetry import automorphism_group


def paw_graph():
    """Triangle 1-2-3 with pendant 3-4; vertices 1 and 2 share a color."""
    return ColoredGraph.build(
        ["r", "r", "b", "p"],
        {(1, 2): "c", (1, 3): "g", (2, 3): "g", (3, 4): "y"},
    )


def mirrored_graph():
    """Eleven vertices: leaves 1, 2 on vertex 3, triangle 3-4-5, and two
    mirrored branches 4-6-{8,9} and 5-7-{10,11}."""
    return ColoredGraph.build(
        ["a", "a", "b", "c", "c", "d", "d", "e", "e", "e", "e"],
        {
            (1, 3): "s", (2, 3): "s",
            (3, 4): "t", (3, 5): "t",
            (4, 5): "u",
            (4, 6): "w", (5, 7): "w",
            (6, 8): "x", (6, 9): "x", (7, 10): "x", (7, 11): "x",
        },
    )


def mirrored_recolored():
    return mirrored_graph().recolored(vertex_colors={2: "fresh"})


def frets_heads():
    """4-cycle 1-2-3-4 colored so that its only symmetry is (1 2)(3 4).

    RCOP but not a block graph.
    """
    return ColoredGraph.build(
        ["k", "k", "m", "m"],
        {(1, 2): "f", (2, 3): "h", (3, 4): "j", (1, 4): "h"},
    )


def colored_path3():
    """Path 1-2-3 with distinct vertex colors and one shared edge color."""
    return ColoredGraph.build(["x", "y", "z"], {(1, 2): "e", (2, 3): "e"})


def single_vertex():
    return ColoredGraph.build(["r"], {})


def complete_graph(n, vertex_label="v", edge_label="e", distinct=False):
    """K_n, either uniformly colored or with all colors distinct."""
    vertices = [f"{vertex_label}{v}" if distinct else vertex_label for v in range(1, n + 1)]
    edges = {
        (u, v): (f"{edge_label}{u}_{v}" if distinct else edge_label)
        for u in range(1, n + 1) for v in range(u + 1, n + 1)
    }
    return ColoredGraph.build(vertices, edges)


def two_disjoint_edges():
    return ColoredGraph.build(["a", "a", "a", "a"], {(1, 2): "e", (3, 4): "e"})


def orbit_coloring(n, edges):
    """Color an uncolored graph by the orbits of its automorphism group."""
    plain = ColoredGraph.build(["v"] * n, {e: "e" for e in edges})
    group = automorphism_group(plain)
    vertex_labels = {}
    for k, orbit in enumerate(group.vertex_orbits):
        for v in orbit:
            vertex_labels[v] = f"v{k}"
    edge_labels = {}
    for k, orbit in enumerate(group.edge_orbits):
        for e in orbit:
            edge_labels[e] = f"e{k}"
    return ColoredGraph.build([vertex_labels[v] for v in range(1, n + 1)], edge_labels)


def random_rcop_block_graph(seed, max_vertices=8):
    """Random block graph built by gluing cliques at cut vertices, several
    isomorphic copies at a time, then colored by automorphism orbits."""
    rng = np.random.default_rng(seed)
    size = int(rng.integers(2, 4))
    n = size
    edges = [(u, v) for u in range(1, size + 1) for v in range(u + 1, size + 1)]
    while True:
        clique = int(rng.integers(2, 4))
        copies = int(rng.integers(1, 3))
        if n + copies * (clique - 1) > max_vertices:
            break
        anchor = int(rng.integers(1, n + 1))
        for _ in range(copies):
            members = [anchor] + list(range(n + 1, n + clique))
            n += clique - 1
            edges += [(u, v) for i, u in enumerate(members) for v in members[i + 1:]]
    return orbit_coloring(n, edges)
