import hashlib
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
import pandas as pd

import config
from blockpath import path_lambda, path_table, require_block_graph
from graph_core import ColorId, ColoredGraph, color_text, edge_key, graph_to_dict
from rational_linalg import rank
from symmetry import is_rcop, require_rcop
from utils import GraphInputError, LogUtils, PreconditionError, VerificationError


class SigmaIndex(NamedTuple):
    """Covariance entry (i, j) with i <= j."""
    i: int
    j: int

    def label(self, n):
        return f"{self.i}{self.j}" if n < 10 else f"{self.i},{self.j}"

    def __str__(self):
        return f"({self.i},{self.j})"


def sigma_indices(n):
    """Lexicographic order 11, 12, ..., 1n, 22, ..., nn."""
    return [SigmaIndex(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


@dataclass(frozen=True, eq=False)
class ExponentMatrix:
    rows: tuple
    cols: tuple
    entries: np.ndarray

    @property
    def n(self):
        return max((c.j for c in self.cols), default=0)

    def row(self, color):
        return self.entries[self.rows.index(color)]

    def column(self, index):
        return self.entries[:, self.cols.index(index)]

    def column_labels(self):
        return [c.label(self.n) for c in self.cols]

    def to_dict(self):
        return {
            "rows": [str(r) for r in self.rows],
            "cols": [[c.i, c.j] for c in self.cols],
            "entries": self.entries.astype(int).tolist(),
        }

    def to_frame(self):
        return pd.DataFrame(self.entries, index=[str(r) for r in self.rows], columns=self.column_labels())

    def to_text(self):
        return self.to_frame().to_string() + "\n"

    def __eq__(self, other):
        return (
            isinstance(other, ExponentMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.entries, other.entries)
        )


def color_rows(g):
    """Vertex colors by first appearance over vertex ids, then edge colors by
    first appearance along the sorted edge list."""
    return tuple(g.color_classes()) + tuple(g.edge_color_classes())


def _paths(g):
    g.require_connected()
    return path_table(g)


def _build(g, count_interior):
    rows = color_rows(g)
    position = {color: k for k, color in enumerate(rows)}
    cols = tuple(sigma_indices(g.n))
    entries = np.zeros((len(rows), len(cols)), dtype=np.int64)
    table = _paths(g)
    for k, index in enumerate(cols):
        p = table[(index.i, index.j)]
        if count_interior:
            for c in p.vertex_colors:
                entries[position[c], k] += 1
        else:
            entries[position[g.color(index.i)], k] += 1
            entries[position[g.color(index.j)], k] += 1
        for c in p.edge_colors:
            entries[position[c], k] += 1
    return ExponentMatrix(rows, cols, entries), table


def exponent_matrix_endpoint(g):
    """A_G: sigma_ij -> endpoint colors of i, j times the edge colors of i<->j."""
    matrix, table = _build(g, count_interior=False)
    for k, index in enumerate(matrix.cols):
        expected = 2 + table[(index.i, index.j)].length
        if matrix.entries[:, k].sum() != expected:
            raise VerificationError(f"column {index} of A_G sums to {matrix.entries[:, k].sum()}, expected {expected}")
    return matrix


def exponent_matrix_full(g):
    """B_G: every vertex color along i<->j (interior ones included) plus edge colors."""
    matrix, table = _build(g, count_interior=True)
    for k, index in enumerate(matrix.cols):
        expected = 2 * table[(index.i, index.j)].length + 1
        if matrix.entries[:, k].sum() != expected:
            raise VerificationError(f"column {index} of B_G sums to {matrix.entries[:, k].sum()}, expected {expected}")
    return matrix


@dataclass
class RowspanReport:
    rank_a: int
    rank_b: int
    rank_stack: int
    identity_holds: dict = field(default_factory=dict)
    edge_rows_equal: bool = True

    @property
    def ranks_equal(self):
        return self.rank_a == self.rank_b == self.rank_stack

    @property
    def equal(self):
        return self.ranks_equal and self.edge_rows_equal and all(self.identity_holds.values())

    def to_dict(self):
        return {
            "equal": self.equal,
            "rank_a": self.rank_a,
            "rank_b": self.rank_b,
            "rank_stack": self.rank_stack,
            "edge_rows_equal": self.edge_rows_equal,
            "vertex_identity": {str(c): ok for c, ok in self.identity_holds.items()},
        }


def _edge_color_ends(g):
    ends = {}
    for (u, v), c in zip(g.edges, g.edge_colors):
        ends.setdefault(c, (g.color(u), g.color(v)))
    return ends


def rowspan_equal(a, b, g=None):
    """Compare the row spaces of two exponent matrices exactly.

    With the graph at hand, also checks that edge rows coincide and that every
    vertex row of b is half of a_nu plus the rows of the edge colors touching
    nu, weighted by how many of their ends carry nu.
    """
    if a.cols != b.cols:
        raise PreconditionError("matrices do not share their column indexing")
    report = RowspanReport(
        rank_a=rank(a.entries),
        rank_b=rank(b.entries),
        rank_stack=rank(np.vstack((a.entries, b.entries))),
    )
    if g is None:
        return report

    for color in g.edge_color_classes():
        if color in a.rows and color in b.rows and not np.array_equal(a.row(color), b.row(color)):
            report.edge_rows_equal = False

    ends = _edge_color_ends(g)
    for nu in g.color_classes():
        combined = a.row(nu).copy()
        for eps, pair in ends.items():
            weight = pair.count(nu)
            if weight:
                combined = combined + weight * a.row(eps)
        report.identity_holds[nu] = bool(np.array_equal(combined, 2 * b.row(nu)))
    return report


# -- completion -------------------------------------------------------------

@dataclass(frozen=True)
class CompletionGraph:
    graph: ColoredGraph
    provenance: dict = field(compare=False)

    def new_edges(self):
        return sorted(self.provenance)

    def to_dict(self):
        return {
            "graph": graph_to_dict(self.graph),
            "new_edges": [
                {"u": u, "v": v, "color": color_text(self.graph.edge_color(u, v)), "lambda": self.provenance[(u, v)].to_dict()}
                for u, v in self.new_edges()
            ],
        }


def completion_color(lam):
    digest = hashlib.sha1(lam.canonical().encode("utf-8")).hexdigest()
    return ColorId.edge(config.COMPLETION_COLOR_PREFIX + digest[:config.COMPLETION_HASH_LENGTH])


def completion(g):
    """Complete g, coloring each new edge {i, j} by the class of Lambda(i<->j).

    The result is checked to be RCOP again; a failure there is a bug.
    """
    require_block_graph(g)
    require_rcop(g)
    table = path_table(g)

    added, provenance = {}, {}
    for (i, j), p in table.items():
        if i == j or g.has_edge(i, j):
            continue
        lam = path_lambda(p)
        color = completion_color(lam)
        if color in g.edge_color_set:
            raise GraphInputError(f"edge color '{color.label}' collides with a completion color")
        added[edge_key(i, j)] = color
        provenance[edge_key(i, j)] = lam

    completed = g.recolored(edge_colors=added)
    LogUtils.info(f"Completion adds {len(added)} edges in {len(set(added.values()))} new colors")
    if not is_rcop(completed):
        raise VerificationError("completion of an RCOP block graph is not RCOP")
    return CompletionGraph(completed, provenance)


def kernel_member(a, move):
    """True iff a . move == 0 over the integers."""
    vector = move.vector(a.cols)
    return not np.any(a.entries @ vector)
