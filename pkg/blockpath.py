from collections import Counter, deque
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import combinations
from typing import Optional

import networkx as nx

import config
from utils import LimitExceededError, LogUtils, NonUniquePathError, NotBlockGraphError


@dataclass(frozen=True)
class PathDescriptor:
    """Ordered vertex sequence of a shortest path with its color sequences."""
    vertices: tuple
    edge_colors: tuple
    vertex_colors: tuple

    @staticmethod
    def along(g, vertices):
        vertices = tuple(vertices)
        return PathDescriptor(
            vertices=vertices,
            edge_colors=tuple(g.edge_color(a, b) for a, b in zip(vertices, vertices[1:])),
            vertex_colors=tuple(g.color(v) for v in vertices),
        )

    @property
    def length(self):
        return len(self.vertices) - 1

    @property
    def endpoints(self):
        return self.vertices[0], self.vertices[-1]

    def edges(self):
        return [tuple(sorted(pair)) for pair in zip(self.vertices, self.vertices[1:])]

    def reversed(self):
        return PathDescriptor(self.vertices[::-1], self.edge_colors[::-1], self.vertex_colors[::-1])

    def normalized(self):
        """Orientation with the smaller first endpoint id."""
        return self if self.vertices[0] <= self.vertices[-1] else self.reversed()

    def to_dict(self):
        return {"vertices": list(self.vertices), "edge_colors": [str(c) for c in self.edge_colors]}


@dataclass(frozen=True)
class LambdaMultiset:
    """Endpoint colors (a 2-multiset) plus the multiset of edge colors of a path.

    Both parts are kept as sorted tuples so equality is multiset equality.
    """
    endpoint_colors: tuple
    edge_colors: tuple

    def canonical(self):
        ends = ",".join(str(c) for c in self.endpoint_colors)
        edges = ",".join(str(c) for c in self.edge_colors)
        return f"{{{ends}}}|{{{edges}}}"

    def to_dict(self):
        return {
            "endpoint_colors": [str(c) for c in self.endpoint_colors],
            "edge_colors": [str(c) for c in self.edge_colors],
        }


@dataclass
class BlockDecomposition:
    blocks: list
    cut_vertices: list

    def to_dict(self):
        return {"blocks": [sorted(b) for b in self.blocks], "cut_vertices": sorted(self.cut_vertices)}


@dataclass
class BlockFailure:
    component: list
    non_edge: tuple

    def to_dict(self):
        return {"component": sorted(self.component), "non_edge": list(self.non_edge)}


class PathRelation(str, Enum):
    NOT_EQUIVALENT = "not_equivalent"
    COMBINATORIAL = "combinatorial"
    ISOMORPHIC = "isomorphic"


# -- block graphs -----------------------------------------------------------

def is_block_graph(g):
    """Biconnected decomposition plus a completeness check of each component.

    Returns a BlockDecomposition, or a BlockFailure naming a component with a
    non-edge.
    """
    g.require_connected()
    graph = g.nx_graph
    components = [sorted(c) for c in nx.biconnected_components(graph)]
    if not components:
        components = [[v] for v in g.vertices]
    components.sort()
    for comp in components:
        for u, v in combinations(comp, 2):
            if not g.has_edge(u, v):
                return BlockFailure(comp, (u, v))
    cut = sorted(nx.articulation_points(graph))
    return BlockDecomposition([frozenset(c) for c in components], cut)


def require_block_graph(g):
    result = is_block_graph(g)
    if isinstance(result, BlockFailure):
        raise NotBlockGraphError(
            f"Not a block graph: component {sorted(result.component)} misses edge {{{result.non_edge[0]},{result.non_edge[1]}}}"
        )
    return result


# -- shortest paths ---------------------------------------------------------

def _bfs_counts(g, source):
    dist = {source: 0}
    count = {source: 1}
    parent = {source: None}
    queue = deque([source])
    while queue:
        x = queue.popleft()
        for y in g.neighbors(x):
            if y not in dist:
                dist[y] = dist[x] + 1
                count[y] = count[x]
                parent[y] = x
                queue.append(y)
            elif dist[y] == dist[x] + 1:
                count[y] += count[x]
    return dist, count, parent


def shortest_path(g, u, v):
    """The unique shortest u-v path; raises when BFS sees two of them."""
    g.require_vertex(u)
    g.require_vertex(v)
    dist, count, parent = _bfs_counts(g, u)
    if v not in dist:
        raise NotBlockGraphError(f"No path between {u} and {v}")
    if count[v] > 1:
        raise NonUniquePathError(f"{count[v]} distinct shortest paths between {u} and {v}")
    walk = [v]
    while walk[-1] != u:
        walk.append(parent[walk[-1]])
    return PathDescriptor.along(g, reversed(walk))


@lru_cache(maxsize=64)
def path_table(g):
    """(i, j) -> shortest path from i to j, for every 1 <= i <= j <= n."""
    table = {}
    for u in g.vertices:
        dist, count, parent = _bfs_counts(g, u)
        for v in g.vertices:
            if v < u:
                continue
            if v not in dist:
                raise NotBlockGraphError(f"No path between {u} and {v}")
            if count[v] > 1:
                raise NonUniquePathError(f"{count[v]} distinct shortest paths between {u} and {v}")
            walk = [v]
            while walk[-1] != u:
                walk.append(parent[walk[-1]])
            table[(u, v)] = PathDescriptor.along(g, reversed(walk))
    return table


def oriented_path(g, u, v):
    """Shortest path from u to v in that direction, from the cached table."""
    path = path_table(g)[(min(u, v), max(u, v))]
    return path if u <= v else path.reversed()


def path_lambda(p):
    ends = tuple(sorted((p.vertex_colors[0], p.vertex_colors[-1])))
    return LambdaMultiset(ends, tuple(sorted(p.edge_colors)))


def paths_equivalent(p, q):
    forward = p.vertex_colors == q.vertex_colors and p.edge_colors == q.edge_colors
    backward = p.vertex_colors == q.vertex_colors[::-1] and p.edge_colors == q.edge_colors[::-1]
    if forward or backward:
        return PathRelation.ISOMORPHIC
    if path_lambda(p) == path_lambda(q):
        return PathRelation.COMBINATORIAL
    return PathRelation.NOT_EQUIVALENT


# -- structural audit -------------------------------------------------------

PASS, FAIL, VACUOUS = "pass", "fail", "vacuous"


@dataclass
class AuditCheck:
    name: str
    status: str = VACUOUS
    checked: int = 0
    witness: Optional[dict] = None

    def record(self, ok, witness_factory):
        self.checked += 1
        if self.status == FAIL:
            return
        if ok:
            self.status = PASS
        else:
            self.status = FAIL
            self.witness = witness_factory()

    def to_dict(self):
        return {"name": self.name, "status": self.status, "checked": self.checked, "witness": self.witness}


@dataclass
class AuditReport:
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.status != FAIL for c in self.checks)

    def check(self, name):
        return next(c for c in self.checks if c.name == name)

    def to_dict(self):
        return {"passed": self.passed, "checks": [c.to_dict() for c in self.checks]}


def _palindrome(seq):
    return tuple(seq) == tuple(seq)[::-1]


def structural_audit(g):
    """Exhaustive scans of the shortest-path properties of a connected block graph.

    Checks, each with status pass/fail/vacuous and the first witness:
      symmetric_paths      same-colored endpoints give palindromic color sequences
      two_per_color        no shortest path carries three vertices of one color
      equivalent_isomorphic combinatorially equivalent paths are isomorphic
      branch_exclusion     for paths c-j, c-l meeting only at c with different
                           first edge colors, not both cross colors occur
      union_path           gluing two shortest paths along a shared edge gives
                           the shortest path between the outer endpoints
    """
    if g.n > config.AUDIT_MAX_VERTICES:
        raise LimitExceededError(f"audit limited to {config.AUDIT_MAX_VERTICES} vertices, got {g.n}")
    require_block_graph(g)
    table = path_table(g)
    LogUtils.info(f"Auditing {len(table)} shortest paths")

    symmetric = AuditCheck("symmetric_paths")
    two_per_color = AuditCheck("two_per_color")
    equivalent = AuditCheck("equivalent_isomorphic")
    branch = AuditCheck("branch_exclusion")
    union = AuditCheck("union_path")

    for (i, j), p in table.items():
        if i != j and g.color(i) == g.color(j):
            symmetric.record(
                _palindrome(p.edge_colors) and _palindrome(p.vertex_colors),
                lambda p=p: p.to_dict(),
            )
        if len(p.vertices) >= 3:
            counts = Counter(p.vertex_colors)
            two_per_color.record(max(counts.values()) <= 2, lambda p=p: p.to_dict())

    by_lambda = {}
    for key, p in table.items():
        by_lambda.setdefault(path_lambda(p), []).append(p)
    for paths in by_lambda.values():
        for p, q in combinations(paths, 2):
            equivalent.record(
                paths_equivalent(p, q) == PathRelation.ISOMORPHIC,
                lambda p=p, q=q: {"p": p.to_dict(), "q": q.to_dict()},
            )

    for c in g.vertices:
        outgoing = [oriented_path(g, c, x) for x in g.vertices if x != c]
        for p, q in combinations(outgoing, 2):
            if set(p.vertices) & set(q.vertices) != {c}:
                continue
            first_p, first_q = p.edge_colors[0], q.edge_colors[0]
            if first_p == first_q:
                continue
            # a -> j carries first_q and (c+1) -> l carries first_p: forbidden together
            both = first_q in p.edge_colors[1:] and first_p in q.edge_colors[1:]
            branch.record(not both, lambda p=p, q=q: {"c_to_j": p.to_dict(), "c_to_l": q.to_dict()})

    by_first_edge = {}
    for x in g.vertices:
        for y in g.vertices:
            if x != y:
                q = oriented_path(g, x, y)
                by_first_edge.setdefault(q.vertices[:2], []).append(q)
    for x in g.vertices:
        for y in g.vertices:
            if x == y:
                continue
            p = oriented_path(g, x, y)
            shared = p.vertices[-2:]
            for q in by_first_edge.get(shared, []):
                glued = p.vertices + q.vertices[2:]
                expected = oriented_path(g, glued[0], glued[-1]).vertices
                union.record(
                    glued == expected,
                    lambda p=p, q=q, glued=glued: {"p": p.to_dict(), "q": q.to_dict(), "glued": list(glued)},
                )

    report = AuditReport([symmetric, two_per_color, equivalent, branch, union])
    if report.passed:
        LogUtils.success("Structural audit passed")
    else:
        LogUtils.warning("Structural audit found a failing check")
    return report
