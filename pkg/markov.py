from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement

import networkx as nx
import numpy as np

from blockpath import path_lambda, path_table, require_block_graph
from symmetry import require_rcop
from toric_maps import SigmaIndex, exponent_matrix_endpoint, kernel_member, sigma_indices
from utils import LimitExceededError, LogUtils, ParallelUtils, PreconditionError, VerificationError


def _as_index(pair):
    i, j = pair
    return SigmaIndex(min(i, j), max(i, j))


@dataclass(frozen=True, order=True)
class MarkovMove:
    """Binomial sigma^plus - sigma^minus as two sorted multisets of indices.

    Built through from_sides, which cancels common factors and puts the
    lexicographically least index on the plus side.
    """
    plus: tuple
    minus: tuple

    @staticmethod
    def from_sides(plus, minus):
        """Normalized move, or None when the two sides cancel completely."""
        pos = Counter(_as_index(p) for p in plus)
        neg = Counter(_as_index(p) for p in minus)
        if sum(pos.values()) != sum(neg.values()):
            raise PreconditionError(f"move sides have different degrees: {sorted(plus)} vs {sorted(minus)}")
        common = pos & neg
        pos, neg = pos - common, neg - common
        if not pos:
            return None
        plus_side = tuple(sorted(pos.elements()))
        minus_side = tuple(sorted(neg.elements()))
        if minus_side[0] < plus_side[0]:
            plus_side, minus_side = minus_side, plus_side
        return MarkovMove(plus_side, minus_side)

    @staticmethod
    def from_dict(data):
        try:
            return MarkovMove.from_sides([tuple(p) for p in data["plus"]], [tuple(p) for p in data["minus"]])
        except (KeyError, TypeError, ValueError) as e:
            raise PreconditionError(f"not a move: {data!r} ({str(e)})")

    @property
    def degree(self):
        return len(self.plus)

    def sort_key(self):
        return (self.degree, self.plus, self.minus)

    def vector(self, cols):
        position = {c: k for k, c in enumerate(cols)}
        out = np.zeros(len(cols), dtype=np.int64)
        for index, sign in [(p, 1) for p in self.plus] + [(m, -1) for m in self.minus]:
            if index not in position:
                raise PreconditionError(f"index {index} is not a column")
            out[position[index]] += sign
        return out

    def binomial(self):
        def monomial(side):
            return "*".join(f"s{i}{j}" if j < 10 else f"s{i}_{j}" for i, j in side)
        return f"{monomial(self.plus)} - {monomial(self.minus)}"

    def __str__(self):
        def side(indices):
            return "".join(f"({i},{j})" for i, j in indices)
        return f"{side(self.plus)}-{side(self.minus)}"

    def to_dict(self):
        return {"plus": [[i, j] for i, j in self.plus], "minus": [[i, j] for i, j in self.minus]}


def sort_moves(moves):
    return sorted(moves, key=MarkovMove.sort_key)


# -- bases ------------------------------------------------------------------

def uncolored_basis(g):
    """Quadratic moves sigma_ij sigma_kl - sigma_ik sigma_jl whose two sides
    use the same multiset of edges; coloring plays no role."""
    require_block_graph(g)
    table = path_table(g)

    def edges(i, j):
        return table[(min(i, j), max(i, j))].edges()

    vertices = list(g.vertices)
    paths = {(i, j): tuple(sorted(edges(i, j))) for i in vertices for j in vertices}
    moves = set()
    for i in vertices:
        for j in vertices:
            for k in vertices:
                for l in vertices:
                    left = sorted(paths[(i, j)] + paths[(k, l)])
                    right = sorted(paths[(i, k)] + paths[(j, l)])
                    if left != right:
                        continue
                    move = MarkovMove.from_sides([(i, j), (k, l)], [(i, k), (j, l)])
                    if move is not None:
                        moves.add(move)
    LogUtils.debug(f"Uncolored basis: {len(moves)} quadratic moves")
    return set(moves)


def lambda_classes(g):
    """Lambda multiset -> indices sharing it, in lexicographic index order."""
    table = path_table(g)
    classes = {}
    for index in sigma_indices(g.n):
        classes.setdefault(path_lambda(table[index]), []).append(index)
    return classes


def completion_basis(g, all_pairs=False):
    """Linear moves sigma_ij - sigma_kl for equal Lambda multisets.

    Each class contributes the star through its least index, or every pair
    when all_pairs is set.
    """
    require_block_graph(g)
    require_rcop(g)
    moves = set()
    for members in lambda_classes(g).values():
        if len(members) < 2:
            continue
        pairs = combinations(members, 2) if all_pairs else ((members[0], other) for other in members[1:])
        for a, b in pairs:
            moves.add(MarkovMove.from_sides([a], [b]))
    LogUtils.debug(f"Completion basis: {len(moves)} linear moves")
    return moves


def rcop_basis(g, all_pairs=False):
    """Union of the uncolored and completion bases, checked against A_G."""
    moves = uncolored_basis(g) | completion_basis(g, all_pairs=all_pairs)
    a = exponent_matrix_endpoint(g)
    for move in moves:
        if not kernel_member(a, move):
            raise VerificationError(f"move {move} is not in the kernel of A_G")
    LogUtils.success(f"Markov basis with {len(moves)} moves")
    return sort_moves(moves)


# -- fibers -----------------------------------------------------------------

@dataclass
class Fiber:
    target: tuple
    cols: tuple
    points: list = field(default_factory=list)

    def to_dict(self):
        return {"target": list(self.target), "size": len(self.points), "points": [list(p) for p in self.points]}


def enumerate_fiber(a, target, cap):
    """Every nonnegative integer p with a . p == target, by DFS over columns."""
    entries = np.asarray(a.entries, dtype=np.int64)
    target = np.asarray(target, dtype=np.int64)
    rows, cols = entries.shape
    if target.shape != (rows,):
        raise PreconditionError(f"target has {target.shape[0]} entries, matrix has {rows} rows")
    if np.any(entries < 0):
        raise PreconditionError("fiber enumeration needs a nonnegative matrix")
    empty = [str(a.cols[k]) for k in range(cols) if not entries[:, k].any()]
    if empty:
        # a zero column can be added to any point, so every fiber is infinite
        raise PreconditionError(f"zero columns {empty} make every fiber unbounded")

    # reachable[k]: rows some column >= k can still fill
    reachable = np.zeros((cols + 1, rows), dtype=bool)
    for k in range(cols - 1, -1, -1):
        reachable[k] = reachable[k + 1] | (entries[:, k] > 0)

    points = []
    counts = [0] * cols

    def descend(k, remaining):
        if not remaining.any():
            points.append(tuple(counts))
            if len(points) > cap:
                raise LimitExceededError(f"fiber has more than {cap} points")
            return
        if k == cols or np.any((remaining > 0) & ~reachable[k]):
            return
        column = entries[:, k]
        support = column > 0
        most = int(np.min(remaining[support] // column[support]))
        for m in range(most, -1, -1):
            counts[k] = m
            descend(k + 1, remaining - m * column)
        counts[k] = 0

    if np.any(target < 0):
        return Fiber(tuple(int(t) for t in target), tuple(a.cols), [])
    descend(0, target)
    return Fiber(tuple(int(t) for t in target), tuple(a.cols), sorted(points))


def fiber_connected(fiber, moves):
    """(connected, component count) of the fiber graph linking p and p +- move."""
    if len(fiber.points) <= 1:
        return True, len(fiber.points)
    vectors = [move.vector(fiber.cols) for move in moves]
    members = set(fiber.points)
    graph = nx.Graph()
    graph.add_nodes_from(fiber.points)
    for point in fiber.points:
        base = np.asarray(point, dtype=np.int64)
        for v in vectors:
            for step in (v, -v):
                other = tuple(int(x) for x in base + step)
                if other in members:
                    graph.add_edge(point, other)
    components = nx.number_connected_components(graph)
    return components == 1, components


# -- certification ----------------------------------------------------------

@dataclass
class CertificationReport:
    degree_bound: int
    cap: int
    fibers: int = 0
    points: int = 0
    capped: list = field(default_factory=list)
    disconnected: list = field(default_factory=list)

    @property
    def certified(self):
        return not self.disconnected and not self.capped

    def to_dict(self):
        return {
            "certified": self.certified,
            "degree_bound": self.degree_bound,
            "cap": self.cap,
            "fibers": self.fibers,
            "points": self.points,
            "capped": self.capped,
            "disconnected": self.disconnected,
        }


def _move_table(moves, position):
    # sub-multiset of column ids -> replacements, both directions
    table = {}
    for move in moves:
        plus = tuple(sorted(position[p] for p in move.plus))
        minus = tuple(sorted(position[m] for m in move.minus))
        table.setdefault(plus, []).append(minus)
        table.setdefault(minus, []).append(plus)
    return table


def _components(points, table, sizes):
    members = set(points)
    graph = nx.Graph()
    graph.add_nodes_from(points)
    for point in points:
        for s in sizes:
            if s > len(point):
                continue
            for positions in set(combinations(range(len(point)), s)):
                sub = tuple(point[p] for p in positions)
                replacements = table.get(sub)
                if not replacements:
                    continue
                rest = [x for q, x in enumerate(point) if q not in positions]
                for repl in replacements:
                    other = tuple(sorted(rest + list(repl)))
                    if other in members:
                        graph.add_edge(point, other)
    return nx.number_connected_components(graph)


def certify_fibers(g, moves, degree_bound, cap):
    """Check that moves connect every fiber of A_G up to the degree bound.

    Monomials of each degree are grouped by their image; a fiber larger than
    the cap is reported as capped rather than checked.
    """
    a = exponent_matrix_endpoint(g)
    cols = a.cols
    position = {c: k for k, c in enumerate(cols)}
    table = _move_table(moves, position)
    sizes = sorted({len(k) for k in table})
    report = CertificationReport(degree_bound, cap)

    for degree in range(1, degree_bound + 1):
        fibers = {}
        for monomial in combinations_with_replacement(range(len(cols)), degree):
            image = tuple(int(x) for x in a.entries[:, list(monomial)].sum(axis=1))
            fibers.setdefault(image, []).append(monomial)
        report.fibers += len(fibers)
        report.points += sum(len(p) for p in fibers.values())

        pending = []
        for image, points in sorted(fibers.items()):
            if len(points) > cap:
                report.capped.append({"degree": degree, "target": list(image), "size": len(points)})
            elif len(points) > 1:
                pending.append((image, points))

        counts = ParallelUtils.map_ordered(lambda item: _components(item[1], table, sizes), pending)
        for (image, points), components in zip(pending, counts):
            if components > 1:
                report.disconnected.append({
                    "degree": degree,
                    "target": list(image),
                    "size": len(points),
                    "components": components,
                    "monomials": [[list(cols[k]) for k in point] for point in points],
                })
        LogUtils.debug(f"Degree {degree}: {len(fibers)} fibers, {len(pending)} with more than one point")

    if report.certified:
        LogUtils.success(f"All fibers up to degree {degree_bound} are connected")
    else:
        LogUtils.warning(
            f"{len(report.disconnected)} disconnected and {len(report.capped)} capped fibers up to degree {degree_bound}"
        )
    return report
