import re
from collections import deque
from dataclasses import dataclass
from typing import Optional

import config
from graph_core import c_components, edge_key
from utils import LimitExceededError, LogUtils, NotRcopError, PreconditionError, VerificationError


@dataclass(frozen=True)
class Permutation:
    """Bijection on 1..n stored as image[v - 1]."""
    image: tuple

    @staticmethod
    def identity(n):
        return Permutation(tuple(range(1, n + 1)))

    @staticmethod
    def from_mapping(mapping, n):
        return Permutation(tuple(mapping.get(v, v) for v in range(1, n + 1)))

    @staticmethod
    def from_cycles(text, n):
        """Parse cycle notation such as "(1 2)(4 5)"."""
        image = list(range(1, n + 1))
        for cycle in re.findall(r"\(([^()]*)\)", text):
            points = [int(tok) for tok in cycle.replace(",", " ").split()]
            for a, b in zip(points, points[1:] + points[:1]):
                image[a - 1] = b
        perm = Permutation(tuple(image))
        if sorted(perm.image) != list(range(1, n + 1)):
            raise PreconditionError(f"'{text}' is not a permutation of 1..{n}")
        return perm

    @property
    def n(self):
        return len(self.image)

    def __call__(self, v):
        return self.image[v - 1]

    def apply_edge(self, e):
        return edge_key(self(e[0]), self(e[1]))

    def compose(self, other):
        """self after other: v -> self(other(v))."""
        return Permutation(tuple(self(other(v)) for v in range(1, self.n + 1)))

    def inverse(self):
        inv = [0] * self.n
        for v, w in enumerate(self.image, start=1):
            inv[w - 1] = v
        return Permutation(tuple(inv))

    def is_identity(self):
        return all(w == v for v, w in enumerate(self.image, start=1))

    def cycles(self):
        seen, out = set(), []
        for start in range(1, self.n + 1):
            if start in seen or self(start) == start:
                continue
            cycle, v = [], start
            while v not in seen:
                seen.add(v)
                cycle.append(v)
                v = self(v)
            out.append(tuple(cycle))
        return out

    def __str__(self):
        cycles = self.cycles()
        if not cycles:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cycles)

    def to_dict(self):
        return str(self)


@dataclass(frozen=True)
class GroupDescription:
    generators: tuple
    vertex_orbits: tuple
    edge_orbits: tuple
    order: int

    def vertex_orbit_of(self, v):
        return next(orbit for orbit in self.vertex_orbits if v in orbit)

    def to_dict(self):
        return {
            "generators": [str(p) for p in self.generators],
            "order": self.order,
            "vertex_orbits": [list(o) for o in self.vertex_orbits],
            "edge_orbits": [[list(e) for e in o] for o in self.edge_orbits],
        }


@dataclass
class RcopVerdict:
    rcop: bool
    witness_kind: Optional[str] = None
    witness: Optional[tuple] = None
    group: Optional[GroupDescription] = None

    def __bool__(self):
        return self.rcop

    def to_dict(self):
        witness = None
        if self.witness is not None:
            if self.witness_kind == "edges":
                witness = [list(e) for e in self.witness]
            else:
                witness = list(self.witness)
        return {"rcop": self.rcop, "witness_kind": self.witness_kind, "witness": witness}


def is_automorphism(g, perm):
    """Direct check: adjacency, vertex colors and edge colors preserved."""
    if perm.n != g.n or sorted(perm.image) != list(g.vertices):
        return False
    if any(g.color(v) != g.color(perm(v)) for v in g.vertices):
        return False
    for e, c in zip(g.edges, g.edge_colors):
        image = perm.apply_edge(e)
        if not g.has_edge(*image) or g.edge_color(*image) != c:
            return False
    return True


def refine_colors(g):
    """Equitable refinement of the vertex coloring (1-dimensional Weisfeiler-Leman).

    Returns vertex -> cell id; automorphisms map vertices within cells.
    """
    def relabel(keys):
        ranking = {key: i for i, key in enumerate(sorted(set(keys.values())))}
        return {v: ranking[key] for v, key in keys.items()}

    cells = relabel({v: (g.color(v), g.degree(v)) for v in g.vertices})
    while True:
        keys = {
            v: (cells[v], tuple(sorted((c, cells[w]) for w, c in g.adjacency[v].items())))
            for v in g.vertices
        }
        refined = relabel(keys)
        if len(set(refined.values())) == len(set(cells.values())):
            return refined
        cells = refined


class AutomorphismSearch:
    """Backtracking search for color-preserving automorphisms with prescribed images."""

    def __init__(self, g):
        self.g = g
        self.cells = refine_colors(g)
        self.members = {}
        for v in g.vertices:
            self.members.setdefault(self.cells[v], []).append(v)

    def _order(self, fixed):
        # Prescribed vertices first, then grow along adjacency to prune early
        order = sorted(fixed)
        placed = set(order)
        remaining = set(self.g.vertices) - placed
        while remaining:
            def rank(v):
                linked = sum(1 for w in self.g.adjacency[v] if w in placed)
                return (-linked, len(self.members[self.cells[v]]), -self.g.degree(v), v)
            nxt = min(remaining, key=rank)
            order.append(nxt)
            placed.add(nxt)
            remaining.discard(nxt)
        return order

    def _consistent(self, v, w, mapping):
        if self.cells[v] != self.cells[w]:
            return False
        adj_v, adj_w = self.g.adjacency[v], self.g.adjacency[w]
        for x, y in mapping.items():
            if x in adj_v:
                if y not in adj_w or adj_w[y] != adj_v[x]:
                    return False
            elif y in adj_w:
                return False
        return True

    def find(self, fixed=None):
        """One automorphism extending the partial map `fixed`, or None."""
        fixed = dict(fixed or {})
        for v, w in fixed.items():
            self.g.require_vertex(v)
            self.g.require_vertex(w)
        if len(set(fixed.values())) != len(fixed):
            return None
        mapping = {}
        for v in sorted(fixed):
            if not self._consistent(v, fixed[v], mapping):
                return None
            mapping[v] = fixed[v]

        order = self._order(fixed)
        used = set(mapping.values())

        def extend(depth):
            if depth == len(order):
                return True
            v = order[depth]
            if v in mapping:
                return extend(depth + 1)
            for w in self.members[self.cells[v]]:
                if w in used or not self._consistent(v, w, mapping):
                    continue
                mapping[v] = w
                used.add(w)
                if extend(depth + 1):
                    return True
                del mapping[v]
                used.discard(w)
            return False

        if not extend(0):
            return None
        perm = Permutation.from_mapping(mapping, self.g.n)
        if not is_automorphism(self.g, perm):
            raise VerificationError(f"search produced a non-automorphism {perm}")
        return perm


def _orbit(point, generators):
    orbit, queue = {point}, deque([point])
    while queue:
        x = queue.popleft()
        for gen in generators:
            y = gen(x)
            if y not in orbit:
                orbit.add(y)
                queue.append(y)
    return orbit


def _union_find_orbits(elements, generators, act):
    parent = {x: x for x in elements}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    # Orbits are the components of the relation x ~ gen(x)
    for gen in generators:
        for x in elements:
            a, b = find(x), find(act(gen, x))
            if a != b:
                parent[max(a, b)] = min(a, b)
    groups = {}
    for x in elements:
        groups.setdefault(find(x), []).append(x)
    return tuple(sorted(tuple(sorted(group)) for group in groups.values()))


def automorphism_group(g):
    """Generators, orbits and order of the color-preserving automorphism group.

    Generators form a strong generating set along the base 1..n: for every
    base prefix, one automorphism per new point reached in the stabilizer's
    basic orbit. The order is the product of the basic orbit lengths.
    """
    search = AutomorphismSearch(g)
    generators = []
    order = 1
    base = list(g.vertices)
    for i, b in enumerate(base):
        prefix = {x: x for x in base[:i]}
        stabilizer_gens = [p for p in generators if all(p(x) == x for x in prefix)]
        orbit = _orbit(b, stabilizer_gens)
        for candidate in search.members[search.cells[b]]:
            if candidate in orbit:
                continue
            perm = search.find({**prefix, b: candidate})
            if perm is not None:
                generators.append(perm)
                stabilizer_gens.append(perm)
                orbit = _orbit(b, stabilizer_gens)
        order *= len(orbit)

    vertex_orbits = _union_find_orbits(list(g.vertices), generators, lambda p, v: p(v))
    edge_orbits = _union_find_orbits(list(g.edges), generators, lambda p, e: p.apply_edge(e))
    LogUtils.debug(f"Automorphism group: {len(generators)} generators, order {order}")
    return GroupDescription(tuple(generators), vertex_orbits, edge_orbits, order)


def group_elements(desc, n, ceiling=None):
    """All elements of the generated group, by closure; guarded by a ceiling."""
    ceiling = config.GROUP_CLOSURE_CEILING if ceiling is None else ceiling
    identity = Permutation.identity(n)
    seen = {identity}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for gen in desc.generators:
            y = gen.compose(x)
            if y not in seen:
                seen.add(y)
                if len(seen) > ceiling:
                    raise LimitExceededError(f"group closure exceeds ceiling of {ceiling} elements")
                queue.append(y)
    return sorted(seen, key=lambda p: p.image)


def group_from_generators(generators, g):
    """Describe the group generated by explicit permutations (orbits and closure order)."""
    gens = tuple(generators)
    vertex_orbits = _union_find_orbits(list(g.vertices), gens, lambda p, v: p(v))
    edge_orbits = _union_find_orbits(list(g.edges), gens, lambda p, e: p.apply_edge(e))
    partial = GroupDescription(gens, vertex_orbits, edge_orbits, 0)
    order = len(group_elements(partial, g.n))
    return GroupDescription(gens, vertex_orbits, edge_orbits, order)


def is_rcop(g, group=None):
    """Decide the RCOP property: color classes equal orbits (vertices, then edges)."""
    g.require_connected()
    group = group or automorphism_group(g)
    for color, members in g.color_classes().items():
        orbit = group.vertex_orbit_of(members[0])
        outside = [v for v in members if v not in orbit]
        if outside:
            return RcopVerdict(False, "vertices", (members[0], outside[0]), group)
    edge_orbit = {e: orbit for orbit in group.edge_orbits for e in orbit}
    for color, members in g.edge_color_classes().items():
        orbit = edge_orbit[members[0]]
        outside = [e for e in members if e not in orbit]
        if outside:
            return RcopVerdict(False, "edges", (members[0], outside[0]), group)
    return RcopVerdict(True, group=group)


def require_rcop(g):
    verdict = is_rcop(g)
    if not verdict:
        raise NotRcopError(f"Graph is not RCOP; {verdict.witness_kind} {verdict.witness} lie in different orbits")
    return verdict


def _path_preconditions(g, p, q):
    if len(p.vertices) != len(q.vertices):
        raise PreconditionError("paths must have equal length")
    for path in (p, q):
        for v in path.vertices:
            g.require_vertex(v)
        for a, b in zip(path.vertices, path.vertices[1:]):
            if not g.has_edge(a, b):
                raise PreconditionError(f"{list(path.vertices)} is not a path of the graph")


def path_automorphism(g, p, q):
    """An automorphism carrying path p onto path q, vertex by vertex, or None.

    The given orientation of q is tried first, then its reversal.
    """
    _path_preconditions(g, p, q)
    search = AutomorphismSearch(g)
    for target in (q, q.reversed()):
        if p.vertex_colors != target.vertex_colors or p.edge_colors != target.edge_colors:
            continue
        perm = search.find(dict(zip(p.vertices, target.vertices)))
        if perm is not None:
            return perm
    return None


def neighborhood_image(g, gamma, c):
    """Vertex set of gamma(Ne(c)); equals Ne(gamma(c)) for any automorphism."""
    return frozenset(gamma(v) for v in [c] + g.neighbors(c))


def _component_union(g, center, excluded_neighbor):
    parts = [s.vertices for s in c_components(g, center) if excluded_neighbor not in s.vertices]
    return frozenset().union(*parts) if parts else frozenset({center})


def swap_automorphism(g, u, v):
    """Swap of the two sides of a same-colored edge {u, v}.

    Maps u <-> v and fixes every vertex outside G_u and G_v, where G_u is the
    union of the u-components not containing v (symmetrically for G_v).
    """
    if not g.has_edge(u, v):
        raise PreconditionError(f"{{{u},{v}}} is not an edge")
    side_u = _component_union(g, u, v)
    side_v = _component_union(g, v, u)
    fixed = {w: w for w in g.vertices if w not in side_u and w not in side_v}
    fixed.update({u: v, v: u})
    return AutomorphismSearch(g).find(fixed)


def branch_automorphism(g, c, u, v):
    """Exchange of the c-components H_u and H_v for same-colored edges {c,u}, {c,v}."""
    if not (g.has_edge(c, u) and g.has_edge(c, v)):
        raise PreconditionError("both {c,u} and {c,v} must be edges")
    comps = c_components(g, c)
    h_u = next(s.vertices for s in comps if u in s.vertices)
    h_v = next(s.vertices for s in comps if v in s.vertices)
    fixed = {w: w for w in g.vertices if w not in h_u and w not in h_v}
    fixed.update({c: c, u: v, v: u} if h_u != h_v else {c: c, u: v})
    return AutomorphismSearch(g).find(fixed)
