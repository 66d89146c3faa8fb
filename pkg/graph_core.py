import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Optional

import networkx as nx

from utils import DisconnectedGraphError, GraphInputError, LogUtils

VERTEX = "vertex"
EDGE = "edge"
NAMESPACES = (VERTEX, EDGE)


class ColorId(NamedTuple):
    """A color in one of the two disjoint namespaces.

    Equality is (namespace, label) equality, so a vertex color never equals an
    edge color even when the labels coincide.
    """
    namespace: str
    label: str

    def __str__(self):
        return f"{self.namespace[0]}:{self.label}"

    @staticmethod
    def vertex(label):
        return ColorId(VERTEX, str(label))

    @staticmethod
    def edge(label):
        return ColorId(EDGE, str(label))


def edge_key(u, v):
    """Canonical (sorted) form of an undirected edge."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True)
class ColoredGraph:
    """Vertices 1..n, undirected edges and their colors.

    Construction does not reject invalid data; parse_graph does, and validate()
    reports what is wrong with a value built by hand.
    """
    n: int
    vertex_colors: tuple
    edges: tuple
    edge_colors: tuple

    @staticmethod
    def build(vertex_colors, edge_colors):
        """Build from plain labels.

        vertex_colors: list indexed from vertex 1, or dict vertex -> label.
        edge_colors: dict (u, v) -> label.
        """
        if isinstance(vertex_colors, dict):
            n = max(vertex_colors) if vertex_colors else 0
            labels = [vertex_colors.get(v) for v in range(1, n + 1)]
        else:
            labels = list(vertex_colors)
        colors = tuple(ColorId.vertex(label) if label is not None else None for label in labels)
        items = sorted((edge_key(u, v), ColorId.edge(label)) for (u, v), label in edge_colors.items())
        return ColoredGraph(
            n=len(colors),
            vertex_colors=colors,
            edges=tuple(e for e, _ in items),
            edge_colors=tuple(c for _, c in items),
        )

    # -- accessors ---------------------------------------------------------

    @property
    def vertices(self):
        return range(1, self.n + 1)

    def color(self, v):
        return self.vertex_colors[v - 1]

    @cached_property
    def edge_color_map(self):
        return {e: c for e, c in zip(self.edges, self.edge_colors)}

    def edge_color(self, u, v):
        return self.edge_color_map[edge_key(u, v)]

    @cached_property
    def adjacency(self):
        adj = {v: {} for v in self.vertices}
        for (u, v), c in zip(self.edges, self.edge_colors):
            if u in adj and v in adj and u != v:
                adj[u][v] = c
                adj[v][u] = c
        return adj

    def has_edge(self, u, v):
        return v in self.adjacency.get(u, {})

    def neighbors(self, v):
        return sorted(self.adjacency[v])

    def degree(self, v):
        return len(self.adjacency[v])

    @cached_property
    def vertex_color_set(self):
        return frozenset(c for c in self.vertex_colors if c is not None)

    @cached_property
    def edge_color_set(self):
        return frozenset(c for c in self.edge_colors if c is not None)

    def color_classes(self):
        """Vertex color -> sorted vertices, in order of first appearance."""
        classes = {}
        for v in self.vertices:
            classes.setdefault(self.color(v), []).append(v)
        return classes

    def edge_color_classes(self):
        """Edge color -> sorted edges, in order of first appearance."""
        classes = {}
        for e, c in zip(self.edges, self.edge_colors):
            classes.setdefault(c, []).append(e)
        return classes

    @cached_property
    def nx_graph(self):
        graph = nx.Graph()
        for v in self.vertices:
            graph.add_node(v, color=self.color(v))
        for (u, v), c in zip(self.edges, self.edge_colors):
            if u != v:
                graph.add_edge(u, v, color=c)
        return graph

    def is_connected(self):
        return self.n > 0 and nx.is_connected(self.nx_graph)

    def is_complete(self):
        return len(set(e for e in self.edges if e[0] != e[1])) == self.n * (self.n - 1) // 2

    def require_vertex(self, v):
        if not isinstance(v, int) or not 1 <= v <= self.n:
            raise GraphInputError(f"Unknown vertex id: {v}")

    def require_connected(self):
        if not self.is_connected():
            raise DisconnectedGraphError("Graph is disconnected; only connected graphs are supported here")

    def recolored(self, vertex_colors=None, edge_colors=None):
        """Copy with some vertex/edge colors replaced (labels or ColorIds)."""
        vcols = list(self.vertex_colors)
        for v, label in (vertex_colors or {}).items():
            vcols[v - 1] = label if isinstance(label, ColorId) else ColorId.vertex(label)
        emap = dict(self.edge_color_map)
        for e, label in (edge_colors or {}).items():
            emap[edge_key(*e)] = label if isinstance(label, ColorId) else ColorId.edge(label)
        edges = tuple(sorted(emap))
        return ColoredGraph(self.n, tuple(vcols), edges, tuple(emap[e] for e in edges))


@dataclass(frozen=True)
class Subgraph:
    """Induced subgraph of a parent graph, keeping the parent's vertex ids and colors."""
    parent: ColoredGraph
    vertices: frozenset
    edges: tuple = field(default=())

    @staticmethod
    def induced(parent, vertex_subset):
        vs = frozenset(vertex_subset)
        edges = tuple(e for e in parent.edges if e[0] in vs and e[1] in vs and e[0] != e[1])
        return Subgraph(parent, vs, edges)

    def edge_colors(self):
        return {e: self.parent.edge_color(*e) for e in self.edges}

    def to_dict(self):
        return {"vertices": sorted(self.vertices), "edges": [list(e) for e in self.edges]}


class Violation(NamedTuple):
    kind: str
    detail: str


@dataclass
class ValidationReport:
    violations: list
    connected: bool

    @property
    def valid(self):
        return not self.violations

    def to_dict(self):
        return {
            "valid": self.valid,
            "connected": self.connected,
            "violations": [{"kind": v.kind, "detail": v.detail} for v in self.violations],
        }


@dataclass
class RegularityReport:
    edge_regular: bool
    vertex_regular: bool
    edge_witness: Optional[tuple] = None
    vertex_witness: Optional[tuple] = None

    def to_dict(self):
        return {
            "edge_regular": self.edge_regular,
            "vertex_regular": self.vertex_regular,
            "edge_witness": [list(e) for e in self.edge_witness] if self.edge_witness else None,
            "vertex_witness": (
                {"u": self.vertex_witness[0], "v": self.vertex_witness[1], "edge_color": str(self.vertex_witness[2])}
                if self.vertex_witness else None
            ),
        }


# -- parsing and serialization ---------------------------------------------

def _parse_color(raw, namespace, where):
    if not isinstance(raw, str) or raw.strip() == "":
        raise GraphInputError(f"Missing color for {where}")
    for qualifier in NAMESPACES:
        prefix = qualifier + ":"
        if raw.startswith(prefix):
            if qualifier != namespace:
                raise GraphInputError(
                    f"Color namespace collision: {where} is declared with a {qualifier} color '{raw}'"
                )
            label = raw[len(prefix):]
            if not label:
                raise GraphInputError(f"Missing color for {where}")
            return ColorId(namespace, label)
    return ColorId(namespace, raw)


def _require_int(value, what):
    if isinstance(value, bool) or not isinstance(value, int):
        raise GraphInputError(f"Schema violation: {what} must be an integer, got {value!r}")
    return value


def parse_graph(text):
    """Parse and validate a JSON graph document.

    Any violation of the schema or of the ColoredGraph invariants raises
    GraphInputError with a message naming the offending element.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise GraphInputError(f"JSON syntax error: {str(e)}")

    if not isinstance(doc, dict):
        raise GraphInputError("Schema violation: document must be an object")
    unknown = set(doc) - {"vertices", "edges"}
    if unknown:
        raise GraphInputError(f"Schema violation: unexpected keys {sorted(unknown)}")
    vertices = doc.get("vertices")
    edges = doc.get("edges", [])
    if not isinstance(vertices, list) or not vertices:
        raise GraphInputError("Schema violation: 'vertices' must be a non-empty list")
    if not isinstance(edges, list):
        raise GraphInputError("Schema violation: 'edges' must be a list")

    colors = {}
    for entry in vertices:
        if not isinstance(entry, dict) or "id" not in entry:
            raise GraphInputError(f"Schema violation: vertex entry {entry!r} needs an 'id'")
        vid = _require_int(entry["id"], "vertex id")
        if vid < 1:
            raise GraphInputError(f"Schema violation: vertex id {vid} must be >= 1")
        if vid in colors:
            raise GraphInputError(f"Schema violation: vertex id {vid} appears twice")
        colors[vid] = _parse_color(entry.get("color"), VERTEX, f"vertex {vid}")

    n = len(colors)
    missing = [v for v in range(1, n + 1) if v not in colors]
    if missing:
        raise GraphInputError(f"Vertex ids must be contiguous 1..{n}; missing {missing}")

    edge_colors = {}
    for entry in edges:
        if not isinstance(entry, dict) or "u" not in entry or "v" not in entry:
            raise GraphInputError(f"Schema violation: edge entry {entry!r} needs 'u' and 'v'")
        u = _require_int(entry["u"], "edge endpoint")
        v = _require_int(entry["v"], "edge endpoint")
        if u == v:
            raise GraphInputError(f"Loop at vertex {u} is not allowed")
        for endpoint in (u, v):
            if endpoint not in colors:
                raise GraphInputError(f"Edge {{{u},{v}}} references unknown vertex {endpoint}")
        key = edge_key(u, v)
        if key in edge_colors:
            raise GraphInputError(f"Duplicate edge {{{key[0]},{key[1]}}}")
        edge_colors[key] = _parse_color(entry.get("color"), EDGE, f"edge {{{key[0]},{key[1]}}}")

    ordered = sorted(edge_colors)
    graph = ColoredGraph(
        n=n,
        vertex_colors=tuple(colors[v] for v in range(1, n + 1)),
        edges=tuple(ordered),
        edge_colors=tuple(edge_colors[e] for e in ordered),
    )
    LogUtils.debug(f"Parsed graph with {n} vertices and {len(ordered)} edges")
    return graph


def color_text(color):
    """Schema text of a color; labels that look qualified get their namespace written out."""
    if any(color.label.startswith(q + ":") for q in NAMESPACES):
        return f"{color.namespace}:{color.label}"
    return color.label


def graph_to_dict(g):
    """Schema form: vertices sorted by id, edges sorted by (u, v)."""
    return {
        "vertices": [{"id": v, "color": color_text(g.color(v))} for v in g.vertices],
        "edges": [
            {"u": u, "v": v, "color": color_text(c)}
            for (u, v), c in sorted(zip(g.edges, g.edge_colors))
        ],
    }


def serialize_graph(g):
    return json.dumps(graph_to_dict(g), indent=2) + "\n"


# -- validation and local predicates ----------------------------------------

def validate(g):
    """Report every violated ColoredGraph invariant plus a connectivity flag."""
    violations = []
    if g.n < 1:
        violations.append(Violation("vertex_count", "graph has no vertices"))
    if len(g.vertex_colors) != g.n:
        violations.append(Violation("vertex_count", f"{len(g.vertex_colors)} colors for {g.n} vertices"))

    for v, c in enumerate(g.vertex_colors, start=1):
        if c is None:
            violations.append(Violation("missing_vertex_color", f"vertex {v} has no color"))
        elif c.namespace != VERTEX:
            violations.append(Violation("namespace", f"vertex {v} has non-vertex color {c}"))

    seen = Counter()
    for (u, v), c in zip(g.edges, g.edge_colors):
        if u == v:
            violations.append(Violation("loop", f"loop {{{u},{v}}}"))
        for endpoint in (u, v):
            if not 1 <= endpoint <= g.n:
                violations.append(Violation("unknown_vertex", f"edge {{{u},{v}}} uses vertex {endpoint}"))
        seen[edge_key(u, v)] += 1
        if c is None:
            violations.append(Violation("missing_edge_color", f"edge {{{u},{v}}} has no color"))
        elif c.namespace != EDGE:
            violations.append(Violation("namespace", f"edge {{{u},{v}}} has non-edge color {c}"))
    for e, count in sorted(seen.items()):
        if count > 1:
            violations.append(Violation("duplicate_edge", f"edge {{{e[0]},{e[1]}}} listed {count} times"))

    overlap = g.vertex_color_set & g.edge_color_set
    if overlap:
        violations.append(Violation("namespace", f"colors used for both vertices and edges: {sorted(map(str, overlap))}"))

    connected = False
    if g.n >= 1:
        try:
            connected = g.is_connected()
        except nx.NetworkXException:
            connected = False
    return ValidationReport(violations, connected)


def regularity_report(g):
    """Edge and vertex regularity with the first violating witness of each."""
    edge_regular, edge_witness = True, None
    endpoint_colors = {}
    for (u, v), c in zip(g.edges, g.edge_colors):
        pair = tuple(sorted((g.color(u), g.color(v))))
        if c in endpoint_colors and endpoint_colors[c][0] != pair:
            edge_regular = False
            edge_witness = (endpoint_colors[c][1], (u, v))
            break
        endpoint_colors.setdefault(c, (pair, (u, v)))

    vertex_regular, vertex_witness = True, None
    incident = {v: Counter(g.adjacency[v].values()) for v in g.vertices}
    for color, members in g.color_classes().items():
        first = members[0]
        for other in members[1:]:
            if incident[first] != incident[other]:
                differing = sorted(set(incident[first]) | set(incident[other]))
                eps = next(c for c in differing if incident[first][c] != incident[other][c])
                vertex_regular, vertex_witness = False, (first, other, eps)
                break
        if not vertex_regular:
            break

    return RegularityReport(edge_regular, vertex_regular, edge_witness, vertex_witness)


def neighborhood(g, c):
    """Ne(c): the subgraph induced by c and its neighbors."""
    g.require_vertex(c)
    return Subgraph.induced(g, {c} | set(g.adjacency[c]))


def c_components(g, c):
    """Components of g - c, each with c and its incident edges restored."""
    g.require_vertex(c)
    g.require_connected()
    rest = g.nx_graph.copy()
    rest.remove_node(c)
    parts = sorted((sorted(part) for part in nx.connected_components(rest)), key=lambda p: p[0])
    if not parts:
        return [Subgraph.induced(g, {c})]
    return [Subgraph.induced(g, set(part) | {c}) for part in parts]
