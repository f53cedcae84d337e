"""Multigraphs with oriented labeled edges, involutions, and edge cochains.

The graphs here are the dual graphs of stable curves: a vertex per
component, an edge per node, with parallel edges and loops permitted.
An involution is an order-<=2 automorphism given by a vertex permutation
and an edge permutation; each edge additionally carries a sign recording
whether the involution preserves or reverses its chosen orientation.
"""

from __future__ import annotations

from fractions import Fraction


class GraphError(ValueError):
    """Raised for structurally invalid graphs or involutions."""


class GraphFormatError(GraphError):
    """Raised by the text-format parser; carries the offending line number."""

    def __init__(self, lineno: int | None, message: str):
        self.lineno = lineno
        prefix = f"line {lineno}: " if lineno is not None else ""
        super().__init__(prefix + message)


class MultiGraph:
    """Finite multigraph with named vertices and oriented labeled edges.

    ``edges`` is a sequence of ``(label, tail, head)`` triples.  Labels are
    unique; endpoints must be declared vertices.  The edge order given at
    construction is the fixed coordinate order for cochain vectors.
    """

    def __init__(self, vertices, edges):
        self.vertices = tuple(vertices)
        self.edges = tuple((str(lab), str(t), str(h)) for (lab, t, h) in edges)
        if len(set(self.vertices)) != len(self.vertices):
            raise GraphError("duplicate vertex names")
        vset = set(self.vertices)
        labels = [lab for (lab, _, _) in self.edges]
        if len(set(labels)) != len(labels):
            dup = sorted({l for l in labels if labels.count(l) > 1})
            raise GraphError(f"duplicate edge labels: {', '.join(dup)}")
        for lab, t, h in self.edges:
            if t not in vset or h not in vset:
                raise GraphError(f"edge {lab} references undeclared vertex")
        self.edge_labels = tuple(labels)
        self._edge_index = {lab: i for i, lab in enumerate(labels)}
        self._endpoints = {lab: (t, h) for (lab, t, h) in self.edges}
        adj: dict[str, list[tuple[str, str]]] = {v: [] for v in self.vertices}
        for lab, t, h in self.edges:
            adj[t].append((lab, h))
            if t != h:
                adj[h].append((lab, t))
        self._adjacency = adj

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_index(self, label: str) -> int:
        try:
            return self._edge_index[label]
        except KeyError:
            raise GraphError(f"unknown edge label {label!r}") from None

    def endpoints(self, label: str) -> tuple[str, str]:
        """(tail, head) of the edge."""
        try:
            return self._endpoints[label]
        except KeyError:
            raise GraphError(f"unknown edge label {label!r}") from None

    def neighbors(self, vertex: str):
        """(edge label, other endpoint) pairs at a vertex; loops appear once."""
        return tuple(self._adjacency[vertex])

    def degree(self, vertex: str) -> int:
        d = 0
        for lab, t, h in self.edges:
            if t == vertex:
                d += 1
            if h == vertex:
                d += 1
        return d

    def is_loop(self, label: str) -> bool:
        t, h = self.endpoints(label)
        return t == h

    def __eq__(self, other):
        return (
            isinstance(other, MultiGraph)
            and self.vertices == other.vertices
            and self.edges == other.edges
        )

    def __hash__(self):
        return hash((self.vertices, self.edges))

    def __repr__(self):
        return f"MultiGraph({self.num_vertices} vertices, {self.num_edges} edges)"


def components(G: MultiGraph) -> list[frozenset]:
    """Connected components as vertex sets (edges taken undirected).

    Deterministic: components are listed by their smallest-index vertex.
    """
    seen = set()
    out = []
    for v in G.vertices:
        if v in seen:
            continue
        comp = {v}
        stack = [v]
        while stack:
            x = stack.pop()
            for _, y in G.neighbors(x):
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        out.append(frozenset(comp))
    return out


class GraphInvolution:
    """Order-<=2 automorphism of a MultiGraph.

    ``vertex_map`` and ``edge_map`` are total dicts; both must square to
    the identity and be incidence-compatible.  ``edge_sign[e]`` is +1 when
    the image edge carries (tail, head) to (tail, head) and -1 when the
    orientation is reversed.  For a loop fixed by the involution both
    readings agree and the sign is taken to be +1.
    """

    def __init__(self, graph: MultiGraph, vertex_map: dict, edge_map: dict):
        self.graph = graph
        self.vertex_map = dict(vertex_map)
        self.edge_map = dict(edge_map)
        for v in graph.vertices:
            if v not in self.vertex_map:
                raise GraphError(f"vertex map does not cover {v!r}")
        for lab in graph.edge_labels:
            if lab not in self.edge_map:
                raise GraphError(f"edge map does not cover {lab!r}")
        for v in graph.vertices:
            w = self.vertex_map[v]
            if w not in set(graph.vertices):
                raise GraphError(f"vertex map sends {v!r} outside the graph")
            if self.vertex_map[w] != v:
                raise GraphError(f"vertex map is not an involution at {v!r}")
        signs = {}
        for lab in graph.edge_labels:
            img = self.edge_map[lab]
            if img not in graph._edge_index:
                raise GraphError(f"edge map sends {lab!r} to unknown edge {img!r}")
            if self.edge_map[img] != lab:
                raise GraphError(f"edge map is not an involution at {lab!r}")
            t, h = graph.endpoints(lab)
            it, ih = self.vertex_map[t], self.vertex_map[h]
            jt, jh = graph.endpoints(img)
            if (jt, jh) == (it, ih):
                signs[lab] = 1
            elif (jt, jh) == (ih, it):
                signs[lab] = -1
            else:
                raise GraphError(
                    f"edge map incidence mismatch: {lab!r} has image endpoints "
                    f"({it},{ih}) but {img!r} is ({jt},{jh})"
                )
        self.edge_sign = signs
        for lab in graph.edge_labels:
            if signs[self.edge_map[lab]] != signs[lab]:
                raise GraphError(f"orientation signs inconsistent on the orbit of {lab!r}")

    @classmethod
    def identity(cls, graph: MultiGraph) -> "GraphInvolution":
        return cls(
            graph,
            {v: v for v in graph.vertices},
            {lab: lab for lab in graph.edge_labels},
        )

    def is_fixed_point_free(self) -> bool:
        return all(self.vertex_map[v] != v for v in self.graph.vertices) and all(
            self.edge_map[e] != e for e in self.graph.edge_labels
        )

    def __repr__(self):
        swaps = sum(1 for v, w in self.vertex_map.items() if v < w)
        return f"GraphInvolution({swaps} vertex swaps on {self.graph!r})"


class CochainVector:
    """One half-integer coefficient per edge, in the graph's edge order."""

    def __init__(self, graph: MultiGraph, coefficients):
        self.graph = graph
        coeffs = tuple(Fraction(c) for c in coefficients)
        if len(coeffs) != graph.num_edges:
            raise GraphError(
                f"expected {graph.num_edges} coefficients, got {len(coeffs)}"
            )
        for c in coeffs:
            if c.denominator not in (1, 2):
                raise GraphError(f"coefficient {c} is not a half-integer")
        self.coefficients = coeffs

    @classmethod
    def zero(cls, graph: MultiGraph) -> "CochainVector":
        return cls(graph, (0,) * graph.num_edges)

    @classmethod
    def from_edge_dict(cls, graph: MultiGraph, values: dict) -> "CochainVector":
        coeffs = [Fraction(0)] * graph.num_edges
        for lab, c in values.items():
            coeffs[graph.edge_index(lab)] = Fraction(c)
        return cls(graph, coeffs)

    def __getitem__(self, label: str) -> Fraction:
        return self.coefficients[self.graph.edge_index(label)]

    def __add__(self, other: "CochainVector") -> "CochainVector":
        self._check_compatible(other)
        return CochainVector(
            self.graph, tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __sub__(self, other: "CochainVector") -> "CochainVector":
        self._check_compatible(other)
        return CochainVector(
            self.graph, tuple(a - b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self) -> "CochainVector":
        return CochainVector(self.graph, tuple(-a for a in self.coefficients))

    def scaled(self, factor) -> "CochainVector":
        f = Fraction(factor)
        return CochainVector(self.graph, tuple(f * a for a in self.coefficients))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def support(self) -> frozenset:
        return frozenset(
            lab for lab, c in zip(self.graph.edge_labels, self.coefficients) if c != 0
        )

    def _check_compatible(self, other: "CochainVector"):
        if self.graph is not other.graph and self.graph != other.graph:
            raise GraphError("cochain vectors live on different graphs")

    def __eq__(self, other):
        return (
            isinstance(other, CochainVector)
            and self.graph == other.graph
            and self.coefficients == other.coefficients
        )

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        terms = []
        for lab, c in zip(self.graph.edge_labels, self.coefficients):
            if c != 0:
                terms.append(f"{'+' if c > 0 else '-'}{abs(c)}*{lab}")
        return "CochainVector(" + (" ".join(terms) if terms else "0") + ")"


def apply_involution(iota: GraphInvolution, v: CochainVector) -> CochainVector:
    """Push a cochain forward: coefficient of iota(e) = sign(e) * coefficient of e."""
    if v.graph != iota.graph:
        raise GraphError("cochain vector is indexed by a different graph")
    G = iota.graph
    out = [Fraction(0)] * G.num_edges
    for lab, c in zip(G.edge_labels, v.coefficients):
        out[G.edge_index(iota.edge_map[lab])] = iota.edge_sign[lab] * c
    return CochainVector(G, out)


def involution_quotient(G: MultiGraph, iota: GraphInvolution) -> MultiGraph:
    """Quotient by the involution: vertex orbits, one edge per edge orbit."""
    vert_orbit = {}
    names = {}
    for v in G.vertices:
        o = frozenset({v, iota.vertex_map[v]})
        vert_orbit[v] = o
        names.setdefault(o, min(o))
    orbits = []
    seen = set()
    for v in G.vertices:
        o = vert_orbit[v]
        if o not in seen:
            seen.add(o)
            orbits.append(o)
    edges = []
    done = set()
    for lab, t, h in G.edges:
        if lab in done:
            continue
        done.add(lab)
        done.add(iota.edge_map[lab])
        edges.append((names[vert_orbit[t]] + "|" + lab, names[vert_orbit[t]], names[vert_orbit[h]]))
    return MultiGraph([names[o] for o in orbits], edges)


# ---------------------------------------------------------------------------
# Text format (line oriented):
#   vertex <name>
#   edge <label> <tail> <head>
#   iota_v <a> <b>          (vertex swap; fixed vertices may be omitted)
#   iota_e <e> <f>          (edge swap; fixed edges written "iota_e e e")
# '#' starts a comment.  If any iota_* line is present, an involution is
# built with unlisted vertices/edges fixed.
# ---------------------------------------------------------------------------


def parse_graph_text(text: str) -> tuple[MultiGraph, GraphInvolution | None]:
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    vlines: dict[str, int] = {}
    elines: dict[str, int] = {}
    iota_v: list[tuple[int, str, str]] = []
    iota_e: list[tuple[int, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex":
            if len(parts) != 2:
                raise GraphFormatError(lineno, "vertex line needs exactly one name")
            if parts[1] in vlines:
                raise GraphFormatError(lineno, f"duplicate vertex {parts[1]!r}")
            vlines[parts[1]] = lineno
            vertices.append(parts[1])
        elif kind == "edge":
            if len(parts) != 4:
                raise GraphFormatError(lineno, "edge line needs label, tail, head")
            lab, t, h = parts[1], parts[2], parts[3]
            if lab in elines:
                raise GraphFormatError(lineno, f"duplicate edge label {lab!r}")
            elines[lab] = lineno
            edges.append((lab, t, h))
        elif kind == "iota_v":
            if len(parts) != 3:
                raise GraphFormatError(lineno, "iota_v line needs two vertex names")
            iota_v.append((lineno, parts[1], parts[2]))
        elif kind == "iota_e":
            if len(parts) != 3:
                raise GraphFormatError(lineno, "iota_e line needs two edge labels")
            iota_e.append((lineno, parts[1], parts[2]))
        else:
            raise GraphFormatError(lineno, f"unknown directive {kind!r}")
    for lab, t, h in edges:
        for v in (t, h):
            if v not in vlines:
                raise GraphFormatError(elines[lab], f"edge {lab!r} references undeclared vertex {v!r}")
    graph = MultiGraph(vertices, edges)
    if not iota_v and not iota_e:
        return graph, None
    vmap = {v: v for v in vertices}
    for lineno, a, b in iota_v:
        for x in (a, b):
            if x not in vlines:
                raise GraphFormatError(lineno, f"unknown vertex {x!r} in iota_v")
        if (vmap[a] != a and vmap[a] != b) or (vmap[b] != b and vmap[b] != a):
            raise GraphFormatError(lineno, f"conflicting iota_v entries for {a!r}/{b!r}")
        vmap[a], vmap[b] = b, a
    emap = {lab: lab for lab, _, _ in edges}
    for lineno, a, b in iota_e:
        for x in (a, b):
            if x not in elines:
                raise GraphFormatError(lineno, f"unknown edge {x!r} in iota_e")
        if (emap[a] != a and emap[a] != b) or (emap[b] != b and emap[b] != a):
            raise GraphFormatError(lineno, f"conflicting iota_e entries for {a!r}/{b!r}")
        emap[a], emap[b] = b, a
    try:
        involution = GraphInvolution(graph, vmap, emap)
    except GraphError as exc:
        lineno = iota_e[0][0] if iota_e else (iota_v[0][0] if iota_v else None)
        raise GraphFormatError(lineno, str(exc)) from exc
    return graph, involution


def format_graph_text(G: MultiGraph, iota: GraphInvolution | None = None) -> str:
    lines = [f"vertex {v}" for v in G.vertices]
    lines += [f"edge {lab} {t} {h}" for (lab, t, h) in G.edges]
    if iota is not None:
        done = set()
        for v in G.vertices:
            w = iota.vertex_map[v]
            if v not in done and w != v:
                lines.append(f"iota_v {v} {w}")
                done.add(v)
                done.add(w)
        done = set()
        for lab in G.edge_labels:
            img = iota.edge_map[lab]
            if lab not in done:
                lines.append(f"iota_e {lab} {img}")
                done.add(lab)
                done.add(img)
    return "\n".join(lines) + "\n"
