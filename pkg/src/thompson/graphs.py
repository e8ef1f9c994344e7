"""Rooted, generator-labelled graphs and the breadth-first growth that builds them.

Every graph in the package is a finite piece of a Schreier graph of F with
respect to {x0, x1}: each vertex has at most one outgoing and one incoming edge
per label. The radius-n ball around v holds the vertices within distance n and
the edges lying on paths of length <= n from v, i.e. edges with at least one
endpoint at distance < n (a loop at v belongs to the radius-1 ball, not the
radius-0 ball). Two rooted balls are compared through a canonical code obtained from a
breadth-first numbering that visits neighbours in a fixed label order; since the
graphs are deterministic, equal codes is the same as rooted labelled isomorphism.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Callable

from .dyadic import format_number, parse_number
from .element import SchemaError
from .element import from_json_obj as plmap_from_json
from .element import to_json_obj as plmap_to_json

LABELS = ("x0", "x1")
GENERATORS = ("x0", "x1", "x0^-1", "x1^-1")
# (label, forward?) for each generator symbol
_GEN_EDGE = {"x0": ("x0", True), "x1": ("x1", True), "x0^-1": ("x0", False), "x1^-1": ("x1", False)}

DEFAULT_MAX_VERTICES = 2_000_000


class ResourceError(RuntimeError):
    """A construction exceeded its vertex budget."""


class InsufficientRadius(ValueError):
    """A query needs a ball that reaches past the computed region."""


def max_vertices_default() -> int:
    value = os.environ.get("THOMPSON_MAX_VERTICES")
    return int(value) if value else DEFAULT_MAX_VERTICES


@dataclass
class RootedLabelledGraph:
    payloads: list
    dist: list
    out: dict
    inn: dict
    root: int = 0
    radius_computed: int = 0
    kind: str = "point"
    description: str = ""
    _index: dict | None = field(default=None, repr=False, compare=False)

    def __len__(self):
        return len(self.payloads)

    @property
    def vertices(self):
        return self.payloads

    def edges(self):
        """(v, w, label) triples, grouped by source vertex."""
        for v in range(len(self.payloads)):
            for label in LABELS:
                w = self.out[label][v]
                if w is not None:
                    yield v, w, label

    def index_of(self, payload):
        if self._index is None:
            self._index = {p: i for i, p in enumerate(self.payloads)}
        return self._index.get(payload)

    def step(self, v: int, gen: str):
        """Neighbour of v along generator symbol gen, or None if outside the computed region."""
        label, forward = _GEN_EDGE[gen]
        return (self.out if forward else self.inn)[label][v]

    def neighbours(self, v: int):
        for label in LABELS:
            yield self.out[label][v]
        for label in LABELS:
            yield self.inn[label][v]

    def check_complete(self, center: int, n: int):
        if self.dist[center] + n > self.radius_computed:
            raise InsufficientRadius(
                f"ball of radius {n} around vertex {center} (depth {self.dist[center]}) "
                f"needs radius {self.dist[center] + n}, graph computed to {self.radius_computed}"
            )


def grow(root_payload, step: Callable, radius: int, *, key: Callable | None = None,
         same: Callable | None = None, max_vertices: int | None = None,
         kind: str = "point", description: str = "") -> RootedLabelledGraph:
    """Breadth-first growth of the radius-``radius`` ball around ``root_payload``.

    ``step(payload, gen)`` acts by one generator symbol. Vertices are identified
    either through a hashable ``key(payload)`` or, failing that, by a linear scan
    with the predicate ``same(a, b)``.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    if max_vertices is None:
        max_vertices = max_vertices_default()
    payloads, dist = [root_payload], [0]
    out = {l: [None] for l in LABELS}
    inn = {l: [None] for l in LABELS}
    if key is not None:
        index = {key(root_payload): 0}

        def find(p):
            return index.get(key(p))
    else:
        if same is None:
            raise ValueError("grow needs either key or same")

        def find(p):
            for i, q in enumerate(payloads):
                if same(p, q):
                    return i
            return None

    v = 0
    while v < len(payloads):
        d = dist[v]
        for gen in GENERATORS:
            p = step(payloads[v], gen)
            w = find(p)
            if w is None:
                if d == radius:
                    continue
                if len(payloads) >= max_vertices:
                    raise ResourceError(f"vertex budget of {max_vertices} exceeded at depth {d + 1}")
                w = len(payloads)
                payloads.append(p)
                dist.append(d + 1)
                for l in LABELS:
                    out[l].append(None)
                    inn[l].append(None)
                if key is not None:
                    index[key(p)] = w
            label, forward = _GEN_EDGE[gen]
            if forward:
                out[label][v] = w
                inn[label][w] = v
            else:
                inn[label][v] = w
                out[label][w] = v
        v += 1
    return RootedLabelledGraph(payloads, dist, out, inn, 0, radius, kind, description)


def bfs_distances(g: RootedLabelledGraph, center: int, limit: int | None, strict: bool = True) -> dict:
    """Graph distances from center, up to ``limit`` (all reachable when None).

    With ``strict`` the ball must lie inside the computed region.
    """
    if strict and limit is not None:
        g.check_complete(center, limit)
    dist = {center: 0}
    frontier = [center]
    d = 0
    while frontier and (limit is None or d < limit):
        nxt = []
        for v in frontier:
            for w in g.neighbours(v):
                if w is not None and w not in dist:
                    dist[w] = d + 1
                    nxt.append(w)
        frontier = nxt
        d += 1
    return dist


def ball_code(g: RootedLabelledGraph, n: int, center: int | None = None, induced: bool = False):
    """Canonical code of the radius-n ball around center (default: the root).

    Returns ``(vertex count, edges)`` with edges as sorted (i, label index, j)
    triples in breadth-first numbering. Vertex payloads are ignored. With
    ``induced`` the ball also keeps edges between two vertices at distance n.
    """
    c = g.root if center is None else center
    g.check_complete(c, n)
    num = {c: 0}
    order = [c]
    depth = [0]
    i = 0
    while i < len(order):
        v = order[i]
        if depth[i] < n:
            for w in g.neighbours(v):
                if w not in num:
                    num[w] = len(order)
                    order.append(w)
                    depth.append(depth[i] + 1)
        i += 1
    edges = []
    for v in order:
        i = num[v]
        for li, label in enumerate(LABELS):
            w = g.out[label][v]
            if w is not None and w in num:
                j = num[w]
                if induced or depth[i] < n or depth[j] < n:
                    edges.append((i, li, j))
    edges.sort()
    return len(order), tuple(edges)


def ball_isomorphic(g1: RootedLabelledGraph, g2: RootedLabelledGraph, n: int,
                    root1: int | None = None, root2: int | None = None,
                    induced: bool = False) -> bool:
    """True iff the radius-n balls are isomorphic as rooted labelled graphs."""
    return ball_code(g1, n, root1, induced) == ball_code(g2, n, root2, induced)


# serialization


def _payload_to_json(kind, p):
    if kind == "point":
        return format_number(p)
    if kind == "element":
        return plmap_to_json(p)
    return None


def _payload_from_json(kind, obj, where):
    if kind == "point":
        if not isinstance(obj, str):
            raise SchemaError(where, "point payload must be an exact number string")
        try:
            return parse_number(obj)
        except ValueError as e:
            raise SchemaError(where, str(e)) from None
    if kind == "element":
        return plmap_from_json(obj, where)
    return None


def to_json_obj(g: RootedLabelledGraph) -> dict:
    return {
        "kind": g.kind,
        "description": g.description,
        "root": g.root,
        "radius_computed": g.radius_computed,
        "vertices": [_payload_to_json(g.kind, p) for p in g.payloads],
        "dist": list(g.dist),
        "edges": [[v, w, label] for v, w, label in g.edges()],
    }


def from_json_obj(obj) -> RootedLabelledGraph:
    if not isinstance(obj, dict):
        raise SchemaError("graph", "expected an object")
    for name in ("kind", "root", "radius_computed", "vertices", "dist", "edges"):
        if name not in obj:
            raise SchemaError(f"graph.{name}", "missing field")
    kind = obj["kind"]
    if kind not in ("point", "element", "coset"):
        raise SchemaError("graph.kind", f"unknown payload kind {kind!r}")
    verts = obj["vertices"]
    n = len(verts)
    payloads = [_payload_from_json(kind, p, f"graph.vertices[{i}]") for i, p in enumerate(verts)]
    dist = obj["dist"]
    if len(dist) != n or not all(isinstance(d, int) and d >= 0 for d in dist):
        raise SchemaError("graph.dist", "expected one non-negative integer per vertex")
    if not (isinstance(obj["root"], int) and 0 <= obj["root"] < n):
        raise SchemaError("graph.root", "root index out of range")
    out = {l: [None] * n for l in LABELS}
    inn = {l: [None] * n for l in LABELS}
    for i, e in enumerate(obj["edges"]):
        loc = f"graph.edges[{i}]"
        if not (isinstance(e, list) and len(e) == 3 and e[2] in LABELS
                and all(isinstance(x, int) and 0 <= x < n for x in e[:2])):
            raise SchemaError(loc, "expected [source, target, label]")
        v, w, label = e
        if out[label][v] is not None or inn[label][w] is not None:
            raise SchemaError(loc, f"second {label} edge at a vertex (graph not deterministic)")
        out[label][v] = w
        inn[label][w] = v
    return RootedLabelledGraph(payloads, list(dist), out, inn, obj["root"],
                               obj["radius_computed"], kind, obj.get("description", ""))


def to_dot(g: RootedLabelledGraph, name: str = "G") -> str:
    lines = [f"digraph {name} {{"]
    for v, p in enumerate(g.payloads):
        if g.kind == "point":
            text = format_number(p)
        elif g.kind == "element":
            text = f"v{v}"
        else:
            text = str(v)
        shape = "doublecircle" if v == g.root else "circle"
        lines.append(f'  {v} [label="{text}", shape={shape}];')
    for v, w, label in g.edges():
        lines.append(f'  {v} -> {w} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
