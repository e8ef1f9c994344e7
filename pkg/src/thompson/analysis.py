"""Growth tables, uniform-growth estimates, Følner ratios and wobbling displacement.

Everything here measures finite pieces of infinite graphs. A ball B(v, n) is only
counted when v lies within ``radius_computed - n`` of the root, so no ball is
truncated; the "uniform" growth is a maximum over a named sample of roots and is
a lower bound for the true supremum, never a claim about it.
"""
from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cayley import Word, eval_word, format_word
from .constructions import push_left
from .dyadic import format_number
from .element import X0, X1, eval_map
from .element import SchemaError
from .graphs import InsufficientRadius, RootedLabelledGraph, bfs_distances


@dataclass
class GrowthTable:
    graph_id: str
    max_n: int
    roots: list                 # vertex indices in the source graph
    root_labels: list           # printable payloads
    sizes: dict                 # root label -> [|B(v,0)|, ..., |B(v,max_n)|]
    metadata: dict = field(default_factory=dict)

    @property
    def rows(self):
        for label in self.root_labels:
            for n, size in enumerate(self.sizes[label]):
                yield self.graph_id, label, n, size

    def uniform(self) -> list:
        """max over sampled roots of |B(v, n)|, for n = 0..max_n."""
        return [max(self.sizes[r][n] for r in self.root_labels) for n in range(self.max_n + 1)]


def _label(g: RootedLabelledGraph, v: int) -> str:
    if g.kind == "point":
        return format_number(g.payloads[v])
    return f"v{v}"


def sample_roots(g: RootedLabelledGraph, count: int, max_n: int, seed: int = 0) -> list:
    """The root plus up to count-1 other vertices whose max_n-balls are complete."""
    eligible = [v for v in range(len(g)) if g.dist[v] + max_n <= g.radius_computed and v != g.root]
    if g.dist[g.root] + max_n > g.radius_computed:
        raise InsufficientRadius(f"graph computed to {g.radius_computed}, need {max_n}")
    rng = random.Random(seed)
    picked = rng.sample(eligible, min(count - 1, len(eligible))) if count > 1 else []
    return [g.root] + sorted(picked)


def growth_table(g: RootedLabelledGraph, roots=None, max_n: int | None = None,
                 graph_id: str | None = None) -> GrowthTable:
    if max_n is None:
        max_n = g.radius_computed
    roots = [g.root] if roots is None else list(roots)
    sizes = {}
    labels = []
    for v in roots:
        dist = bfs_distances(g, v, max_n)
        counts = [0] * (max_n + 1)
        for d in dist.values():
            counts[d] += 1
        label = _label(g, v)
        labels.append(label)
        sizes[label] = list(np.cumsum(counts).tolist())
    return GrowthTable(graph_id or g.description or "graph", max_n, roots, labels, sizes,
                       {"description": g.description, "radius_computed": g.radius_computed})


@dataclass
class GrowthEstimate:
    fitted_rate: float
    r_squared: float
    classification: str
    window: tuple
    sampled_roots: list


def uniform_growth_estimate(table: GrowthTable, window=None, rate_threshold: float = 0.3,
                            r2_threshold: float = 0.9) -> GrowthEstimate:
    """Least-squares slope of log2 max_v |B(v, n)| over ``window`` (inclusive).

    Default window: the last half of the radii. Thresholds are heuristics; the
    only classes are "exponential-evidence" and "inconclusive".
    """
    if window is None:
        window = (table.max_n // 2, table.max_n)
    lo, hi = window
    if hi > table.max_n or lo < 0 or hi - lo + 1 < 4:
        raise ValueError(f"window {window} needs at least 4 radii inside 0..{table.max_n}")
    uni = table.uniform()
    ns = np.arange(lo, hi + 1, dtype=float)
    ys = np.log2(np.array(uni[lo:hi + 1], dtype=float))
    slope, intercept = np.polyfit(ns, ys, 1)
    ss_res = float(np.sum((ys - (slope * ns + intercept)) ** 2))
    ss_tot = float(np.sum((ys - ys.mean()) ** 2))
    r2 = 1.0 - ss_res / ss_tot if ss_tot > 0 else (1.0 if ss_res < 1e-18 else 0.0)
    slope = float(slope)
    if abs(slope) < 1e-12:
        slope = 0.0
    exp = slope >= rate_threshold and r2 >= r2_threshold
    return GrowthEstimate(slope, r2, "exponential-evidence" if exp else "inconclusive",
                          (lo, hi), list(table.root_labels))


def growth_dominates(f: GrowthTable, g: GrowthTable, C: int) -> bool:
    """g(n) < f(C n) for n = 1..g.max_n, on the sampled uniform growth values."""
    if C < 1:
        raise ValueError("C must be a positive integer")
    if C * g.max_n > f.max_n:
        raise ValueError(f"f is tabulated to {f.max_n}, needs {C * g.max_n}")
    uf, ug = f.uniform(), g.uniform()
    return all(ug[n] < uf[C * n] for n in range(1, g.max_n + 1))


def ball_vertices(g: RootedLabelledGraph, center: int, k: int) -> set:
    return set(bfs_distances(g, center, k))


def foelner_ratio(g: RootedLabelledGraph, S) -> Fraction:
    """|edge boundary of S| / |S|, counting labelled edges with exactly one end in S."""
    S = set(S)
    if not S:
        raise ValueError("empty vertex set")
    for v in S:
        if g.dist[v] >= g.radius_computed:
            raise InsufficientRadius(f"vertex {v} sits on the computed frontier")
    boundary = 0
    for v in S:
        for w in g.neighbours(v):
            if w not in S:
                boundary += 1
    return Fraction(boundary, len(S))


@dataclass
class DisplacementReport:
    word: str
    max_observed: int
    vertices_checked: int
    vertices_skipped: int
    distances: dict = field(default_factory=dict)


def act_along(g: RootedLabelledGraph, v: int, word: Word):
    """Vertex reached from v by the element of ``word`` (its last letter acts first)."""
    for gen in reversed(word):
        v = g.step(v, gen)
        if v is None:
            return None
    return v


def displacement(word: Word, g: RootedLabelledGraph) -> DisplacementReport:
    """max d(v, w.v) over the vertices whose image and connecting paths are computed."""
    L = len(word)
    checked = skipped = 0
    best = 0
    dists = {}
    for v in range(len(g)):
        if g.dist[v] + L > g.radius_computed:
            skipped += 1
            continue
        target = act_along(g, v, word)
        d = bfs_distances(g, v, L).get(target)
        if d is None:
            raise RuntimeError("image vertex not within word length; graph is inconsistent")
        dists[v] = d
        best = max(best, d)
        checked += 1
    return DisplacementReport(format_word(word), best, checked, skipped, dists)


def displacement_by_evaluation(word: Word, g: RootedLabelledGraph) -> dict:
    """Images w.v computed from the PL map itself (point graphs only)."""
    if g.kind != "point":
        raise ValueError("evaluation needs point payloads")
    h = eval_word(word)
    out = {}
    for v in range(len(g)):
        if g.dist[v] + len(word) <= g.radius_computed:
            out[v] = g.index_of(eval_map(h, g.payloads[v]))
    return out


def push_left_locality(S) -> dict:
    """After k = push_left(S) steps, x1 fixes and x0 halves every point of x0^k(S)."""
    k = push_left(S)
    pts = list(S)
    for _ in range(k):
        pts = [eval_map(X0, t) for t in pts]
    return {
        "k": k,
        "points": pts,
        "x1_fixes": all(eval_map(X1, t) == t for t in pts),
        "x0_halves": all(eval_map(X0, t) * 2 == t for t in pts),
    }


# serialization


def table_to_csv(table: GrowthTable) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["graph_id", "root", "n", "ball_size"])
    for row in table.rows:
        w.writerow(row)
    return buf.getvalue()


def table_to_json_obj(table: GrowthTable) -> dict:
    return {
        "graph_id": table.graph_id,
        "max_n": table.max_n,
        "roots": list(table.roots),
        "root_labels": list(table.root_labels),
        "sizes": {k: list(v) for k, v in table.sizes.items()},
        "metadata": dict(table.metadata),
    }


def table_from_json_obj(obj) -> GrowthTable:
    if not isinstance(obj, dict):
        raise SchemaError("table", "expected an object")
    for name in ("graph_id", "max_n", "roots", "root_labels", "sizes"):
        if name not in obj:
            raise SchemaError(f"table.{name}", "missing field")
    max_n = obj["max_n"]
    if not isinstance(max_n, int) or max_n < 0:
        raise SchemaError("table.max_n", "expected a non-negative integer")
    labels = obj["root_labels"]
    if len(labels) != len(obj["roots"]):
        raise SchemaError("table.root_labels", "one label per root expected")
    sizes = obj["sizes"]
    for label in labels:
        seq = sizes.get(label)
        loc = f"table.sizes[{label!r}]"
        if not isinstance(seq, list) or len(seq) != max_n + 1:
            raise SchemaError(loc, f"expected {max_n + 1} ball sizes")
        if not all(isinstance(x, int) and x >= 1 for x in seq) or seq[0] != 1:
            raise SchemaError(loc, "ball sizes must be positive integers starting at 1")
        if any(a > b for a, b in zip(seq, seq[1:])):
            raise SchemaError(loc, "ball sizes must be nondecreasing")
    return GrowthTable(obj["graph_id"], max_n, list(obj["roots"]), list(labels),
                       {k: list(sizes[k]) for k in labels}, dict(obj.get("metadata", {})))

