"""Orbital and coset graphs of F, subgroup membership oracles, and ball comparisons.

Group products follow ``element.mul`` (function composition). With that product
the coset graph of H has vertices gH and edges gH -> s gH, which for H = St(p)
is exactly the orbital graph of p with edges v -> s(v).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .cayley import GENERATOR_MAPS, CayleyBall, act_on_element, cayley_ball, eval_word, parse_word
from .dyadic import ONE, ZERO, exact, format_number
from .element import (
    IDENTITY, PLMap, abelianize, compose, eval_map, fixes_neighborhood, germ, in_commutator,
    inverse, mul, power, right_germ_at, support,
)
from .graphs import (
    RootedLabelledGraph, ball_code, ball_isomorphic, grow,
)

__all__ = [
    "SubgroupOracle", "make_oracle", "orbital_ball", "coset_ball", "ball_isomorphic",
    "ChabautyDistance", "chabauty_distance", "cayley_fragment_search", "check_oracle",
    "ORACLE_KINDS",
]


def _step_point(t, gen):
    return eval_map(GENERATOR_MAPS[gen], t)


def orbital_ball(p, n: int, max_vertices: int | None = None) -> RootedLabelledGraph:
    """Radius-n ball of the orbital graph of p: edges v -> s(v) labelled s."""
    p = exact(p)
    if not (0 < p < 1):
        raise ValueError(f"orbital graphs are built for points of (0, 1), got {format_number(p)}")
    return grow(p, _step_point, n, key=lambda t: t, max_vertices=max_vertices,
                kind="point", description=f"orbital graph of {format_number(p)}")


@dataclass
class SubgroupOracle:
    """A subgroup H of F given by a decidable membership test.

    ``coset_key``, when present, is a complete invariant of left cosets:
    gH == kH iff coset_key(g) == coset_key(k).
    """
    name: str
    kind: str
    member: Callable[[PLMap], bool]
    data: dict = field(default_factory=dict)
    coset_key: Callable | None = None

    def __contains__(self, g):
        return self.member(g)


ORACLE_KINDS = ("trivial", "whole", "point_stab", "tuple_stab", "germ_stab",
                "germ_stab_commutator", "cyclic", "commutator")


def _points(data, kind):
    pts = data if isinstance(data, (list, tuple, set, frozenset)) else [data]
    pts = sorted({exact(x) for x in pts})
    for t in pts:
        if not (0 <= t <= 1):
            raise ValueError(f"{kind}: point {format_number(t)} outside [0, 1]")
    return pts


def _cyclic_member(g0: PLMap):
    if g0.is_identity():
        return lambda g: g.is_identity()
    a0 = support(g0)[0].lo
    m = right_germ_at(g0, a0)  # nonzero: a0 is the left end of the support

    def member(g):
        if g.is_identity():
            return True
        supp = support(g)
        if supp[0].lo != a0:
            return False
        s = right_germ_at(g, a0)
        if s % m:
            return False
        return power(g0, s // m) == g
    return member


def make_oracle(kind: str, data=None) -> SubgroupOracle:
    """Build a membership oracle.

    kinds: trivial, whole (F itself), point_stab (data: a point), tuple_stab and
    germ_stab / germ_stab_commutator (data: finite set of points), cyclic (data:
    a PLMap or a word string), commutator (F').
    """
    if kind == "trivial":
        return SubgroupOracle("{1}", kind, lambda g: g.is_identity(), {}, lambda g: g)
    if kind == "whole":
        return SubgroupOracle("F", kind, lambda g: True, {}, lambda g: 0)
    if kind == "commutator":
        return SubgroupOracle("F'", kind, in_commutator, {}, lambda g: tuple(abelianize(g)))
    if kind == "point_stab":
        if data is None or isinstance(data, (list, tuple, set, frozenset)):
            raise ValueError("point_stab needs a single point")
        (p,) = _points(data, kind)
        return SubgroupOracle(f"St_F({format_number(p)})", kind, lambda g: eval_map(g, p) == p,
                              {"point": p}, lambda g: eval_map(g, p))
    if kind == "tuple_stab":
        pts = _points(data, kind)
        return SubgroupOracle(
            "St_F(" + ",".join(map(format_number, pts)) + ")", kind,
            lambda g: all(eval_map(g, t) == t for t in pts), {"points": pts},
            lambda g: tuple(eval_map(g, t) for t in pts))
    if kind in ("germ_stab", "germ_stab_commutator"):
        pts = _points(data if data is not None else [], kind)
        shown = ",".join(map(format_number, pts))
        if kind == "germ_stab_commutator":
            name = f"St0_F'({shown})"
            pts = sorted(set(pts) | {ZERO, ONE})
        else:
            name = f"St0_F({shown})"
        return SubgroupOracle(
            name, kind, lambda g: all(fixes_neighborhood(g, s) for s in pts), {"points": pts},
            lambda g: tuple(germ(g, s) for s in pts))
    if kind == "cyclic":
        if isinstance(data, str):
            g0 = eval_word(parse_word(data))
        elif isinstance(data, PLMap):
            g0 = data
        else:
            raise ValueError("cyclic needs a generating element (PLMap or word)")
        return SubgroupOracle("<g0>", kind, _cyclic_member(g0), {"generator": g0})
    raise ValueError(f"unknown oracle kind {kind!r}; expected one of {', '.join(ORACLE_KINDS)}")


def check_oracle(H: SubgroupOracle, samples) -> list:
    """Subgroup-axiom violations found on the samples (empty list when none)."""
    problems = []
    if not H.member(IDENTITY):
        problems.append("identity not a member")
    inside = [g for g in samples if H.member(g)]
    for g in inside:
        if not H.member(inverse(g)):
            problems.append(f"not closed under inverse: {g}")
    for g in inside:
        for h in inside:
            if not H.member(mul(g, h)):
                problems.append(f"not closed under product: {g} * {h}")
    return problems


def coset_ball(H: SubgroupOracle, n: int, use_key: bool = False,
               max_vertices: int | None = None) -> RootedLabelledGraph:
    """Radius-n ball of the coset graph of H, rooted at H.

    Cosets are compared with the oracle (gH == kH iff k^-1 g in H), each new
    candidate against every known coset. ``use_key`` switches to the oracle's
    coset invariant when it has one.
    """
    desc = f"coset graph of {H.name}"
    if use_key and H.coset_key is not None:
        return grow(IDENTITY, act_on_element, n, key=H.coset_key, max_vertices=max_vertices,
                    kind="element", description=desc)
    return grow(IDENTITY, act_on_element, n,
                same=lambda a, b: H.member(compose(a, inverse(b))),
                max_vertices=max_vertices, kind="element", description=desc)


@dataclass(frozen=True)
class ChabautyDistance:
    value: Fraction
    witness_radius: int | None
    max_radius: int

    @property
    def exact(self) -> bool:
        return self.witness_radius is not None

    def __str__(self):
        if self.exact:
            return f"{self.value.numerator}/{self.value.denominator}"
        return f"<= 1/{self.max_radius + 2}"


def chabauty_distance(g1: RootedLabelledGraph, g2: RootedLabelledGraph, max_radius: int,
                      root1: int | None = None, root2: int | None = None) -> ChabautyDistance:
    """1/(n+1) for the least radius n at which the rooted balls differ.

    When the balls agree up to max_radius only the bound 1/(max_radius+2) is known.
    """
    for n in range(max_radius + 1):
        if ball_code(g1, n, root1) != ball_code(g2, n, root2):
            return ChabautyDistance(Fraction(1, n + 1), n, max_radius)
    return ChabautyDistance(Fraction(1, max_radius + 2), None, max_radius)


def cayley_fragment_search(g: RootedLabelledGraph, n: int, cayley: CayleyBall | None = None,
                           induced: bool = False) -> list:
    """Vertices (with complete radius-n balls) whose n-ball is a copy of the Cayley n-ball."""
    if cayley is None or cayley.radius < n:
        cayley = cayley_ball(n)
    ref = ball_code(cayley.graph, n, induced=induced)
    found = []
    for v in range(len(g)):
        if g.dist[v] + n > g.radius_computed:
            continue
        if ball_code(g, n, v, induced) == ref:
            found.append(v)
    return found
