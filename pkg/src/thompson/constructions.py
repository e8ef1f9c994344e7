"""Constructive steps behind the confinement characterisation of F.

* disjoint-support confining sets for germ stabilisers and their verification
  against conjugators from a finite piece of F';
* the interval chain g1(U1) < U1 < g2(U2) < U2 < ... for finitely many
  nontrivial elements;
* the push-left exponent for x0 and the germ-stabiliser identity
  St0_F'(S) = St0_F(S u {0, 1}).

A passing ``verify_confining`` only covers the conjugators that were enumerated;
a failure comes with a genuine counterexample.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .cayley import CayleyBall, cayley_ball, commutator_ball_with_words, format_word
from .dyadic import HALF, ONE, ZERO, Dyadic, exact, format_number
from .element import (
    X0, Interval, PLMap, bump, conjugate, eval_map, fixes_neighborhood, in_commutator, inverse,
    left_germ_at, support,
)
from .schreier import SubgroupOracle


@dataclass
class ConfiningSet:
    elements: list
    target: str
    supports: list
    certificate_radius: int | None = None


def disjoint_intervals(r: int) -> list[Interval]:
    """[1/2^(i+1), 3/2^(i+2)] for i = 1..r: pairwise disjoint as closed sets."""
    return [Interval(Dyadic(1, i + 1), Dyadic(3, i + 2)) for i in range(1, r + 1)]


def build_confining_set(S) -> ConfiningSet:
    """|S| + 1 bumps with pairwise disjoint supports, confining St0_F'(S) under F'."""
    pts = sorted({exact(s) for s in S})
    for s in pts:
        if not (0 < s < 1):
            raise ValueError(f"points must lie in (0, 1), got {format_number(s)}")
    ivs = disjoint_intervals(len(pts) + 1)
    shown = ",".join(map(format_number, pts))
    return ConfiningSet([bump(iv.lo, iv.hi) for iv in ivs], f"St0_F'({shown})", ivs)


@dataclass
class ConfinementReport:
    passed: bool
    radius: int
    conjugators_checked: int
    witness: PLMap | None = None
    witness_word: str | None = None
    hits: list = field(default_factory=list)
    note: str = ("pass covers only the enumerated conjugators (evidence, not proof); "
                 "a failure is a genuine counterexample")


def _conjugators(radius, ball):
    if ball is None or ball.radius < radius:
        ball = cayley_ball(radius)
    return commutator_ball_with_words(radius, ball)


def verify_confining(H: SubgroupOracle, P, radius: int, ball: CayleyBall | None = None,
                     stop_at_failure: bool = True) -> ConfinementReport:
    """For each k in the F' part of the radius ball, look for g in P with k^-1 g k in H.

    k^-1 g k in H is the same as g in k H k^-1.
    """
    checked = 0
    hits = []
    witness = witness_word = None
    for k, word in _conjugators(radius, ball):
        checked += 1
        hit = next((i for i, g in enumerate(P) if H.member(conjugate(g, k))), None)
        hits.append(hit)
        if hit is None and witness is None:
            witness, witness_word = k, format_word(word)
            if stop_at_failure:
                break
    return ConfinementReport(witness is None, radius, checked, witness, witness_word, hits)


@dataclass
class PigeonholeReport:
    passed: bool
    conjugators_checked: int
    witness: PLMap | None = None
    avoiding: list = field(default_factory=list)


def _avoids(g: PLMap, S) -> bool:
    return not any(iv.contains(s) for iv in support(g) for s in S)


def pigeonhole_check(S, P, radius: int, ball: CayleyBall | None = None) -> PigeonholeReport:
    """Every conjugator k leaves some k^-1 g k with support disjoint from S."""
    pts = [exact(s) for s in S]
    checked = 0
    avoiding = []
    for k, _ in _conjugators(radius, ball):
        checked += 1
        idx = next((i for i, g in enumerate(P) if _avoids(conjugate(g, k), pts)), None)
        avoiding.append(idx)
        if idx is None:
            return PigeonholeReport(False, checked, k, avoiding)
    return PigeonholeReport(True, checked, None, avoiding)


@dataclass
class IntervalChain:
    """Elements (possibly inverted, reordered) with open intervals U_i such that
    g_1(U_1) < U_1 < g_2(U_2) < U_2 < ... ."""
    elements: list
    intervals: list
    order: list
    inverted: list

    def images(self) -> list[Interval]:
        return [Interval(eval_map(g, u.lo), eval_map(g, u.hi), False, False)
                for g, u in zip(self.elements, self.intervals)]

    def sequence(self) -> list[Interval]:
        seq = []
        for img, u in zip(self.images(), self.intervals):
            seq += [img, u]
        return seq

    def is_valid(self) -> bool:
        seq = self.sequence()
        return all(a.precedes(b) for a, b in zip(seq, seq[1:]))


def _orient(g: PLMap):
    """(element, inverted, s) with g(t) < t just left of s = sup of the support."""
    s = support(g)[-1].hi
    if left_germ_at(g, s) < 0:
        return inverse(g), True, s
    return g, False, s


def _place(g: PLMap, s: Dyadic, M: Dyadic, max_steps: int = 4096) -> Interval:
    # v = s - (s - M)/2^j for the first j with M < g(v) < v
    gap = s - M
    for j in range(1, max_steps):
        v = s - gap.scale(-j)
        gv = eval_map(g, v)
        if M < gv < v:
            break
    else:
        raise RuntimeError("no admissible right endpoint found")
    u = (gv + v).scale(-1)
    while not eval_map(g, u) > M:
        u = (u + v).scale(-1)
    return Interval(u, v, False, False)


def lemma_interval_chain(gs) -> IntervalChain:
    """Interval chain for nontrivial elements, built by induction on their number.

    The element whose support reaches furthest right goes last (ties: input
    order), is inverted if it moves points up just left of that supremum s, and
    gets an interval squeezed between the previous chain and s.
    """
    gs = list(gs)
    for i, g in enumerate(gs):
        if g.is_identity():
            raise ValueError(f"element {i} is the identity")
    if not gs:
        return IntervalChain([], [], [], [])
    sups = [support(g)[-1].hi for g in gs]
    best = max(range(len(gs)), key=lambda i: (sups[i], -i))
    rest = [i for i in range(len(gs)) if i != best]
    inner = lemma_interval_chain([gs[i] for i in rest])
    g, inverted, s = _orient(gs[best])
    M = inner.intervals[-1].hi if inner.intervals else ZERO
    U = _place(g, s, M)
    return IntervalChain(
        inner.elements + [g], inner.intervals + [U],
        [rest[j] for j in inner.order] + [best], inner.inverted + [inverted],
    )


def push_left(S) -> int:
    """Least k >= 0 with x0^k(s) < 1/2 for every s in S."""
    pts = [exact(s) for s in S]
    for s in pts:
        if not (0 < s < 1):
            raise ValueError(f"points must lie in (0, 1), got {format_number(s)}")
    k = 0
    while any(t >= HALF for t in pts):
        pts = [eval_map(X0, t) for t in pts]
        k += 1
    return k


@dataclass
class GermCheckRow:
    element: PLMap
    in_commutator_germ_stab: bool
    in_extended_germ_stab: bool

    @property
    def agrees(self) -> bool:
        return self.in_commutator_germ_stab == self.in_extended_germ_stab


@dataclass
class GermCheckReport:
    points: list
    rows: list

    @property
    def all_agree(self) -> bool:
        return all(r.agrees for r in self.rows)


def germ_identity_check(S, samples) -> GermCheckReport:
    """Compare membership in St0_F'(S) with membership in St0_F(S u {0, 1})."""
    pts = sorted({exact(s) for s in S})
    ext = sorted(set(pts) | {ZERO, ONE})
    rows = []
    for g in samples:
        lhs = in_commutator(g) and all(fixes_neighborhood(g, s) for s in pts)
        rhs = all(fixes_neighborhood(g, s) for s in ext)
        rows.append(GermCheckRow(g, lhs, rhs))
    return GermCheckReport(pts, rows)
