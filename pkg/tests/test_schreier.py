from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from thompson.cayley import cayley_ball, eval_word, random_word
from thompson.dyadic import parse_number
from thompson.element import X0, X1, compose, inverse, mul, power
from thompson.graphs import GENERATORS, ball_code
from thompson.schreier import (
    ORACLE_KINDS, cayley_fragment_search, chabauty_distance, check_oracle, coset_ball,
    make_oracle, orbital_ball,
)


@pytest.fixture(scope="module")
def samples():
    rng = random.Random(3)
    return [eval_word(random_word(rng, rng.randint(0, 7))) for _ in range(60)]


@pytest.fixture(scope="module")
def cayley6():
    return cayley_ball(6)


def test_oracle_examples():
    assert make_oracle("point_stab", Fraction(1, 2)).member(X1)
    assert not make_oracle("germ_stab", [Fraction(1, 4)]).member(X0)
    assert make_oracle("cyclic", X0).member(power(X0, 3))
    assert make_oracle("cyclic", X0).member(power(X0, -5))
    assert not make_oracle("cyclic", X0).member(X1)
    assert not make_oracle("cyclic", power(X0, 2)).member(X0)
    assert make_oracle("commutator").member(mul(mul(X0, X1), mul(inverse(X0), inverse(X1))))


@pytest.mark.parametrize("kind,data", [
    ("trivial", None), ("whole", None), ("commutator", None), ("point_stab", "1/3"),
    ("tuple_stab", ["1/4", "1/2"]), ("germ_stab", ["1/2"]), ("germ_stab_commutator", ["3/4"]),
    ("cyclic", "x0x1"),
])
def test_oracles_are_subgroups(kind, data, samples):
    if isinstance(data, list):
        data = [parse_number(x) for x in data]
    elif kind == "point_stab":
        data = parse_number(data)
    H = make_oracle(kind, data)
    assert check_oracle(H, samples) == []


def test_cyclic_against_enumeration():
    g0 = eval_word(("x0", "x1^-1"))
    H = make_oracle("cyclic", g0)
    powers = {power(g0, k) for k in range(-6, 7)}
    for g in cayley_ball(4).elements:
        assert H.member(g) == (g in powers)


def test_unknown_oracle():
    with pytest.raises(ValueError):
        make_oracle("normalizer")
    assert "whole" in ORACLE_KINDS


@pytest.mark.parametrize("p", ["1/2", "1/4", "1/3", "5/8", "2/7"])
def test_orbital_ball_vertices(p):
    g = orbital_ball(p, 5)
    for n in range(6):
        assert {v for v, d in zip(g.payloads, g.dist) if d <= n} == oracles.brute_orbit_ball(parse_number(p), n)


def test_orbital_ball_small():
    g = orbital_ball("1/2", 2)
    assert len(g) == 6
    assert {x for x, d in zip(g.payloads, g.dist) if d <= 1} == {Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)}
    with pytest.raises(ValueError):
        orbital_ball(0, 1)


@pytest.mark.parametrize("p", ["1/2", "3/8", "1/3"])
def test_orbit_stabilizer(p):
    n = 4
    H = make_oracle("point_stab", parse_number(p))
    assert ball_code(coset_ball(H, n), n) == ball_code(orbital_ball(p, n), n)


@pytest.mark.parametrize("kind,data", [
    ("germ_stab", ["1/4", "1/2"]), ("tuple_stab", ["1/3"]), ("commutator", None),
    ("germ_stab_commutator", ["1/2"]),
])
def test_coset_key_matches_oracle_dedup(kind, data):
    data = None if data is None else [parse_number(x) for x in data]
    H = make_oracle(kind, data)
    a, b = coset_ball(H, 3), coset_ball(H, 3, use_key=True)
    assert ball_code(a, 3, induced=True) == ball_code(b, 3, induced=True)


def test_commutator_coset_graph_is_z2():
    # F/F' = Z^2 with x0 -> (-1, 1) and x1 -> (0, 1)
    g = coset_ball(make_oracle("commutator"), 3, use_key=True)
    assert [sum(1 for d in g.dist if d <= n) for n in range(4)] == [1, 5, 13, 25]


def test_whole_group_coset_graph():
    g = coset_ball(make_oracle("whole"), 5)
    assert len(g) == 1


def test_chabauty(cayley6):
    d = chabauty_distance(orbital_ball("1/2", 3), cayley6.graph, 3)
    assert d.value == Fraction(1, 2) and d.exact and str(d) == "1/2"
    d = chabauty_distance(coset_ball(make_oracle("trivial"), 6, use_key=True), cayley6.graph, 6)
    assert not d.exact and d.value == Fraction(1, 8) and str(d) == "<= 1/8"


def test_chabauty_symmetric(cayley6):
    a, b = orbital_ball("1/3", 6), orbital_ball("1/2", 6)
    assert chabauty_distance(a, b, 5).value == chabauty_distance(b, a, 5).value


def test_cayley_graph_is_a_cayley_fragment(cayley6):
    assert cayley_fragment_search(cayley6.graph, 2, cayley6) == [0] + [
        v for v in range(1, len(cayley6)) if cayley6.graph.dist[v] <= 4]


def test_orbital_fragments(cayley6):
    g = orbital_ball("1/2", 8)
    counts = [len(cayley_fragment_search(g, n, cayley6)) for n in range(4)]
    assert counts[0] == sum(1 for d in g.dist if d <= 8)
    assert counts[2] == counts[3] == 0
    assert counts[1] > 0
    assert len(cayley_fragment_search(g, 1, cayley6, induced=True)) == 0


words = st.lists(st.sampled_from(GENERATORS), max_size=7).map(tuple)
KEYED = [
    make_oracle("point_stab", Fraction(1, 2)), make_oracle("tuple_stab", [Fraction(1, 3), Fraction(3, 4)]),
    make_oracle("germ_stab", [Fraction(1, 2)]), make_oracle("germ_stab_commutator", [Fraction(5, 8)]),
    make_oracle("commutator"), make_oracle("trivial"),
]


@given(words, words, st.sampled_from(KEYED))
@settings(max_examples=200)
def test_coset_key_is_complete_invariant(a, b, H):
    g, k = eval_word(a), eval_word(b)
    assert (H.coset_key(g) == H.coset_key(k)) == H.member(compose(g, inverse(k)))
