from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

import oracles
from thompson.cayley import (
    cayley_ball, enumerate_commutator_ball, eval_word, format_word, parse_word, random_word,
    word_inverse,
)
from thompson.element import IDENTITY, in_commutator, mul
from thompson.graphs import GENERATORS, ResourceError

words = st.lists(st.sampled_from(GENERATORS), max_size=8).map(tuple)


@pytest.fixture(scope="module")
def ball5():
    return cayley_ball(5)


def test_parse_word_forms():
    assert parse_word("x0x1^-1") == ("x0", "x1^-1")
    assert parse_word("x0^2 x1'") == ("x0", "x0", "x1^-1")
    assert parse_word("x0^-2") == ("x0^-1", "x0^-1")
    assert parse_word("e") == () == parse_word("")
    with pytest.raises(ValueError):
        parse_word("x2")


@given(words)
def test_format_parse_roundtrip(w):
    assert parse_word(format_word(w)) == w


@given(words)
def test_word_inverse(w):
    assert mul(eval_word(w), eval_word(word_inverse(w))) == IDENTITY


def test_ball_sizes_against_brute_force(ball5):
    ref = oracles.brute_cayley_ball_sizes(4)
    g = ball5.graph
    sizes = [sum(1 for d in g.dist if d <= n) for n in range(5)]
    assert sizes == ref == [1, 5, 17, 53, 161]


def test_ball_elements_distinct(ball5):
    assert len(set(ball5.elements)) == len(ball5.elements)


def test_stored_words_are_geodesic(ball5):
    for g, w, d in zip(ball5.elements, ball5.words, ball5.graph.dist):
        assert eval_word(w) == g
        assert len(w) == d


def test_every_short_word_lands_in_ball(ball5):
    rng = random.Random(7)
    members = set(ball5.elements)
    for _ in range(300):
        assert eval_word(random_word(rng, rng.randint(0, 5))) in members


def test_cayley_graph_is_4_regular_inside(ball5):
    g = ball5.graph
    for v in range(len(g)):
        if g.dist[v] < ball5.radius:
            assert all(g.step(v, s) is not None for s in GENERATORS)


def test_commutator_part(ball5):
    part = enumerate_commutator_ball(4, ball5)
    assert all(in_commutator(g) for g in part)
    assert len(part) == 9
    assert [len(enumerate_commutator_ball(n, ball5)) for n in range(4)] == [1, 1, 1, 1]


def test_resource_cap():
    with pytest.raises(ResourceError):
        cayley_ball(4, max_vertices=20)


def test_resource_cap_env(monkeypatch):
    monkeypatch.setenv("THOMPSON_MAX_VERTICES", "10")
    with pytest.raises(ResourceError):
        cayley_ball(3)
