from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from thompson.cayley import eval_word
from thompson.dyadic import Dyadic
from thompson.element import (
    IDENTITY, X0, X1, Interval, PLMap, SchemaError, abelianize, bump, commutator, compose,
    conjugate, eval_inverse, fixes_neighborhood, from_json_obj, germ, in_commutator,
    interval_map, inverse, mul, power, support, to_json_obj,
)
from thompson.graphs import GENERATORS

words = st.lists(st.sampled_from(GENERATORS), max_size=8).map(tuple)
grid = st.builds(lambda k: Dyadic(k, 10), st.integers(0, 1024))


def test_generator_values():
    assert X0(Fraction(1, 2)) == Fraction(1, 4)
    assert X0(Fraction(3, 4)) == Fraction(1, 2)
    assert X1(Fraction(3, 4)) == Fraction(5, 8)
    assert X1(Fraction(7, 8)) == Fraction(3, 4)
    assert X1(Fraction(1, 3)) == Fraction(1, 3)


def test_product_is_composition():
    # (x0 x1)(t) = x0(x1(t)); at 3/4 the two orders give different values
    t = Fraction(3, 4)
    assert mul(X0, X1)(t) == X0(X1(t)) == Fraction(3, 8)
    assert compose(X0, X1)(t) == X1(X0(t)) == Fraction(1, 2)


@given(words, grid)
def test_words_match_reference(w, t):
    assert eval_word(w)(t) == oracles.word_function(w)(t)


@given(words, words, words)
def test_group_axioms(a, b, c):
    g, h, k = eval_word(a), eval_word(b), eval_word(c)
    assert mul(mul(g, h), k) == mul(g, mul(h, k))
    assert mul(g, inverse(g)) == IDENTITY == mul(inverse(g), g)
    assert mul(g, IDENTITY) == g
    assert abelianize(mul(g, h)) == abelianize(g) + abelianize(h)


@given(words, grid)
def test_inverse_evaluation(w, t):
    g = eval_word(w)
    assert eval_inverse(g, g(t)) == t
    assert inverse(g)(g(t)) == t


@given(words, st.integers(-4, 4))
def test_power(w, k):
    g = eval_word(w)
    expected = IDENTITY
    for _ in range(abs(k)):
        expected = mul(expected, g if k > 0 else inverse(g))
    assert power(g, k) == expected


@given(words, words)
def test_conjugate_and_commutator(a, b):
    g, h = eval_word(a), eval_word(b)
    assert conjugate(g, h) == mul(mul(inverse(h), g), h)
    assert in_commutator(commutator(g, h))


def test_canonical_form_drops_redundant_breakpoints():
    g = PLMap.from_breakpoints([(0, 0), (Dyadic(1, 2), Dyadic(1, 2)), (1, 1)])
    assert g == IDENTITY and g.is_identity()
    with pytest.raises(ValueError):
        PLMap.from_breakpoints([(0, 0), (Dyadic(1, 1), Dyadic(3, 3)), (1, 1)])


def test_support_and_germs():
    assert support(X1) == [Interval(Dyadic(1, 1), Dyadic(1))]
    assert support(IDENTITY) == []
    assert fixes_neighborhood(X1, Fraction(1, 4))
    assert not fixes_neighborhood(X1, Fraction(1, 2))
    assert germ(X0, 0) == (0, None, -1)


@pytest.mark.parametrize("a,b", [("1/4", "3/8"), ("1/2", "3/4"), ("0", "1/16"), ("5/8", "1")])
def test_bump_support(a, b):
    from thompson.dyadic import parse_number
    a, b = parse_number(a), parse_number(b)
    g = bump(a, b)
    assert support(g) == [Interval(a, b)]
    mid = (a + b) / 2
    assert g(mid) > mid


@given(st.lists(st.integers(1, 63), min_size=1, max_size=4, unique=True),
       st.lists(st.integers(1, 63), min_size=4, max_size=4, unique=True))
def test_interval_map(src, tgt):
    src = sorted(Dyadic(k, 6) for k in src)
    tgt = sorted(Dyadic(k, 6) for k in tgt)[: len(src)]
    for mode in ("F", "F'"):
        h = interval_map(src, tgt, mode)
        assert [h(s) for s in src] == tgt
        if mode == "F'":
            assert in_commutator(h)


@given(words)
def test_json_roundtrip(w):
    g = eval_word(w)
    assert from_json_obj(to_json_obj(g)) == g


@pytest.mark.parametrize("obj,where", [
    ({"breakpoints": [["0", "0"], ["1", "1"]], "slopes": ["0"]}, "slopes[0]"),
    ({"breakpoints": [["0", "0"], ["1", "1"]], "slopes": [True]}, "slopes[0]"),
    ({"breakpoints": [["0", "0"], ["1", "1"]], "slopes": [1]}, "slopes[0]"),
    ({"breakpoints": [["0", "0"], ["0.5", "0.5"], ["1", "1"]], "slopes": [0, 0]}, "breakpoints[1]"),
    ({"breakpoints": [["0", "0"], ["1/2", "1/2"], ["1", "1"]], "slopes": [0, 0]}, "slopes[1]"),
    ({"breakpoints": [["0", "0"], ["1/3", "1/3"], ["1", "1"]], "slopes": [0, 0]}, "breakpoints[1]"),
    ({"breakpoints": [["0", "0"]], "slopes": []}, "breakpoints"),
    ([], "plmap"),
])
def test_json_schema_errors(obj, where):
    with pytest.raises(SchemaError) as e:
        from_json_obj(obj)
    assert where in e.value.where


def test_conjugate_support_orientation():
    g = bump(Dyadic(1, 2), Dyadic(3, 3))
    c = conjugate(g, X0)
    # support moves to x0^-1([1/4, 3/8]) = [1/2, 5/8]
    assert support(c) == [Interval(Dyadic(1, 1), Dyadic(5, 3))]
