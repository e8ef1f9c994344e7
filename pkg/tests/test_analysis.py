from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from thompson.analysis import (
    act_along, ball_vertices, displacement, displacement_by_evaluation, foelner_ratio,
    growth_dominates, growth_table, push_left_locality, sample_roots, table_to_csv,
    uniform_growth_estimate,
)
from thompson.cayley import cayley_ball, parse_word
from thompson.graphs import GENERATORS, InsufficientRadius
from thompson.schreier import coset_ball, make_oracle, orbital_ball


@pytest.fixture(scope="module")
def orbit_half():
    return orbital_ball("1/2", 12)


def test_growth_table_root(orbit_half):
    t = growth_table(orbit_half, max_n=8)
    assert t.sizes["1/2^1"] == [1, 3, 6, 11, 19, 32, 53, 87, 142]
    assert t.uniform() == t.sizes["1/2^1"]


def test_growth_table_needs_complete_balls(orbit_half):
    with pytest.raises(InsufficientRadius):
        growth_table(orbit_half, max_n=13)
    roots = sample_roots(orbit_half, 10, 6, seed=1)
    assert roots[0] == orbit_half.root
    assert all(orbit_half.dist[v] + 6 <= 12 for v in roots)
    assert roots == sample_roots(orbit_half, 10, 6, seed=1)


def test_uniform_is_max_over_roots(orbit_half):
    t = growth_table(orbit_half, sample_roots(orbit_half, 8, 5, seed=2), 5)
    for n in range(6):
        assert t.uniform()[n] == max(t.sizes[r][n] for r in t.root_labels)


def test_constant_growth_is_inconclusive():
    g = coset_ball(make_oracle("whole"), 8)
    est = uniform_growth_estimate(growth_table(g))
    assert est.fitted_rate == 0.0 and est.classification == "inconclusive"


def test_growth_estimate_window_validation(orbit_half):
    t = growth_table(orbit_half, max_n=8)
    with pytest.raises(ValueError):
        uniform_growth_estimate(t, window=(6, 8))


def test_growth_dominates():
    c = cayley_ball(6).graph
    o = orbital_ball("1/2", 6)
    tc, to = growth_table(c, max_n=6), growth_table(o, max_n=6)
    assert growth_dominates(tc, to, 1)
    assert not growth_dominates(to, tc, 1)


def test_foelner(orbit_half):
    assert foelner_ratio(orbit_half, ball_vertices(orbit_half, orbit_half.root, 6)) == Fraction(42, 53)
    c = cayley_ball(2).graph
    assert foelner_ratio(c, {0}) == 4
    with pytest.raises(InsufficientRadius):
        foelner_ratio(orbit_half, ball_vertices(orbit_half, orbit_half.root, 12))


def test_displacement_examples(orbit_half):
    assert displacement(parse_word("x0x0"), orbit_half).max_observed == 2
    assert displacement(parse_word("x1"), orbit_half).max_observed == 1
    assert displacement((), orbit_half).max_observed == 0


@given(st.lists(st.sampled_from(GENERATORS), max_size=6).map(tuple))
@settings(max_examples=40, deadline=None)
def test_displacement_bounded_by_length(w):
    g = orbital_ball("1/2", 9)
    rep = displacement(w, g)
    assert rep.max_observed <= len(w)
    by_eval = displacement_by_evaluation(w, g)
    for v in by_eval:
        assert act_along(g, v, w) == by_eval[v]


def test_push_left_locality():
    loc = push_left_locality([Fraction(3, 4), Fraction(7, 8)])
    assert loc["k"] == 3 and loc["x1_fixes"] and loc["x0_halves"]


def test_csv(orbit_half):
    text = table_to_csv(growth_table(orbit_half, max_n=2, graph_id="orbit:1/2"))
    assert text.splitlines() == [
        "graph_id,root,n,ball_size", "orbit:1/2,1/2^1,0,1", "orbit:1/2,1/2^1,1,3", "orbit:1/2,1/2^1,2,6",
    ]
