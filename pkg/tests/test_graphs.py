from __future__ import annotations

import pytest

from thompson.cayley import cayley_ball
from thompson.graphs import (
    InsufficientRadius, ball_code, ball_isomorphic, bfs_distances, from_json_obj, to_dot,
    to_json_obj,
)
from thompson.schreier import orbital_ball


def test_bfs_matches_stored_distances():
    g = orbital_ball("1/2", 6)
    assert bfs_distances(g, g.root, 6) == {v: d for v, d in enumerate(g.dist)}


def test_insufficient_radius():
    g = orbital_ball("1/2", 3)
    with pytest.raises(InsufficientRadius):
        ball_code(g, 4)
    far = g.dist.index(3)
    with pytest.raises(InsufficientRadius):
        ball_code(g, 1, far)


def test_code_ignores_payloads_and_computed_radius():
    a, b = orbital_ball("1/2", 4), orbital_ball("1/2", 7)
    for n in range(5):
        assert ball_code(a, n) == ball_code(b, n)


def test_path_and_induced_balls_differ():
    # the orbital graph of 1/2 has an x1 loop at the root
    g = orbital_ball("1/2", 3)
    c = cayley_ball(3).graph
    assert not ball_isomorphic(g, c, 1)
    assert ball_isomorphic(g, c, 0)
    assert not ball_isomorphic(g, c, 0, induced=True)


def test_dot_export():
    dot = to_dot(orbital_ball("1/2", 1))
    assert dot.count("shape=doublecircle") == 1
    assert '[label="x1"]' in dot and '[label="x0"]' in dot
    assert dot.count("->") == 4


def test_json_roundtrip_preserves_code():
    g = orbital_ball("1/3", 4)
    h = from_json_obj(to_json_obj(g))
    assert h.payloads == g.payloads
    for n in range(5):
        assert ball_code(h, n) == ball_code(g, n)
