"""Words over {x0, x1, x0^-1, x1^-1}, their evaluation, and Cayley balls of F."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .element import IDENTITY, X0, X1, PLMap, compose, in_commutator, inverse, mul
from .graphs import GENERATORS, RootedLabelledGraph, grow

Word = tuple  # of generator symbols from GENERATORS

GENERATOR_MAPS = {"x0": X0, "x1": X1, "x0^-1": inverse(X0), "x1^-1": inverse(X1)}
_INVERSE_SYMBOL = {"x0": "x0^-1", "x1": "x1^-1", "x0^-1": "x0", "x1^-1": "x1"}

_TOKEN = re.compile(r"x([01])(?:\^\{?(-?\d+)\}?|('))?")


def parse_word(text: str) -> Word:
    """Parse e.g. "x0 x1^-1 x0^2", "x0x1'", or "e" / "" for the empty word."""
    s = text.strip()
    if s in ("", "e", "1", "id"):
        return ()
    letters = []
    pos = 0
    while pos < len(s):
        if s[pos] in " *.\t":
            pos += 1
            continue
        m = _TOKEN.match(s, pos)
        if not m:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        gen, exp, prime = m.groups()
        k = -1 if prime else int(exp) if exp is not None else 1
        sym = f"x{gen}" if k > 0 else f"x{gen}^-1"
        letters.extend([sym] * abs(k))
        pos = m.end()
    return tuple(letters)


def format_word(w: Word) -> str:
    return "".join(w) if w else "e"


def word_inverse(w: Word) -> Word:
    return tuple(_INVERSE_SYMBOL[s] for s in reversed(w))


def eval_word(w: Word) -> PLMap:
    """The product of the letters, read as function composition (last letter acts first)."""
    g = IDENTITY
    for s in w:
        g = mul(g, GENERATOR_MAPS[s])
    return g


def random_word(rng: random.Random, length: int) -> Word:
    return tuple(rng.choice(GENERATORS) for _ in range(length))


def act_on_element(g: PLMap, gen: str) -> PLMap:
    """s o g: the Schreier-graph step from g along generator symbol ``gen``."""
    return compose(g, GENERATOR_MAPS[gen])


@dataclass
class CayleyBall:
    radius: int
    graph: RootedLabelledGraph
    words: list

    @property
    def elements(self) -> list:
        return self.graph.payloads

    def __len__(self):
        return len(self.graph)


def cayley_ball(n: int, max_vertices: int | None = None) -> CayleyBall:
    """All elements of word length <= n, deduplicated by canonical PL form.

    Edges join g to s o g; each element keeps one shortest word.
    """
    graph = grow(IDENTITY, act_on_element, n, key=lambda g: g, max_vertices=max_vertices,
                 kind="element", description=f"Cayley ball of F, radius {n}")
    words = [()] * len(graph)
    # the BFS tree: the first edge that discovered each vertex
    for v in range(len(graph)):
        for gen in GENERATORS:
            w = graph.step(v, gen)
            if w is not None and graph.dist[w] == graph.dist[v] + 1 and not words[w] and w:
                words[w] = (gen,) + words[v]
    return CayleyBall(n, graph, words)


def enumerate_commutator_ball(n: int, ball: CayleyBall | None = None) -> list:
    """Elements of the radius-n Cayley ball lying in F' (trivial abelianization)."""
    return [g for g, _ in commutator_ball_with_words(n, ball)]


def commutator_ball_with_words(n: int, ball: CayleyBall | None = None) -> list:
    if ball is None or ball.radius < n:
        ball = cayley_ball(n)
    return [(g, w) for g, w, d in zip(ball.elements, ball.words, ball.graph.dist)
            if d <= n and in_commutator(g)]
