"""Elements of Thompson's group F as canonical piecewise-linear maps of [0, 1].

Two products appear here. ``compose(g, h)`` is the map ``t -> h(g(t))``
("apply g, then h"). The group product ``mul(g, h)`` is ordinary function
composition ``g o h`` (apply h first); words, conjugates and commutators are read
with ``mul``. This is the reading under which the generator formulas for x0, x1
satisfy the two defining relators of F.
"""
from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction

from .dyadic import ONE, ZERO, Dyadic, exact, format_number, parse_number


class SchemaError(ValueError):
    """Raised when serialized data violates a schema; ``where`` names the location."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def _log2_exact(r: Fraction):
    """k with r == 2**k, or None."""
    p, q = r.numerator, r.denominator
    if p <= 0:
        return None
    if q == 1 and p & (p - 1) == 0:
        return p.bit_length() - 1
    if p == 1 and q & (q - 1) == 0:
        return -(q.bit_length() - 1)
    return None


class PLMap:
    """Canonical PL homeomorphism of [0, 1] with dyadic breakpoints and slopes 2**k.

    ``xs`` are the breakpoints (``xs[0] == 0``, ``xs[-1] == 1``), ``ys`` their
    images and ``ks`` the slope exponents of the segments between them. Adjacent
    segments always have distinct slopes.
    """

    __slots__ = ("xs", "ys", "ks", "_hash")

    def __init__(self, xs, ys, ks):
        self.xs = tuple(xs)
        self.ys = tuple(ys)
        self.ks = tuple(ks)
        self._hash = None

    @classmethod
    def from_breakpoints(cls, points) -> "PLMap":
        """Build from (x, g(x)) pairs; redundant breakpoints are dropped."""
        pts = [(Dyadic.coerce(x), Dyadic.coerce(y)) for x, y in points]
        if not pts or pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ONE):
            raise ValueError("breakpoints must start at (0, 0) and end at (1, 1)")
        xs, ys, ks = [pts[0][0]], [pts[0][1]], []
        for x, y in pts[1:]:
            dx, dy = x - xs[-1], y - ys[-1]
            if dx <= 0 or dy <= 0:
                raise ValueError("breakpoints and their images must be strictly increasing")
            k = _log2_exact(Fraction(dy.to_fraction() / dx.to_fraction()))
            if k is None:
                raise ValueError(f"slope {dy}/{dx} on segment ending at {x} is not a power of 2")
            if ks and ks[-1] == k:
                xs[-1], ys[-1] = x, y
            else:
                xs.append(x)
                ys.append(y)
                ks.append(k)
        return cls(xs, ys, ks)

    def __eq__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return self.xs == other.xs and self.ys == other.ys

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.xs, self.ys))
        return self._hash

    def __repr__(self):
        pts = " ".join(f"({format_number(x)},{format_number(y)})" for x, y in zip(self.xs, self.ys))
        return f"PLMap[{pts}]"

    def __call__(self, t):
        return eval_map(self, t)

    def __mul__(self, other):
        if not isinstance(other, PLMap):
            return NotImplemented
        return mul(self, other)

    def __invert__(self):
        return inverse(self)

    def __pow__(self, k: int):
        return power(self, k)

    def is_identity(self) -> bool:
        return len(self.ks) == 1

    def sort_key(self):
        return tuple((x.to_fraction(), y.to_fraction()) for x, y in zip(self.xs, self.ys))

    def breakpoint_images(self):
        return list(zip(self.xs, self.ys))


IDENTITY = PLMap((ZERO, ONE), (ZERO, ONE), (0,))

X0 = PLMap.from_breakpoints([
    (0, 0), (Dyadic(1, 1), Dyadic(1, 2)), (Dyadic(3, 2), Dyadic(1, 1)), (1, 1),
])
X1 = PLMap.from_breakpoints([
    (0, 0), (Dyadic(1, 1), Dyadic(1, 1)), (Dyadic(3, 2), Dyadic(5, 3)),
    (Dyadic(7, 3), Dyadic(3, 2)), (1, 1),
])


def _segment(xs, t) -> int:
    i = bisect_right(xs, t) - 1
    return min(i, len(xs) - 2)


def eval_map(g: PLMap, t):
    """g(t) exactly; dyadic input gives a Dyadic, other rationals a Fraction."""
    t = exact(t)
    if t < 0 or t > 1:
        raise ValueError(f"point {format_number(t)} is outside [0, 1]")
    i = _segment(g.xs, t)
    x, y, k = g.xs[i], g.ys[i], g.ks[i]
    if isinstance(t, Dyadic):
        return y + (t - x).scale(k)
    scale = Fraction(2) ** k
    return y.to_fraction() + (t - x.to_fraction()) * scale


def eval_inverse(g: PLMap, t):
    """g^-1(t) without building the inverse map."""
    t = exact(t)
    if t < 0 or t > 1:
        raise ValueError(f"point {format_number(t)} is outside [0, 1]")
    i = _segment(g.ys, t)
    x, y, k = g.xs[i], g.ys[i], g.ks[i]
    if isinstance(t, Dyadic):
        return x + (t - y).scale(-k)
    return x.to_fraction() + (t - y.to_fraction()) * Fraction(2) ** -k


def compose(g: PLMap, h: PLMap) -> PLMap:
    """The map t -> h(g(t)) ("g, then h"), in canonical form."""
    gx, gy, gk = g.xs, g.ys, g.ks
    hx, hy, hk = h.xs, h.ys, h.ks
    xs, zs, ks = [ZERO], [ZERO], []
    i = j = 0
    n_g, n_h = len(gk), len(hk)
    while i < n_g and j < n_h:
        k = gk[i] + hk[j]
        a, b = gy[i + 1], hx[j + 1]
        c = a._cmp(b)
        if c < 0:
            x = gx[i + 1]
            z = hy[j] + (a - hx[j]).scale(hk[j])
            i += 1
        elif c > 0:
            x = gx[i] + (b - gy[i]).scale(-gk[i])
            z = hy[j + 1]
            j += 1
        else:
            x, z = gx[i + 1], hy[j + 1]
            i += 1
            j += 1
        if ks and ks[-1] == k:
            xs[-1], zs[-1] = x, z
        else:
            xs.append(x)
            zs.append(z)
            ks.append(k)
    return PLMap(xs, zs, ks)


def mul(g: PLMap, h: PLMap) -> PLMap:
    """Group product g o h (h acts first)."""
    return compose(h, g)


def inverse(g: PLMap) -> PLMap:
    return PLMap(g.ys, g.xs, [-k for k in g.ks])


def equal(g: PLMap, h: PLMap) -> bool:
    return g == h


def power(g: PLMap, k: int) -> PLMap:
    if k < 0:
        g, k = inverse(g), -k
    result = IDENTITY
    while k:
        if k & 1:
            result = compose(result, g)
        k >>= 1
        if k:
            g = compose(g, g)
    return result


def conjugate(g: PLMap, h: PLMap) -> PLMap:
    """h^-1 g h; its support is h^-1 applied to the support of g."""
    return compose(compose(h, g), inverse(h))


def commutator(a: PLMap, b: PLMap) -> PLMap:
    """[a, b] = a^-1 b^-1 a b."""
    return mul(mul(inverse(a), inverse(b)), mul(a, b))


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object
    lo_closed: bool = True
    hi_closed: bool = True

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"empty interval: {self.lo} >= {self.hi}")

    def __str__(self):
        left = "[" if self.lo_closed else "("
        right = "]" if self.hi_closed else ")"
        return f"{left}{format_number(self.lo)}, {format_number(self.hi)}{right}"

    def contains(self, t) -> bool:
        above = self.lo <= t if self.lo_closed else self.lo < t
        below = t <= self.hi if self.hi_closed else t < self.hi
        return above and below

    def intersects(self, other: "Interval") -> bool:
        # closed/open endpoint bookkeeping for touching intervals
        if self.hi < other.lo or other.hi < self.lo:
            return False
        if self.hi == other.lo:
            return self.hi_closed and other.lo_closed
        if other.hi == self.lo:
            return other.hi_closed and self.lo_closed
        return True

    def precedes(self, other: "Interval") -> bool:
        """(a, b) < (c, d) iff b < c."""
        return self.hi < other.lo


def _fixed_segment(g: PLMap, i: int) -> bool:
    return g.ks[i] == 0 and g.xs[i] == g.ys[i]


def support(g: PLMap) -> list[Interval]:
    """Closure of {t : g(t) != t} as disjoint closed intervals, left to right."""
    out = []
    lo = None
    for i in range(len(g.ks)):
        if _fixed_segment(g, i):
            if lo is not None:
                out.append(Interval(lo, g.xs[i]))
                lo = None
        elif lo is None:
            lo = g.xs[i]
    if lo is not None:
        out.append(Interval(lo, ONE))
    return out


@dataclass(frozen=True)
class AbelianImage:
    at_zero: int
    at_one: int

    def __add__(self, other):
        return AbelianImage(self.at_zero + other.at_zero, self.at_one + other.at_one)

    def __iter__(self):
        return iter((self.at_zero, self.at_one))


def abelianize(g: PLMap) -> AbelianImage:
    """(log2 slope at 0, log2 slope at 1): the image in F/F' = Z^2."""
    return AbelianImage(g.ks[0], g.ks[-1])


def in_commutator(g: PLMap) -> bool:
    return g.ks[0] == 0 and g.ks[-1] == 0


def germ(g: PLMap, s):
    """(g(s), left slope exponent, right slope exponent); None where one side is missing."""
    s = exact(s)
    value = eval_map(g, s)
    i = bisect_right(g.xs, s) - 1
    if s == g.xs[i]:
        left = g.ks[i - 1] if i > 0 else None
        right = g.ks[i] if i < len(g.ks) else None
    else:
        left = right = g.ks[i]
    return value, left, right


def fixes_neighborhood(g: PLMap, s) -> bool:
    """True iff g is the identity on some neighbourhood of s (relative to [0, 1])."""
    value, left, right = germ(g, s)
    return value == s and left in (0, None) and right in (0, None)


def right_germ_at(g: PLMap, a):
    """Slope exponent of g just to the right of a (a < 1)."""
    a = exact(a)
    return g.ks[bisect_right(g.xs, a) - 1]


def left_germ_at(g: PLMap, b):
    """Slope exponent of g just to the left of b (b > 0)."""
    b = exact(b)
    i = bisect_right(g.xs, b) - 1
    if g.xs[i] == b:
        i -= 1
    return g.ks[i]


def bump(a, b) -> PLMap:
    """Element with support exactly [a, b], moving points of (a, b) to the right.

    Slopes 2, 1, 1/2 with breakpoints a + L/8 and b - L/4, where L = b - a.
    """
    a, b = Dyadic.coerce(a), Dyadic.coerce(b)
    if not (ZERO <= a < b <= ONE):
        raise ValueError(f"bump needs 0 <= a < b <= 1, got {a}, {b}")
    length = b - a
    pts = [(ZERO, ZERO), (a, a), (a + length.scale(-3), a + length.scale(-2)),
           (b - length.scale(-2), b - length.scale(-3)), (b, b), (ONE, ONE)]
    pts = [p for i, p in enumerate(pts) if i == 0 or p[0] != pts[i - 1][0]]
    return PLMap.from_breakpoints(pts)


def standard_pieces(a: Dyadic, b: Dyadic) -> list[tuple[Dyadic, Dyadic]]:
    """Greedy decomposition of [a, b] into standard dyadic intervals [k/2^n, (k+1)/2^n]."""
    pieces = []
    t = a
    while t < b:
        n = t.exp
        step = Dyadic(1, n)
        while t + step > b:
            n += 1
            step = Dyadic(1, n)
        pieces.append((t, t + step))
        t = t + step
    return pieces


def _split_to(pieces, count):
    pieces = list(pieces)
    while len(pieces) < count:
        i = max(range(len(pieces)), key=lambda j: (pieces[j][1] - pieces[j][0], -j))
        lo, hi = pieces[i]
        mid = (lo + hi).scale(-1)
        pieces[i:i + 1] = [(lo, mid), (mid, hi)]
    return pieces


def _check_tuple(tup, name):
    for i, t in enumerate(tup):
        if not (ZERO < t < ONE):
            raise ValueError(f"{name}[{i}] = {t} must lie strictly inside (0, 1)")
        if i and not tup[i - 1] < t:
            raise ValueError(f"{name} must be strictly increasing")


def interval_map(source, target, mode: str = "F") -> PLMap:
    """An element h with h(source[i]) == target[i] for every i.

    With ``mode="F'"`` the result is also the identity near 0 and 1, so it lies
    in the commutator subgroup.
    """
    src = [Dyadic.coerce(t) for t in source]
    tgt = [Dyadic.coerce(t) for t in target]
    if len(src) != len(tgt):
        raise ValueError("source and target tuples have different lengths")
    _check_tuple(src, "source")
    _check_tuple(tgt, "target")
    if mode not in ("F", "F'"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "F'" and src:
        lo = min(src[0], tgt[0])
        n = 1
        while not Dyadic(1, n) < lo:
            n += 1
        hi = max(src[-1], tgt[-1])
        m = 1
        while not ONE - Dyadic(1, m) > hi:
            m += 1
        src = [Dyadic(1, n)] + src + [ONE - Dyadic(1, m)]
        tgt = [Dyadic(1, n)] + tgt + [ONE - Dyadic(1, m)]
    src = [ZERO] + src + [ONE]
    tgt = [ZERO] + tgt + [ONE]
    points = [(ZERO, ZERO)]
    for i in range(len(src) - 1):
        p = standard_pieces(src[i], src[i + 1])
        q = standard_pieces(tgt[i], tgt[i + 1])
        count = max(len(p), len(q))
        p, q = _split_to(p, count), _split_to(q, count)
        points.extend((pp[1], qq[1]) for pp, qq in zip(p, q))
    return PLMap.from_breakpoints(points)


# JSON form: {"breakpoints": [[x, g(x)], ...], "slopes": [k, ...]} with exact strings


def to_json_obj(g: PLMap) -> dict:
    return {
        "breakpoints": [[format_number(x), format_number(y)] for x, y in zip(g.xs, g.ys)],
        "slopes": list(g.ks),
    }


def from_json_obj(obj, where: str = "plmap") -> PLMap:
    """Parse and validate; non-canonical or inconsistent data raises SchemaError."""
    if not isinstance(obj, dict):
        raise SchemaError(where, "expected an object")
    bps, slopes = obj.get("breakpoints"), obj.get("slopes")
    if not isinstance(bps, list) or len(bps) < 2:
        raise SchemaError(f"{where}.breakpoints", "expected a list of at least two pairs")
    if not isinstance(slopes, list) or len(slopes) != len(bps) - 1:
        raise SchemaError(f"{where}.slopes", "expected one slope exponent per segment")
    xs, ys = [], []
    for i, pair in enumerate(bps):
        loc = f"{where}.breakpoints[{i}]"
        if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(v, str) for v in pair)):
            raise SchemaError(loc, "expected a pair of exact number strings")
        try:
            x, y = parse_number(pair[0]), parse_number(pair[1])
        except ValueError as e:
            raise SchemaError(loc, str(e)) from None
        if not (isinstance(x, Dyadic) and isinstance(y, Dyadic)):
            raise SchemaError(loc, "breakpoints and images must be dyadic")
        xs.append(x)
        ys.append(y)
    if (xs[0], ys[0]) != (ZERO, ZERO) or (xs[-1], ys[-1]) != (ONE, ONE):
        raise SchemaError(f"{where}.breakpoints", "must start at (0, 0) and end at (1, 1)")
    for i, k in enumerate(slopes):
        loc = f"{where}.slopes[{i}]"
        if not isinstance(k, int) or isinstance(k, bool):
            raise SchemaError(loc, f"slope exponent must be an integer, got {k!r}")
        dx, dy = xs[i + 1] - xs[i], ys[i + 1] - ys[i]
        if dx <= 0 or dy <= 0:
            raise SchemaError(f"{where}.breakpoints[{i + 1}]", "not strictly increasing")
        if dx.scale(k) != dy:
            raise SchemaError(loc, f"slope 2^{k} inconsistent with breakpoints")
        if i and slopes[i - 1] == k:
            raise SchemaError(loc, "non-canonical: equal adjacent slopes")
    return PLMap(xs, ys, slopes)
