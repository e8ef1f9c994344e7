"""Exact dyadic rationals a/2^n, plus parsing and formatting of exact numbers.

General rationals are plain :class:`fractions.Fraction` values; a :class:`Dyadic`
mixes with them transparently (arithmetic, ordering, equality and hashing).
"""
from __future__ import annotations

import re
import sys
from fractions import Fraction
from numbers import Rational as _RationalABC

Rational = Fraction

_MODULUS = sys.hash_info.modulus
_INV2 = (_MODULUS + 1) // 2

LT, EQ, GT = -1, 0, 1


def _normalize(num: int, exp: int):
    if num == 0:
        return 0, 0
    if exp <= 0:
        return num << -exp, 0
    tz = (num & -num).bit_length() - 1
    if tz:
        s = tz if tz < exp else exp
        return num >> s, exp - s
    return num, exp


class Dyadic:
    """The number ``num / 2**exp`` in reduced form (``num`` odd or ``exp == 0``)."""

    __slots__ = ("num", "exp", "_hash")

    def __init__(self, num: int = 0, exp: int = 0):
        self.num, self.exp = _normalize(int(num), int(exp))
        self._hash = None

    @classmethod
    def _raw(cls, num, exp):
        # caller guarantees the pair is already reduced
        d = object.__new__(cls)
        d.num = num
        d.exp = exp
        d._hash = None
        return d

    @classmethod
    def coerce(cls, x) -> "Dyadic":
        if isinstance(x, Dyadic):
            return x
        if isinstance(x, int):
            return cls._raw(x, 0)
        if isinstance(x, _RationalABC):
            q = x.denominator
            if q & (q - 1):
                raise ValueError(f"{x} is not a dyadic rational")
            return cls(x.numerator, q.bit_length() - 1)
        raise TypeError(f"cannot convert {type(x).__name__} to Dyadic")

    # numbers.Rational-compatible surface
    @property
    def numerator(self) -> int:
        return self.num

    @property
    def denominator(self) -> int:
        return 1 << self.exp

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self):
        return self.num / (1 << self.exp)

    def __repr__(self):
        return f"Dyadic({self.num}, {self.exp})"

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/2^{self.exp}"

    def __bool__(self):
        return self.num != 0

    def __hash__(self):
        h = self._hash
        if h is None:
            # must agree with hash(Fraction) / hash(int) for equal values
            if self.exp == 0:
                h = hash(self.num)
            else:
                h = hash(hash(abs(self.num)) * pow(_INV2, self.exp, _MODULUS))
                if self.num < 0:
                    h = -h
                if h == -1:
                    h = -2
            self._hash = h
        return h

    # arithmetic
    def _add(self, b, sign):
        e1, e2 = self.exp, b.exp
        if e1 == e2:
            return Dyadic(self.num + sign * b.num, e1)
        if e1 > e2:
            return Dyadic(self.num + sign * (b.num << (e1 - e2)), e1)
        return Dyadic((self.num << (e2 - e1)) + sign * b.num, e2)

    def __add__(self, other):
        if isinstance(other, Dyadic):
            return self._add(other, 1)
        if isinstance(other, int):
            return self._add(Dyadic._raw(other, 0), 1)
        if isinstance(other, Fraction):
            return self.to_fraction() + other
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Dyadic):
            return self._add(other, -1)
        if isinstance(other, int):
            return self._add(Dyadic._raw(other, 0), -1)
        if isinstance(other, Fraction):
            return self.to_fraction() - other
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, int):
            return Dyadic._raw(other, 0)._add(self, -1)
        if isinstance(other, Fraction):
            return other - self.to_fraction()
        return NotImplemented

    def __neg__(self):
        return Dyadic._raw(-self.num, self.exp)

    def __abs__(self):
        return Dyadic._raw(abs(self.num), self.exp)

    def __mul__(self, other):
        if isinstance(other, Dyadic):
            return Dyadic(self.num * other.num, self.exp + other.exp)
        if isinstance(other, int):
            return Dyadic(self.num * other, self.exp)
        if isinstance(other, Fraction):
            return self.to_fraction() * other
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Dyadic, int)):
            other = Dyadic.coerce(other)
            q = abs(other.num)
            if q & (q - 1) == 0 and q:
                sign = -1 if other.num < 0 else 1
                return Dyadic(sign * self.num, self.exp + q.bit_length() - 1 - other.exp)
            return self.to_fraction() / other.to_fraction()
        if isinstance(other, Fraction):
            return self.to_fraction() / other
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Fraction(other) / self.to_fraction()
        return NotImplemented

    def scale(self, k: int) -> "Dyadic":
        """self * 2**k, exact."""
        if self.num == 0:
            return self
        if k >= 0:
            if self.exp >= k:
                return Dyadic._raw(self.num, self.exp - k)
            return Dyadic._raw(self.num << (k - self.exp), 0)
        return Dyadic._raw(self.num, self.exp - k)

    # ordering
    def _cmp(self, other) -> int:
        if isinstance(other, Dyadic):
            e1, e2 = self.exp, other.exp
            if e1 == e2:
                a, b = self.num, other.num
            elif e1 > e2:
                a, b = self.num, other.num << (e1 - e2)
            else:
                a, b = self.num << (e2 - e1), other.num
        elif isinstance(other, int):
            a, b = self.num, other << self.exp
        elif isinstance(other, _RationalABC):
            a = self.num * other.denominator
            b = other.numerator << self.exp
        else:
            raise TypeError
        return (a > b) - (a < b)

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, (int, _RationalABC)):
            return self._cmp(other) == 0
        return NotImplemented

    def __lt__(self, other):
        try:
            return self._cmp(other) < 0
        except TypeError:
            return NotImplemented

    def __le__(self, other):
        try:
            return self._cmp(other) <= 0
        except TypeError:
            return NotImplemented

    def __gt__(self, other):
        try:
            return self._cmp(other) > 0
        except TypeError:
            return NotImplemented

    def __ge__(self, other):
        try:
            return self._cmp(other) >= 0
        except TypeError:
            return NotImplemented

    def __reduce__(self):
        return (Dyadic, (self.num, self.exp))


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


def halve(a, k: int = 1):
    """a / 2**k."""
    if isinstance(a, Dyadic):
        return a.scale(-k)
    return Fraction(a) / (1 << k) if k >= 0 else Fraction(a) * (1 << -k)


def double(a, k: int = 1):
    """a * 2**k."""
    return halve(a, -k)


def compare(a, b) -> int:
    """Exact three-way comparison: LT (-1), EQ (0) or GT (1)."""
    lhs, rhs = a.numerator * b.denominator, b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def exact(x):
    """Return x as a Dyadic when its denominator is a power of two, else a Fraction.

    Strings go through :func:`parse_number`.
    """
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, str):
        return parse_number(x)
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError("exact values only; floats are not accepted")
    if isinstance(x, int):
        return Dyadic(x)
    if isinstance(x, _RationalABC):
        q = x.denominator
        if q & (q - 1) == 0:
            return Dyadic(x.numerator, q.bit_length() - 1)
        return Fraction(x)
    raise TypeError(f"not an exact number: {x!r}")


def is_dyadic(x) -> bool:
    if isinstance(x, Dyadic):
        return True
    q = x.denominator
    return q & (q - 1) == 0


_NUMBER_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(?:2\s*\^\s*(\d+)|(\d+)))?\s*$")


def parse_number(text: str):
    """Parse "a/2^n", "p/q" or an integer into a Dyadic (when possible) or Fraction.

    Float literals are rejected: every group-theoretic input must be exact.
    """
    m = _NUMBER_RE.match(text)
    if not m:
        if re.search(r"\d\.\d*|\de", text):
            raise ValueError(
                f"{text!r}: float literals are not accepted; write exact values like 3/4 or 5/2^4"
            )
        raise ValueError(f"cannot parse exact number {text!r}")
    num, pow2, den = m.groups()
    if pow2 is not None:
        return Dyadic(int(num), int(pow2))
    if den is not None:
        if int(den) == 0:
            raise ValueError(f"{text!r}: zero denominator")
        return exact(Fraction(int(num), int(den)))
    return Dyadic(int(num))


def format_number(x) -> str:
    """Inverse of :func:`parse_number`."""
    x = exact(x)
    if isinstance(x, Dyadic):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def parse_set(text: str) -> list:
    """Comma-separated exact numbers; empty string gives the empty list."""
    text = text.strip()
    if not text:
        return []
    return [parse_number(t) for t in text.split(",")]


_RationalABC.register(Dyadic)
