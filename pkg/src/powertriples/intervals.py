"""Outward-rounded rational interval arithmetic.

Endpoints are exact ``Fraction`` values. Arithmetic on endpoints is exact, so
enclosures only widen where a transcendental or irrational quantity (square
roots, k-th roots, ``log``, ``exp``) is bounded, or where ``round`` trades
width for smaller numerators. Every such bound is computed with integer
fixed-point arithmetic whose truncations are directed: floors on the lower
side, ceilings plus an explicit tail bound on the upper side.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Union

from .arith import iroot

Number = Union[int, Fraction]

DEFAULT_BITS = 128
MAX_BITS_ENV = "POWERTRIPLES_MAX_BITS"
_GUARD = 16


class UndecidedError(ArithmeticError):
    """An interval comparison did not separate within the precision cap."""


def max_bits() -> int:
    return int(os.environ.get(MAX_BITS_ENV, "4096"))


def _floor_div(a: int, b: int) -> int:
    return a // b


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


def _floor_scaled(x: Fraction, w: int) -> int:
    return _floor_div(x.numerator << w, x.denominator)


def _ceil_scaled(x: Fraction, w: int) -> int:
    return _ceil_div(x.numerator << w, x.denominator)


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, x: Number) -> RationalInterval:
        return cls(Fraction(x), Fraction(x))

    @staticmethod
    def coerce(x: Union[RationalInterval, Number]) -> RationalInterval:
        if isinstance(x, RationalInterval):
            return x
        return RationalInterval.exact(x)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x: Number) -> bool:
        return self.lo <= x <= self.hi

    def __add__(self, other):
        o = self.coerce(other)
        return RationalInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return RationalInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        o = self.coerce(other)
        return RationalInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other):
        return self.coerce(other) - self

    def __mul__(self, other):
        o = self.coerce(other)
        if self.lo >= 0 and o.lo >= 0:
            return RationalInterval(self.lo * o.lo, self.hi * o.hi)
        cands = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RationalInterval(min(cands), max(cands))

    __rmul__ = __mul__

    def reciprocal(self) -> RationalInterval:
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval contains zero")
        return RationalInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        return self * self.coerce(other).reciprocal()

    def __rtruediv__(self, other):
        return self.coerce(other) * self.reciprocal()

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        if n == 0:
            return RationalInterval.exact(1)
        if self.lo >= 0:
            return RationalInterval(self.lo**n, self.hi**n)
        if self.hi <= 0:
            a, b = self.hi**n, self.lo**n
            return RationalInterval(a, b) if n % 2 == 0 else RationalInterval(b, a)
        top = max(-self.lo, self.hi) ** n
        return RationalInterval(0 if n % 2 == 0 else self.lo**n, top)

    def round(self, bits: int) -> RationalInterval:
        """Widen outward to endpoints on the grid 2**-bits."""
        scale = 1 << bits
        return RationalInterval(
            Fraction(_floor_scaled(self.lo, bits), scale),
            Fraction(_ceil_scaled(self.hi, bits), scale),
        )

    def lt(self, other) -> bool:
        """Certainly less than: every point of self is below every point of other."""
        return self.hi < self.coerce(other).lo

    def gt(self, other) -> bool:
        return self.lo > self.coerce(other).hi

    def __float__(self):
        return float(self.mid)

    def __repr__(self):
        return f"RationalInterval({float(self.lo)!r}, {float(self.hi)!r})"


def root(x: Number, k: int, bits: int = DEFAULT_BITS) -> RationalInterval:
    """Enclosure of the real k-th root of a non-negative rational."""
    x = Fraction(x)
    if x < 0:
        raise ValueError("root of a negative number")
    scale = 1 << bits
    lo = iroot(_floor_scaled(x, k * bits), k)
    top = _ceil_scaled(x, k * bits)
    hi = iroot(top, k)
    if hi**k < top:
        hi += 1
    return RationalInterval(Fraction(lo, scale), Fraction(hi, scale))


def sqrt(x: Number, bits: int = DEFAULT_BITS) -> RationalInterval:
    return root(x, 2, bits)


def _atanh_down(t: int, w: int) -> int:
    # t / 2**w in [0, ~1/3]; every truncation is a floor of a positive term
    t2 = (t * t) >> w
    total = 0
    power = t
    i = 0
    while power:
        total += power // (2 * i + 1)
        power = (power * t2) >> w
        i += 1
    return total


def _atanh_up(t: int, w: int) -> int:
    t2 = _ceil_div(t * t, 1 << w)
    total = 0
    power = t
    i = 0
    while power > 1:
        total += _ceil_div(power, 2 * i + 1)
        power = _ceil_div(power * t2, 1 << w)
        i += 1
    # remaining terms: geometric with ratio t**2 <= 1/2, each at most one ulp
    return total + 2


@lru_cache(maxsize=64)
def _ln2_scaled(w: int) -> tuple[int, int]:
    lo = 2 * _atanh_down((1 << w) // 3, w)
    hi = 2 * _atanh_up(_ceil_div(1 << w, 3), w)
    return lo, hi


def _log_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    if x <= 0:
        raise ValueError("log of a non-positive number")
    e = x.numerator.bit_length() - x.denominator.bit_length()
    y = x / Fraction(2) ** e
    if y < 1:
        e -= 1
        y *= 2
    elif y >= 2:
        e += 1
        y /= 2
    w = bits + abs(e).bit_length() + _GUARD
    t = (y - 1) / (y + 1)
    lo = 2 * _atanh_down(_floor_scaled(t, w), w)
    hi = 2 * _atanh_up(_ceil_scaled(t, w), w)
    l2lo, l2hi = _ln2_scaled(w)
    if e >= 0:
        lo += e * l2lo
        hi += e * l2hi
    else:
        lo += e * l2hi
        hi += e * l2lo
    scale = 1 << w
    return Fraction(lo, scale), Fraction(hi, scale)


def log(x: Union[RationalInterval, Number], bits: int = DEFAULT_BITS) -> RationalInterval:
    """Natural logarithm enclosure; log is increasing, so endpoints map to endpoints."""
    x = RationalInterval.coerce(x)
    lo, hi = _log_bounds(x.lo, bits)
    if not x.is_exact:
        hi = _log_bounds(x.hi, bits)[1]
    return RationalInterval(lo, hi)


def _exp_small_down(y: int, w: int) -> int:
    # y / 2**w in [0, 2)
    one = 1 << w
    total = one
    term = one
    i = 1
    while term:
        term = ((term * y) >> w) // i
        total += term
        i += 1
    return total


def _exp_small_up(y: int, w: int) -> int:
    one = 1 << w
    total = one
    term = one
    i = 1
    while term > 1 or i < 4:
        term = _ceil_div(term * y, one * i)
        total += term
        i += 1
    # tail ratio y/(i+1) < 1/2 from here on
    return total + 2


def _exp_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    mag = abs(int(x)) + 1
    w = bits + mag.bit_length() + _GUARD
    l2lo, l2hi = _ln2_scaled(w)
    scale = 1 << w
    # choose m so that x - m*ln2 is certainly >= 0 and below ~2*ln2
    if x >= 0:
        m = _floor_div(x.numerator * scale, x.denominator * l2hi) - 1
    else:
        m = _floor_div(x.numerator * scale, x.denominator * l2lo) - 1
    if m >= 0:
        y_lo = x - Fraction(m * l2hi, scale)
        y_hi = x - Fraction(m * l2lo, scale)
    else:
        y_lo = x - Fraction(m * l2lo, scale)
        y_hi = x - Fraction(m * l2hi, scale)
    assert 0 <= y_lo <= y_hi < 2
    lo = _exp_small_down(_floor_scaled(y_lo, w), w)
    hi = _exp_small_up(_ceil_scaled(y_hi, w), w)
    two_m = Fraction(2) ** m
    return Fraction(lo, scale) * two_m, Fraction(hi, scale) * two_m


def exp(x: Union[RationalInterval, Number], bits: int = DEFAULT_BITS) -> RationalInterval:
    x = RationalInterval.coerce(x)
    lo = _exp_bounds(x.lo, bits)[0]
    hi = _exp_bounds(x.hi, bits)[1]
    return RationalInterval(lo, hi)


def decide(
    build: Callable[[int], tuple[RationalInterval, RationalInterval]],
    start_bits: int = DEFAULT_BITS,
    cap: int | None = None,
) -> bool:
    """Decide ``lhs < rhs`` for the pair returned by ``build(bits)``.

    Precision doubles from ``start_bits`` until the two enclosures separate.
    Returns True when lhs < rhs is certified, False when lhs > rhs is certified.
    Raises UndecidedError past the cap (``POWERTRIPLES_MAX_BITS``, default 4096).
    """
    cap = max_bits() if cap is None else cap
    bits = min(start_bits, cap)
    while bits <= cap:
        lhs, rhs = build(bits)
        if lhs.lt(rhs):
            return True
        if lhs.gt(rhs):
            return False
        bits *= 2
    raise UndecidedError(f"comparison not separated at {cap} bits")
