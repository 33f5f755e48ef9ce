"""Effective irrationality measure for (1 + 1/N)**(1/n) and the thresholds derived from it.

For n >= 3 and positive integers p, q, N with

    (sqrt(N) + sqrt(N+1))**(2(n-2)) > (n * mu_n)**n

one has |(1 + 1/N)**(1/n) - p/q| > (8 n mu_n N)**-1 * q**-lambda, where

    mu_n   = prod_{p | n prime} p**(1/(p-1)),
    lambda = 1 + log(n mu_n S) / log(S / (n mu_n)),   S = (sqrt(N) + sqrt(N+1))**2.

Every verdict below is decided on rational enclosures (see ``intervals``).
Inequalities with real exponents A**x < B are compared as x*log(A) < log(B).
Whenever a threshold depends on lambda, the upper endpoint of its enclosure
is used, which is the conservative side for all of them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import intervals as iv
from .arith import is_prime, prime_divisors
from .intervals import DEFAULT_BITS, RationalInterval, UndecidedError, decide


class ConditionNotCertified(ValueError):
    """The hypothesis of the irrationality measure could not be certified for (n, N)."""


@dataclass(frozen=True)
class BoundEnvelope:
    n: int
    N: int
    mu: RationalInterval
    lambda_: Optional[RationalInterval]
    condition_holds: bool


def mu(n: int, bits: int = DEFAULT_BITS) -> RationalInterval:
    if n < 2:
        raise ValueError("mu is defined for n >= 2")
    out = RationalInterval.exact(1)
    for p in prime_divisors(n):
        out = out * (RationalInterval.exact(2) if p == 2 else iv.root(p, p - 1, bits + 8))
    return out.round(bits + 8)


def _s_interval(N: int, bits: int) -> RationalInterval:
    return ((iv.sqrt(N, bits + 8) + iv.sqrt(N + 1, bits + 8)) ** 2).round(bits + 8)


def _condition_sides(n: int, N: int, bits: int):
    c = n * mu(n, bits)
    return n * iv.log(c, bits), (n - 2) * iv.log(_s_interval(N, bits), bits)


def check_condition(n: int, N: int) -> bool:
    """True only when the hypothesis is certified; False means not certified."""
    if n < 3 or N < 1:
        raise ValueError("check_condition needs n >= 3 and N >= 1")
    try:
        return decide(lambda bits: _condition_sides(n, N, bits))
    except UndecidedError:
        return False


def _lambda(n: int, N: int, bits: int) -> RationalInterval:
    log_c = iv.log(n * mu(n, bits), bits)
    log_s = iv.log(_s_interval(N, bits), bits)
    return (1 + (log_c + log_s) / (log_s - log_c)).round(bits)


def lambda_exponent(n: int, N: int, bits: int = DEFAULT_BITS) -> RationalInterval:
    if not check_condition(n, N):
        raise ConditionNotCertified(f"condition not certified for n={n}, N={N}")
    return _lambda(n, N, bits)


def envelope(n: int, N: int, bits: int = DEFAULT_BITS) -> BoundEnvelope:
    holds = check_condition(n, N)
    return BoundEnvelope(
        n=n,
        N=N,
        mu=mu(n, bits),
        lambda_=_lambda(n, N, bits) if holds else None,
        condition_holds=holds,
    )


def bennett_gap(n: int, N: int, q: int, bits: int = DEFAULT_BITS) -> RationalInterval:
    """Enclosure of (8 n mu_n N)**-1 * q**-lambda; its lower end is the usable bound."""
    if q < 1:
        raise ValueError("q must be >= 1")
    # rounding is absolute, so widen the working precision by the magnitude
    bits += n * q.bit_length() + (8 * n * N).bit_length() + 8
    lam = lambda_exponent(n, N, bits)
    head = (8 * n * N * mu(n, bits)).reciprocal()
    if q == 1:
        return head.round(bits)
    return (head * iv.exp(-lam * iv.log(q, bits), bits)).round(bits)


def _lambda_certified(n: int, N: int, bits: int) -> RationalInterval:
    if not check_condition(n, N):
        raise ConditionNotCertified(f"condition not certified for n={n}, N={N}")
    return _lambda(n, N, bits)


def _lambda_hi(n: int, N: int, bits: int) -> Fraction:
    return _lambda_certified(n, N, bits).hi


def prime_case_closed(k: int) -> bool:
    """Contradiction for prime k >= 5 and every a**k * b >= 5**k - 1.

    Combines the lower bound a**k c > k**k z**k (a**k b)**(k-1), with z >= 1,
    and the upper bound (a**k c)**(k-lambda) < (8 mu_k)**k (a**k b)**(k+lambda).
    With lambda frozen at its value for N0 = 5**k - 1 (lambda decreases in N)
    the difference of the log sides grows with N once the exponent gap
    (k-1) - (k+lambda)/(k-lambda) is positive, so checking N0 suffices.
    """
    if k < 5 or not is_prime(k):
        raise ValueError(f"prime_case_closed needs a prime k >= 5, got {k}")
    N0 = 5**k - 1

    def exponents(bits):
        lam = _lambda_certified(k, N0, bits)
        return lam, (k + lam) / (k - lam)

    def gap(bits):
        _, e = exponents(bits)
        return RationalInterval.exact(0), (k - 1) - e

    def margin(bits):
        lam, e = exponents(bits)
        log_n = iv.log(N0, bits)
        lower = k * iv.log(k, bits) + (k - 1) * log_n
        upper = k / (k - lam) * iv.log(8 * mu(k, bits), bits) + e * log_n
        return upper, lower

    return decide(gap) and decide(margin)


def k4_tail_closed(r: int) -> bool:
    """True when (r**4 - 1)**(12 - 5 lambda) < 16**lambda is certified false."""
    if r < 5:
        raise ValueError("k4_tail_closed needs r >= 5")
    N = r**4 - 1

    def sides(bits):
        lam = _lambda_certified(4, N, bits)
        return lam * iv.log(16, bits), (12 - 5 * lam) * iv.log(N, bits)

    return decide(sides)


def k3_tail_closed(r: int) -> bool:
    """True when (r**3 - 1)**(15 - 7 lambda) < 8**3 3**(3/2) 125**(lambda - 3) is certified false."""
    if r < 9:
        raise ValueError("k3_tail_closed needs r >= 9")
    N = r**3 - 1

    def sides(bits):
        lam = _lambda_certified(3, N, bits)
        rhs = iv.log(512, bits) + Fraction(3, 2) * iv.log(3, bits) + (lam - 3) * iv.log(125, bits)
        return rhs, (15 - 7 * lam) * iv.log(N, bits)

    return decide(sides)


def height_exponent(k: int, r: int, bits: int = DEFAULT_BITS) -> RationalInterval:
    """Enclosure of log(8 mu_k N**2) / (k - lambda_hi), N = r**k - 1."""
    N = r**k - 1
    lam = _lambda_hi(k, N, bits)
    return (iv.log(8 * mu(k, bits) * N * N, bits) / (k - lam)).round(bits)


def height_bound(k: int, r: int, bits: int = DEFAULT_BITS) -> int:
    """Largest integer H not excluded by (a**2 t)**(k - lambda) < 8 mu_k (r**k - 1)**2.

    Any admissible numerator a**2 t satisfies a**2 t <= H.
    """
    if k not in (3, 4):
        raise ValueError("height_bound is defined for k in {3, 4}")
    if r < 2:
        raise ValueError("r must be >= 2")
    T = height_exponent(k, r, bits)
    top = iv.exp(RationalInterval.exact(T.hi), bits).hi
    return top.numerator // top.denominator
