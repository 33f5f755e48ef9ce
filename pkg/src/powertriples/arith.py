"""Exact integer primitives: k-th roots, perfect powers, binomials, small factorizations."""

from __future__ import annotations

import math
from functools import lru_cache


def iroot(n: int, k: int) -> int:
    """Return the unique m with m**k <= n < (m + 1)**k."""
    if k < 2:
        raise ValueError(f"root index must be >= 2, got {k}")
    if n < 0:
        raise ValueError("iroot is defined for non-negative integers only")
    if n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    if k >= n.bit_length():
        # 2**k > n, so the root is 1
        return 1
    x = _seed_above(n, k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x**k > n:
        x -= 1
    while (x + 1) ** k <= n:
        x += 1
    return x


def _seed_above(n: int, k: int) -> int:
    # float estimate of n**(1/k) nudged upward; Newton from above then descends
    # monotonically, and converges quadratically from the first step
    b = n.bit_length()
    shift = max(0, b - 64)
    e = (math.log2(n >> shift) + shift) / k
    if e < 48:
        x = int(2.0**e * (1 + 1e-9)) + 1
    else:
        E = int(e) - 48
        x = (int(2.0 ** (e - E) * (1 + 1e-9)) + 1) << E
    while x**k <= n:
        x += (x >> 20) + 1
    return x


def perfect_power_root(n: int, k: int) -> int | None:
    """Return m with m**k == n, or None when n is not a perfect k-th power."""
    if k < 2:
        raise ValueError(f"root index must be >= 2, got {k}")
    if n < 0:
        return None
    m = iroot(n, k)
    return m if m**k == n else None


def binomial(n: int, i: int) -> int:
    """C(n, i), zero when i > n."""
    if n < 0 or i < 0:
        raise ValueError("binomial arguments must be non-negative")
    return math.comb(n, i)


def is_prime(n: int) -> bool:
    # trial division; callers only ask about small n
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    return [p for p in range(max(lo, 2), hi + 1) if is_prime(p)]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division. Intended for n up to ~10**14."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    d = 5
    step = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += step
        step = 6 - step
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def prime_divisors(n: int) -> tuple[int, ...]:
    return tuple(sorted(factorize(n)))


def power_divisor_roots(n: int, k: int, factors: dict[int, int] | None = None) -> list[int]:
    """All d >= 1 with d**k dividing n, ascending."""
    if factors is None:
        factors = factorize(n)
    roots = [1]
    for p, e in sorted(factors.items()):
        top = e // k
        if top == 0:
            continue
        roots = [d * p**i for d in roots for i in range(top + 1)]
    return sorted(roots)


def root_sign(n: int, k: int, num: int, den: int) -> int:
    """Sign of n**(1/k) - num/den, decided exactly (den > 0, n >= 0)."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    if num < 0:
        return 1
    lhs = n * den**k
    rhs = num**k
    return (lhs > rhs) - (lhs < rhs)
