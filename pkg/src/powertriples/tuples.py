"""k-th power Diophantine tuples: predicates, the binomial pair family, brute-force search.

A set {x_1 < ... < x_m} is a k-th power Diophantine m-tuple when every
x_i * x_j + 1 is a perfect k-th power. The search routines here are the
ground-truth oracle for small windows; they enumerate witness roots rather
than raw elements, since x*c + 1 = s**k pins c down once s is chosen.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .arith import binomial, iroot, perfect_power_root


@dataclass(frozen=True)
class PowerTuple:
    elements: tuple[int, ...]
    k: int
    witnesses: tuple[tuple[int, ...], ...]  # row i holds roots for (i, i+1), (i, i+2), ...

    def witness(self, i: int, j: int) -> int:
        if i == j:
            raise ValueError("no witness on the diagonal")
        i, j = min(i, j), max(i, j)
        return self.witnesses[i][j - i - 1]

    @property
    def r(self) -> int:
        return self.witness(0, 1)

    @property
    def s(self) -> int:
        return self.witness(0, 2)

    @property
    def t(self) -> int:
        return self.witness(1, 2)

    def __len__(self) -> int:
        return len(self.elements)


def _normalize(elements: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(x) for x in elements)
    if not out:
        raise ValueError("a tuple needs at least one element")
    if any(x < 1 for x in out):
        raise ValueError("tuple elements must be positive")
    if any(b <= a for a, b in zip(out, out[1:])):
        raise ValueError(f"elements must be strictly increasing: {out}")
    return out


def failing_pair(elements: Sequence[int], k: int) -> Optional[tuple[int, int]]:
    """The first pair (x_i, x_j), i < j in lexicographic order, whose product plus one is not a k-th power."""
    elems = _normalize(elements)
    if k < 2:
        raise ValueError("k must be >= 2")
    for x, y in combinations(elems, 2):
        if perfect_power_root(x * y + 1, k) is None:
            return (x, y)
    return None


def verify_tuple(elements: Sequence[int], k: int) -> Optional[PowerTuple]:
    """Witnessed PowerTuple, or None when some pairwise check fails (see failing_pair)."""
    elems = _normalize(elements)
    if k < 2:
        raise ValueError("k must be >= 2")
    rows = []
    for i, x in enumerate(elems):
        row = []
        for y in elems[i + 1:]:
            w = perfect_power_root(x * y + 1, k)
            if w is None:
                return None
            row.append(w)
        rows.append(tuple(row))
    return PowerTuple(elems, k, tuple(rows))


def canonical_pair(a: int, k: int) -> tuple[int, int, int]:
    """(a**k, b, a**k + 1) with b = sum_{i<k} C(k, i+1) a**(ik), so a**k * b + 1 = (a**k + 1)**k."""
    if a < 2 or k < 3:
        raise ValueError("canonical_pair needs a >= 2 and k >= 3")
    ak = a**k
    b = sum(binomial(k, i + 1) * ak**i for i in range(k))
    return ak, b, ak + 1


def extend_pair(x: int, y: int, k: int, c_max: int) -> list[int]:
    """All c in (y, c_max] making {x, y, c} a k-th power triple."""
    if not 1 <= x < y:
        raise ValueError("pair must satisfy 1 <= x < y")
    if perfect_power_root(x * y + 1, k) is None:
        raise ValueError(f"{{{x}, {y}}} is not a {k}-th power pair")
    if c_max < y:
        raise ValueError("c_max must be >= y")
    found = []
    # c > y  <=>  s**k = x*c + 1 > x*y + 1
    s = iroot(x * y + 1, k) + 1
    top = x * c_max + 1
    while True:
        sk = s**k
        if sk > top:
            break
        if (sk - 1) % x == 0:
            c = (sk - 1) // x
            if c > y and perfect_power_root(y * c + 1, k) is not None:
                found.append(c)
        s += 1
    return found


def _triples_from(x: int, k: int, c_max: int) -> list[tuple[int, int, int]]:
    out = []
    # y > x, x*y + 1 = r**k with y <= c_max - 1 (a third element must fit above y)
    r = iroot(x * x + 1, k) + 1
    while True:
        rk = r**k
        if rk > x * (c_max - 1) + 1:
            break
        if (rk - 1) % x == 0:
            y = (rk - 1) // x
            if y > x:
                for c in extend_pair(x, y, k, c_max):
                    out.append((x, y, c))
        r += 1
    return out


def _first_elements(k: int, first_max: int, power_form: bool) -> list[int]:
    if not power_form:
        return list(range(1, first_max + 1))
    out = []
    a = 2
    while a**k <= first_max:
        out.append(a**k)
        a += 1
    return out


def _search_job(args):
    return _triples_from(*args)


def search_triples(
    k: int,
    first_max: int,
    c_max: int,
    restrict_to_power_form: bool = False,
    threads: int = 1,
) -> list[PowerTuple]:
    """All k-th power triples {x, y, c} with x <= first_max and c <= c_max.

    With ``restrict_to_power_form`` only x = a**k (a >= 2) is tried, and x < y
    holds by construction.
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    firsts = _first_elements(k, first_max, restrict_to_power_form)
    jobs = [(x, k, c_max) for x in firsts]
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            chunks = list(pool.map(_search_job, jobs))
    else:
        chunks = [_search_job(j) for j in jobs]
    triples = sorted(t for chunk in chunks for t in chunk)
    out = []
    for t in triples:
        pt = verify_tuple(t, k)
        assert pt is not None, t
        out.append(pt)
    return out
