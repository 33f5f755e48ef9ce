"""Certified simple continued fractions of irrational k-th roots of integers.

The root alpha = N**(1/k) is enclosed as m/2**P < alpha < (m+1)/2**P with
m = iroot(N * 2**(kP), k). After j quotients the complete quotient is the
Moebius image

    x_j = (p_{j-2} - q_{j-2} alpha) / (q_{j-1} alpha - p_{j-1}),

which is monotone on the enclosure whenever its pole lies outside. A quotient
is accepted only when both endpoint images share the same floor; otherwise P
is doubled and the chain resumes from the last accepted convergents.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .arith import iroot, perfect_power_root, root_sign

DEFAULT_MAX_TERMS = 10_000

StopPredicate = Callable[[int, int, int, int], bool]


class ExpansionLimitError(RuntimeError):
    """expand_until hit its hard cap before the stop predicate fired."""


@dataclass(frozen=True)
class SurdExpansion:
    N: int
    k: int
    quotients: tuple[int, ...]
    convergents: tuple[tuple[int, int], ...]
    precision_bits: int
    stop_index: Optional[int] = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.quotients)

    def convergent(self, j: int) -> tuple[int, int]:
        return convergent(self, j)

    def extend(self, terms: int) -> SurdExpansion:
        """A new expansion with at least ``terms`` quotients, reusing this prefix."""
        if terms <= len(self.quotients):
            return self
        engine = _Engine.resume(self)
        while len(engine.quotients) < terms:
            engine.step()
        return engine.snapshot()


class _Engine:
    def __init__(self, N: int, k: int, bits: int):
        self.N = N
        self.k = k
        self.bits = bits
        self.quotients: list[int] = []
        self.convergents: list[tuple[int, int]] = []
        # (p_{j-2}, p_{j-1}, q_{j-2}, q_{j-1}) before the j-th quotient
        self.state = (0, 1, 1, 0)
        self._refresh()

    @classmethod
    def resume(cls, exp: SurdExpansion) -> _Engine:
        eng = cls(exp.N, exp.k, exp.precision_bits)
        eng.quotients = list(exp.quotients)
        eng.convergents = list(exp.convergents)
        if len(exp.convergents) >= 2:
            (p2, q2), (p1, q1) = exp.convergents[-2:]
            eng.state = (p2, p1, q2, q1)
        elif exp.convergents:
            p1, q1 = exp.convergents[0]
            eng.state = (1, p1, 0, q1)
        return eng

    def _refresh(self) -> None:
        self.m = iroot(self.N << (self.k * self.bits), self.k)
        self.D = 1 << self.bits

    def _try_quotient(self) -> Optional[int]:
        p2, p1, q2, q1 = self.state
        D = self.D
        floors = []
        signs = []
        for mm in (self.m, self.m + 1):
            num = p2 * D - q2 * mm
            den = q1 * mm - p1 * D
            if den == 0:
                return None
            signs.append(den > 0)
            floors.append(num // den)
        if signs[0] != signs[1] or floors[0] != floors[1]:
            return None
        return floors[0]

    def step(self) -> int:
        while True:
            a = self._try_quotient()
            if a is not None:
                break
            self.bits *= 2
            self._refresh()
        if self.quotients and a < 1:
            raise AssertionError(f"certified quotient {a} < 1 at index {len(self.quotients)}")
        p2, p1, q2, q1 = self.state
        p, q = a * p1 + p2, a * q1 + q2
        self.state = (p1, p, q1, q)
        self.quotients.append(a)
        self.convergents.append((p, q))
        return a

    def snapshot(self, length: Optional[int] = None, stop_index: Optional[int] = None) -> SurdExpansion:
        n = len(self.quotients) if length is None else length
        return SurdExpansion(
            N=self.N,
            k=self.k,
            quotients=tuple(self.quotients[:n]),
            convergents=tuple(self.convergents[:n]),
            precision_bits=self.bits,
            stop_index=stop_index,
        )


def initial_bits(N: int) -> int:
    return 2 * N.bit_length() + 64


def _check_radicand(N: int, k: int) -> None:
    if k < 2:
        raise ValueError(f"root index must be >= 2, got {k}")
    if N < 2:
        raise ValueError(f"radicand must be >= 2, got {N}")
    if perfect_power_root(N, k) is not None:
        raise ValueError(f"{N} is a perfect {k}-th power; its root is rational")


def expand(N: int, k: int, terms: int) -> SurdExpansion:
    """First ``terms`` certified partial quotients of N**(1/k) with their convergents."""
    _check_radicand(N, k)
    if terms < 1:
        raise ValueError("terms must be >= 1")
    engine = _Engine(N, k, initial_bits(N))
    for _ in range(terms):
        engine.step()
    return engine.snapshot()


def expand_until(
    N: int,
    k: int,
    stop: StopPredicate,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SurdExpansion:
    """Expand until ``stop(j, p_j, q_j, a_{j+1})`` first holds.

    The result holds a_0..a_j for the triggering j, and ``stop_index`` is j.
    The look-ahead quotient a_{j+1} is certified but not kept.
    """
    _check_radicand(N, k)
    engine = _Engine(N, k, initial_bits(N))
    engine.step()
    for j in range(max_terms):
        nxt = engine.step()
        p, q = engine.convergents[j]
        if stop(j, p, q, nxt):
            return engine.snapshot(length=j + 1, stop_index=j)
    raise ExpansionLimitError(f"stop predicate not satisfied within {max_terms} terms")


def convergent(exp: SurdExpansion, j: int) -> tuple[int, int]:
    if not 0 <= j < len(exp.convergents):
        raise IndexError(f"convergent index {j} outside 0..{len(exp.convergents) - 1}")
    return exp.convergents[j]


def verify_expansion(exp: SurdExpansion) -> bool:
    """Exact check of every quotient, independent of the interval path.

    The reals whose expansion starts a_0..a_j (j >= 1) fill the open interval
    between p_j/q_j and (p_j + p_{j-1})/(q_j + q_{j-1}); membership of the
    root is decided by comparing k-th powers of integers.
    """
    N, k = exp.N, exp.k
    if not exp.quotients or exp.quotients[0] != iroot(N, k):
        return False
    for j, (p, q) in enumerate(exp.convergents):
        if j == 0:
            if (p, q) != (exp.quotients[0], 1):
                return False
            continue
        a = exp.quotients[j]
        p1, q1 = exp.convergents[j - 1]
        p2, q2 = exp.convergents[j - 2] if j >= 2 else (1, 0)
        if a < 1 or (p, q) != (a * p1 + p2, a * q1 + q2):
            return False
        s1 = root_sign(N, k, p, q)
        s2 = root_sign(N, k, p + p1, q + q1)
        if s1 == 0 or s2 == 0 or s1 == s2:
            return False
    return True
