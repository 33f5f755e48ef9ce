"""Replay of the finite case analysis for k = 3 and k = 4, plus the prime-k closure sweep.

k = 3: every r in [9, 7972] with a**3 | r**3 - 1 (a >= 2) is a candidate. A
triple would make a**2 t / s = g * p_j / (g * q_j) an even-index convergent of
(r**3 - 1)**(1/3) with a**2 t bounded by ``height_bound(3, r)``, and

    (r**3 - 1) q_j**3 - p_j**3 = (r**3 - 1 - a**6) / g**3,

so the left side must divide r**3 - 1 - a**6. Each candidate is killed by
showing it never does. Where it happens to divide at some j, that j is ruled
out by the quotient condition a_{j+1} > 3r - 2 instead.

k = 4: for r in [5, 35] the convergent a**2 t / s would need an even index
j <= 12 with a_{j+1} > 9 r**7 - 2, which never happens.

Larger r are closed by the tail inequalities in ``bounds``.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, NamedTuple, Sequence, TypeVar

from .arith import factorize, power_divisor_roots, primes_between
from .bounds import (
    _lambda_hi,
    height_bound,
    k3_tail_closed,
    k4_tail_closed,
    prime_case_closed,
)
from .cf import expand, expand_until
from .intervals import UndecidedError
from .report import EliminationRecord, ReplayReport, Verdict

THREADS_ENV = "POWERTRIPLES_THREADS"

K3_RANGE = (9, 7972)
K4_RANGE = (5, 35)
K3_EXCEPTIONS = (2, 3, 5, 7, 9, 11, 15, 17, 19, 21, 25, 27, 31, 37, 41, 47, 57)
K3_HEIGHT_CAP = 10**32
K4_HEIGHT_CAP = 10**8
DEFAULT_PRIME_CAP = 1000

COMPOSITE_NOTE = (
    "composite k = p*q rewrites a**k b + 1 = r**k as (a**p)**q b + 1 = (r**p)**q, "
    "so k = 4 and odd primes k cover every k >= 3 (stated, not computed)"
)

T = TypeVar("T")
R = TypeVar("R")


def default_threads() -> int:
    return max(1, int(os.environ.get(THREADS_ENV, "1")))


def _fan_out(fn: Callable[[T], R], items: Sequence[T], threads: int) -> list[R]:
    if threads <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (threads * 8))
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


def _certified(check: Callable[[int], bool], arg: int) -> bool:
    # an inequality that cannot be separated counts as not closed
    try:
        return check(arg)
    except UndecidedError:
        return False


def _prime_closed(k: int) -> bool:
    return _certified(prime_case_closed, k)


def _undecided_record(k: int, r: int, dec, exc: UndecidedError) -> EliminationRecord:
    return EliminationRecord(k, r, dec, Verdict.SURVIVED, {"undecided": 1})


class K3Candidate(NamedTuple):
    r: int
    a: int  # largest admissible a
    b: int
    admissible: tuple[int, ...]  # every a >= 2 with a**3 | r**3 - 1, ascending


def _cube_roots_dividing(r: int) -> list[int]:
    f = factorize(r - 1) if r > 2 else {}
    for p, e in factorize(r * r + r + 1).items():
        f[p] = f.get(p, 0) + e
    return [d for d in power_divisor_roots(r**3 - 1, 3, f) if d >= 2]


def enumerate_k3_candidates(
    r_lo: int = K3_RANGE[0],
    r_hi: int = K3_RANGE[1],
    strict: bool = False,
) -> list[K3Candidate]:
    """All r in [r_lo, r_hi] with r**3 - 1 = a**3 b for some a >= 2.

    ``strict`` additionally demands b > a**3, the ordering a triple needs.
    """
    if r_lo < 2:
        raise ValueError("r_lo must be >= 2")
    out = []
    for r in range(r_lo, r_hi + 1):
        n = r**3 - 1
        roots = _cube_roots_dividing(r)
        if strict:
            roots = [a for a in roots if n // a**3 > a**3]
        if roots:
            a = roots[-1]
            out.append(K3Candidate(r, a, n // a**3, tuple(roots)))
    return out


def k3_closed_form(r: int) -> list[int]:
    return [r - 1, 1, 3 * r * r - 2, 1, r - 2, 1]


def verify_k3_quotient_formula(r: int) -> bool:
    if r < 3:
        raise ValueError("the closed form is stated for r >= 3")
    return list(expand(r**3 - 1, 3, 6).quotients) == k3_closed_form(r)


def _exception_record(r: int, cand: K3Candidate | None) -> EliminationRecord:
    if cand is None:
        return EliminationRecord(3, r, None, Verdict.NOT_A_CANDIDATE, {})
    exp = expand(r**3 - 1, 3, 11)
    q = exp.quotients
    bound = 5 * r**6
    exceptional = r in K3_EXCEPTIONS
    j_min = 10 if exceptional else 8
    q_min = exp.convergents[j_min][1]
    ok = all(q[i] <= 3 * r - 2 for i in (1, 3, 5, 7)) and q_min > bound
    evidence = {"a_7": q[7], "j_min": j_min, "q_j_min": q_min, "bound": bound}
    if exceptional:
        ok = ok and q[9] <= 10
        evidence["a_9"] = q[9]
    verdict = Verdict.QUOTIENT_TOO_SMALL if ok else Verdict.SURVIVED
    return EliminationRecord(3, r, (cand.a, cand.b), verdict, evidence)


def verify_k3_exceptions(candidates: Iterable[K3Candidate] | None = None) -> list[EliminationRecord]:
    """Gap checks forcing s > 5 r**6 on the k = 3 candidates.

    Small a_1, a_3, a_5, a_7 rule out j <= 6, so s >= q_8. For r in the
    exception set q_8 may be too small, and a_9 <= 10 rules out j = 8 as well,
    leaving s >= q_10. Exception-set values that are not candidates get a
    ``not_a_candidate`` record.
    """
    if candidates is None:
        candidates = enumerate_k3_candidates()
    by_r = {c.r: c for c in candidates}
    rs = sorted(set(by_r) | set(K3_EXCEPTIONS))
    return [_exception_record(r, by_r.get(r)) for r in rs]


def _replay_k3_one(job: tuple[K3Candidate, bool]) -> EliminationRecord:
    cand = job[0]
    try:
        return _k3_record(*job)
    except UndecidedError as exc:
        return _undecided_record(3, cand.r, (cand.a, cand.b), exc)


def _k3_record(cand: K3Candidate, paranoid: bool) -> EliminationRecord:
    r = cand.r
    n = r**3 - 1
    dec = (cand.a, cand.b)
    if k3_tail_closed(r):
        return EliminationRecord(3, r, dec, Verdict.TAIL_BOUND, {"r": r})
    H = height_bound(3, r)
    exp = expand_until(n, 3, lambda j, p, q, a_next: p > H)
    J = exp.stop_index
    quot = exp.quotients
    threshold = 3 * r - 2
    dividends = [n - a**6 for a in cand.admissible]
    fallbacks = 0
    tested = 0
    survivor = None
    last = {}
    for j in range(0, J, 2):
        p, q = exp.convergents[j]
        D = n * q**3 - p**3
        if D <= 0:
            survivor = {"j": j, "divisor": D}
            break
        tested += 1
        for a, dividend in zip(cand.admissible, dividends):
            if dividend == 0 or dividend % D == 0:
                if quot[j + 1] <= threshold:
                    fallbacks += 1
                else:
                    survivor = {"j": j, "a": a, "divisor": D, "a_next": quot[j + 1]}
                    break
        if survivor:
            break
        last = {"j": j, "p_j": p, "q_j": q, "divisor": D, "dividend": dividends[-1]}
    odd_hits = 0
    if paranoid:
        for j in range(1, J, 2):
            p, q = exp.convergents[j]
            D = n * q**3 - p**3
            if D > 0 and any(d == 0 or d % D == 0 for d in dividends):
                odd_hits += 1
    evidence = dict(last)
    evidence.update(
        height_bound=H,
        terms=J + 1,
        tested_convergents=tested,
        quotient_fallbacks=fallbacks,
        closed_form_prefix=int(list(quot[:6]) == k3_closed_form(r)),
    )
    if paranoid:
        evidence["odd_positive_hits"] = odd_hits
    if survivor is not None or odd_hits:
        evidence.update({f"survivor_{key}": v for key, v in (survivor or {}).items()})
        return EliminationRecord(3, r, dec, Verdict.SURVIVED, evidence)
    return EliminationRecord(3, r, dec, Verdict.DIVISIBILITY_FAILED, evidence)


def replay_k3(
    r_lo: int = K3_RANGE[0],
    r_hi: int = K3_RANGE[1],
    threads: int | None = None,
    paranoid: bool = False,
) -> ReplayReport:
    threads = default_threads() if threads is None else threads
    candidates = enumerate_k3_candidates(r_lo, r_hi)
    strict = enumerate_k3_candidates(r_lo, r_hi, strict=True)
    tail_ok = _certified(k3_tail_closed, r_hi + 1)
    records = _fan_out(_replay_k3_one, [(c, paranoid) for c in candidates], threads)
    records.sort(key=lambda rec: (rec.k, rec.r))
    gaps = verify_k3_exceptions(candidates)
    gap_failures = [g for g in gaps if g.verdict is Verdict.SURVIVED]
    heights = [rec.evidence.get("height_bound", 0) for rec in records]
    checks = {
        f"tail_closed_at_{r_hi + 1}": tail_ok,
        "no_candidates_below_9": not enumerate_k3_candidates(2, 8),
        "closed_form_prefix": all(rec.evidence.get("closed_form_prefix", 1) for rec in records),
        "height_below_1e32": all(h < K3_HEIGHT_CAP for h in heights),
        "exception_gap_checks": not gap_failures,
        "all_eliminated": all(rec.verdict.eliminating for rec in records),
    }
    census = {
        "k3_candidates": len(candidates),
        "k3_candidates_strict": len(strict),
        "k3_eliminated": sum(rec.verdict.eliminating for rec in records),
        "k3_quotient_fallbacks": sum(rec.evidence.get("quotient_fallbacks", 0) for rec in records),
        "k3_exception_records": sum(g.r in K3_EXCEPTIONS for g in gaps),
        "k3_max_height_bound_digits": len(str(max(heights))) if heights else 0,
    }
    notes = [
        f"candidate predicate: a >= 2 with a**3 | r**3 - 1 ({len(candidates)}); "
        f"with b > a**3 as well: {len(strict)}",
    ]
    closed = all(checks.values())
    return ReplayReport("k3", records, census, checks, closed, notes)


def _k4_decomposition(r: int) -> tuple[int, int] | None:
    n = r**4 - 1
    roots = [d for d in power_divisor_roots(n, 4) if d >= 2]
    if not roots:
        return None
    a = roots[-1]
    return a, n // a**4


def _replay_k4_one(r: int) -> EliminationRecord:
    try:
        return _k4_record(r)
    except UndecidedError as exc:
        return _undecided_record(4, r, _k4_decomposition(r), exc)


def _k4_record(r: int) -> EliminationRecord:
    N = r**4 - 1
    dec = _k4_decomposition(r)
    H = height_bound(4, r)
    exp = expand_until(N, 4, lambda j, p, q, a_next: j >= 13 and p > H)
    quot = exp.quotients
    threshold = 9 * r**7 - 2
    succ = [quot[j + 1] for j in range(0, exp.stop_index, 2)]
    evidence = {
        "height_bound": H,
        "p_13": exp.convergents[13][0],
        "terms": len(quot),
        "max_even_successor": max(succ),
        "threshold": threshold,
        "lambda_hi_micro": math.ceil(_lambda_hi(4, N, 128) * 10**6),
    }
    if k4_tail_closed(r):
        return EliminationRecord(4, r, dec, Verdict.TAIL_BOUND, evidence)
    if max(succ) > threshold:
        return EliminationRecord(4, r, dec, Verdict.SURVIVED, evidence)
    return EliminationRecord(4, r, dec, Verdict.QUOTIENT_TOO_SMALL, evidence)


def replay_k4(
    r_lo: int = K4_RANGE[0],
    r_hi: int = K4_RANGE[1],
    threads: int | None = None,
    strict: bool = False,
) -> ReplayReport:
    """k = 4 for r in [r_lo, r_hi]; ``strict`` keeps only r with r**4 - 1 = a**4 b, a >= 2."""
    threads = default_threads() if threads is None else threads
    rs = list(range(r_lo, r_hi + 1))
    with_dec = [r for r in rs if _k4_decomposition(r) is not None]
    if strict:
        rs = with_dec
    records = _fan_out(_replay_k4_one, rs, threads)
    records.sort(key=lambda rec: (rec.k, rec.r))
    open_records = [rec for rec in records if rec.verdict is not Verdict.TAIL_BOUND]
    checks = {
        f"tail_closed_at_{r_hi}": _certified(k4_tail_closed, r_hi),
        "height_below_1e8": all(rec.evidence.get("height_bound", K4_HEIGHT_CAP) < K4_HEIGHT_CAP for rec in open_records),
        "p13_above_1e8": all(rec.evidence.get("p_13", 0) > K4_HEIGHT_CAP for rec in records),
        "p13_above_height": all(rec.evidence.get("p_13", 0) > rec.evidence.get("height_bound", 0) for rec in open_records),
        "all_eliminated": all(rec.verdict.eliminating for rec in records),
    }
    census = {
        "k4_r_values": len(records),
        "k4_with_decomposition": len(with_dec),
        "k4_tail_bound": sum(rec.verdict is Verdict.TAIL_BOUND for rec in records),
    }
    notes = ["all r in range checked; no a**4 | r**4 - 1 prefilter" if not strict else "strict mode: prefiltered"]
    return ReplayReport("k4", records, census, checks, all(checks.values()), notes)


def replay_primes(prime_cap: int = DEFAULT_PRIME_CAP, threads: int | None = None) -> ReplayReport:
    if prime_cap < 5:
        raise ValueError("prime cap must be >= 5; k = 3 is handled by replay_k3")
    threads = default_threads() if threads is None else threads
    primes = primes_between(5, prime_cap)
    verdicts = _fan_out(_prime_closed, primes, threads)
    checks = {f"prime_{p}": v for p, v in zip(primes, verdicts)}
    census = {"primes_checked": len(primes), "primes_closed": sum(verdicts)}
    notes = [
        "the closure for prime k >= 7 is uniform in k; the sweep is a spot-check",
    ]
    return ReplayReport("primes", [], census, checks, all(verdicts), notes)


def full_replay(prime_cap: int = DEFAULT_PRIME_CAP, threads: int | None = None) -> ReplayReport:
    primes = replay_primes(prime_cap, threads)
    k3 = replay_k3(threads=threads)
    k4 = replay_k4(threads=threads)
    records = sorted(k3.records + k4.records, key=lambda rec: (rec.k, rec.r))
    census = {**k3.census, **k4.census, **primes.census}
    checks = {}
    for sub in (k3, k4):
        checks.update({f"{sub.case}.{key}": v for key, v in sub.checks.items()})
    checks["primes.all_closed"] = primes.closed
    notes = k3.notes + k4.notes + primes.notes + [COMPOSITE_NOTE]
    closed = k3.closed and k4.closed and primes.closed
    return ReplayReport("all", records, census, checks, closed, notes)
