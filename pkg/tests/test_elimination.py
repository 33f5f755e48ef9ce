import random

import pytest

from powertriples.arith import iroot
from powertriples.bounds import height_bound
from powertriples.cf import expand
from powertriples.elimination import (
    K3_EXCEPTIONS,
    enumerate_k3_candidates,
    full_replay,
    k3_closed_form,
    replay_k3,
    replay_k4,
    replay_primes,
    verify_k3_exceptions,
    verify_k3_quotient_formula,
)
from powertriples.report import Verdict, strip_timestamp
from powertriples.tuples import extend_pair, verify_tuple


def naive_candidates(lo, hi):
    out = []
    for r in range(lo, hi + 1):
        n = r**3 - 1
        if any(n % a**3 == 0 for a in range(2, iroot(n, 3) + 1)):
            out.append(r)
    return out


def test_no_candidates_below_nine():
    assert enumerate_k3_candidates(2, 8) == []


def test_first_candidate():
    first = enumerate_k3_candidates(9, 9)
    assert len(first) == 1
    c = first[0]
    assert (c.r, c.a, c.b) == (9, 2, 91) and 8 * 91 == 9**3 - 1


def test_candidates_match_naive_scan():
    assert [c.r for c in enumerate_k3_candidates(2, 600)] == naive_candidates(2, 600)


def test_candidate_admissible_sets():
    for c in enumerate_k3_candidates(9, 3000):
        n = c.r**3 - 1
        assert list(c.admissible) == sorted(c.admissible)
        assert c.a == c.admissible[-1]
        assert all(n % a**3 == 0 for a in c.admissible)
        assert c.a**3 * c.b == n


def test_census_and_strict_reading():
    loose = enumerate_k3_candidates()
    strict = enumerate_k3_candidates(strict=True)
    assert len(loose) == 1892
    assert len(strict) == 1891
    gone = {c.r for c in loose} - {c.r for c in strict}
    assert gone == {18}
    assert 18**3 - 1 == 7**3 * 17


def test_enumerate_rejects_small_lo():
    with pytest.raises(ValueError):
        enumerate_k3_candidates(1, 5)


@pytest.mark.parametrize("r", [3, 5, 100])
def test_quotient_formula(r):
    assert verify_k3_quotient_formula(r)
    assert k3_closed_form(r)[2] == 3 * r * r - 2


def test_quotient_formula_rejects_r2():
    with pytest.raises(ValueError):
        verify_k3_quotient_formula(2)


def test_exception_records():
    records = verify_k3_exceptions()
    by_r = {rec.r: rec for rec in records}
    assert set(K3_EXCEPTIONS) <= set(by_r)
    assert all(rec.verdict is not Verdict.SURVIVED for rec in records)
    # 2 and 3 are below the candidate range, so they are not candidates
    assert by_r[2].verdict is Verdict.NOT_A_CANDIDATE
    assert by_r[9].evidence["j_min"] == 10 and by_r[9].evidence["a_9"] <= 10
    for rec in records:
        if rec.verdict is Verdict.QUOTIENT_TOO_SMALL:
            assert rec.evidence["q_j_min"] > 5 * rec.r**6


def test_divisibility_arithmetic_by_hand():
    # r = 9, a = 2: first even convergent is 8/1
    exp = expand(728, 3, 2)
    p, q = exp.convergents[0]
    assert (p, q) == (8, 1)
    D = 728 * q**3 - p**3
    assert D == 216
    dividend = 728 - 2**6
    assert dividend == 664 and dividend % D != 0


def test_k3_replay_small_window():
    rep = replay_k3(9, 200, threads=1)
    # a partial window is not closed: the tail bound only starts at 7973
    assert not rep.closed and not rep.checks["tail_closed_at_201"]
    assert rep.checks["all_eliminated"]
    assert rep.census["k3_candidates"] == len(naive_candidates(9, 200))
    for rec in rep.records:
        assert rec.verdict is Verdict.DIVISIBILITY_FAILED
        assert rec.evidence["height_bound"] == height_bound(3, rec.r)


def test_k3_replay_paranoid_no_odd_hits():
    rep = replay_k3(9, 400, threads=1, paranoid=True)
    assert rep.checks["all_eliminated"]
    assert all(rec.evidence["odd_positive_hits"] == 0 for rec in rep.records)


def test_k3_quotient_fallbacks(k3_report):
    fallbacks = sorted(rec.r for rec in k3_report.records if rec.evidence["quotient_fallbacks"])
    assert fallbacks == [10, 65, 4097]
    assert k3_report.census["k3_quotient_fallbacks"] == 3


def test_k3_even_divisors_positive(k3_report):
    # the last tested even convergent has n q**3 - p**3 > 0 (even convergents lie below the root)
    for rec in k3_report.records:
        assert rec.evidence["divisor"] > 0
        assert rec.evidence["p_j"] <= rec.evidence["height_bound"]


def test_k3_full_replay(k3_report):
    assert k3_report.closed
    assert k3_report.census["k3_eliminated"] == 1892
    assert k3_report.survivors == []
    assert k3_report.census["k3_max_height_bound_digits"] <= 32


def test_k4_records(k4_report):
    assert [rec.r for rec in k4_report.records] == list(range(5, 36))
    for rec in k4_report.records:
        ev = rec.evidence
        assert ev["threshold"] == 9 * rec.r**7 - 2
        assert ev["max_even_successor"] <= ev["threshold"]
        assert ev["p_13"] > 10**8
    hist = k4_report.verdict_histogram()
    assert hist == {"quotient_too_small": 30, "tail_bound": 1}
    assert k4_report.records[0].evidence["p_13"] == 124775075
    assert k4_report.closed


def test_k4_strict_filter():
    rep = replay_k4(threads=1, strict=True)
    for rec in rep.records:
        a, b = rec.decomposition
        assert a >= 2 and a**4 * b == rec.r**4 - 1


def test_replay_deterministic_across_threads():
    one = replay_k3(9, 1500, threads=1).to_dict()
    two = replay_k3(9, 1500, threads=2).to_dict()
    assert strip_timestamp(one) == strip_timestamp(two)
    assert strip_timestamp(replay_k4(5, 12, threads=1).to_dict()) == strip_timestamp(
        replay_k4(5, 12, threads=2).to_dict()
    )


def test_replayed_pairs_extend_nowhere_small(k3_report):
    # spot-check: candidate pairs {a**3, b} have no third element up to 10**6
    rng = random.Random(20261016)
    small = [rec for rec in k3_report.records if rec.decomposition[1] < 10**6]
    for rec in rng.sample(small, 20):
        a, b = rec.decomposition
        x = a**3
        assert verify_tuple([x, b], 3) is not None
        if x < b:
            assert extend_pair(x, b, 3, 10**6) == []


def test_primes_replay():
    rep = replay_primes(50, threads=1)
    assert rep.closed
    assert rep.census == {"primes_checked": 13, "primes_closed": 13}
    with pytest.raises(ValueError):
        replay_primes(3)
    with pytest.raises(ValueError):
        full_replay(prime_cap=3)
