import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from powertriples.arith import (
    binomial,
    factorize,
    iroot,
    is_prime,
    perfect_power_root,
    power_divisor_roots,
    root_sign,
)


@pytest.mark.parametrize(
    "n, k, expected",
    [(343, 3, 7), (344, 3, 7), (10**32, 4, 10**8), (0, 5, 0), (1, 9, 1), (2**64 - 1, 2, 2**32 - 1)],
)
def test_iroot_examples(n, k, expected):
    assert iroot(n, k) == expected


def test_iroot_rejects_small_index():
    with pytest.raises(ValueError):
        iroot(10, 1)
    with pytest.raises(ValueError):
        perfect_power_root(10, 0)


@settings(max_examples=500)
@given(st.integers(min_value=0, max_value=10**30), st.integers(min_value=2, max_value=40))
def test_iroot_brackets(n, k):
    m = iroot(n, k)
    assert m**k <= n < (m + 1) ** k


@settings(max_examples=200)
@given(st.integers(min_value=0, max_value=2**4000), st.integers(min_value=3, max_value=1000))
def test_iroot_brackets_huge(n, k):
    m = iroot(n, k)
    assert m**k <= n < (m + 1) ** k


def test_perfect_power_examples():
    assert perfect_power_root(343, 3) == 7
    assert perfect_power_root(2 * 25326 + 1, 3) == 37
    assert perfect_power_root(10, 3) is None


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=10**25), st.integers(min_value=2, max_value=12))
def test_perfect_power_iff_exact_root(n, k):
    m = perfect_power_root(n, k)
    assert (m is not None) == (iroot(n, k) ** k == n)
    assert perfect_power_root(n**k, k) == n


def _pascal(rows):
    tri = [[1]]
    for _ in range(rows):
        prev = tri[-1]
        tri.append([1] + [a + b for a, b in zip(prev, prev[1:])] + [1])
    return tri


def test_binomial_against_pascal():
    tri = _pascal(30)
    assert binomial(10, 5) == tri[10][5] == 252
    for n in range(31):
        for i in range(n + 3):
            assert binomial(n, i) == (tri[n][i] if i <= n else 0)
    assert binomial(3, 2) == 3
    assert binomial(4, 0) == 1


@settings(max_examples=300)
@given(
    st.integers(min_value=3, max_value=20),
    st.integers(min_value=2, max_value=10**6),
    st.integers(min_value=1, max_value=10**6),
)
def test_difference_of_powers_exceeds_linear(k, v, gap):
    u = v + gap
    assert u**k - v**k == (u - v) * sum(u ** (k - 1 - i) * v**i for i in range(k))
    assert u**k - v**k > k * (u - v)


def test_factorize_and_power_divisors():
    assert factorize(728) == {2: 3, 7: 1, 13: 1}
    assert power_divisor_roots(728, 3) == [1, 2]
    assert power_divisor_roots(2**6 * 3**3 * 5, 3) == [1, 2, 3, 4, 6, 12]
    assert [p for p in range(30) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_root_sign():
    assert root_sign(2, 2, 1, 1) == 1
    assert root_sign(2, 2, 3, 2) == -1
    assert root_sign(8, 3, 2, 1) == 0
