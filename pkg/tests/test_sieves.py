"""Sieve correctness against trial-division oracles and algebraic identities."""

import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divrec.limits import SIEVE_MAX_N, RangeLimitError
from divrec.sieves import (
    divisibility_exponent,
    factorize,
    is_prime,
    iter_sieve_tables,
    sieve_segment,
)


def phi_oracle(n: int) -> int:
    # totient by trial division, independent of the sieve
    result = n
    d = 2
    while d * d <= n:
        if n % d == 0:
            result -= result // d
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        result -= result // n
    return result


def squarefree_oracle(n: int) -> bool:
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        d += 1
    return True


PHI_FIRST_TEN = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
SQUAREFREE_UP_TO_TEN = {1, 2, 3, 5, 6, 7, 10}


def test_first_ten():
    table = sieve_segment(1, 10)
    assert table.phi.tolist() == PHI_FIRST_TEN
    assert {n for n in range(1, 11) if table.is_squarefree(n)} == SQUAREFREE_UP_TO_TEN


def test_single_entry_segments():
    one = sieve_segment(1, 1)
    assert one.phi_of(1) == 1 and one.is_squarefree(1)
    big = sieve_segment(10**6, 10**6)
    assert big.phi_of(10**6) == 400000
    assert not big.is_squarefree(10**6)


def test_segment_against_oracle():
    table = sieve_segment(99_900, 100_100)
    for n in range(99_900, 100_101):
        assert table.phi_of(n) == phi_oracle(n)
        assert table.is_squarefree(n) == squarefree_oracle(n)


def test_random_points_against_oracle():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 10**6)
        table = sieve_segment(n, n)
        assert table.phi_of(n) == phi_oracle(n)
        assert table.is_squarefree(n) == squarefree_oracle(n)


def test_totient_divisor_sum_identity():
    # sum of phi(d) over d | n equals n
    limit = 10**4
    table = sieve_segment(1, limit)
    sums = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        sums[d::d] += table.phi_of(d)
    assert np.array_equal(sums[1:], np.arange(1, limit + 1))


def test_partition_independence():
    whole = sieve_segment(1, 30_000, segment_size=30_000)
    for size in (997, 4096, 30_000):
        phis = []
        flags = []
        for t in iter_sieve_tables(1, 30_000, segment_size=size):
            phis.append(t.phi)
            flags.append(t.squarefree)
        assert np.array_equal(np.concatenate(phis), whole.phi)
        assert np.array_equal(np.concatenate(flags), whole.squarefree)


def test_iter_covers_range_exactly():
    spans = [(t.lo, t.hi) for t in iter_sieve_tables(5, 23, segment_size=7)]
    assert spans == [(5, 11), (12, 18), (19, 23)]


def test_threads_do_not_change_tables():
    seq = list(iter_sieve_tables(1, 50_000, segment_size=9973))
    par = list(iter_sieve_tables(1, 50_000, segment_size=9973, threads=4))
    assert [(t.lo, t.hi) for t in seq] == [(t.lo, t.hi) for t in par]
    for a, b in zip(seq, par):
        assert np.array_equal(a.phi, b.phi)
        assert np.array_equal(a.squarefree, b.squarefree)


def test_segment_argument_errors():
    with pytest.raises(ValueError):
        sieve_segment(0, 10)
    with pytest.raises(ValueError):
        sieve_segment(10, 5)
    with pytest.raises(RangeLimitError):
        sieve_segment(1, SIEVE_MAX_N + 1, segment_size=10**7)
    with pytest.raises(RangeLimitError):
        sieve_segment(1, 2 * 10**6)  # longer than the default segment
    with pytest.raises(ValueError):
        list(iter_sieve_tables(3, 2))
    table = sieve_segment(10, 20)
    with pytest.raises(ValueError):
        table.phi_of(9)


def test_tables_are_read_only():
    table = sieve_segment(1, 10)
    with pytest.raises(ValueError):
        table.phi[0] = 99


@settings(max_examples=100)
@given(
    lo=st.integers(min_value=1, max_value=10**6),
    length=st.integers(min_value=0, max_value=300),
    cut=st.integers(min_value=0, max_value=300),
)
def test_splitting_a_segment_changes_nothing(lo, length, cut):
    hi = lo + length
    whole = sieve_segment(lo, hi)
    mid = lo + min(cut, length)
    parts = [sieve_segment(lo, mid)]
    if mid < hi:
        parts.append(sieve_segment(mid + 1, hi))
    assert np.array_equal(np.concatenate([p.phi for p in parts]), whole.phi)
    assert np.array_equal(
        np.concatenate([p.squarefree for p in parts]), whole.squarefree
    )


def test_factorize_known_values():
    assert factorize(1) == []
    assert factorize(2) == [(2, 1)]
    assert factorize(200) == [(2, 3), (5, 2)]
    assert factorize(12348) == [(2, 2), (3, 2), (7, 3)]
    assert factorize(999_999_937) == [(999_999_937, 1)]  # prime above sieve base


def test_factorize_round_trip():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(1, 10**9)
        product = 1
        last_p = 0
        for p, e in factorize(n):
            assert p > last_p and e >= 1
            assert is_prime(p)
            product *= p**e
            last_p = p
        assert product == n


def test_factorize_large_semiprime():
    p, q = 1_000_003, 999_983
    assert factorize(p * q) == [(q, 1), (p, 1)]


def test_factorize_errors():
    with pytest.raises(ValueError):
        factorize(0)
    with pytest.raises(RangeLimitError):
        factorize(10**12 + 1)


def test_divisibility_exponent():
    assert divisibility_exponent(8, 2) == 3
    assert divisibility_exponent(7, 2) == 0
    assert divisibility_exponent(144, 12) == 2
    assert divisibility_exponent(1, 5) == 0
    with pytest.raises(ValueError):
        divisibility_exponent(0, 2)
    with pytest.raises(ValueError):
        divisibility_exponent(10, 1)


@settings(max_examples=100)
@given(
    n=st.integers(min_value=1, max_value=10**6),
    m=st.integers(min_value=2, max_value=50),
)
def test_divisibility_exponent_is_maximal(n, m):
    t = divisibility_exponent(n, m)
    assert n % m**t == 0
    assert n % m ** (t + 1) != 0


def test_phi_matches_factorization():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(2, 10**6)
        expected = n
        for p, _ in factorize(n):
            expected = expected // p * (p - 1)
        assert sieve_segment(n, n).phi_of(n) == expected
