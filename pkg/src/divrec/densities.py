"""Counters, identity checkers, and closed-form densities for three families.

The families share one shape: a counting function F with known density drives
a recursion G(N) = alpha*F(N // m) + beta*G(N // m), so G inherits the
density D*alpha/(m - beta). Concretely:

* integers whose largest m-power divisor has an odd exponent
  (G(n) = n//m - G(n//m), density 1/(m+1));
* square-free integers divisible by a fixed square-free t, where the counts
  for t and for p*t split as F(x//p) = G(x//p) + G(x) for any new prime p
  (density 6/pi**2 * prod 1/(p_i + 1));
* totient-ratio sums over multiples of m, whose prefix sums satisfy an exact
  splitting identity level by level (density 6/(pi**2 m) * prod p_j/(p_j+1)).

Each family pairs a brute-force or sieve-backed counter with the exact
identity behind it and the closed-form limit, so empirical ratios, algebra,
and predictions can be cross-checked independently.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .accumulators import ExactRatioSum, NeumaierSum
from .limits import (
    BROWN_CHECK_MAX_X,
    ENGINE_MAX_N,
    EXACT_PHI_SUM_MAX_N,
    ORACLE_MAX_N,
    PHI_CLAIM_MAX_X,
    SIEVE_MAX_N,
    RangeLimitError,
)
from .recursion import CountingFunction
from .sieves import divisibility_exponent, factorize, is_prime, iter_sieve_tables

#: pi**2 to 20 significant digits (rounds to the nearest double).
PI_SQUARED = 9.8696044010893586188


@dataclass(frozen=True)
class DensityPrediction:
    """A closed-form density split into its rational part and pi power.

    The predicted value is ``exact_factor * (pi**2)**pi_squared_power`` with
    ``pi_squared_power`` either 0 (fully rational) or -1 (one reciprocal
    pi**2). ``float_value`` is that product rounded once to a double, pi**2
    being represented by :data:`PI_SQUARED`.
    """

    exact_factor: Fraction
    pi_squared_power: int
    float_value: float


def _prediction(exact_factor: Fraction, pi_squared_power: int) -> DensityPrediction:
    if pi_squared_power == 0:
        value = float(exact_factor)
    else:
        value = float(exact_factor * Fraction(PI_SQUARED) ** pi_squared_power)
    return DensityPrediction(exact_factor, pi_squared_power, value)


def _check_modulus(m: int) -> None:
    if m < 2:
        raise ValueError(f"need modulus m >= 2, got {m}")


def _check_count_range(N: int, cap: int) -> None:
    if N < 0:
        raise ValueError(f"need N >= 0, got {N}")
    if N > cap:
        raise RangeLimitError(f"N = {N} exceeds the cap {cap} for this operation")


# ---------------------------------------------------------------------------
# family 1: largest m-power divisor has odd exponent


def count_oddly_divisible_oracle(m: int, N: int) -> int:
    """Count 1 <= i <= N whose m-adic valuation is odd, by direct inspection.

    Quadratic-ish and deliberately independent of the recursion: every
    multiple of m has its exponent measured by repeated division.
    """
    _check_modulus(m)
    _check_count_range(N, ORACLE_MAX_N)
    count = 0
    for i in range(m, N + 1, m):
        if divisibility_exponent(i, m) % 2 == 1:
            count += 1
    return count


def count_oddly_divisible_fast(m: int, N: int) -> int:
    """O(log N) count of the same set via G(n) = n//m - G(n//m).

    Multiples of m not divisible by m**2 are counted by n//m - n//m**2;
    recursing on n//m flips parity, which the subtraction implements.
    """
    _check_modulus(m)
    _check_count_range(N, ENGINE_MAX_N)
    count = 0
    chain = []
    v = N
    while v:
        chain.append(v)
        v //= m
    for v in reversed(chain):
        count = v // m - count
    return count


def predicted_density_oddly(m: int) -> DensityPrediction:
    """Density 1/(m+1) of integers whose m-exponent is odd."""
    _check_modulus(m)
    return _prediction(Fraction(1, m + 1), 0)


# ---------------------------------------------------------------------------
# family 2: square-free multiples of a square-free t


def _squarefree_prime_factors(t: int) -> list[int]:
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    factors = factorize(t)
    if any(e > 1 for _, e in factors):
        raise ValueError(f"t = {t} is not square-free")
    return [p for p, _ in factors]


def count_squarefree_multiples(t: int, N: int, *, threads: int = 1) -> int:
    """Count square-free r <= N with t | r, for square-free t (sieve-backed)."""
    _squarefree_prime_factors(t)
    _check_count_range(N, SIEVE_MAX_N)
    if N < t:
        return 0
    total = 0
    for table in iter_sieve_tables(1, N, threads=threads):
        total += _count_squarefree_multiples_in_table(table, t)
    return total


def _count_squarefree_multiples_in_table(table, t: int, upto: int | None = None) -> int:
    hi = table.hi if upto is None else min(upto, table.hi)
    first = -(table.lo // -t) * t
    if first > hi:
        return 0
    return int(table.squarefree[first - table.lo : hi - table.lo + 1 : t].sum())


def _squarefree_flags(X: int) -> np.ndarray:
    # bool array over [0, X]; index 0 unused
    flags = np.zeros(X + 1, dtype=bool)
    for table in iter_sieve_tables(1, X):
        flags[table.lo : table.hi + 1] = table.squarefree
    return flags


def brown_identity_first_failure(t: int, p: int, X: int) -> int | None:
    """First x <= X violating F(x//p) = G(x//p) + G(x), or None.

    F counts square-free multiples of t, G of p*t; p must be a prime not
    dividing t. The identity holds for all x, so None is the expected
    outcome; the first counterexample is returned for reporting if a sieve
    or counting bug ever breaks it.
    """
    _squarefree_prime_factors(t)
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if t % p == 0:
        raise ValueError(f"p = {p} already divides t = {t}")
    if X < 1:
        raise ValueError(f"need X >= 1, got {X}")
    if X > BROWN_CHECK_MAX_X:
        raise RangeLimitError(f"X = {X} exceeds the cap {BROWN_CHECK_MAX_X}")

    flags = _squarefree_flags(X)
    f_pref = _prefix_counts(flags, t)
    g_pref = _prefix_counts(flags, t * p)
    xs = np.arange(1, X + 1)
    lhs = f_pref[xs // p]
    rhs = g_pref[xs // p] + g_pref[xs]
    bad = np.nonzero(lhs != rhs)[0]
    return int(xs[bad[0]]) if bad.size else None


def _prefix_counts(flags: np.ndarray, step: int) -> np.ndarray:
    marked = np.zeros(flags.shape, dtype=np.int64)
    if step < flags.size:
        marked[step::step] = flags[step::step]
    return np.cumsum(marked)


def brown_identity_check(t: int, p: int, X: int) -> bool:
    """True iff the square-free splitting identity holds for every x <= X."""
    return brown_identity_first_failure(t, p, X) is None


def predicted_density_squarefree(primes: Sequence[int]) -> DensityPrediction:
    """Density (6/pi**2) * prod 1/(p+1) of square-free multiples of prod p.

    ``primes`` must be distinct primes; the empty sequence gives the density
    of the square-free numbers themselves.
    """
    ps = list(primes)
    if len(set(ps)) != len(ps):
        raise ValueError(f"primes must be distinct, got {ps}")
    factor = Fraction(6)
    for p in ps:
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        factor /= p + 1
    return _prediction(factor, -1)


def squarefree_multiple_counts(t: int, limit: int) -> CountingFunction:
    """Prefix-table-backed counting function n -> #{square-free r <= n: t | r}.

    Valid for 0 <= n <= limit; the whole table is sieved up front, so build
    cost is one pass and each call is O(1).
    """
    _squarefree_prime_factors(t)
    _check_count_range(limit, SIEVE_MAX_N)
    if limit < 1:
        raise ValueError("need limit >= 1")
    pref = _prefix_counts(_squarefree_flags(limit), t)

    def fn(n: int) -> Fraction:
        if n < 0 or n > limit:
            raise ValueError(f"n = {n} outside the prepared range [0, {limit}]")
        return Fraction(int(pref[n]))

    return CountingFunction(fn, f"square-free multiples of {t}")


# ---------------------------------------------------------------------------
# family 3: totient-ratio sums over multiples of m


def _phi_ratio_segments(
    m: int, N: int, threads: int
) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    # ascending (phi values, n values) pairs over multiples of m up to N
    for table in iter_sieve_tables(1, N, threads=threads):
        first = -(table.lo // -m) * m
        if first > table.hi:
            continue
        s = first - table.lo
        yield table.phi[s::m], np.arange(first, table.hi + 1, m, dtype=np.int64)


def phi_ratio_sum(m: int, N: int, mode: str = "float", *, threads: int = 1):
    """Sum of phi(n)/n over multiples n of m with n <= N.

    Args:
        m: Modulus, at least 1 (m = 1 sums over every integer).
        N: Upper end of the range.
        mode: "float" for compensated double summation (cap 1e9), "exact"
            for a full-precision Fraction (cap 1e5).
        threads: Worker threads for sieving; never affects the result.

    Returns:
        float in "float" mode, Fraction in "exact" mode. Terms are always
        accumulated in ascending n, so results are reproducible bit for bit.
    """
    if m < 1:
        raise ValueError(f"need modulus m >= 1, got {m}")
    if mode == "exact":
        _check_count_range(N, EXACT_PHI_SUM_MAX_N)
        if N < m:
            return Fraction(0)
        acc = ExactRatioSum()
        for phis, ns in _phi_ratio_segments(m, N, threads):
            for ph, n in zip(phis.tolist(), ns.tolist()):
                acc.add(ph, n)
        return acc.value
    if mode == "float":
        _check_count_range(N, SIEVE_MAX_N)
        if N < m:
            return 0.0
        acc = NeumaierSum()
        for phis, ns in _phi_ratio_segments(m, N, threads):
            acc.extend((phis / ns).tolist())
        return acc.value
    raise ValueError(f"unknown mode {mode!r}, expected 'float' or 'exact'")


def _phi_ratio_prefix_list(step: int, limit: int) -> list[Fraction]:
    # entry k = exact sum over the first k multiples of step (k*step <= limit)
    values = [Fraction(0)]
    if limit >= step:
        acc = ExactRatioSum()
        for phis, ns in _phi_ratio_segments(step, limit, 1):
            for ph, n in zip(phis.tolist(), ns.tolist()):
                acc.add(ph, n)
                values.append(acc.value)
    return values


def phi_claim_first_failure(t: int, p: int, j: int, X: int) -> int | None:
    """First N <= X violating the exact totient-ratio splitting, or None.

    With S_d(x) the sum of phi(n)/n over multiples n of d up to x, the
    identity under test is, for prime p not dividing t and j >= 1:

        S_{t*p**j}(N) = ((p-1)/p) * S_t(N // p**j) + (1/p) * S_{t*p}(N // p**j)

    checked in full-precision rational arithmetic for every N up to X.
    """
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")
    if t % p == 0:
        raise ValueError(f"p = {p} already divides t = {t}")
    if j < 1:
        raise ValueError(f"need j >= 1, got {j}")
    if X < 1:
        raise ValueError(f"need X >= 1, got {X}")
    if X > PHI_CLAIM_MAX_X:
        raise RangeLimitError(f"X = {X} exceeds the cap {PHI_CLAIM_MAX_X}")

    pj = p**j
    lhs_pref = _phi_ratio_prefix_list(t * pj, X)
    lim = X // pj
    f_pref = _phi_ratio_prefix_list(t, lim)
    g_pref = _phi_ratio_prefix_list(t * p, lim)
    w_f = Fraction(p - 1, p)
    w_g = Fraction(1, p)

    rhs = Fraction(0)
    k_prev = -1
    for N in range(1, X + 1):
        k = N // pj
        if k != k_prev:
            rhs = w_f * f_pref[k // t] + w_g * g_pref[k // (t * p)]
            k_prev = k
        if lhs_pref[N // (t * pj)] != rhs:
            return N
    return None


def phi_claim_identity_check(t: int, p: int, j: int, X: int) -> bool:
    """True iff the totient-ratio splitting identity holds for every N <= X."""
    return phi_claim_first_failure(t, p, j, X) is None


def predicted_phi_density(m: int) -> DensityPrediction:
    """Limit (6/(pi**2 m)) * prod p/(p+1) of the ratio sum over N.

    The product runs over the distinct primes p dividing m; m = 1 gives the
    classical 6/pi**2.
    """
    if m < 1:
        raise ValueError(f"need modulus m >= 1, got {m}")
    factor = Fraction(6, m)
    for p, _ in factorize(m):
        factor *= Fraction(p, p + 1)
    return _prediction(factor, -1)


def phi_ratio_counts(m: int, limit: int) -> CountingFunction:
    """Prefix-backed exact map n -> sum of phi(k)/k over multiples k of m, k <= n.

    Valid for 0 <= n <= limit (limit capped like exact-mode sums); built once,
    O(1) per call. Useful as the F of a recursion instance.
    """
    if m < 1:
        raise ValueError(f"need modulus m >= 1, got {m}")
    _check_count_range(limit, EXACT_PHI_SUM_MAX_N)
    if limit < 1:
        raise ValueError("need limit >= 1")
    values = _phi_ratio_prefix_list(m, limit)

    def fn(n: int) -> Fraction:
        if n < 0 or n > limit:
            raise ValueError(f"n = {n} outside the prepared range [0, {limit}]")
        return values[n // m]

    return CountingFunction(fn, f"totient-ratio sum over multiples of {m}")
