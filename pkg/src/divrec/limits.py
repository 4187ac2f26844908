"""Size caps shared across the package, and the error type for exceeding them.

Every counting path has a documented ceiling on the range it will process;
pushing past the ceiling raises :class:`RangeLimitError` instead of silently
grinding for hours. Argument-level misuse (modulus below 2, composite where a
prime is required, and so on) raises plain ``ValueError``, so callers and the
CLI can tell "bad input" apart from "input too large".
"""

import os

#: Largest N accepted by the floor-chain recursion engine and the O(log N)
#: counters built on it.
ENGINE_MAX_N = 10**12

#: Largest endpoint for any sieve-backed count or sum.
SIEVE_MAX_N = 10**9

#: Trial-division factorization cap (needs primes up to 10**6 only).
FACTORIZE_MAX_N = 10**12

#: Brute-force per-integer oracles stop here.
ORACLE_MAX_N = 10**7

#: Exact-rational totient-ratio sums keep a common denominator whose size
#: grows roughly linearly in the term count; capped to stay interactive.
EXACT_PHI_SUM_MAX_N = 10**5

#: Exhaustive window for the square-free splitting identity.
BROWN_CHECK_MAX_X = 10**6

#: Exhaustive window for the exact totient-ratio splitting identity (every
#: prefix sum is kept as a full-precision rational).
PHI_CLAIM_MAX_X = 10**4

#: Sieve segment length. Overridable through the environment; the value only
#: affects memory and speed, never any numeric result.
DEFAULT_SEGMENT_SIZE = int(os.environ.get("DIVREC_SEGMENT_SIZE", 1 << 20))


class RangeLimitError(ValueError):
    """An argument exceeded the documented size cap for its operation."""
