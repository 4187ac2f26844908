"""Identity verification suites with first-counterexample reporting.

Each suite re-derives one of the library's exact identities over an explicit
window: randomized recursion instances for the engine algebra, exhaustive
windows for the three density families. A suite returns the number of checks
performed and a list of human-readable failure descriptions (empty on
success); the CLI maps failures to a nonzero exit so the suites can gate
automation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import densities, recursion
from .sieves import divisibility_exponent


@dataclass(frozen=True)
class SuiteResult:
    name: str
    checks: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        if self.ok:
            return f"{self.name}: pass ({self.checks} checks)"
        return (
            f"{self.name}: FAIL ({len(self.failures)} of {self.checks} checks); "
            f"first: {self.failures[0]}"
        )


def _sample_counting_functions() -> list[recursion.CountingFunction]:
    return [
        recursion.identity_counts(),
        recursion.CountingFunction(lambda n: Fraction(3 * n, 2), "F(n) = 3n/2"),
        recursion.CountingFunction(lambda n: Fraction(n // 3), "F(n) = n//3"),
        recursion.CountingFunction(lambda n: Fraction(n) * n, "F(n) = n**2"),
    ]


def run_lemma_suite(
    count: int = 1000, seed: int = 0, max_j: int = 20
) -> SuiteResult:
    """Random recursion instances: direct evaluation vs series form vs the
    j-term expansion, all compared with exact equality.

    Each instance draws m in [2, 10], rational alpha and beta with |beta| < m,
    one of several driving functions, and an N up to 1e9; the expansion is
    telescoped for every j up to max_j.
    """
    rng = random.Random(seed)
    fns = _sample_counting_functions()
    failures: list[str] = []
    checks = 0
    for _ in range(count):
        m = rng.randint(2, 10)
        alpha = Fraction(rng.randint(-8, 8), rng.randint(1, 8))
        beta = Fraction(rng.randint(-(8 * m - 1), 8 * m - 1), 8)
        D = Fraction(rng.randint(-4, 4), rng.randint(1, 4))
        F = rng.choice(fns)
        spec = recursion.RecurrenceSpec(m, alpha, beta, D, F)
        N = rng.choice(
            (rng.randint(1, 100), rng.randint(1, 10**4), rng.randint(1, 10**9))
        )
        label = f"(m={m}, alpha={alpha}, beta={beta}, F='{F.description}'), N={N}"
        g = recursion.evaluate_G(spec, N)
        checks += 1
        if recursion.series_form(spec, N) * N != g:
            failures.append(f"series form != G(N)/N at {label}")
        for j in range(1, max_j + 1):
            checks += 1
            terms = recursion.expand_eq_star(spec, N, j)
            total = sum(t.value for t in terms)
            if total * N != g:
                failures.append(f"expansion with j={j} != G(N)/N at {label}")
                break
            if m**j > N and terms[-1].ratio != 0:
                failures.append(f"nonzero remainder past the chain at {label}, j={j}")
                break
    return SuiteResult("lemma", checks, failures)


def run_app1_suite(
    ms: Sequence[int] = (2, 3, 5, 10), max_n: int = 10**4
) -> SuiteResult:
    """Oracle vs fast odd-exponent counts, plus the halving recursion itself.

    For each modulus the brute-force oracle builds the full count table up to
    max_n; the fast counter must match at every n, and the table must satisfy
    G(n) = n//m - G(n//m) throughout.
    """
    failures: list[str] = []
    checks = 0
    for m in ms:
        flags = np.zeros(max_n + 1, dtype=np.int64)
        for i in range(m, max_n + 1, m):
            flags[i] = divisibility_exponent(i, m) % 2
        counts = np.cumsum(flags)
        checks += 1
        if densities.count_oddly_divisible_oracle(m, max_n) != int(counts[max_n]):
            failures.append(f"oracle disagrees with its own flag table at m={m}")
        ns = np.arange(1, max_n + 1)
        checks += max_n
        bad = np.nonzero(counts[ns] != (ns // m - counts[ns // m]))[0]
        if bad.size:
            n = int(ns[bad[0]])
            failures.append(f"G(n) = n//m - G(n//m) fails at m={m}, n={n}")
        for n in range(1, max_n + 1):
            checks += 1
            if densities.count_oddly_divisible_fast(m, n) != int(counts[n]):
                failures.append(f"fast count != oracle at m={m}, n={n}")
                break
    return SuiteResult("app1", checks, failures)


def run_brown_suite(
    pairs: Sequence[tuple[int, int]] = ((1, 2), (1, 3), (2, 3), (3, 2), (6, 5), (15, 2)),
    max_x: int = 10**4,
) -> SuiteResult:
    """Exhaustive square-free splitting identity over several (t, p) pairs."""
    failures: list[str] = []
    checks = 0
    for t, p in pairs:
        checks += max_x
        x = densities.brown_identity_first_failure(t, p, max_x)
        if x is not None:
            failures.append(f"square-free splitting fails at t={t}, p={p}, x={x}")
    return SuiteResult("brown", checks, failures)


def run_phi_claim_suite(
    triples: Sequence[tuple[int, int, int]] = (
        (1, 2, 1),
        (1, 2, 2),
        (1, 3, 1),
        (3, 5, 1),
        (3, 5, 2),
        (5, 2, 3),
    ),
    max_n: int = 10**3,
) -> SuiteResult:
    """Exhaustive exact totient-ratio splitting over several (t, p, j) triples."""
    failures: list[str] = []
    checks = 0
    for t, p, j in triples:
        checks += max_n
        n = densities.phi_claim_first_failure(t, p, j, max_n)
        if n is not None:
            failures.append(
                f"totient-ratio splitting fails at t={t}, p={p}, j={j}, N={n}"
            )
    return SuiteResult("phi-claim", checks, failures)
