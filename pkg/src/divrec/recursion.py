"""Engine for linear floor-division recursions.

The objects here tie two maps F, G on the nonnegative integers together by

    G(N) = alpha * F(N // m) + beta * G(N // m),    F(0) = G(0) = 0,

with an integer modulus m >= 2 and rational coefficients subject to
|beta| < m. Unrolling the recursion expands G(N)/N into per-level terms
whose i-th coefficient is alpha*beta**(i-1)/m**i against the ratio
F(N // m**i) / (N / m**i); when F(n)/n tends to a limit D, the value of
G(N)/N tends to D*alpha/(m - beta), and the geometric tail bound quantifies
how little the deep terms can matter.

All arithmetic is exact: values are ``fractions.Fraction`` throughout
(exported as :data:`Rational`), so every identity the engine claims can be
checked with ``==`` rather than with tolerances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from .limits import ENGINE_MAX_N, RangeLimitError

#: Exact rational scalar used for all engine arithmetic.
Rational = Fraction

#: Anything the engine coerces to a Rational.
RationalLike = Union[int, Fraction]


def _check_engine_n(N: int) -> None:
    if N < 0:
        raise ValueError(f"need N >= 0, got {N}")
    if N > ENGINE_MAX_N:
        raise RangeLimitError(f"N = {N} exceeds the engine cap {ENGINE_MAX_N}")


@dataclass(frozen=True)
class CountingFunction:
    """A map from nonnegative integers to exact rationals with fn(0) = 0.

    Instances wrap prefix counts (or prefix sums of nonnegative terms), so
    they are monotone nondecreasing in practice; the engine itself only
    relies on fn(0) = 0, which is checked at construction.
    """

    fn: Callable[[int], Fraction]
    description: str = ""

    def __post_init__(self) -> None:
        if self.fn(0) != 0:
            raise ValueError("counting functions must vanish at 0")

    def __call__(self, n: int) -> Fraction:
        return self.fn(n)


def identity_counts() -> CountingFunction:
    """The counting function F(n) = n (everything counts)."""
    return CountingFunction(lambda n: Fraction(n), "F(n) = n")


@dataclass(frozen=True)
class RecurrenceSpec:
    """Parameters of one recursion instance.

    Attributes:
        m: Integer modulus, at least 2.
        alpha: Weight on F(N // m).
        beta: Weight on G(N // m); must satisfy |beta| < m.
        D: Hypothesized limit of F(n)/n, used only by the predicted limit
            and the tail bound.
        F: The driving counting function.
    """

    m: int
    alpha: Fraction
    beta: Fraction
    D: Fraction
    F: CountingFunction

    def __post_init__(self) -> None:
        if self.m < 2:
            raise ValueError(f"need modulus m >= 2, got {self.m}")
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        object.__setattr__(self, "beta", Fraction(self.beta))
        object.__setattr__(self, "D", Fraction(self.D))
        if abs(self.beta) >= self.m:
            raise ValueError(f"need |beta| < m, got beta={self.beta}, m={self.m}")


def _floor_chain(N: int, m: int) -> list[int]:
    # [N, N//m, N//m**2, ...], stopping before 0
    chain = []
    v = N
    while v:
        chain.append(v)
        v //= m
    return chain


def evaluate_G(spec: RecurrenceSpec, N: int) -> Fraction:
    """Evaluate G(N) exactly by walking the floor-division chain bottom-up.

    The chain N, N//m, N//m**2, ... has at most log_m(N) + 1 distinct
    entries, so the cost is one F evaluation per level and no memoization
    is needed. G(0) = 0 by definition.
    """
    _check_engine_n(N)
    g = Fraction(0)
    for v in reversed(_floor_chain(N, spec.m)):
        g = spec.alpha * spec.F(v // spec.m) + spec.beta * g
    return g


@dataclass(frozen=True)
class ExpansionTerm:
    """One term of the expansion of G(N)/N.

    ``coefficient * ratio`` is the term's exact contribution; level terms
    carry coefficient alpha*beta**(index-1)/m**index against the ratio
    F(N // m**index) / (N / m**index), and the final remainder term
    (``remainder_flag`` set) carries beta**index/m**index against
    G(N // m**index) / (N / m**index).
    """

    index: int
    coefficient: Fraction
    ratio: Fraction
    remainder_flag: bool = False

    @property
    def value(self) -> Fraction:
        return self.coefficient * self.ratio


def expand_eq_star(spec: RecurrenceSpec, N: int, j: int) -> list[ExpansionTerm]:
    """Expand G(N)/N into j leading terms plus one remainder term.

    For every j >= 1 the values of the returned j+1 terms sum exactly to
    evaluate_G(spec, N) / N. Once m**j exceeds N the remainder ratio is
    G(0)/..., identically zero, and the leading terms alone carry the value.

    Args:
        spec: The recursion instance.
        N: Point of expansion, at least 1.
        j: Number of leading terms, at least 1.
    """
    _check_engine_n(N)
    if N < 1:
        raise ValueError("expansion needs N >= 1")
    if j < 1:
        raise ValueError(f"need j >= 1, got {j}")
    terms = []
    beta_pow = Fraction(1)  # beta**(i-1)
    m_pow = 1
    floor = N
    for i in range(1, j + 1):
        m_pow *= spec.m
        floor //= spec.m
        coefficient = spec.alpha * beta_pow / m_pow
        ratio = spec.F(floor) * m_pow / N
        terms.append(ExpansionTerm(i, coefficient, ratio))
        beta_pow *= spec.beta
    remainder_ratio = evaluate_G(spec, floor) * m_pow / N
    terms.append(ExpansionTerm(j, beta_pow / m_pow, remainder_ratio, True))
    return terms


def series_form(spec: RecurrenceSpec, N: int) -> Fraction:
    """Sum the finite series for G(N)/N; equals evaluate_G(spec, N) / N.

    Term i contributes alpha * beta**(i-1) * F(N // m**i) / N (the m**i in
    the coefficient cancels against the one in the ratio); the series is
    finite because F(N // m**i) vanishes once m**i > N.
    """
    _check_engine_n(N)
    if N < 1:
        raise ValueError("series form needs N >= 1")
    total = Fraction(0)
    weight = spec.alpha  # alpha * beta**(i-1)
    floor = N // spec.m
    while True:
        total += weight * spec.F(floor)
        if floor == 0:
            break
        weight *= spec.beta
        floor //= spec.m
    return total / N


def predicted_limit(spec: RecurrenceSpec) -> Fraction:
    """The limit D*alpha/(m - beta) of G(N)/N when F(n)/n tends to D.

    Well defined because RecurrenceSpec enforces |beta| < m.
    """
    return spec.D * spec.alpha / (spec.m - spec.beta)


def tail_bound(spec: RecurrenceSpec, k: int, B: RationalLike) -> Fraction:
    """Exact geometric bound on the weight of series terms past index k.

    Equals B * sum_{i > k} |alpha * beta**(i-1) / m**i|, i.e.

        B * |alpha| * |beta|**k / (m**k * (m - |beta|)),

    where B must be a caller-supplied uniform bound on the deviation
    |F(N // m**i) / (N / m**i) - D| over the levels being discarded.
    """
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    bound = Fraction(B)
    if bound < 0:
        raise ValueError(f"deviation bound must be nonnegative, got {bound}")
    ab = abs(spec.beta)
    return bound * abs(spec.alpha) * ab**k / (spec.m**k * (spec.m - ab))
