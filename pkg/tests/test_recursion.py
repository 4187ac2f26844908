"""Engine algebra: exact agreement between evaluation, expansion, and series."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from divrec.limits import RangeLimitError
from divrec.recursion import (
    CountingFunction,
    RecurrenceSpec,
    evaluate_G,
    expand_eq_star,
    identity_counts,
    predicted_limit,
    series_form,
    tail_bound,
)

HALVING = RecurrenceSpec(2, 1, -1, Fraction(1), identity_counts())


def halving_oracle(n: int) -> int:
    # direct enumeration of {i <= n: largest power of 2 dividing i is odd}
    count = 0
    for i in range(2, n + 1, 2):
        t = 0
        while i % 2**(t + 1) == 0:
            t += 1
        count += t % 2
    return count


def test_evaluate_matches_enumeration():
    for n in (0, 1, 2, 10, 37, 64, 1000):
        assert evaluate_G(HALVING, n) == halving_oracle(n)


def test_evaluate_known_values():
    assert evaluate_G(HALVING, 10) == 4  # {2, 6, 8, 10}
    assert evaluate_G(HALVING, 0) == 0


def test_alpha_zero_kills_everything():
    spec = RecurrenceSpec(2, 0, Fraction(1, 2), Fraction(1), identity_counts())
    assert evaluate_G(spec, 1000) == 0


def test_evaluate_range_cap():
    assert evaluate_G(HALVING, 10**12) > 0
    with pytest.raises(RangeLimitError):
        evaluate_G(HALVING, 10**12 + 1)
    with pytest.raises(ValueError):
        evaluate_G(HALVING, -1)


def test_expansion_one_level_frozen():
    # m=2, alpha=1, beta=-1, F(n)=n, N=10: (1/2)*(F(5)/5) + (-1/2)*(G(5)/5)
    lead, rem = expand_eq_star(HALVING, 10, 1)
    assert (lead.coefficient, lead.ratio, lead.remainder_flag) == (
        Fraction(1, 2),
        Fraction(1),
        False,
    )
    assert (rem.coefficient, rem.remainder_flag) == (Fraction(-1, 2), True)
    assert rem.ratio == Fraction(evaluate_G(HALVING, 5), 1) / Fraction(5)
    total = lead.value + rem.value
    assert total == Fraction(2, 5) == Fraction(evaluate_G(HALVING, 10), 10)


def test_expansion_telescopes_exactly():
    spec = RecurrenceSpec(
        3, Fraction(2, 3), Fraction(1, 3), Fraction(1), identity_counts()
    )
    g = evaluate_G(spec, 27)
    for j in range(1, 8):
        terms = expand_eq_star(spec, 27, j)
        assert len(terms) == j + 1
        assert sum(t.value for t in terms) * 27 == g
        assert [t.remainder_flag for t in terms] == [False] * j + [True]


def test_expansion_remainder_vanishes_past_the_chain():
    terms = expand_eq_star(HALVING, 10, 6)  # 2**6 > 10
    assert terms[-1].ratio == 0
    assert sum(t.value for t in terms) == Fraction(2, 5)


def test_expansion_argument_errors():
    with pytest.raises(ValueError):
        expand_eq_star(HALVING, 0, 1)
    with pytest.raises(ValueError):
        expand_eq_star(HALVING, 10, 0)


def test_series_form_known_values():
    assert series_form(HALVING, 10) == Fraction(2, 5)
    assert series_form(HALVING, 1) == 0
    spec = RecurrenceSpec(
        5, Fraction(4, 5), Fraction(1, 5), Fraction(1), identity_counts()
    )
    assert series_form(spec, 625) * 625 == evaluate_G(spec, 625)


def test_predicted_limit_known_values():
    assert predicted_limit(HALVING) == Fraction(1, 3)
    spec = RecurrenceSpec(
        3, Fraction(2, 3), Fraction(1, 3), Fraction(1), identity_counts()
    )
    assert predicted_limit(spec) == Fraction(1, 4)
    zero = RecurrenceSpec(2, 0, Fraction(1, 2), Fraction(1), identity_counts())
    assert predicted_limit(zero) == 0


def test_tail_bound_frozen_values():
    spec = RecurrenceSpec(
        5, Fraction(4, 5), Fraction(1, 5), Fraction(1), identity_counts()
    )
    assert tail_bound(spec, 3, 2) == Fraction(1, 46875)
    assert tail_bound(HALVING, 10, 1) == Fraction(1, 1024)
    assert tail_bound(HALVING, 5, 0) == 0


def test_tail_bound_is_the_geometric_tail():
    spec = RecurrenceSpec(
        5, Fraction(4, 5), Fraction(1, 5), Fraction(1), identity_counts()
    )
    for k in (1, 2, 3, 6):
        partial = sum(
            abs(spec.alpha * spec.beta ** (i - 1) / spec.m**i)
            for i in range(k + 1, k + 60)
        )
        exact = tail_bound(spec, k, 1)
        assert 0 < exact - partial < Fraction(1, 10**30)
        # one more level scales the tail by exactly |beta|/m
        assert tail_bound(spec, k + 1, 1) == exact * abs(spec.beta) / spec.m


def test_tail_bound_argument_errors():
    with pytest.raises(ValueError):
        tail_bound(HALVING, 0, 1)
    with pytest.raises(ValueError):
        tail_bound(HALVING, 1, -1)


def test_spec_validation():
    with pytest.raises(ValueError):
        RecurrenceSpec(1, 1, 0, Fraction(1), identity_counts())
    with pytest.raises(ValueError):
        RecurrenceSpec(2, 1, 2, Fraction(1), identity_counts())
    with pytest.raises(ValueError):
        RecurrenceSpec(2, 1, -2, Fraction(1), identity_counts())
    spec = RecurrenceSpec(2, 1, Fraction(-19, 10), Fraction(1), identity_counts())
    assert spec.beta == Fraction(-19, 10)


def test_counting_function_must_vanish_at_zero():
    with pytest.raises(ValueError):
        CountingFunction(lambda n: Fraction(n + 1))


def test_int_coefficients_are_coerced():
    assert isinstance(HALVING.alpha, Fraction)
    assert isinstance(HALVING.D, Fraction)


rationals = st.fractions(
    min_value=Fraction(-10), max_value=Fraction(10), max_denominator=12
)


@st.composite
def recurrence_specs(draw):
    m = draw(st.integers(min_value=2, max_value=12))
    beta = draw(
        st.fractions(
            min_value=Fraction(-m) + Fraction(1, 8),
            max_value=Fraction(m) - Fraction(1, 8),
            max_denominator=8,
        )
    )
    alpha = draw(rationals)
    d = draw(rationals)
    scale = draw(st.integers(min_value=0, max_value=3))
    fn = CountingFunction(lambda n, s=scale: Fraction(s * n, 2), f"F(n) = {scale}n/2")
    return RecurrenceSpec(m, alpha, beta, d, fn)


@settings(max_examples=100)
@given(spec=recurrence_specs(), N=st.integers(min_value=1, max_value=10**9))
def test_series_equals_direct_evaluation(spec, N):
    assert series_form(spec, N) * N == evaluate_G(spec, N)


@settings(max_examples=100)
@given(
    spec=recurrence_specs(),
    N=st.integers(min_value=1, max_value=10**9),
    j=st.integers(min_value=1, max_value=12),
)
def test_expansion_sums_to_g_over_n(spec, N, j):
    terms = expand_eq_star(spec, N, j)
    assert sum(t.value for t in terms) * N == evaluate_G(spec, N)
    if spec.m**j > N:
        assert terms[-1].ratio == 0


@settings(max_examples=100)
@given(spec=recurrence_specs(), N=st.integers(min_value=1, max_value=10**6))
def test_evaluation_is_linear_in_alpha(spec, N):
    doubled = RecurrenceSpec(spec.m, 2 * spec.alpha, spec.beta, spec.D, spec.F)
    assert evaluate_G(doubled, N) == 2 * evaluate_G(spec, N)


@settings(max_examples=100)
@given(spec=recurrence_specs())
def test_predicted_limit_scales_with_d(spec):
    tripled = RecurrenceSpec(spec.m, spec.alpha, spec.beta, 3 * spec.D, spec.F)
    assert predicted_limit(tripled) == 3 * predicted_limit(spec)


@settings(max_examples=100)
@given(spec=recurrence_specs(), N=st.integers(min_value=0, max_value=10**6))
def test_results_are_reduced_rationals(spec, N):
    g = evaluate_G(spec, N)
    assert g.denominator > 0
    from math import gcd

    assert gcd(g.numerator, g.denominator) == 1
