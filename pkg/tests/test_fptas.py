import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nrsched import (
    GeometricRounder,
    Instance,
    InvalidEpsilon,
    Job,
    NonUniformRequirement,
    SupplyProfile,
    check_feasible,
    dp_solve,
    fptas_solve,
    permutation_oracle,
    round_up,
)
from nrsched.fptas import parse_eps, rounding_sequence

from conftest import random_uniform


def slow_exponent(base, v):
    """Smallest k with base**k >= v by plain exact search."""
    if v == 0:
        return None
    k = 0
    while base**k < v:
        k += 1
    while base ** (k - 1) >= v:
        k -= 1
    return k


def test_round_up_one():
    assert round_up(1, Fraction(1, 3), 4).exponent == 0
    assert round_up(1, 1, 1).value == 1


def test_round_up_eps_half_n_one():
    r = round_up(2, "0.5", 1)
    # 1.25**3 < 2 <= 1.25**4
    assert Fraction(5, 4) ** 3 < 2 <= Fraction(5, 4) ** 4
    assert r.exponent == 4
    assert r.value == Fraction(5, 4) ** 4 == Fraction("2.44140625")


def test_round_up_zero():
    assert round_up(0, 1, 3).is_zero


@pytest.mark.parametrize("text, want", [("1/4", Fraction(1, 4)), ("0.25", Fraction(1, 4)), (0.1, Fraction(1, 10)), (1, 1)])
def test_parse_eps(text, want):
    assert parse_eps(text) == want


@pytest.mark.parametrize("bad", [0, -1, "3/2", "abc", 1.5])
def test_parse_eps_rejects(bad):
    with pytest.raises(InvalidEpsilon):
        parse_eps(bad)


def test_exact_powers_round_to_themselves():
    rounder = GeometricRounder(Fraction(21, 20))
    for k in range(0, 400, 7):
        assert rounder.exponent(Fraction(21, 20) ** k) == k
        assert rounder.exponent(Fraction(21, 20) ** k + Fraction(1, 10**60)) == k + 1


def test_huge_operands_use_exact_search():
    # logs this large leave too little float precision for the fast path
    base = 1 + Fraction(1, 1000)
    rounder = GeometricRounder(base)
    v = Fraction(10**110000 + 1, 10**109999)
    k = rounder.exponent(v)
    assert base ** (k - 1) < v <= base**k


@settings(max_examples=300)
@given(st.integers(1, 10**12), st.integers(1, 10**6), st.integers(1, 40))
def test_exponent_matches_slow_search(num, den, m):
    base = 1 + Fraction(1, 2 * m)
    assert GeometricRounder(base).exponent(Fraction(num, den)) == slow_exponent(base, Fraction(num, den))


@settings(max_examples=300)
@given(
    st.fractions(min_value=Fraction(1, 20), max_value=1, max_denominator=20),
    st.lists(st.fractions(min_value=0, max_value=1000, max_denominator=50), min_size=1, max_size=12),
)
def test_rounding_sequence_bound(eps, values):
    n = len(values)
    g = rounding_sequence(values, eps, n)
    total = Fraction(0)
    for v, gi in zip(values, g):
        total += v
        assert total <= gi <= (1 + eps) * total


def test_single_job_exact():
    inst = Instance.normal([Job(3, 5, 2)], SupplyProfile((0, 4), (1, 1)))
    report = fptas_solve(inst, 1)
    assert report.objective == 5 * (4 + 3)


def test_instance_a(instance_a):
    report = fptas_solve(instance_a, "1/2")
    assert report.objective <= Fraction(5, 2) * 11
    assert report.objective == dp_solve(instance_a).objective == 11
    assert report.guarantee == Fraction(5, 2)


def test_errors():
    with pytest.raises(NonUniformRequirement):
        fptas_solve(Instance.normal([Job(1, 1, 1), Job(1, 1, 2)], SupplyProfile((0,), (3,))), 1)
    with pytest.raises(InvalidEpsilon):
        fptas_solve(Instance.normal([Job(1, 1, 1)], SupplyProfile((0,), (3,))), 2)


def test_guarantee_monotone_in_eps(instance_a):
    factors = [fptas_solve(instance_a, e).guarantee for e in ("1", "1/2", "1/4", "1/10")]
    assert factors == sorted(factors, reverse=True)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(["1/10", "1/2", "1"]))
def test_fptas_ratio_and_state_bound(seed, eps):
    inst = random_uniform(seed, nmax=7)
    eps = Fraction(eps)
    report = fptas_solve(inst, eps)
    assert check_feasible(inst, report.schedule)
    opt = permutation_oracle(inst).objective
    assert opt <= report.objective <= (1 + 3 * eps) * opt
    # the exact schedule never costs more than the rounded terminal value
    assert report.objective <= report.stats["rounded_value"]
    n = inst.n
    psum = sum(j.p for j in inst.jobs)
    wsum = sum(j.w for j in inst.jobs)
    limit = math.ceil(4 * n * math.log(max(psum * wsum, 2)) / eps) + 2
    assert max(report.stats["distinct_exponents"].values()) <= limit
