from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from nrsched import (
    Instance,
    Job,
    JobClass,
    NonUniformRequirement,
    SupplyProfile,
    gen_tight_pair,
    permutation_oracle,
    spt_list,
    spt_lower_bound,
    supply_lower_bound,
    weight_order_list,
)
from nrsched.errors import ModelMismatch
from nrsched.greedy import NON_UNIT_WEIGHT_WARNING
from nrsched.instgen import tight_pair_values

from conftest import random_unit_weight_a, random_uniform


def test_spt_instance_a(instance_a):
    report = spt_list(instance_a)
    # SPT order j2, j1, j3 gives starts (2, 0, 4)
    assert report.schedule.start == (2, 0, 4)
    assert report.objective == 12
    assert report.guarantee == 2
    assert report.warnings == ()


def test_lower_bounds_instance_a(instance_a):
    # resource-free SPT: completions 1, 3, 6
    assert spt_lower_bound(instance_a) == 10
    # two jobs released by the supply at 2
    assert supply_lower_bound(instance_a) == 4


def test_spt_warns_for_weights():
    inst = Instance.normal([Job(1, 3, 1), Job(2, 1, 1)], SupplyProfile((0,), (2,)))
    report = spt_list(inst)
    assert report.guarantee is None
    assert NON_UNIT_WEIGHT_WARNING in report.warnings


def test_spt_rejects_mixed_requirements():
    inst = Instance.normal([Job(1, 1, 1), Job(2, 1, 2)], SupplyProfile((0,), (3,)))
    with pytest.raises(NonUniformRequirement):
        spt_list(inst)


def test_wgreedy_tight_pair_values():
    for w in (10, 37, 1000):
        inst = gen_tight_pair(w, 1)
        greedy, opt = tight_pair_values(w, 1)
        assert weight_order_list(inst).objective == greedy
        assert permutation_oracle(inst).objective == opt


def test_wgreedy_tight_pair_closed_form_w10():
    assert tight_pair_values(10, 1) == (218, 119)


def test_wgreedy_tight_pair_ratio_approaches_two():
    greedy, opt = tight_pair_values(1000, 1)
    assert Fraction(greedy, opt) > Fraction(199, 100)


def test_wgreedy_rejects_other_models(instance_a):
    inst = Instance.normal([Job(2, 1, 1)], SupplyProfile((0,), (1,)))
    with pytest.raises(ModelMismatch):
        weight_order_list(inst)


def test_wgreedy_guarantee_by_q():
    assert weight_order_list(gen_tight_pair(5)).guarantee == 2
    inst = Instance.normal([Job(1, 1, 1)] * 3, SupplyProfile((0, 1, 2), (1, 1, 1)))
    assert weight_order_list(inst).guarantee == 3


def test_wgreedy_hme_compact():
    inst = Instance.hme([JobClass(10**9, 1, 2, 2)], SupplyProfile((0, 5), (2, 2 * 10**9)))
    report = weight_order_list(inst)
    assert report.schedule.blocks[0].count == 1
    assert sum(b.count for b in report.schedule.blocks) == 10**9


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_spt_ratio_and_bounds(seed):
    inst = random_uniform(seed, nmax=7, unit_weights=True)
    opt = permutation_oracle(inst).objective
    value = spt_list(inst).objective
    assert value <= 2 * opt
    assert spt_lower_bound(inst) <= opt
    assert supply_lower_bound(inst) <= opt


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**6))
def test_wgreedy_ratio(seed):
    inst = random_unit_weight_a(seed, nmax=7)
    opt = permutation_oracle(inst).objective
    report = weight_order_list(inst)
    assert report.objective <= report.guarantee * opt
