import random

import pytest

from nrsched import Instance, Job, JobClass, SupplyProfile, gen_random, gen_tight_pair


def make_instance_a():
    # three unit-weight jobs, abar = 1, two supplies
    return Instance.normal([Job(2, 1, 1), Job(1, 1, 1), Job(3, 1, 1)], SupplyProfile((0, 2), (1, 2)))


def make_instance_c():
    return Instance.hme([JobClass(2, 1, 3, 1), JobClass(2, 2, 1, 1)], SupplyProfile((0, 3), (2, 2)))


@pytest.fixture
def instance_a():
    return make_instance_a()


@pytest.fixture
def instance_c():
    return make_instance_c()


@pytest.fixture
def tight10():
    return gen_tight_pair(10, 1)


def random_uniform(seed, nmax=8, qmax=3, unit_weights=False):
    rng = random.Random(seed)
    abar = rng.randint(1, 3)
    return gen_random(seed, rng.randint(1, nmax), rng.randint(1, qmax), f"uniform_a({abar})",
                      surplus=rng.choice([0, 0, 2]), unit_weights=unit_weights)


def random_unit_weight_a(seed, nmax=8, qmax=4):
    rng = random.Random(seed)
    return gen_random(seed, rng.randint(1, nmax), rng.randint(1, qmax), "unit_p_w_eq_a")


def random_hme(seed, total_max=8, hmax=3, qmax=3):
    rng = random.Random(seed)
    h = rng.randint(1, hmax)
    return gen_random(seed, rng.randint(h, total_max), rng.randint(1, qmax), f"hme({h})")


def random_mixed(seed, nmax=8, qmax=3):
    rng = random.Random(seed)
    profile = rng.choice(["uniform_a(1)", "uniform_a(2)", "general", "unit_p_w_eq_a", "hme"])
    n = rng.randint(1, nmax)
    if profile == "hme":
        h = rng.randint(1, min(3, n))
        profile = f"hme({h})"
    return gen_random(seed, n, rng.randint(1, qmax), profile, surplus=rng.choice([0, 1, 3]))
