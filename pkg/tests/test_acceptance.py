"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines inline;
they are also printed past output capture.
"""

import random
import time
from fractions import Fraction
from pathlib import Path

import pytest

from nrsched import (
    Schedule,
    allocate,
    assignment_oracle,
    block_contribution,
    check_compact_feasible,
    check_feasible,
    compact_objective,
    dp_solve,
    expand_hme,
    format_instance,
    format_schedule,
    fptas_solve,
    gen_partition_reduction,
    gen_tight_pair,
    hme_fptas_solve,
    parse_instance,
    permutation_oracle,
    spt_list,
    spt_lower_bound,
    supply_lower_bound,
    weight_order_list,
)
from nrsched.cli import run
from nrsched.fptas import rounding_sequence
from nrsched.instgen import tight_pair_values

from conftest import make_instance_a, random_hme, random_mixed, random_uniform, random_unit_weight_a


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[criterion {number:>2}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")
        assert ok, detail

    return emit


def opt(inst):
    return permutation_oracle(inst).objective


def test_criterion_01_oracle_agreement(report):
    start = time.perf_counter()
    bad = [s for s in range(200) if permutation_oracle(inst := random_mixed(1000 + s)).objective != assignment_oracle(inst)]
    elapsed = time.perf_counter() - start
    report(1, "oracle agreement", not bad and elapsed < 60, f"200 instances, {len(bad)} mismatches, {elapsed:.1f}s")


def test_criterion_02_dp_exact(report):
    start = time.perf_counter()
    bad = [s for s in range(200) if dp_solve(inst := random_uniform(2000 + s)).objective != opt(inst)]
    elapsed = time.perf_counter() - start
    report(2, "exact DP = oracle", not bad and elapsed < 60, f"200 instances, {len(bad)} mismatches, {elapsed:.1f}s")


CRITERION_3 = [random_uniform(3000 + s, unit_weights=True) for s in range(500)]


def test_criterion_03_spt_ratio(report):
    worst = max(Fraction(spt_list(inst).objective, opt(inst)) for inst in CRITERION_3)
    a = make_instance_a()
    ratio_a = Fraction(spt_list(a).objective, opt(a))
    ok = worst <= 2 and ratio_a == Fraction(12, 11)
    report(3, "spt ratio", ok, f"500 instances, max ratio {float(worst):.4f}; instance A ratio {ratio_a}")


def test_criterion_04_lower_bounds(report):
    bad = [
        i for i, inst in enumerate(CRITERION_3)
        if max(spt_lower_bound(inst), supply_lower_bound(inst)) > opt(inst)
    ]
    report(4, "lower bounds <= OPT", not bad, f"{len(CRITERION_3)} instances, {len(bad)} violations")


def test_criterion_05_weight_greedy(report):
    worst = {2: Fraction(0), "all": Fraction(0)}
    count_q2 = 0
    for s in range(500):
        inst = random_unit_weight_a(5000 + s)
        ratio = Fraction(weight_order_list(inst).objective, opt(inst))
        worst["all"] = max(worst["all"], ratio)
        if inst.q == 2:
            count_q2 += 1
            worst[2] = max(worst[2], ratio)
    ok = worst["all"] <= 3 and worst[2] <= 2 and count_q2 > 0
    report(5, "weight greedy ratio", ok,
           f"500 instances, max ratio {float(worst['all']):.4f}; q=2 ({count_q2}) max {float(worst[2]):.4f}")


def test_criterion_06_tight_pair(report):
    inst = gen_tight_pair(10, 1)
    greedy, best = weight_order_list(inst).objective, opt(inst)
    big = gen_tight_pair(1000, 1)
    ratio = Fraction(weight_order_list(big).objective, opt(big))
    ok = (greedy, best) == (218, 119) == tight_pair_values(10, 1) and ratio > Fraction(199, 100)
    report(6, "tight pair", ok, f"w=10 greedy {greedy} optimum {best}; w=1000 ratio {float(ratio):.5f}")


def test_criterion_07_fptas(report):
    worst = {}
    for eps in (Fraction(1, 10), Fraction(1, 2), Fraction(1)):
        worst[eps] = Fraction(0)
        for s in range(200):
            inst = random_uniform(7000 + s)
            sol = fptas_solve(inst, eps)
            if not check_feasible(inst, sol.schedule):
                worst[eps] = Fraction(10**9)
            worst[eps] = max(worst[eps], Fraction(sol.objective, opt(inst)) / (1 + 3 * eps))
    rng = random.Random(77)
    seq_bad = 0
    for _ in range(1000):
        n = rng.randint(1, 12)
        eps = Fraction(rng.randint(1, 20), 20)
        values = [Fraction(rng.randint(0, 10**6), rng.randint(1, 1000)) for _ in range(rng.randint(1, n))]
        total = Fraction(0)
        for v, g in zip(values, rounding_sequence(values, eps, n)):
            total += v
            seq_bad += not total <= g <= (1 + eps) * total
    ok = all(r <= 1 for r in worst.values()) and seq_bad == 0
    detail = ", ".join(f"eps={e}: max ratio/(1+3eps) {float(r):.4f}" for e, r in worst.items())
    report(7, "FPTAS", ok, f"200 instances per eps, {detail}; rounding sequences 1000, {seq_bad} violations")


def test_criterion_08_hme_fptas(report):
    worst = {}
    for eps in (Fraction(1, 4), Fraction(1)):
        worst[eps] = Fraction(0)
        for s in range(100):
            inst = random_hme(8000 + s)
            sol = hme_fptas_solve(inst, eps)
            if not check_compact_feasible(inst, sol.schedule):
                worst[eps] = Fraction(10**9)
            worst[eps] = max(worst[eps], Fraction(sol.objective, opt(expand_hme(inst))) / (1 + eps) ** 4)
    alloc = allocate(5, (1, 1, 2), 1)
    ok = all(r <= 1 for r in worst.values()) and alloc == (0, 1, 4)
    detail = ", ".join(f"eps={e}: max ratio/(1+eps)^4 {float(r):.4f}" for e, r in worst.items())
    report(8, "hme FPTAS", ok, f"100 instances per eps, {detail}; allocation {alloc}")


def test_criterion_09_block_contribution(report):
    bad = [
        (k, t, p)
        for k in range(1, 101)
        for t in range(0, 11)
        for p in range(1, 11)
        if block_contribution(k, t, p) != sum(t + i * p for i in range(1, k + 1))
    ]
    report(9, "block contribution", not bad, f"11000 triples, {len(bad)} mismatches")


def test_criterion_10_partition_certificate(report):
    cases = [((3, 3), (0,)), ((1, 2, 3, 2), (0, 2)), ((5, 1, 2, 4), (0, 1)), ((7, 7, 7, 7), (2, 3))]
    rows = []
    ok = True
    for items, half in cases:
        red = gen_partition_reduction(items)
        sched = red.yes_schedule(half)
        feasible = bool(check_compact_feasible(red.instance, sched))
        value = compact_objective(red.instance, sched) if feasible else None
        ok &= feasible and value <= red.threshold
        rows.append(f"{items}: {value} <= {red.threshold}")
    report(10, "partition yes-certificate", ok, "; ".join(rows))


def test_criterion_11_cli_contracts(report, tmp_path, capsys):
    failures = []
    rng = random.Random(11)
    for s in range(100):
        inst = random_mixed(11000 + s)
        text = format_instance(inst)
        if parse_instance(text) != inst:
            failures.append((s, "round trip"))
            continue
        inst_path = tmp_path / f"{s}.inst"
        inst_path.write_text(text)
        sched_path = tmp_path / f"{s}.sched"
        algo = "fptas-hme" if inst.is_hme else "oracle"
        if run(["solve", "--algo", algo, "--input", str(inst_path), "--output", str(sched_path)]) != 0:
            failures.append((s, "solve"))
            continue
        if run(["verify", "--input", str(inst_path), "--schedule", str(sched_path)]) != 0:
            failures.append((s, "verify solved"))
        # random start times: verify must exit 0 exactly when the schedule is feasible
        flat = expand_hme(inst)
        horizon = sum(j.p for j in flat.jobs) + flat.supply.u[-1]
        for _ in range(3):
            sched = Schedule(tuple(rng.randint(0, horizon) for _ in range(flat.n)))
            path = tmp_path / "random.sched"
            path.write_text(format_schedule(sched))
            want = 0 if check_feasible(flat, sched) else 3
            if run(["verify", "--input", str(inst_path), "--schedule", str(path)]) != want:
                failures.append((s, "verify random"))
        capsys.readouterr()
    report(11, "CLI round trip and verify", not failures, f"100 instances, failures {failures[:5]}")
