"""Feasibility, objective evaluation and left-shifted list schedules."""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import InfeasibleSchedule, InvariantViolation, Unsolvable
from .model import Block, CompactSchedule, Instance, Schedule, expand_hme


@dataclass(frozen=True)
class Feasibility:
    ok: bool
    violation: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def block_contribution(k: int, t: int, p: int) -> int:
    """Sum of completion times of ``k`` jobs of length ``p`` run back-to-back from ``t``."""
    return k * t + k * (k + 1) // 2 * p


def check_feasible(inst: Instance, sched: Schedule) -> Feasibility:
    """Check machine capacity and the cumulative resource constraint.

    Resource is consumed at the start instant, and a supply arriving at
    ``u_l`` can be used by a job starting exactly at ``u_l``.
    """
    inst = expand_hme(inst)
    jobs = inst.jobs
    if len(sched.start) != len(jobs):
        return Feasibility(False, f"schedule has {len(sched.start)} start times for {len(jobs)} jobs")
    order = sorted(range(len(jobs)), key=lambda j: (sched.start[j], j))
    for prev, nxt in zip(order, order[1:]):
        if sched.start[nxt] < sched.start[prev] + jobs[prev].p:
            return Feasibility(
                False,
                f"job {nxt + 1} starts at {sched.start[nxt]} while job {prev + 1} "
                f"runs until {sched.start[prev] + jobs[prev].p}",
            )
    cum_supply = inst.supply.cumulative
    consumed = 0
    for pos, j in enumerate(order):
        consumed += jobs[j].a
        t = sched.start[j]
        if pos + 1 < len(order) and sched.start[order[pos + 1]] == t:
            continue
        ell = inst.supply.period_of(t)
        if consumed > cum_supply[ell]:
            return Feasibility(
                False,
                f"at t={t} job {j + 1} needs {jobs[j].a}: cumulative demand {consumed} "
                f"exceeds b_{ell + 1}={cum_supply[ell]}",
            )
    return Feasibility(True)


def objective(inst: Instance, sched: Schedule) -> int:
    report = check_feasible(inst, sched)
    if not report:
        raise InfeasibleSchedule(report.violation)
    inst = expand_hme(inst)
    return sum(j.w * (s + j.p) for s, j in zip(sched.start, inst.jobs))


def _earliest_supply_time(cum_supply: Sequence[int], u: Sequence[int], need: int) -> int:
    ell = bisect_left(cum_supply, need)
    return u[ell]


def canonical_left_shift(inst: Instance, order: Sequence[int]) -> Schedule:
    """List-schedule jobs in ``order``, idling only when the resource is short."""
    inst = expand_hme(inst)
    if sorted(order) != list(range(inst.n)):
        raise InvariantViolation("order must be a permutation of the job indices")
    if not inst.solvable:
        raise Unsolvable(f"total demand {inst.total_demand} exceeds total supply {inst.supply.total}")
    cum_supply = inst.supply.cumulative
    u = inst.supply.u
    start = [0] * inst.n
    now = consumed = 0
    for j in order:
        job = inst.jobs[j]
        consumed += job.a
        t = max(now, _earliest_supply_time(cum_supply, u, consumed))
        start[j] = t
        now = t + job.p
    return Schedule(tuple(start))


def compact_left_shift(inst: Instance, class_order: Sequence[int]) -> CompactSchedule:
    """Block-wise list scheduling of an hme instance.

    All jobs of a class are consecutive in the list.  Work per class is
    O(q), independent of the multiplicities.
    """
    if not inst.is_hme:
        raise InvariantViolation("compact_left_shift needs an hme instance")
    if sorted(class_order) != list(range(inst.h)):
        raise InvariantViolation("class_order must be a permutation of the class indices")
    if not inst.solvable:
        raise Unsolvable(f"total demand {inst.total_demand} exceeds total supply {inst.supply.total}")
    supply = inst.supply
    cum_supply, u, q = supply.cumulative, supply.u, supply.q
    blocks: list[Block] = []
    now = consumed = 0
    for i in class_order:
        c = inst.classes[i]
        left = c.s
        while left:
            now = max(now, _earliest_supply_time(cum_supply, u, consumed + c.a))
            ell = supply.period_of(now)
            k = left
            if c.a:
                k = min(k, (cum_supply[ell] - consumed) // c.a)
            if ell + 1 < q:
                k = min(k, -(-(u[ell + 1] - now) // c.p))
            blocks.append(Block(ell, i, now, k))
            left -= k
            consumed += k * c.a
            now += k * c.p
    return CompactSchedule(tuple(blocks))


def _starts_before(block: Block, p: int, x: int) -> int:
    if block.t >= x:
        return 0
    return min(block.count, -(-(x - block.t) // p))


def check_compact_feasible(inst: Instance, sched: CompactSchedule) -> Feasibility:
    """Feasibility of a compact schedule without expanding it."""
    if not inst.is_hme:
        return Feasibility(False, "compact schedules need an hme instance")
    supply = inst.supply
    for b in sched.blocks:
        if b.cls >= inst.h:
            return Feasibility(False, f"block refers to unknown class {b.cls + 1}")
        if b.period >= supply.q:
            return Feasibility(False, f"block refers to unknown period {b.period + 1}")
        if b.t < supply.u[b.period]:
            return Feasibility(False, f"block of class {b.cls + 1} starts at {b.t} before u_{b.period + 1}")
    counts = sched.counts(inst.h)
    for i, (got, c) in enumerate(zip(counts, inst.classes)):
        if got != c.s:
            return Feasibility(False, f"class {i + 1} has {got} scheduled jobs, expected {c.s}")
    blocks = sorted(sched.blocks, key=lambda b: b.t)
    for prev, nxt in zip(blocks, blocks[1:]):
        end = prev.t + prev.count * inst.classes[prev.cls].p
        if nxt.t < end:
            return Feasibility(False, f"block at {nxt.t} overlaps block running until {end}")
    cum_supply = supply.cumulative
    for ell in range(supply.q):
        horizon = supply.u[ell + 1] if ell + 1 < supply.q else None
        demand = 0
        for b in blocks:
            c = inst.classes[b.cls]
            started = b.count if horizon is None else _starts_before(b, c.p, horizon)
            demand += started * c.a
        if demand > cum_supply[ell]:
            where = "overall" if horizon is None else f"before t={horizon}"
            return Feasibility(False, f"demand {demand} {where} exceeds b_{ell + 1}={cum_supply[ell]}")
    return Feasibility(True)


def compact_objective(inst: Instance, sched: CompactSchedule) -> int:
    report = check_compact_feasible(inst, sched)
    if not report:
        raise InfeasibleSchedule(report.violation)
    total = 0
    for b in sched.blocks:
        c = inst.classes[b.cls]
        total += c.w * block_contribution(b.count, b.t, c.p)
    return total
