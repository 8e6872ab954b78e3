"""Exact period-assignment dynamic program for 1|nr=1, a_j=abar, q const|sum w_j C_j.

Jobs are taken in WSPT order and each one is appended to one supply
period.  A state records, per period, the number of jobs, their total
processing time, total weight and their weighted completion time when the
period's jobs are run from time 0.  The start of period ``l`` is then
fixed by the supply dates and the load of the earlier periods.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Sequence, Union

from .errors import InvariantViolation, NotTerminal, SizeLimit, StateSpaceExceeded, Unsolvable
from .evaluator import objective
from .model import Instance, Job, Schedule, SolveReport, SupplyProfile, expand_hme, job_capacity_prefix

Number = Union[int, Fraction]

DEFAULT_Q_LIMIT = 6
DEFAULT_STATE_CAP = 10**7


def wspt_order(jobs: Sequence[Job]) -> list[int]:
    """Indices sorted by non-increasing w/p; ties by smaller p, then index."""

    def cmp(i, j):
        lhs, rhs = jobs[i].w * jobs[j].p, jobs[j].w * jobs[i].p
        if lhs != rhs:
            return -1 if lhs > rhs else 1
        if jobs[i].p != jobs[j].p:
            return -1 if jobs[i].p < jobs[j].p else 1
        return -1 if i < j else (1 if i > j else 0)

    return sorted(range(len(jobs)), key=cmp_to_key(cmp))


@dataclass(frozen=True)
class DpState:
    N: tuple[int, ...]
    P: tuple[Number, ...]
    W: tuple[Number, ...]
    WP: tuple[Number, ...]

    @classmethod
    def from_key(cls, key: tuple, q: int) -> "DpState":
        return cls(key[:q], key[q : 2 * q], key[2 * q : 3 * q], key[3 * q :])


def period_starts(u: Sequence[int], P: Sequence[Number]) -> list[Number]:
    """Start of each period's first job: max(u_l, max_{l'<l} u_l' + P_l' + ... + P_{l-1})."""
    starts = []
    for ell in range(len(u)):
        t = u[ell]
        load = 0
        for k in range(ell - 1, -1, -1):
            load += P[k]
            t = max(t, u[k] + load)
        starts.append(t)
    return starts


def state_value(u: Sequence[int], P, W, WP) -> Number:
    starts = period_starts(u, P)
    return sum(wp + t * w for wp, t, w in zip(WP, starts, W))


def terminal_value(state: DpState, supply: SupplyProfile, n: int | None = None) -> Number:
    if len(state.N) != supply.q:
        raise InvariantViolation(f"state has {len(state.N)} periods, supply has {supply.q}")
    if n is not None and sum(state.N) != n:
        raise NotTerminal(f"state assigns {sum(state.N)} of {n} jobs")
    return state_value(supply.u, state.P, state.W, state.WP)


def prefix_ok(N: Sequence[int], caps: Sequence[int]) -> bool:
    acc = 0
    for cnt, cap in zip(N, caps):
        acc += cnt
        if acc > cap:
            return False
    return True


def schedule_from_assignment(inst: Instance, order: Sequence[int], periods: Sequence[int]) -> Schedule:
    """Run each period's jobs back-to-back from its start, in list order.

    ``periods[k]`` is the period of job ``order[k]``.
    """
    q = inst.q
    per_period: list[list[int]] = [[] for _ in range(q)]
    for j, ell in zip(order, periods):
        per_period[ell].append(j)
    loads = [sum(inst.jobs[j].p for j in js) for js in per_period]
    starts = period_starts(inst.supply.u, loads)
    start = [0] * inst.n
    for ell, js in enumerate(per_period):
        t = starts[ell]
        for j in js:
            start[j] = t
            t += inst.jobs[j].p
    return Schedule(tuple(start))


def check_dp_preconditions(inst: Instance, q_limit: int) -> tuple[int, ...]:
    abar = inst.common_requirement()
    caps = job_capacity_prefix(inst, abar)
    if inst.q > q_limit:
        raise SizeLimit(f"q={inst.q} exceeds the configured period limit {q_limit}")
    if not inst.solvable:
        raise Unsolvable(f"total demand {inst.total_demand} exceeds total supply {inst.supply.total}")
    return caps


def dp_solve(inst: Instance, q_limit: int = DEFAULT_Q_LIMIT, state_cap: int = DEFAULT_STATE_CAP) -> SolveReport:
    """Optimal schedule by exhaustive expansion of period-assignment states."""
    inst = expand_hme(inst)
    caps = check_dp_preconditions(inst, q_limit)
    q, n = inst.q, inst.n
    order = wspt_order(inst.jobs)

    # key layout: N (q) | P (q) | W (q) | WP (q)
    layer: dict[tuple, tuple] = {(0,) * (4 * q): None}
    parents: list[dict[tuple, tuple]] = []
    total = 1
    for j in order:
        p, w = inst.jobs[j].p, inst.jobs[j].w
        nxt: dict[tuple, tuple] = {}
        for key in layer:
            for ell in range(q):
                N = list(key[:q])
                N[ell] += 1
                if not prefix_ok(N, caps):
                    continue
                child = list(key)
                child[ell] += 1
                child[q + ell] += p
                child[2 * q + ell] += w
                child[3 * q + ell] += w * (key[q + ell] + p)
                child = tuple(child)
                if child not in nxt:
                    nxt[child] = (key, ell)
        total += len(nxt)
        if total > state_cap:
            raise StateSpaceExceeded(state_cap, total)
        parents.append(nxt)
        layer = nxt

    best_key, best_val = None, None
    for key in layer:
        val = state_value(inst.supply.u, key[q : 2 * q], key[2 * q : 3 * q], key[3 * q :])
        if best_val is None or val < best_val:
            best_key, best_val = key, val

    periods = [0] * n
    key = best_key
    for k in range(n - 1, -1, -1):
        key, periods[k] = parents[k][key]
    sched = schedule_from_assignment(inst, order, periods)
    value = objective(inst, sched)
    assert value == best_val, "terminal value disagrees with reconstructed schedule"
    return SolveReport(
        algorithm="dp",
        objective=value,
        schedule=sched,
        guarantee=Fraction(1),
        stats={"states": total, "terminal_state": DpState.from_key(best_key, q)},
    )
