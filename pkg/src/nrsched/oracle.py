"""Brute-force optima for small instances.

Two independent routes: enumerating job permutations (each left-shifted)
and enumerating job-to-period assignments.  Both accept arbitrary
requirements and are used as ground truth by the tests and the bench.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import SizeLimit, Unsolvable
from .evaluator import canonical_left_shift, objective
from .model import Instance, SolveReport, expand_hme

PERMUTATION_CAP = 9
ASSIGNMENT_CAP = 12


def permutation_oracle(inst: Instance, cap: int = PERMUTATION_CAP) -> SolveReport:
    """Minimum over all job orders of the left-shifted schedule's objective.

    Depth-first in lexicographic order with a completion-time bound, so the
    first optimal permutation found is the lexicographically smallest one.
    Identical jobs are only placed in index order.
    """
    inst = expand_hme(inst)
    n = inst.n
    if n > cap:
        raise SizeLimit(f"permutation oracle limited to {cap} jobs, got {n}")
    if not inst.solvable:
        raise Unsolvable(f"total demand {inst.total_demand} exceeds total supply {inst.supply.total}")
    jobs = inst.jobs
    u = inst.supply.u
    cum = inst.supply.cumulative
    twin_before = [[i for i in range(j) if jobs[i] == jobs[j]] for j in range(n)]

    best = [None, None]
    placed = [False] * n
    prefix: list[int] = []

    def ready_time(consumed: int) -> int:
        for ell, b in enumerate(cum):
            if b >= consumed:
                return u[ell]
        raise Unsolvable("demand exceeds supply")

    def dfs(now: int, consumed: int, value: int, rest_w: int, rest_wp: int):
        if len(prefix) == n:
            if best[0] is None or value < best[0]:
                best[0], best[1] = value, list(prefix)
            return
        if best[0] is not None and value + now * rest_w + rest_wp >= best[0]:
            return
        for j in range(n):
            if placed[j] or any(not placed[i] for i in twin_before[j]):
                continue
            job = jobs[j]
            start = max(now, ready_time(consumed + job.a))
            placed[j] = True
            prefix.append(j)
            dfs(
                start + job.p,
                consumed + job.a,
                value + job.w * (start + job.p),
                rest_w - job.w,
                rest_wp - job.w * job.p,
            )
            prefix.pop()
            placed[j] = False

    dfs(0, 0, 0, sum(j.w for j in jobs), sum(j.w * j.p for j in jobs))
    sched = canonical_left_shift(inst, best[1])
    value = objective(inst, sched)
    assert value == best[0]
    return SolveReport("oracle", value, sched, guarantee=Fraction(1), stats={"order": tuple(best[1])})


def _assignment_value(inst: Instance, groups: list[list[int]]) -> int:
    jobs = inst.jobs
    total = 0
    t = 0
    for ell, group in enumerate(groups):
        t = max(t, inst.supply.u[ell])
        for j in sorted(group, key=lambda j: (-Fraction(jobs[j].w, jobs[j].p), j)):
            t += jobs[j].p
            total += jobs[j].w * t
    return total


def assignment_oracle(inst: Instance, cap: int = ASSIGNMENT_CAP) -> int:
    """Minimum over resource-feasible job-to-period assignments.

    Each period's jobs run in WSPT order from the later of its supply date
    and the end of the previous period.
    """
    inst = expand_hme(inst)
    n, q = inst.n, inst.q
    if n > cap:
        raise SizeLimit(f"assignment oracle limited to {cap} jobs, got {n}")
    cum = inst.supply.cumulative
    used = [0] * q
    groups: list[list[int]] = [[] for _ in range(q)]
    best = [None]

    def fits() -> bool:
        acc = 0
        for ell in range(q):
            acc += used[ell]
            if acc > cum[ell]:
                return False
        return True

    def dfs(j: int):
        if j == n:
            value = _assignment_value(inst, groups)
            if best[0] is None or value < best[0]:
                best[0] = value
            return
        a = inst.jobs[j].a
        for ell in range(q):
            used[ell] += a
            if fits():
                groups[ell].append(j)
                dfs(j + 1)
                groups[ell].pop()
            used[ell] -= a

    dfs(0)
    if best[0] is None:
        raise Unsolvable(f"total demand {inst.total_demand} exceeds total supply {inst.supply.total}")
    return best[0]
