"""List-scheduling approximations and the lower bounds behind them."""

from __future__ import annotations

from fractions import Fraction

from .errors import ModelMismatch
from .evaluator import (
    block_contribution,
    canonical_left_shift,
    compact_left_shift,
    compact_objective,
    objective,
)
from .model import Instance, SolveReport, job_capacity_prefix

NON_UNIT_WEIGHT_WARNING = "2-approximation guarantee holds only for unit weights"


def _list_schedule(inst: Instance, order: list[int]):
    """Left-shifted schedule of ``order`` (jobs, or classes for hme) and its value."""
    if inst.is_hme:
        sched = compact_left_shift(inst, order)
        return sched, compact_objective(inst, sched)
    sched = canonical_left_shift(inst, order)
    return sched, objective(inst, sched)


def spt_lower_bound(inst: Instance) -> int:
    """Sum of completion times of the resource-free SPT schedule."""
    types = sorted(inst.classes if inst.is_hme else inst.jobs, key=lambda j: j.p)
    total = t = 0
    for c in types:
        k = getattr(c, "s", 1)
        total += block_contribution(k, t, c.p)
        t += k * c.p
    return total


def supply_lower_bound(inst: Instance) -> int:
    """sum_{l>=2} u_l * (n_l - n_{l-1}), with the capacities clipped at n."""
    abar = inst.common_requirement()
    if abar == 0:
        return 0
    n = inst.n
    caps = [min(c, n) for c in job_capacity_prefix(inst, abar)]
    u = inst.supply.u
    return sum(u[ell] * (caps[ell] - caps[ell - 1]) for ell in range(1, len(u)))


def lower_bounds(inst: Instance) -> dict:
    return {"spt": spt_lower_bound(inst), "supply": supply_lower_bound(inst)}


def spt_list(inst: Instance) -> SolveReport:
    """List schedule in non-decreasing processing time (2-approximate for unit weights)."""
    inst.common_requirement()
    types = inst.job_types()
    order = sorted(range(len(types)), key=lambda j: (types[j].p, j))
    sched, value = _list_schedule(inst, order)
    unit = all(j.w == 1 for j in types)
    return SolveReport(
        algorithm="spt",
        objective=value,
        schedule=sched,
        guarantee=Fraction(2) if unit else None,
        lower_bounds=lower_bounds(inst),
        warnings=() if unit else (NON_UNIT_WEIGHT_WARNING,),
    )


def weight_order_list(inst: Instance) -> SolveReport:
    """List schedule in non-increasing weight for unit jobs with w_j = a_j.

    3-approximate in general, 2-approximate when there are two supplies.
    """
    types = inst.job_types()
    for idx, j in enumerate(types):
        if j.p != 1 or j.w != j.a:
            raise ModelMismatch(f"job {idx + 1} violates p = 1, w = a (p={j.p}, w={j.w}, a={j.a})")
    order = sorted(range(len(types)), key=lambda j: (-types[j].w, j))
    sched, value = _list_schedule(inst, order)
    return SolveReport(
        algorithm="wgreedy",
        objective=value,
        schedule=sched,
        guarantee=Fraction(2) if inst.q <= 2 else Fraction(3),
    )
