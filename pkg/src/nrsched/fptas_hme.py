"""FPTAS for high-multiplicity input with a constant number of job classes.

The DP has one stage per class.  Instead of trying every split of a
class's ``s`` jobs over the ``q`` periods, it tries one split per
*eligible* exponent tuple: each period gets a cap ``floor((1+eps)**k)``
and the Allocation routine fills those caps from the last period
backwards.

A period may also get cap 0 (exponent ``None``).  Without it every class
would be forced to put at least one job into the last period, which can
be arbitrarily bad (one job, a late second supply date).
"""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product
from typing import Optional, Sequence

from .errors import IneligibleTuple, ModelMismatch, StateSpaceExceeded, Unsolvable
from .evaluator import compact_objective
from .exact_dp import DEFAULT_STATE_CAP, period_starts, prefix_ok, wspt_order
from .fptas import GeometricRounder, best_terminal, parse_eps
from .model import Block, CompactSchedule, Instance, SolveReport, job_capacity_prefix

EligibleTuple = tuple[Optional[int], ...]


def growth_cap(k: Optional[int], eps: Fraction) -> int:
    """floor((1+eps)**k), exact; 0 for the empty-period marker ``None``."""
    if k is None:
        return 0
    return math.floor((1 + eps) ** k)


def max_exponent(s: int, eps: Fraction) -> int:
    """ceil(log_{1+eps} s), by exact comparison."""
    k, power = 0, Fraction(1)
    while power < s:
        power *= 1 + eps
        k += 1
    return k


def enumerate_eligible(s: int, q: int, eps, zero_caps: bool = False) -> list[EligibleTuple]:
    """All exponent tuples over ``0..ceil(log_{1+eps} s)`` whose caps cover ``s``.

    With ``zero_caps`` the alphabet also contains ``None`` (cap 0); the
    solver uses that form.
    """
    eps = parse_eps(eps)
    alphabet: list[Optional[int]] = list(range(max_exponent(s, eps) + 1))
    if zero_caps:
        alphabet.insert(0, None)
    caps = {k: growth_cap(k, eps) for k in alphabet}
    return [tup for tup in product(alphabet, repeat=q) if sum(caps[k] for k in tup) >= s]


def allocate(s: int, tup: Sequence[Optional[int]], eps) -> tuple[int, ...]:
    """Fill the tuple's caps from the last period backwards until ``s`` jobs are placed."""
    eps = parse_eps(eps)
    left = s
    delta = [0] * len(tup)
    for ell in range(len(tup) - 1, -1, -1):
        delta[ell] = min(left, growth_cap(tup[ell], eps))
        left -= delta[ell]
    if left:
        raise IneligibleTuple(f"caps of {tuple(tup)} cover only {s - left} of {s} jobs")
    return tuple(delta)


def hme_fptas_solve(
    inst: Instance,
    eps,
    zero_caps: bool = True,
    state_cap: int = DEFAULT_STATE_CAP,
) -> SolveReport:
    """Compact schedule with objective at most (1+eps)**4 times the optimum."""
    eps = parse_eps(eps)
    if not inst.is_hme:
        raise ModelMismatch("hme FPTAS needs high-multiplicity input")
    abar = inst.common_requirement()
    caps = job_capacity_prefix(inst, abar)
    if not inst.solvable:
        raise Unsolvable(f"total demand {inst.total_demand} exceeds total supply {inst.supply.total}")
    q, h = inst.q, inst.h
    classes = inst.classes
    order = wspt_order([c.job for c in classes])
    rounder = GeometricRounder(1 + eps / (2 * h))

    allocations: list[list[tuple[int, ...]]] = []
    eligible_counts = []
    for i in order:
        tuples = enumerate_eligible(classes[i].s, q, eps, zero_caps=zero_caps)
        eligible_counts.append(len(tuples))
        allocations.append(list(dict.fromkeys(allocate(classes[i].s, t, eps) for t in tuples)))

    # key layout as in the normal FPTAS: N | exp P | exp W | exp WP
    layer: dict[tuple, tuple] = {(0,) * q + (None,) * (3 * q): None}
    parents: list[dict[tuple, tuple]] = []
    total = 1
    for stage, i in enumerate(order):
        p, w = classes[i].p, classes[i].w
        nxt: dict[tuple, tuple] = {}
        for key in layer:
            for delta in allocations[stage]:
                child = list(key)
                for ell, d in enumerate(delta):
                    if not d:
                        continue
                    pe = key[q + ell]
                    child[ell] += d
                    child[q + ell] = rounder.exponent_linear([(1, pe)], d * p)
                    child[2 * q + ell] = rounder.exponent_linear([(1, key[2 * q + ell])], d * w)
                    # (d * P + d(d+1)/2 * p) * w, doubled to stay integral
                    child[3 * q + ell] = rounder.exponent_linear(
                        [(2, key[3 * q + ell]), (2 * d * w, pe)], d * (d + 1) * p * w, div=2
                    )
                child = tuple(child)
                if child in nxt or not prefix_ok(child[:q], caps):
                    continue
                nxt[child] = (key, delta)
        total += len(nxt)
        if total > state_cap:
            raise StateSpaceExceeded(state_cap, total)
        parents.append(nxt)
        layer = nxt

    best_key, best_val = best_terminal(rounder, inst.supply.u, layer, q)

    deltas: list[tuple[int, ...]] = [()] * h
    key = best_key
    for stage in range(h - 1, -1, -1):
        key, deltas[stage] = parents[stage][key]

    loads = [sum(deltas[st][ell] * classes[i].p for st, i in enumerate(order)) for ell in range(q)]
    starts = period_starts(inst.supply.u, loads)
    blocks = []
    for ell in range(q):
        t = starts[ell]
        for stage, i in enumerate(order):
            d = deltas[stage][ell]
            if d:
                blocks.append(Block(ell, i, t, d))
                t += d * classes[i].p
    sched = CompactSchedule(tuple(blocks))
    return SolveReport(
        algorithm="fptas-hme",
        objective=compact_objective(inst, sched),
        schedule=sched,
        guarantee=(1 + eps) ** 4,
        stats={
            "states": total,
            "rounded_value": best_val,
            "eligible_tuples": eligible_counts,
            "allocation": {i: deltas[stage] for stage, i in enumerate(order)},
        },
    )
