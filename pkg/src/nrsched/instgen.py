"""Instance generators: random families, the partition reduction, the tight pair."""

from __future__ import annotations

import random
import re
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .errors import InvalidProfile, InvariantViolation, OverflowBudget
from .model import Block, CompactSchedule, Instance, Job, JobClass, SupplyProfile

BIT_BUDGET = 127

_PROFILE_RE = re.compile(r"^(uniform_a|unit_p_w_eq_a|general|hme)(?:[(:](\d+)\)?)?$")


@dataclass(frozen=True)
class Profile:
    family: str
    param: Optional[int] = None

    @classmethod
    def parse(cls, text: Union[str, "Profile"]) -> "Profile":
        if isinstance(text, Profile):
            return text
        m = _PROFILE_RE.match(text.strip())
        if not m:
            raise InvalidProfile(f"unknown profile {text!r}")
        family, param = m.group(1), m.group(2)
        if family in ("uniform_a", "hme"):
            value = int(param) if param else (1 if family == "uniform_a" else 2)
            if value < 1:
                raise InvalidProfile(f"{family} needs a positive parameter")
            return cls(family, value)
        if param:
            raise InvalidProfile(f"profile {family} takes no parameter")
        return cls(family)


def _split(rng: random.Random, total: int, parts: int) -> list[int]:
    """Random composition of ``total`` into ``parts`` positive integers."""
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    return [b - a for a, b in zip([0] + cuts, cuts + [total])]


def _supply(rng: random.Random, demand: int, q: int, surplus: int, umax: int) -> SupplyProfile:
    total = max(demand + surplus, q)
    u = [0]
    for _ in range(q - 1):
        u.append(u[-1] + rng.randint(1, umax))
    return SupplyProfile(tuple(u), tuple(_split(rng, total, q)))


def gen_random(
    seed,
    n: int,
    q: int,
    profile: Union[str, Profile] = "general",
    pmax: int = 9,
    wmax: Optional[int] = None,
    amax: int = 5,
    umax: Optional[int] = None,
    surplus: int = 0,
    unit_weights: bool = False,
) -> Instance:
    """Deterministic random instance for one of the restricted families.

    ``uniform_a(abar)``: all a_j = abar.  ``unit_p_w_eq_a``: p_j = 1 and
    w_j = a_j.  ``general``: independent p, w, a (a may be 0).  ``hme(h)``:
    h classes with common a = 1 and multiplicities summing to n.
    Supply totals demand plus ``surplus`` (raised to q if smaller).
    """
    prof = Profile.parse(profile)
    if n < 1 or q < 1:
        raise InvalidProfile("n and q must be positive")
    rng = random.Random(seed)
    wmax = wmax or pmax
    umax = umax or max(2, n * pmax // max(q, 1))
    if prof.family == "uniform_a":
        jobs = [Job(rng.randint(1, pmax), 1 if unit_weights else rng.randint(1, wmax), prof.param) for _ in range(n)]
        return Instance.normal(jobs, _supply(rng, n * prof.param, q, surplus, umax))
    if prof.family == "unit_p_w_eq_a":
        weights = [rng.randint(1, wmax) for _ in range(n)]
        jobs = [Job(1, w, w) for w in weights]
        return Instance.normal(jobs, _supply(rng, sum(weights), q, surplus, max(umax, 2)))
    if prof.family == "general":
        jobs = [
            Job(rng.randint(1, pmax), 1 if unit_weights else rng.randint(1, wmax), rng.randint(0, amax))
            for _ in range(n)
        ]
        return Instance.normal(jobs, _supply(rng, sum(j.a for j in jobs), q, surplus, umax))
    h = prof.param
    if n < h:
        raise InvalidProfile(f"hme({h}) needs n >= {h}")
    counts = _split(rng, n, h) if h > 1 else [n]
    classes = [
        JobClass(s, rng.randint(1, pmax), 1 if unit_weights else rng.randint(1, wmax), 1) for s in counts
    ]
    return Instance.hme(classes, _supply(rng, n, q, surplus, umax))


@dataclass(frozen=True)
class PartitionReduction:
    """Scheduling instance built from an equal-cardinality partition instance.

    Classes are ordered: small, big, then one medium class per distinct
    item size (ascending).  With scaled bases the "no" direction of the
    reduction is not guaranteed; only the yes-certificate construction is.
    """

    instance: Instance
    threshold: int
    v_small: int
    v_medium: int
    v_big: int
    items: tuple[int, ...]
    m_med: int
    m_big: int
    u2: int
    medium_sizes: tuple[int, ...]

    def yes_schedule(self, half: Sequence[int]) -> CompactSchedule:
        """Schedule of a planted partition: ``half`` (item indices) before u_2, rest after.

        Before u_2 the chosen medium jobs run from 0; from u_2 on the small
        jobs, the other medium jobs and the big jobs follow, each group in
        non-decreasing processing time.
        """
        n = len(self.items)
        half = list(half)
        if len(set(half)) != n // 2 or any(not 0 <= i < n for i in half):
            raise InvariantViolation("half must name n/2 distinct items")
        classes = self.instance.classes
        first = Counter(self.items[i] for i in half)
        rest = Counter(self.items) - first
        blocks = []
        t = 0
        for e in sorted(first):
            idx = 2 + self.medium_sizes.index(e)
            blocks.append(Block(0, idx, t, first[e]))
            t += first[e] * classes[idx].p
        t = max(t, self.u2)
        blocks.append(Block(1, 0, t, self.m_big))
        t += self.m_big
        for e in sorted(rest):
            idx = 2 + self.medium_sizes.index(e)
            blocks.append(Block(1, idx, t, rest[e]))
            t += rest[e] * classes[idx].p
        blocks.append(Block(1, 1, t, self.m_big))
        return CompactSchedule(tuple(blocks))


def _comb2(x: int) -> int:
    return x * (x - 1) // 2


def gen_partition_reduction(
    items: Sequence[int],
    m_med: Optional[int] = None,
    m_big: Optional[int] = None,
    bit_budget: int = BIT_BUDGET,
) -> PartitionReduction:
    """Instance and threshold V' = V_s + V_m + V_b of the hardness reduction.

    The original bases are 20**(n*n) and 200**(n*n); defaults are the much
    smaller 20*n*n and 200*n*n.
    """
    items = tuple(items)
    n = len(items)
    if n == 0 or n % 2:
        raise InvariantViolation("number of items must be positive and even")
    if any(e < 0 for e in items) or sum(items) % 2:
        raise InvariantViolation("item sizes must be non-negative with an even total")
    A = sum(items) // 2
    m_med = 20 * n * n if m_med is None else m_med
    m_big = 200 * n * n if m_big is None else m_big
    half = n // 2
    u2 = half * m_med + A
    v_small = m_big * u2 + _comb2(m_big + 1)
    v_medium = 2 * (m_med + A) * _comb2(half + 1) + (u2 + m_big) * half
    v_big = m_big * (u2 + m_big + m_med * half + A) + m_big * _comb2(m_big + 1)
    threshold = v_small + v_medium + v_big
    for name, value in (("threshold", threshold), ("big processing time", m_big), ("u2", u2)):
        if value.bit_length() > bit_budget:
            raise OverflowBudget(f"{name} needs {value.bit_length()} bits > budget {bit_budget}")
    sizes = tuple(sorted(set(items)))
    counts = Counter(items)
    classes = [JobClass(m_big, 1, 1, 1), JobClass(m_big, m_big, 1, 1)]
    classes += [JobClass(counts[e], m_med + e, 1, 1) for e in sizes]
    supply = SupplyProfile((0, u2), (half, 2 * m_big + half))
    return PartitionReduction(
        instance=Instance.hme(classes, supply),
        threshold=threshold,
        v_small=v_small,
        v_medium=v_medium,
        v_big=v_big,
        items=items,
        m_med=m_med,
        m_big=m_big,
        u2=u2,
        medium_sizes=sizes,
    )


def gen_tight_pair(w: int, eps_gap: int = 1) -> Instance:
    """Two unit jobs with w_j = a_j on which weight ordering is nearly 2x off."""
    if not w > eps_gap >= 1:
        raise InvariantViolation("need w > eps_gap >= 1")
    jobs = [Job(1, w, w), Job(1, w - eps_gap, w - eps_gap)]
    return Instance.normal(jobs, SupplyProfile((0, w), (w - eps_gap, w)))


def tight_pair_values(w: int, eps_gap: int = 1) -> tuple[int, int]:
    """Closed forms (greedy value, optimum) for :func:`gen_tight_pair`."""
    return 2 * w * w + 3 * w - eps_gap * (w + 2), w * w + 2 * w - eps_gap

