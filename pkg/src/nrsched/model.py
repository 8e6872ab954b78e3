"""Instances, supply profiles and schedules for 1|nr=1|sum w_j C_j.

All quantities are Python ints, so objective values never overflow.
Everything here is immutable after construction.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .errors import InvariantViolation, NonUniformRequirement, SizeLimit, ZeroRequirement

EXPANSION_CAP = 10**6


def _check_int(name: str, value, minimum: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InvariantViolation(f"{name} must be an integer, got {value!r}")
    if value < minimum:
        raise InvariantViolation(f"{name} must be >= {minimum}, got {value}")


@dataclass(frozen=True)
class Job:
    p: int
    w: int
    a: int

    def __post_init__(self):
        _check_int("p", self.p, 1)
        _check_int("w", self.w, 1)
        _check_int("a", self.a, 0)


@dataclass(frozen=True)
class JobClass:
    """``s`` identical jobs sharing processing time, weight and requirement."""

    s: int
    p: int
    w: int
    a: int

    def __post_init__(self):
        _check_int("s", self.s, 1)
        _check_int("p", self.p, 1)
        _check_int("w", self.w, 1)
        _check_int("a", self.a, 0)

    @property
    def job(self) -> Job:
        return Job(self.p, self.w, self.a)


@dataclass(frozen=True)
class SupplyProfile:
    """Supply time points ``u`` (starting at 0) and the quantity delivered at each."""

    u: tuple[int, ...]
    btilde: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "u", tuple(self.u))
        object.__setattr__(self, "btilde", tuple(self.btilde))
        if not self.u:
            raise InvariantViolation("supply profile needs at least one supply (q >= 1)")
        if len(self.u) != len(self.btilde):
            raise InvariantViolation("u and btilde must have the same length")
        for t in self.u:
            _check_int("u", t, 0)
        for b in self.btilde:
            _check_int("btilde", b, 1)
        if self.u[0] != 0:
            raise InvariantViolation("first supply time point must be u_1 = 0")
        if any(x >= y for x, y in zip(self.u, self.u[1:])):
            raise InvariantViolation("u strictly increasing is required")

    @property
    def q(self) -> int:
        return len(self.u)

    @property
    def cumulative(self) -> tuple[int, ...]:
        out, acc = [], 0
        for b in self.btilde:
            acc += b
            out.append(acc)
        return tuple(out)

    @property
    def total(self) -> int:
        return sum(self.btilde)

    def period_of(self, t: int) -> int:
        """0-based index of the latest supply point not after ``t``."""
        lo, hi = 0, len(self.u) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.u[mid] <= t:
                lo = mid
            else:
                hi = mid - 1
        return lo


@dataclass(frozen=True)
class Instance:
    """A problem instance: either explicit ``jobs`` or hme ``classes``, plus supply.

    Exactly one of ``jobs`` / ``classes`` is set.  Use :meth:`normal` or
    :meth:`hme` rather than the raw constructor.
    """

    supply: SupplyProfile
    jobs: Optional[tuple[Job, ...]] = None
    classes: Optional[tuple[JobClass, ...]] = None

    def __post_init__(self):
        if (self.jobs is None) == (self.classes is None):
            raise InvariantViolation("instance needs exactly one of jobs or classes")
        if self.jobs is not None:
            object.__setattr__(self, "jobs", tuple(self.jobs))
            if not self.jobs:
                raise InvariantViolation("instance needs at least one job")
        else:
            object.__setattr__(self, "classes", tuple(self.classes))
            if not self.classes:
                raise InvariantViolation("instance needs at least one job class")

    @classmethod
    def normal(cls, jobs: Sequence[Job], supply: SupplyProfile) -> "Instance":
        return cls(supply=supply, jobs=tuple(jobs))

    @classmethod
    def hme(cls, classes: Sequence[JobClass], supply: SupplyProfile) -> "Instance":
        return cls(supply=supply, classes=tuple(classes))

    @property
    def is_hme(self) -> bool:
        return self.classes is not None

    @property
    def kind(self) -> str:
        return "HME" if self.is_hme else "NORMAL"

    @property
    def n(self) -> int:
        if self.is_hme:
            return sum(c.s for c in self.classes)
        return len(self.jobs)

    @property
    def h(self) -> int:
        return len(self.classes) if self.is_hme else len(self.jobs)

    @property
    def q(self) -> int:
        return self.supply.q

    def job_types(self) -> tuple[Job, ...]:
        """One Job per class (hme) or per job (normal)."""
        if self.is_hme:
            return tuple(c.job for c in self.classes)
        return self.jobs

    @property
    def total_demand(self) -> int:
        if self.is_hme:
            return sum(c.s * c.a for c in self.classes)
        return sum(j.a for j in self.jobs)

    @property
    def solvable(self) -> bool:
        return self.total_demand <= self.supply.total

    def common_requirement(self) -> int:
        """The shared requirement ``abar``; raises if jobs differ."""
        reqs = {j.a for j in self.job_types()}
        if len(reqs) != 1:
            raise NonUniformRequirement(f"jobs have differing requirements {sorted(reqs)}")
        return reqs.pop()


def prefix_supply(inst: Instance) -> tuple[int, ...]:
    return inst.supply.cumulative


def job_capacity_prefix(inst: Instance, abar: int) -> tuple[int, ...]:
    """Number of jobs servable from the first l supplies, ``floor(b_l / abar)``."""
    if abar == 0:
        raise ZeroRequirement("abar = 0: resource never binds, use the unconstrained path")
    for j in inst.job_types():
        if j.a != abar:
            raise NonUniformRequirement(f"job requirement {j.a} differs from abar={abar}")
    return tuple(b // abar for b in prefix_supply(inst))


def expand_hme(inst: Instance, cap: int = EXPANSION_CAP) -> Instance:
    """Replace every class by ``s`` explicit jobs, keeping class order."""
    if not inst.is_hme:
        return inst
    total = inst.n
    if total > cap:
        raise SizeLimit(f"expanding {total} jobs exceeds cap {cap}")
    jobs = [c.job for c in inst.classes for _ in range(c.s)]
    return Instance.normal(jobs, inst.supply)


def group_identical(inst: Instance) -> Instance:
    """Collapse identical explicit jobs into classes (first-occurrence order)."""
    if inst.is_hme:
        return inst
    counts = Counter(inst.jobs)
    seen: dict[Job, None] = dict.fromkeys(inst.jobs)
    classes = [JobClass(counts[j], j.p, j.w, j.a) for j in seen]
    return Instance.hme(classes, inst.supply)


def class_offsets(inst: Instance) -> tuple[int, ...]:
    """Index in ``expand_hme(inst)`` of the first job of each class."""
    out, acc = [], 0
    for c in inst.classes:
        out.append(acc)
        acc += c.s
    return tuple(out)


@dataclass(frozen=True)
class Schedule:
    """Start time per job, indexed like ``inst.jobs``."""

    start: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "start", tuple(self.start))
        for t in self.start:
            _check_int("start time", t, 0)

    def completion(self, inst: Instance) -> tuple[int, ...]:
        return tuple(s + j.p for s, j in zip(self.start, inst.jobs))


@dataclass(frozen=True, order=True)
class Block:
    """``count`` jobs of class ``cls`` run back-to-back from ``t``, started in ``period``.

    ``period`` and ``cls`` are 0-based.
    """

    period: int
    cls: int
    t: int
    count: int

    def __post_init__(self):
        _check_int("period", self.period, 0)
        _check_int("class", self.cls, 0)
        _check_int("t", self.t, 0)
        _check_int("count", self.count, 1)


@dataclass(frozen=True)
class CompactSchedule:
    blocks: tuple[Block, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))

    def counts(self, h: int) -> list[int]:
        out = [0] * h
        for b in self.blocks:
            out[b.cls] += b.count
        return out

    def expand(self, inst: Instance, cap: int = EXPANSION_CAP) -> Schedule:
        """Explicit schedule for ``expand_hme(inst)``.

        Jobs of a class are handed out to blocks in order of block start.
        """
        if inst.n > cap:
            raise SizeLimit(f"expanding {inst.n} jobs exceeds cap {cap}")
        offsets = class_offsets(inst)
        used = [0] * inst.h
        start = [None] * inst.n
        for b in sorted(self.blocks, key=lambda b: (b.t, b.cls)):
            c = inst.classes[b.cls]
            if used[b.cls] + b.count > c.s:
                raise InvariantViolation(f"class {b.cls + 1} scheduled more than s={c.s} times")
            for k in range(b.count):
                start[offsets[b.cls] + used[b.cls] + k] = b.t + k * c.p
            used[b.cls] += b.count
        if any(t is None for t in start):
            raise InvariantViolation("compact schedule leaves jobs unscheduled")
        return Schedule(tuple(start))


@dataclass(frozen=True)
class SolveReport:
    """What a solver returns: the schedule, its exact objective and metadata."""

    algorithm: str
    objective: int
    schedule: Union[Schedule, CompactSchedule]
    guarantee: Optional[Fraction] = None
    lower_bounds: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()
    stats: dict = field(default_factory=dict)
