"""Line-based text formats for instances and schedules.

Instance::

    NORMAL                     HME
    jobs <n>                   classes <h>
    job <p> <w> <a>            class <s> <p> <w> <a>
    supplies <q>               supplies <q>
    supply <u> <btilde>        supply <u> <btilde>

Schedule: ``start <job> <t>`` lines, or ``block <period> <class> <t> <count>``
lines for compact schedules, plus an optional ``objective <value>``.
Indices are 1-based in files.  ``#`` starts a comment.
"""

from __future__ import annotations

from typing import Iterator, Optional, Union

from .errors import InvariantViolation, ParseError
from .model import Block, CompactSchedule, Instance, Job, JobClass, Schedule, SupplyProfile


def _lines(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield lineno, body


def _ints(lineno: int, fields: list[str], count: int) -> list[int]:
    if len(fields) != count:
        raise ParseError(lineno, f"expected {count} numbers, got {len(fields)}")
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(fields)!r}") from None


def _expect(lines, keyword: str, last_line: int) -> tuple[int, list[str]]:
    try:
        lineno, fields = next(lines)
    except StopIteration:
        raise ParseError(last_line + 1, f"unexpected end of input, expected {keyword!r}") from None
    if fields[0] != keyword:
        raise ParseError(lineno, f"expected {keyword!r}, got {fields[0]!r}")
    return lineno, fields[1:]


def parse_instance(text: str) -> Instance:
    lines = _lines(text)
    try:
        lineno, fields = next(lines)
    except StopIteration:
        raise ParseError(1, "empty instance file") from None
    kind = fields[0].upper()
    if kind not in ("NORMAL", "HME") or len(fields) != 1:
        raise ParseError(lineno, "first line must be NORMAL or HME")
    items: list[Union[Job, JobClass]] = []
    if kind == "NORMAL":
        lineno, rest = _expect(lines, "jobs", lineno)
        (count,) = _ints(lineno, rest, 1)
        for _ in range(count):
            lineno, rest = _expect(lines, "job", lineno)
            p, w, a = _ints(lineno, rest, 3)
            try:
                items.append(Job(p, w, a))
            except InvariantViolation as exc:
                raise ParseError(lineno, str(exc)) from None
    else:
        lineno, rest = _expect(lines, "classes", lineno)
        (count,) = _ints(lineno, rest, 1)
        for _ in range(count):
            lineno, rest = _expect(lines, "class", lineno)
            s, p, w, a = _ints(lineno, rest, 4)
            try:
                items.append(JobClass(s, p, w, a))
            except InvariantViolation as exc:
                raise ParseError(lineno, str(exc)) from None
    lineno, rest = _expect(lines, "supplies", lineno)
    (q,) = _ints(lineno, rest, 1)
    u: list[int] = []
    btilde: list[int] = []
    for k in range(q):
        lineno, rest = _expect(lines, "supply", lineno)
        t, b = _ints(lineno, rest, 2)
        if k == 0 and t != 0:
            raise ParseError(lineno, "first supply must be at u = 0")
        if u and t <= u[-1]:
            raise ParseError(lineno, f"supply at {t} after {u[-1]}: u strictly increasing is required")
        u.append(t)
        btilde.append(b)
    extra = next(lines, None)
    if extra is not None:
        raise ParseError(extra[0], f"unexpected trailing content {extra[1][0]!r}")
    try:
        supply = SupplyProfile(tuple(u), tuple(btilde))
        if kind == "NORMAL":
            return Instance.normal(items, supply)
        return Instance.hme(items, supply)
    except InvariantViolation as exc:
        raise ParseError(lineno, str(exc)) from None


def format_instance(inst: Instance) -> str:
    out = [inst.kind]
    if inst.is_hme:
        out.append(f"classes {len(inst.classes)}")
        out += [f"class {c.s} {c.p} {c.w} {c.a}" for c in inst.classes]
    else:
        out.append(f"jobs {len(inst.jobs)}")
        out += [f"job {j.p} {j.w} {j.a}" for j in inst.jobs]
    out.append(f"supplies {inst.q}")
    out += [f"supply {t} {b}" for t, b in zip(inst.supply.u, inst.supply.btilde)]
    return "\n".join(out) + "\n"


def parse_schedule(text: str, n: Optional[int] = None) -> tuple[Union[Schedule, CompactSchedule], Optional[int]]:
    """Read a schedule file; returns (schedule, objective line value or None).

    ``n`` (job count) is required to check a ``start`` schedule for gaps.
    """
    starts: dict[int, int] = {}
    blocks: list[Block] = []
    value = None
    for lineno, fields in _lines(text):
        key, rest = fields[0], fields[1:]
        if key == "objective":
            (value,) = _ints(lineno, rest, 1)
        elif key == "start":
            job, t = _ints(lineno, rest, 2)
            if job < 1 or job in starts:
                raise ParseError(lineno, f"bad or repeated job index {job}")
            if t < 0:
                raise ParseError(lineno, "start times must be non-negative")
            starts[job] = t
        elif key == "block":
            period, cls, t, count = _ints(lineno, rest, 4)
            try:
                blocks.append(Block(period - 1, cls - 1, t, count))
            except InvariantViolation as exc:
                raise ParseError(lineno, str(exc)) from None
        else:
            raise ParseError(lineno, f"unknown keyword {key!r}")
        if starts and blocks:
            raise ParseError(lineno, "cannot mix start and block lines")
    if blocks:
        return CompactSchedule(tuple(blocks)), value
    size = n if n is not None else max(starts, default=0)
    missing = [j for j in range(1, size + 1) if j not in starts]
    if missing or len(starts) != size:
        raise ParseError(0, f"schedule must give one start per job 1..{size}; missing {missing[:5]}")
    return Schedule(tuple(starts[j] for j in range(1, size + 1))), value


def format_schedule(sched: Union[Schedule, CompactSchedule], value: Optional[int] = None) -> str:
    out = []
    if value is not None:
        out.append(f"objective {value}")
    if isinstance(sched, CompactSchedule):
        out += [f"block {b.period + 1} {b.cls + 1} {b.t} {b.count}" for b in sched.blocks]
    else:
        out += [f"start {j + 1} {t}" for j, t in enumerate(sched.start)]
    return "\n".join(out) + "\n"
