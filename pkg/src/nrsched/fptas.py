"""FPTAS for 1|nr=1, a_j=abar, q const|sum w_j C_j by geometric state rounding.

The exact DP's state components are rounded up to integer powers of
``base = 1 + eps/(2n)``.  Rounded values are kept as exponents; the real
number behind an exponent is an exact rational, and every exponent is
chosen with exact integer comparisons so that two states built along
different paths dedupe exactly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import InvalidEpsilon, StateSpaceExceeded
from .evaluator import objective
from .exact_dp import (
    DEFAULT_Q_LIMIT,
    DEFAULT_STATE_CAP,
    check_dp_preconditions,
    prefix_ok,
    schedule_from_assignment,
    state_value,
    wspt_order,
)
from .model import Instance, SolveReport, expand_hme

Rational = Union[int, Fraction]


def parse_eps(eps) -> Fraction:
    """Accuracy as an exact Fraction in (0, 1]; accepts "1/4", "0.25", 0.25, Fraction."""
    try:
        value = Fraction(eps) if not isinstance(eps, float) else Fraction(str(eps))
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InvalidEpsilon(f"cannot read accuracy {eps!r}") from exc
    if not 0 < value <= 1:
        raise InvalidEpsilon(f"accuracy must lie in (0, 1], got {value}")
    return value


@dataclass(frozen=True)
class RoundedValue:
    """``base ** exponent``, or exactly zero when ``exponent`` is None."""

    exponent: Optional[int]
    base: Fraction

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    @property
    def value(self) -> Fraction:
        if self.exponent is None:
            return Fraction(0)
        return self.base**self.exponent

    def __eq__(self, other):
        if not isinstance(other, RoundedValue):
            return NotImplemented
        return self.exponent == other.exponent

    def __hash__(self):
        return hash(self.exponent)


class GeometricRounder:
    """Round non-negative rationals up to the next power of ``base`` (> 1).

    Powers are cached as (numerator, denominator) pairs of the reduced
    base, so ``base**k`` is already in lowest terms and sums of rounded
    values can be formed over a common power of the denominator without
    any gcd work.
    """

    # float estimates closer than this to an integer are settled exactly
    GUARD = 1e-6

    def __init__(self, base: Fraction):
        base = Fraction(base)
        if base <= 1:
            raise ValueError("rounding base must exceed 1")
        self.base = base
        self._log_base = math.log(base.numerator) - math.log(base.denominator)
        self._num = [1]
        self._den = [1]
        self._values: dict = {}

    def _power(self, k: int) -> tuple[int, int]:
        if k < 0:
            return self.base.denominator ** (-k), self.base.numerator ** (-k)
        while len(self._num) <= k:
            self._num.append(self._num[-1] * self.base.numerator)
            self._den.append(self._den[-1] * self.base.denominator)
        return self._num[k], self._den[k]

    def value(self, exponent: Optional[int]) -> Fraction:
        if exponent is None:
            return Fraction(0)
        hit = self._values.get(exponent)
        if hit is None:
            hit = self._values[exponent] = Fraction(*self._power(exponent))
        return hit

    def scaled(self, exponent: Optional[int], top: int) -> int:
        """base**exponent * den**top as an integer (0 <= exponent <= top)."""
        if exponent is None:
            return 0
        num, _ = self._power(exponent)
        return num * self._power(top - exponent)[1]

    def _covers(self, k: int, num: int, den: int) -> bool:
        pnum, pden = self._power(k)
        return num * pden <= pnum * den

    def exponent_of(self, num: int, den: int) -> Optional[int]:
        """Smallest k with base**k >= num/den; None for zero."""
        if num < 0 or den <= 0:
            raise ValueError("cannot round a negative value")
        if num == 0:
            return None
        lnum, lden = math.log(num), math.log(den)
        guess = (lnum - lden) / self._log_base
        k = math.ceil(guess)
        # a few ulps of each log, scaled by 1/log(base), must stay inside the guard
        slack = (abs(lnum) + abs(lden) + 1.0) * 1e-15 / self._log_base
        if slack < self.GUARD / 2 and abs(guess - round(guess)) > self.GUARD:
            return k
        while not self._covers(k, num, den):
            k += 1
        while self._covers(k - 1, num, den):
            k -= 1
        return k

    def exponent(self, v: Rational) -> Optional[int]:
        v = Fraction(v)
        if v < 0:
            raise ValueError("cannot round a negative value")
        return self.exponent_of(v.numerator, v.denominator)

    def exponent_linear(self, terms, const: int = 0, div: int = 1) -> Optional[int]:
        """Exponent of r((const + sum coef * base**exp) / div) for integer coefficients."""
        top = max((e for _, e in terms if e is not None), default=0)
        top = max(top, 0)
        num = const * self._power(top)[1]
        for coef, e in terms:
            if coef and e is not None:
                num += coef * self.scaled(e, top)
        return self.exponent_of(num, self._power(top)[1] * div)

    def round(self, v: Rational) -> RoundedValue:
        return RoundedValue(self.exponent(v), self.base)


def best_terminal(rounder: GeometricRounder, u, layer, q: int):
    """Terminal key of smallest rounded value (first one on ties) and that value.

    All components are brought to the common denominator den**top, so
    the comparison is exact integer arithmetic.
    """
    top = max([e for key in layer for e in key[q:] if e is not None] + [0])
    scale = rounder._power(top)[1]
    u_scaled = [t * scale for t in u]
    best_key, best_val = None, None
    for key in layer:
        P = [rounder.scaled(e, top) for e in key[q : 2 * q]]
        W = [rounder.scaled(e, top) for e in key[2 * q : 3 * q]]
        WP = [rounder.scaled(e, top) * scale for e in key[3 * q :]]
        value = state_value(u_scaled, P, W, WP)
        if best_val is None or value < best_val:
            best_key, best_val = key, value
    return best_key, Fraction(best_val, scale * scale)


def round_up(v: Rational, eps, n: int) -> RoundedValue:
    """r(v) with base 1 + eps/(2n)."""
    eps = parse_eps(eps)
    return GeometricRounder(1 + eps / (2 * n)).round(v)


def rounding_sequence(values, eps, n: int) -> list[Fraction]:
    """Running rounded sums g_i = r(v_i + g_{i-1}), g_0 = 0."""
    rounder = GeometricRounder(1 + parse_eps(eps) / (2 * n))
    out, exp = [], None
    for v in values:
        exp = rounder.exponent(rounder.value(exp) + Fraction(v))
        out.append(rounder.value(exp))
    return out


def fptas_solve(
    inst: Instance,
    eps,
    q_limit: int = DEFAULT_Q_LIMIT,
    state_cap: int = DEFAULT_STATE_CAP,
) -> SolveReport:
    """Schedule with objective at most (1 + 3 eps) times the optimum.

    The reported objective is the exact value of the reconstructed
    schedule, which never exceeds the rounded value of the chosen state.
    """
    eps = parse_eps(eps)
    inst = expand_hme(inst)
    caps = check_dp_preconditions(inst, q_limit)
    q, n = inst.q, inst.n
    order = wspt_order(inst.jobs)
    rounder = GeometricRounder(1 + eps / (2 * n))

    # key layout: N (q) | exp P (q) | exp W (q) | exp WP (q); None marks zero
    layer: dict[tuple, tuple] = {(0,) * q + (None,) * (3 * q): None}
    parents: list[dict[tuple, tuple]] = []
    seen_exps: list[set] = [{None}, {None}, {None}]
    memo: dict = {}

    def add(e, x):
        k = (e, x)
        if k not in memo:
            memo[k] = rounder.exponent_linear([(1, e)], x)
        return memo[k]

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
                pe, we, wpe = key[q + ell], key[2 * q + ell], key[3 * q + ell]
                child = list(key)
                child[ell] += 1
                child[q + ell] = add(pe, p)
                child[2 * q + ell] = add(we, w)
                wp_key = (wpe, pe, p, w)
                if wp_key not in memo:
                    memo[wp_key] = rounder.exponent_linear([(1, wpe), (w, pe)], w * p)
                child[3 * q + ell] = memo[wp_key]
                child = tuple(child)
                if child not in nxt:
                    nxt[child] = (key, ell)
                    for kind in range(3):
                        seen_exps[kind].add(child[(kind + 1) * q + ell])
        total += len(nxt)
        if total > state_cap:
            raise StateSpaceExceeded(state_cap, total)
        parents.append(nxt)
        layer = nxt

    best_key, best_val = best_terminal(rounder, inst.supply.u, layer, q)

    periods = [0] * n
    key = best_key
    for k in range(n - 1, -1, -1):
        key, periods[k] = parents[k][key]
    sched = schedule_from_assignment(inst, order, periods)
    return SolveReport(
        algorithm="fptas",
        objective=objective(inst, sched),
        schedule=sched,
        guarantee=1 + 3 * eps,
        stats={
            "states": total,
            "rounded_value": best_val,
            "distinct_exponents": {
                "P": len(seen_exps[0]),
                "W": len(seen_exps[1]),
                "WP": len(seen_exps[2]),
            },
        },
    )
