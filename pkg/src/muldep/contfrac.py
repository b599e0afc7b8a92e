"""Certified continued-fraction expansion and Legendre-style reduction.

Partial quotients are extracted from an interval enclosure of the target
number; a quotient is accepted only when floor(lo) == floor(hi), so every
reported convergent is proven.  The reduction step turns a certified
lower bound on |alpha - p/q| over bounded denominators into an upper
bound on the exponent variable of a shrinking right-hand side.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from gmpy2 import mpq

import gmpy2

from .intervals import DEFAULT_PREC, MAX_PREC, Interval, PrecisionError


@dataclass(frozen=True)
class Convergent:
    index: int
    p: int
    q: int
    error: Interval  # enclosure of |alpha - p/q|


AlphaSource = Callable[[int], Interval]


def log_ratio_source(num: int, den: int) -> AlphaSource:
    """Alpha source for log(num)/log(den), recomputable at any precision."""

    def make(prec: int) -> Interval:
        return Interval.log_of(num, prec) / Interval.log_of(den, prec)

    return make


def _as_source(alpha) -> AlphaSource:
    if callable(alpha):
        return alpha
    if isinstance(alpha, Interval):
        def fixed(prec: int) -> Interval:
            if prec > alpha.prec:
                raise PrecisionError("fixed interval cannot be refined")
            return alpha
        return fixed
    raise TypeError("alpha must be an Interval or a precision -> Interval callable")


def _floor_certain(iv: Interval) -> int | None:
    lo = gmpy2.mpz(gmpy2.floor(iv.lo))
    hi = gmpy2.mpz(gmpy2.floor(iv.hi))
    return int(lo) if lo == hi else None


def _expand(source: AlphaSource, prec: int, count: int | None, target: int | None):
    alpha = source(prec)
    tail = alpha
    h_prev, h = 1, None  # p_{-1}, p_0 ...
    k_prev, k = 0, None
    out: list[Convergent] = []
    i = 0
    while True:
        a = _floor_certain(tail)
        if a is None:
            raise PrecisionError(f"partial quotient {i} ambiguous at {prec} bits")
        if i == 0:
            h, k = a, 1
        else:
            h, h_prev = a * h + h_prev, h
            k, k_prev = a * k + k_prev, k
        err = (alpha - Interval.exact(mpq(h, k), prec)).abs()
        out.append(Convergent(i, int(h), int(k), err))
        if count is not None and i + 1 >= count:
            return out
        if target is not None and k >= target:
            return out
        frac = tail - Interval.exact(a, prec)
        if frac.lo <= 0:
            raise PrecisionError(f"tail enclosure touches 0 at quotient {i}")
        tail = Interval.exact(1, prec) / frac
        i += 1


def convergents(
    alpha,
    count: int | None = None,
    denominator_target: int | None = None,
    prec: int = DEFAULT_PREC,
    prec_limit: int = MAX_PREC,
) -> list[Convergent]:
    """Certified convergents p_i/q_i of alpha.

    Stops after ``count`` convergents or at the first denominator
    >= ``denominator_target``.  Precision doubles automatically whenever
    a partial quotient cannot be certified.
    """
    if (count is None) == (denominator_target is None):
        raise ValueError("specify exactly one of count / denominator_target")
    source = _as_source(alpha)
    while True:
        try:
            return _expand(source, prec, count, denominator_target)
        except PrecisionError:
            if prec >= prec_limit:
                raise
            prec *= 2


def approximation_error_floor(
    alpha, denom_bound: int, prec: int = DEFAULT_PREC
) -> tuple[Convergent, Interval]:
    """Certified lower bound on |alpha - p/q| over all 1 <= q <= denom_bound.

    Returns the smallest convergent with denominator >= denom_bound; by
    the best-approximation property its error bounds every fraction with
    a smaller denominator from below.
    """
    convs = convergents(alpha, denominator_target=denom_bound, prec=prec)
    last = convs[-1]
    if last.q < denom_bound:
        raise PrecisionError("expansion stopped before reaching denominator bound")
    if last.index < 1:
        raise ValueError("denominator bound reached at index 0; the best-"
                         "approximation floor needs index >= 1")
    if not last.error.lo > 0:
        raise PrecisionError("error enclosure touches zero; raise precision")
    return last, last.error


def legendre_reduce(
    alpha,
    denom_bound: int,
    rhs: Callable[[int], Interval],
    x_start: int = 1,
    x_cap: int = 10**7,
    prec: int = DEFAULT_PREC,
) -> int:
    """Largest x not excluded by  error_floor > rhs(x).

    ``rhs`` must be monotone decreasing in x.  Any x with
    rhs(x) < error_floor proven cannot admit a solution; the returned
    x_max is the last surviving x.  Raises if no x up to ``x_cap`` is
    excluded (the reduction then says nothing).
    """
    _, err = approximation_error_floor(alpha, denom_bound, prec)
    lo_ok, hi_bad = None, None
    x = max(x_start, 1)
    # exponential probe for the first excluded x, then binary search
    step = 1
    while x <= x_cap:
        if rhs(x).lt(Interval(err.lo, err.lo, err.prec)) is True:
            hi_bad = x
            break
        lo_ok = x
        x += step
        step *= 2
    if hi_bad is None:
        raise ArithmeticError(f"reduction excludes no x up to {x_cap}")
    if lo_ok is None:
        return x_start - 1
    lo, hi = lo_ok, hi_bad
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if rhs(mid).lt(Interval(err.lo, err.lo, err.prec)) is True:
            hi = mid
        else:
            lo = mid
    return lo
