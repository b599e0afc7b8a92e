"""Outward-rounded interval arithmetic on gmpy2 mpfr values.

Every operation returns an enclosure of the exact result, so any
comparison that comes back True or False is a proof at the working
precision.  Comparisons return None when the intervals overlap
("unknown"); callers escalate precision and retry.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr, mpq

DEFAULT_PREC = 256
MAX_PREC = 4096


class PrecisionError(ArithmeticError):
    """Raised when a computation stays unknown at the precision ceiling."""


@lru_cache(maxsize=32)
def _ctx(prec: int):
    down = gmpy2.context(precision=prec, round=gmpy2.RoundDown)
    up = gmpy2.context(precision=prec, round=gmpy2.RoundUp)
    return down, up


def _to_mpq(x):
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    return mpq(x)


class Interval:
    """Closed interval [lo, hi] with mpfr endpoints at a stated precision."""

    __slots__ = ("lo", "hi", "prec")

    def __init__(self, lo, hi, prec: int):
        if not (lo <= hi or gmpy2.is_nan(lo) or gmpy2.is_nan(hi)):
            raise ValueError(f"inverted interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi
        self.prec = prec

    # -- construction -------------------------------------------------

    @classmethod
    def exact(cls, x, prec: int = DEFAULT_PREC) -> "Interval":
        """Enclosure of an exact int / Fraction / mpq value."""
        down, up = _ctx(prec)
        q = _to_mpq(x)
        return cls(down.plus(q), up.plus(q), prec)

    @classmethod
    def from_endpoints(cls, lo, hi, prec: int = DEFAULT_PREC) -> "Interval":
        down, up = _ctx(prec)
        return cls(down.plus(_to_mpq(lo)), up.plus(_to_mpq(hi)), prec)

    @classmethod
    def log_of(cls, n, prec: int = DEFAULT_PREC) -> "Interval":
        """Enclosure of log(n) for an exact positive int or rational."""
        return cls.exact(n, prec).log()

    @classmethod
    def upper_unbounded(cls, lo, prec: int = DEFAULT_PREC) -> "Interval":
        down, _ = _ctx(prec)
        return cls(down.plus(_to_mpq(lo)), mpfr("inf"), prec)

    # -- helpers ------------------------------------------------------

    def _coerce(self, other) -> "Interval":
        if isinstance(other, Interval):
            return other
        return Interval.exact(other, self.prec)

    def _p(self, other: "Interval") -> int:
        return max(self.prec, other.prec)

    def __repr__(self):
        return f"Interval({self.lo!s}, {self.hi!s})"

    def width(self) -> mpfr:
        _, up = _ctx(self.prec)
        return up.sub(self.hi, self.lo)

    def mid(self) -> mpfr:
        down, _ = _ctx(self.prec)
        return down.div(down.add(self.lo, self.hi), mpfr(2))

    def contains(self, x) -> bool:
        q = _to_mpq(x)
        return self.lo <= q <= self.hi

    def is_finite(self) -> bool:
        return gmpy2.is_finite(self.lo) and gmpy2.is_finite(self.hi)

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        p = self._p(o)
        down, up = _ctx(p)
        return Interval(down.add(self.lo, o.lo), up.add(self.hi, o.hi), p)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo, self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        p = self._p(o)
        down, up = _ctx(p)
        return Interval(down.sub(self.lo, o.hi), up.sub(self.hi, o.lo), p)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        o = self._coerce(other)
        p = self._p(o)
        down, up = _ctx(p)
        prods_lo = [down.mul(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        prods_hi = [up.mul(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return Interval(min(prods_lo), max(prods_hi), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o.lo <= 0 <= o.hi:
            raise ZeroDivisionError("interval denominator contains 0")
        p = self._p(o)
        down, up = _ctx(p)
        quots_lo = [down.div(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        quots_hi = [up.div(a, b) for a in (self.lo, self.hi) for b in (o.lo, o.hi)]
        return Interval(min(quots_lo), max(quots_hi), p)

    def __rtruediv__(self, other):
        return self._coerce(other).__truediv__(self)

    def abs(self) -> "Interval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return Interval(mpfr(0), max(-self.lo, self.hi), self.prec)

    def square(self) -> "Interval":
        return self.abs() * self.abs() if self.lo < 0 else self * self

    def pow_int(self, k: int) -> "Interval":
        """self**k for integer k >= 0 (binary powering on intervals)."""
        if k < 0:
            raise ValueError("negative exponent; divide explicitly")
        out = Interval.exact(1, self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- monotone elementary functions ---------------------------------

    def log(self) -> "Interval":
        if self.lo <= 0:
            raise ValueError("log requires a positive interval")
        down, up = _ctx(self.prec)
        return Interval(down.log(self.lo), up.log(self.hi), self.prec)

    def log2(self) -> "Interval":
        down, up = _ctx(self.prec)
        if self.lo <= 0:
            raise ValueError("log2 requires a positive interval")
        return Interval(down.log2(self.lo), up.log2(self.hi), self.prec)

    def exp(self) -> "Interval":
        down, up = _ctx(self.prec)
        return Interval(down.exp(self.lo), up.exp(self.hi), self.prec)

    def sqrt(self) -> "Interval":
        if self.lo < 0:
            raise ValueError("sqrt of a negative interval")
        down, up = _ctx(self.prec)
        return Interval(down.sqrt(self.lo), up.sqrt(self.hi), self.prec)

    def root4(self) -> "Interval":
        return self.sqrt().sqrt()

    # -- proven comparisons (True / False / None=unknown) ---------------

    def lt(self, other) -> bool | None:
        o = self._coerce(other)
        if self.hi < o.lo:
            return True
        if self.lo >= o.hi:
            return False
        return None

    def le(self, other) -> bool | None:
        o = self._coerce(other)
        if self.hi <= o.lo:
            return True
        if self.lo > o.hi:
            return False
        return None

    def gt(self, other) -> bool | None:
        r = self._coerce(other).lt(self)
        return r

    def ge(self, other) -> bool | None:
        return self._coerce(other).le(self)


def require(flag: bool | None, what: str) -> None:
    """Assert a proven-True comparison; None (unknown) raises PrecisionError."""
    if flag is True:
        return
    if flag is None:
        raise PrecisionError(f"comparison unknown at working precision: {what}")
    raise AssertionError(f"certified check failed: {what}")


def with_escalation(fn, start: int = DEFAULT_PREC, limit: int = MAX_PREC):
    """Run fn(prec) with doubling precision until it stops raising
    PrecisionError.  The limit is the documented 4096-bit ceiling."""
    prec = start
    while True:
        try:
            return fn(prec)
        except PrecisionError:
            if prec >= limit:
                raise
            prec *= 2
