import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muldep.intervals import (
    DEFAULT_PREC,
    Interval,
    PrecisionError,
    require,
    with_escalation,
)

random.seed(7001)

rationals = st.fractions(
    min_value=Fraction(-1000), max_value=Fraction(1000), max_denominator=997
)


@settings(max_examples=300, deadline=None)
@given(rationals, rationals)
def test_add_sub_mul_enclose_exact(a, b):
    ia, ib = Interval.exact(a), Interval.exact(b)
    assert (ia + ib).contains(a + b)
    assert (ia - ib).contains(a - b)
    assert (ia * ib).contains(a * b)


@settings(max_examples=200, deadline=None)
@given(rationals, rationals)
def test_div_encloses_exact(a, b):
    if b == 0:
        return
    assert (Interval.exact(a) / Interval.exact(b)).contains(Fraction(a, b))


def test_div_by_zero_interval():
    with pytest.raises(ZeroDivisionError):
        Interval.exact(1) / Interval.from_endpoints(-1, 1)


def test_composite_expression_enclosure():
    # random rational expression trees evaluated both ways
    for _ in range(200):
        a = Fraction(random.randint(1, 999), random.randint(1, 999))
        b = Fraction(random.randint(1, 999), random.randint(1, 999))
        c = Fraction(random.randint(1, 999), random.randint(1, 999))
        exact = (a + b) * c - a * b + c
        iv = (Interval.exact(a) + Interval.exact(b)) * Interval.exact(c) - (
            Interval.exact(a) * Interval.exact(b)
        ) + Interval.exact(c)
        assert iv.contains(exact)


def test_log_sqrt_exp_monotone_enclosures():
    for n in (2, 3, 10, 97, 10**6):
        iv = Interval.log_of(n)
        # crude two-sided rational checks: e.g. log enclosure sandwich
        assert iv.lo < iv.hi or float(iv.lo) == float(iv.hi)
        back = iv.exp()
        assert back.contains(n)
        r = Interval.exact(n).sqrt()
        assert (r * r).contains(n)


def test_comparison_trichotomy():
    a = Interval.exact(1)
    b = Interval.exact(2)
    assert a.lt(b) is True
    assert b.lt(a) is False
    wide = Interval.from_endpoints(Fraction(1, 2), Fraction(3, 2))
    assert a.lt(wide) is None
    assert wide.gt(b) is False


def test_require_raises_on_unknown():
    wide = Interval.from_endpoints(0, 2)
    with pytest.raises(PrecisionError):
        require(wide.lt(Interval.exact(1)), "demo")
    with pytest.raises(AssertionError):
        require(Interval.exact(2).lt(Interval.exact(1)), "demo")


def test_precision_doubling_never_flips():
    # a proven comparison at low precision stays proven at double precision
    exprs = [(3, 2), (10, 9), (1001, 1000)]
    for num, den in exprs:
        for prec in (64, 128, 256):
            lo_iv = Interval.log_of(num, prec) / Interval.log_of(den, prec)
            hi_iv = Interval.log_of(num, 2 * prec) / Interval.log_of(den, 2 * prec)
            third = Fraction(num, den)  # arbitrary comparator
            r1 = lo_iv.lt(Interval.exact(third, prec))
            r2 = hi_iv.lt(Interval.exact(third, 2 * prec))
            if r1 is not None:
                assert r2 == r1


def test_pow_int_and_square():
    x = Interval.exact(Fraction(7, 3))
    assert x.pow_int(5).contains(Fraction(7, 3) ** 5)
    assert x.square().contains(Fraction(49, 9))
    neg = Interval.from_endpoints(-2, 3)
    sq = neg.square()
    assert sq.lo >= 0 and sq.contains(4) and sq.contains(9)


def test_with_escalation():
    calls = []

    def attempt(prec):
        calls.append(prec)
        if prec < 1024:
            raise PrecisionError("not yet")
        return prec

    assert with_escalation(attempt, start=256, limit=4096) == 1024
    assert calls == [256, 512, 1024]

    with pytest.raises(PrecisionError):
        with_escalation(lambda p: (_ for _ in ()).throw(PrecisionError("x")),
                        start=256, limit=512)


def test_unbounded_interval_arithmetic():
    h = Interval.upper_unbounded(5)
    assert not h.is_finite()
    sq = h.square()
    assert sq.contains(25) and not sq.is_finite()
    inv = Interval.exact(1) / sq
    assert inv.lo == 0
    assert inv.contains(Fraction(1, 26))
