import math
from fractions import Fraction

import pytest

from muldep.arith import DomainError
from muldep.intervals import Interval
from muldep.linforms import (
    IntegerArg,
    LaurentParams,
    LinearForm,
    PipelineError,
    QuadraticSurd,
    UnitSqrt2,
    height,
    laurent_corollary_bound,
    laurent_theorem_bound,
    log_value,
    matveev_lower_bound,
    sit_pipeline,
    x2minus2_constants,
    x2minus2_exponent_bound,
)


def test_height_integer():
    h = height(IntegerArg(3))
    assert h.contains(Fraction(10986, 10**4)) or (
        float(h.lo) < math.log(3) < float(h.hi) or float(h.lo) == math.log(3)
    )
    assert abs(float(h.lo) - math.log(3)) < 1e-15


def test_height_unit():
    h = height(UnitSqrt2())
    assert abs(float(h.lo) - 0.5 * math.log(1 + math.sqrt(2))) < 1e-15


def test_height_surd_bound():
    # a=9, b=-4: y = 81 - 32 = 49; alpha = (9+4r2)/(9-4r2) > 1
    s = QuadraticSurd(9, -4)
    assert s.norm_form == 49
    h = height(s)
    alpha = (9 + 4 * math.sqrt(2)) / (9 - 4 * math.sqrt(2))
    assert abs(float(h.hi) - 0.5 * (math.log(49) + math.log(alpha))) < 1e-12


def test_degenerate_surd_rejected():
    with pytest.raises(DomainError):
        QuadraticSurd(0, 0)


def test_matveev_formula_exact():
    form = LinearForm(((1, IntegerArg(2)), (-1, IntegerArg(3))))
    got = matveev_lower_bound(form, 1)
    expect = -1.4 * 2**4.5 * 30**5 * math.log(2) * math.log(3)
    assert abs(float(got.lo) / expect - 1) < 1e-12


def test_matveev_rejects_vanishing_form():
    form = LinearForm(((2, IntegerArg(2)), (-1, IntegerArg(4))))
    with pytest.raises(DomainError):
        matveev_lower_bound(form, 2)


def test_matveev_monotone_in_args_and_maxcoeff():
    f1 = LinearForm(((1, IntegerArg(2)), (-1, IntegerArg(3))))
    f2 = LinearForm(((1, IntegerArg(2)), (-1, IntegerArg(5))))
    b_small = matveev_lower_bound(f1, 10)
    b_larger_arg = matveev_lower_bound(f2, 10)
    b_larger_coeff = matveev_lower_bound(f1, 1000)
    assert b_larger_arg.hi < b_small.lo or b_larger_arg.lt(b_small) is True
    assert b_larger_coeff.lt(b_small) is True


def test_corollary_floor_example():
    got = laurent_corollary_bound(1, 1, IntegerArg(2), IntegerArg(3), (20.3, 18))
    expect = -20.3 * 18**2 * math.log(3) * 1.0
    assert abs(float(got.lo) / expect - 1) < 1e-12


def test_corollary_bprime_definition():
    # b' = b1/(D logA2) + b2/(D logA1); exercised via a degree-2 pair
    got = laurent_corollary_bound(2, 41, UnitSqrt2(), QuadraticSurd(9, -4), (20.3, 18))
    assert float(got.lo) < 0  # a finite certified bound emerges
    assert float(got.hi) < 0


def test_corollary_symbolic_bprime_override():
    # the (17.9, 30) variant with b' replaced by an upper bound 2 x M:
    # -17.9 (log(2 x M) + 0.38)^2 log3 * 1 with logA2 floored at 1
    m_const, x_val = 10**20, 3
    bp = Interval.exact(2 * x_val * m_const)
    got = laurent_corollary_bound(
        1, 1, IntegerArg(3), IntegerArg(2), (17.9, 30), bprime_override=bp
    )
    expect = -17.9 * (math.log(2 * x_val * m_const) + 0.38) ** 2 * math.log(3)
    assert abs(float(got.lo) / expect - 1) < 1e-12
    # the max-term really is log b' + 0.38 here (> 47 > 30)
    assert math.log(2 * x_val * m_const) > 47


def test_corollary_rejects_dependent_integer_args():
    with pytest.raises(DomainError):
        laurent_corollary_bound(1, 1, IntegerArg(2), IntegerArg(8))


def test_laurent_params_domain():
    with pytest.raises(DomainError):
        LaurentParams(Fraction(1, 4), Fraction(26))
    with pytest.raises(DomainError):
        LaurentParams(Fraction(1, 2), Fraction(1))


def test_laurent_theorem_section5_constants():
    prec = 256
    params, unit_log, a1, a2_min, coef, b_subtr, h_subtr, h0, log_y0 = (
        x2minus2_constants(prec)
    )
    ev = laurent_theorem_bound(
        params,
        Interval.upper_unbounded(h0.lo, prec),
        a1,
        Interval.upper_unbounded(a2_min.lo, prec),
        prec,
        condition_two_verified=True,
    )
    assert ev.C.lt(Interval.exact(Fraction(471, 10**4), prec)) is True
    assert ev.C_prime.lt(Interval.exact(Fraction(1158, 10**4), prec)) is True
    assert coef.gt(Interval.exact(Fraction(200023, 10**5), prec)) is True
    assert coef.lt(Interval.exact(Fraction(200024, 10**5), prec)) is True
    # 27 log(sqrt2+1) for a1
    assert abs(float(a1.lo) - 27 * math.log(1 + math.sqrt(2))) < 1e-12


def test_laurent_theorem_requires_condition_two():
    params = LaurentParams(Fraction(11, 20), Fraction(26))
    with pytest.raises(DomainError):
        laurent_theorem_bound(
            params,
            Interval.exact(20),
            Interval.exact(20),
            Interval.exact(400),
        )


def test_laurent_condition_three_checked():
    from muldep.intervals import PrecisionError

    params = LaurentParams(Fraction(11, 20), Fraction(26))
    with pytest.raises((AssertionError, PrecisionError)):
        laurent_theorem_bound(
            params,
            Interval.exact(20),
            Interval.exact(1),
            Interval.exact(1),
            condition_two_verified=True,
        )


def test_sit_pipeline_constants():
    bounds = sit_pipeline("+")
    assert bounds.M_max == 272 * 10**23
    assert bounds.x_max == 175000
    assert bounds.r_max == 476 * 10**28
    assert bounds.r_max_reduced == 806 * 10**25
    assert sit_pipeline("-").M_max == bounds.M_max
    assert any("fixed-point" in n for n in bounds.provenance)


def test_sit_pipeline_within_slack():
    b = sit_pipeline("+")
    assert b.M_max <= 1.05 * 2.72e25
    assert b.x_max <= 1.05 * 1.75e5
    assert b.r_max <= 1.05 * 4.76e30
    assert b.r_max_reduced <= 1.05 * 8.06e27


def test_sit_pipeline_sharp_flag():
    b = sit_pipeline("+", sharp=True)
    # the certified crossing is at most the published constant
    assert b.M_max <= 272 * 10**23
    assert b.M_max >= 10**25


def test_x2minus2_brackets():
    rep = x2minus2_exponent_bound()
    assert rep.n_max == 1237
    assert float(rep.C_max.hi) < 0.0471
    assert float(rep.C_prime_max.hi) < 0.1158
    assert 2.00023 < float(rep.a2_coefficient.lo) <= float(rep.a2_coefficient.hi) < 2.00024
    assert 3.1694 < float(rep.b_subtr.lo) <= float(rep.b_subtr.hi) < 3.1696
    assert 0.6300 < float(rep.h_subtr.lo) <= float(rep.h_subtr.hi) < 0.6305
    assert rep.swept == (1289, 17000)
