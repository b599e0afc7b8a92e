"""Certified lower bounds for linear forms in logarithms and the two
bound pipelines built on them.

Everything numeric runs through :mod:`muldep.intervals`; a pipeline stage
either proves its inequality at the working precision or raises.  The
pipelines verify the published constants rather than recomputing sharper
ones (a ``sharp`` flag on the fixed-point solver gives the certified
crossing instead), so downstream consumers see the familiar round numbers
with a proof attached.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq

from .arith import DomainError
from .dependence import exponent_rank
from .intervals import DEFAULT_PREC, Interval, require

# -- logarithm arguments -------------------------------------------------


@dataclass(frozen=True)
class IntegerArg:
    """Argument m >= 2 of a logarithm in a rational-integer linear form."""

    m: int

    def __post_init__(self):
        if self.m < 2:
            raise DomainError("integer log argument must be >= 2")


@dataclass(frozen=True)
class UnitSqrt2:
    """The fundamental unit sqrt(2) + 1 of Z[sqrt(2)]."""


@dataclass(frozen=True)
class QuadraticSurd:
    """(a - b*sqrt(2)) / (a + b*sqrt(2)) with a^2 - 2 b^2 != 0.

    For the x^2 - 2 = y^n pipeline a > 0 > b, which makes the value > 1
    and its norm-form y = a^2 - 2 b^2 positive.
    """

    a: int
    b: int

    def __post_init__(self):
        if self.a * self.a == 2 * self.b * self.b:
            raise DomainError("degenerate surd: a^2 = 2 b^2")

    @property
    def norm_form(self) -> int:
        return self.a * self.a - 2 * self.b * self.b


LogArgument = IntegerArg | UnitSqrt2 | QuadraticSurd


def _sqrt2(prec: int) -> Interval:
    return Interval.exact(2, prec).sqrt()


def log_value(arg: LogArgument, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of log(arg)."""
    if isinstance(arg, IntegerArg):
        return Interval.log_of(arg.m, prec)
    if isinstance(arg, UnitSqrt2):
        return (_sqrt2(prec) + 1).log()
    if isinstance(arg, QuadraticSurd):
        s = _sqrt2(prec)
        num = Interval.exact(arg.a, prec) - Interval.exact(arg.b, prec) * s
        den = Interval.exact(arg.a, prec) + Interval.exact(arg.b, prec) * s
        return (num / den).log()
    raise TypeError(f"unknown log argument {arg!r}")


def degree(arg: LogArgument) -> int:
    return 1 if isinstance(arg, IntegerArg) else 2


def height(arg: LogArgument, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of the logarithmic height.

    Integers: log m.  The unit sqrt(2)+1: (1/2) log(sqrt(2)+1).  A surd
    (a - b sqrt2)/(a + b sqrt2): the minimal-polynomial bound
    (1/2)(log y + log alpha) with y = a^2 - 2b^2, valid when the value
    alpha exceeds 1.
    """
    if isinstance(arg, IntegerArg):
        return Interval.log_of(arg.m, prec)
    if isinstance(arg, UnitSqrt2):
        return (_sqrt2(prec) + 1).log() * Interval.exact(Fraction(1, 2), prec)
    if isinstance(arg, QuadraticSurd):
        y = arg.norm_form
        if y < 1:
            raise DomainError("surd height bound requires a^2 - 2b^2 >= 1")
        la = log_value(arg, prec)
        if not la.lo > 0:
            raise DomainError("surd height bound requires value > 1")
        return (Interval.log_of(y, prec) + la) * Interval.exact(Fraction(1, 2), prec)
    raise TypeError(f"unknown log argument {arg!r}")


# -- linear forms ---------------------------------------------------------


@dataclass(frozen=True)
class LinearForm:
    """Sum of coefficient * log(argument) terms."""

    terms: tuple[tuple[int, LogArgument], ...]

    def __post_init__(self):
        if not any(c != 0 for c, _ in self.terms):
            raise DomainError("linear form needs a nonzero coefficient")

    def value(self, prec: int = DEFAULT_PREC) -> Interval:
        out = Interval.exact(0, prec)
        for c, a in self.terms:
            out = out + Interval.exact(c, prec) * log_value(a, prec)
        return out


def _integer_args_dependent(form: LinearForm) -> bool:
    """Cheap guard: exact vanishing of the form via multiplicative
    dependence of integer arguments.  Only attempted at desk scale."""
    vals, coeffs = [], []
    for c, a in form.terms:
        if not isinstance(a, IntegerArg) or c == 0:
            continue
        vals.append(a.m)
        coeffs.append(c)
    if len(vals) != len([c for c, _ in form.terms if c != 0]):
        return False  # non-integer arguments present; caller's obligation
    bits = sum(abs(c) * v.bit_length() for c, v in zip(coeffs, vals))
    if bits > 10**6:
        return False
    pos = neg = 1
    for c, v in zip(coeffs, vals):
        if c > 0:
            pos *= v**c
        else:
            neg *= v ** (-c)
    return pos == neg


def matveev_lower_bound(
    form: LinearForm, maxcoeff: int, prec: int = DEFAULT_PREC
) -> Interval:
    """Certified lower enclosure of log|Lambda| for integer arguments:

        log|Lambda| > -1.4 n^4.5 30^(n+3) (prod log a_i) (1 + log B).

    The nonvanishing of Lambda is the caller's obligation; trivially
    vanishing forms (multiplicatively dependent integer arguments) are
    rejected when cheap to detect.
    """
    args = [a for _, a in form.terms]
    if any(not isinstance(a, IntegerArg) for a in args):
        raise DomainError("Matveev bound here covers integer arguments only")
    if maxcoeff < max(abs(c) for c, _ in form.terms):
        raise DomainError("maxcoeff below an actual coefficient")
    if _integer_args_dependent(form):
        raise DomainError("form vanishes: arguments multiplicatively dependent")
    n = len(form.terms)
    n45 = Interval.exact(n, prec).pow_int(4) * Interval.exact(n, prec).sqrt()
    const = Interval.exact(Fraction(14, 10), prec) * n45 * Interval.exact(
        30, prec
    ).pow_int(n + 3)
    logs = Interval.exact(1, prec)
    for _, a in form.terms:
        logs = logs * Interval.log_of(a.m, prec)
    bfac = Interval.exact(1, prec) + Interval.log_of(maxcoeff, prec)
    return -(const * logs * bfac)


# -- Laurent: corollary form ---------------------------------------------

COROLLARY_VARIANTS = {(20.3, 18): (mpq(203, 10), 18), (17.9, 30): (mpq(179, 10), 30)}


def _log_a(arg: LogArgument, d: int, prec: int) -> Interval:
    """log A_i = max{ h(alpha), |log alpha| / D, 1 / D } as an interval
    upper-enclosure (monotone max of enclosures)."""
    cands = [
        height(arg, prec),
        log_value(arg, prec).abs() / Interval.exact(d, prec),
        Interval.exact(Fraction(1, d), prec),
    ]
    lo = max(c.lo for c in cands)
    hi = max(c.hi for c in cands)
    return Interval(lo, hi, prec)


def laurent_corollary_bound(
    b1: int,
    b2: int,
    arg1: LogArgument,
    arg2: LogArgument,
    variant: tuple[float, int] = (20.3, 18),
    prec: int = DEFAULT_PREC,
    bprime_override: Interval | None = None,
) -> Interval:
    """Lower enclosure of log|b2 log a2 - b1 log a1| via the two-log
    corollary:  -C D^4 max{log b' + 0.38, m/D, 1}^2 logA1 logA2.

    Multiplicative independence of the arguments is the caller's
    obligation (checked cheaply for integer pairs).  ``bprime_override``
    substitutes an upper enclosure for b' when the caller works with
    symbolic coefficient bounds rather than literal b1, b2.
    """
    key = (float(variant[0]), int(variant[1]))
    if key not in COROLLARY_VARIANTS:
        raise DomainError(f"unknown corollary variant {variant}")
    c_val, m_val = COROLLARY_VARIANTS[key]
    if isinstance(arg1, IntegerArg) and isinstance(arg2, IntegerArg):
        if exponent_rank((arg1.m, arg2.m)) < 2:
            raise DomainError("arguments are multiplicatively dependent")
    d = max(degree(arg1), degree(arg2))
    la1 = _log_a(arg1, d, prec)
    la2 = _log_a(arg2, d, prec)
    if bprime_override is not None:
        bprime = bprime_override
    else:
        bprime = Interval.exact(abs(b1), prec) / (Interval.exact(d, prec) * la2) + \
            Interval.exact(abs(b2), prec) / (Interval.exact(d, prec) * la1)
    term = bprime.log() + Interval.exact(Fraction(38, 100), prec)
    floor1 = Interval.exact(Fraction(m_val, d), prec)
    lo = max(term.lo, floor1.lo, 1)
    hi = max(term.hi, floor1.hi, 1)
    mx = Interval(lo, hi, prec)
    out = (
        Interval.exact(c_val, prec)
        * Interval.exact(d, prec).pow_int(4)
        * mx.square()
        * la1
        * la2
    )
    return -out


# -- Laurent: full theorem -------------------------------------------------


@dataclass(frozen=True)
class LaurentParams:
    """Parameter pair (mu, rho) of the two-log theorem with its derived
    quantities; mu in [1/3, 1), rho > 1."""

    mu: Fraction
    rho: Fraction

    def __post_init__(self):
        if not Fraction(1, 3) <= self.mu < 1:
            raise DomainError("mu must lie in [1/3, 1)")
        if not self.rho > 1:
            raise DomainError("rho must exceed 1")

    def sigma(self, prec: int = DEFAULT_PREC) -> Interval:
        mu = Interval.exact(self.mu, prec)
        return (Interval.exact(1, prec) + 2 * mu - mu.square()) / 2

    def lam(self, prec: int = DEFAULT_PREC) -> Interval:
        return self.sigma(prec) * Interval.exact(self.rho, prec).log()


@dataclass(frozen=True)
class LaurentEvaluation:
    C: Interval
    C_prime: Interval
    lower_bound: Interval  # on log|Lambda|
    H: Interval
    omega: Interval
    theta: Interval


def laurent_theorem_bound(
    params: LaurentParams,
    h: Interval,
    a1: Interval,
    a2: Interval,
    prec: int = DEFAULT_PREC,
    condition_one_rhs: Interval | None = None,
    condition_two_verified: bool = False,
) -> LaurentEvaluation:
    """Evaluate the two-log theorem quantities C, C' and the three-term
    lower bound for log|Lambda| at given enclosures of h, a1, a2.

    Condition (3) (a1 a2 >= lambda^2) is always checked here.  Condition
    (1) is checked against ``condition_one_rhs`` when supplied (an upper
    enclosure of D(log(b1/a2 + b2/a1) + log lambda + 1.75) + 0.06);
    condition (2) is argument-specific and must be certified by the
    caller, acknowledged via ``condition_two_verified``.
    """
    sig = params.sigma(prec)
    lam = params.lam(prec)
    require(
        (a1 * a2).ge(lam.square()), "Laurent condition (3): a1 a2 >= lambda^2"
    )
    if not condition_two_verified:
        raise DomainError("Laurent condition (2) not certified by caller")
    if condition_one_rhs is not None:
        require(h.ge(condition_one_rhs), "Laurent condition (1): h large enough")
    require(h.ge(lam), "Laurent condition (1): h >= lambda")
    big_h = h / lam + Interval.exact(1, prec) / sig
    quarter = Interval.exact(1, prec) / (4 * big_h.square())
    root = (Interval.exact(1, prec) + quarter).sqrt()
    omega = 2 * (Interval.exact(1, prec) + root)
    theta = root + Interval.exact(1, prec) / (2 * big_h)
    lam3 = lam.pow_int(3)
    mu = Interval.exact(params.mu, prec)
    pref = mu / (lam3 * sig)
    inner = (
        omega.square() / 9
        + (8 * lam * omega * omega.root4() * theta.root4())
        / (3 * (a1 * a2).sqrt() * big_h.sqrt())
        + (Interval.exact(Fraction(4, 3), prec))
        * (Interval.exact(1, prec) / a1 + Interval.exact(1, prec) / a2)
        * lam
        * omega
        / big_h
    )
    c_val = pref * (omega / 6 + inner.sqrt() / 2).square()
    c_prime = ((c_val * sig * omega * theta) / (lam3 * mu)).sqrt()
    hterm = h + lam / sig
    bound = -(
        c_val * hterm.square() * a1 * a2
        + (omega * theta).sqrt() * hterm
        + (c_prime * hterm.square() * a1 * a2).log()
    )
    return LaurentEvaluation(c_val, c_prime, bound, big_h, omega, theta)


# -- pipeline: the two exponential equations (Propositions 1-2) ------------


@dataclass(frozen=True)
class PipelineBounds:
    r_max: int
    M_max: int
    x_max: int
    r_max_reduced: int | None
    provenance: tuple[str, ...]


class PipelineError(ArithmeticError):
    pass


def _phi_fixed_point(m_iv: Interval, prec: int) -> Interval:
    """Phi(M) = 3.22e16 (1 + log(50.9 M log^2 M)) log^4 M."""
    lm = m_iv.log()
    inner = Interval.exact(Fraction(509, 10), prec) * m_iv * lm.square()
    return (
        Interval.exact(322 * 10**14, prec)
        * (Interval.exact(1, prec) + inner.log())
        * lm.pow_int(4)
    )


def _verify_m_dominates(m_star: int, prec: int, notes: list[str]) -> None:
    """Certify Phi(M) < M for all M >= m_star.

    Adaptive integer grid to 1e50 (Phi is increasing, so proving
    Phi(next) < current covers the whole step), then the tail via
    Phi(M) <= 9.66e16 log^5 M and exp(u/2) / u^5 increasing."""
    cur = Interval.exact(m_star, prec)
    require(_phi_fixed_point(cur, prec).lt(cur), f"Phi({m_star}) < {m_star}")
    top = Interval.exact(10**50, prec)
    m = m_star
    inc = max(m_star // 1024, 1)
    checks = 0
    while m < 10**50:
        nxt = m + inc
        if _phi_fixed_point(Interval.exact(nxt, prec), prec).lt(
            Interval.exact(m, prec)
        ) is True:
            m = nxt
            inc = min(inc * 2, 9 * m)
            checks += 1
        else:
            inc //= 4
            if inc < max(m_star // 10**6, 1):
                raise PipelineError("fixed-point grid stalled")
    notes.append(f"fixed-point dominance verified on grid to 1e50 ({checks} steps)")
    # tail: for M >= 1e50, 50.9 M log^2 M <= M^2 and 1 + 2 log M <= 3 log M,
    # so Phi(M) <= 9.66e16 log^5 M; e^(u/2)/u^5 is increasing for u > 10.
    u50 = top.log()
    require(
        (Interval.exact(Fraction(509, 10), prec) * u50.square()).lt(top),
        "tail: 50.9 log^2 M <= M at 1e50",
    )
    tail_ratio = top / u50.pow_int(5)
    require(
        tail_ratio.gt(Interval.exact(966 * 10**14, prec)),
        "tail: M / log^5 M > 9.66e16 at 1e50",
    )
    require(
        u50.gt(Interval.exact(10, prec)),
        "tail monotonicity: log M > 10 (so e^(u/2)/u^5 increases)",
    )
    notes.append("fixed-point tail bound certified past 1e50")


def sit_pipeline(
    sign: str = "+",
    prec: int = DEFAULT_PREC,
    x_reduced: int | None = 296,
    sharp: bool = False,
) -> PipelineBounds:
    """Certified reproduction of the bound chain for
    2^y (2^x +/- 1)^z -/+ 1 = 3^r (2^(x+1) +/- 1)^w  with z >= 1, r != 0.

    Verifies, in interval arithmetic, every hand-rounded step of the
    published chain at its extremal corner (plus monotonicity facts noted
    in the provenance), then certifies the fixed point M < 2.72e25 and
    derives x < 1.75e5 and |r| < 4.76e30.  With ``x_reduced`` set, also
    certifies the post-reduction coefficient bound |r| < 8.06e27.
    ``sharp=True`` returns the certified fixed-point crossing instead of
    the published M constant.
    """
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    notes: list[str] = [f"sign {sign}: chain is sign-independent"]
    one = Interval.exact(1, prec)
    log2 = Interval.log_of(2, prec)
    log3 = Interval.log_of(3, prec)
    log5 = Interval.log_of(5, prec)
    m0 = 10**20
    log_m0 = Interval.log_of(m0, prec)

    # S1: log M0 > 46
    require(log_m0.gt(Interval.exact(46, prec)), "log(1e20) > 46")
    notes.append("M0 = 1e20, log M0 > 46")

    # S2: |r| < M x.  Positive r: ((x+1.2)/x) log2/log3 <= 1 at x=3,
    # decreasing in x.  Negative r: log(x+1) + 1 <= x at x=3, gap widening.
    require(
        ((Interval.exact(Fraction(42, 10), prec) * Interval.exact(m0, prec)
          + Interval.exact(Fraction(2, 10), prec)) * log2 / log3)
        .lt(Interval.exact(3 * m0, prec)),
        "r-bound corner (x=3, M=1e20), positive r",
    )
    require(
        (Interval.log_of(4, prec) + one).lt(Interval.exact(3, prec)),
        "r-bound corner (x=3), negative r",
    )
    notes.append("|r| < M x certified at corner x=3 (both r signs; monotone in x)")

    # S3: corollary variant (17.9, 30) applicable: log(2 x M) + 0.38 > 30
    require(
        (Interval.log_of(6 * m0, prec)).gt(Interval.exact(47, prec)),
        "log(2*3*1e20) > 47",
    )
    notes.append("two-log corollary (C,m)=(17.9,30): max term is log b' + 0.38 > 47")

    # S4/S5: (x-0.2) log2 < log(2M) + 17.9 (log(2xM)+0.38)^2 log3
    #        ==> 0.93 x log2 < 20.6 L^2, L = log x + log M.
    # Reduced to q(L) = 20.6 L^2 - 17.9 log3 (L+c)^2 - (L - log(3/2)) >= 0
    # for L >= L0 = log3 + log 1e20, convex with q' (L0) > 0.
    c_shift = log2 + Interval.exact(Fraction(38, 100), prec)
    l0 = log3 + log_m0
    coef_a = Interval.exact(Fraction(206, 10), prec) - Interval.exact(
        Fraction(179, 10), prec
    ) * log3
    require(coef_a.gt(Interval.exact(0, prec)), "quadratic leading coefficient > 0")
    q_l0 = (
        Interval.exact(Fraction(206, 10), prec) * l0.square()
        - Interval.exact(Fraction(179, 10), prec) * log3 * (l0 + c_shift).square()
        - (l0 - (log3 - log2))
    )
    require(q_l0.gt(Interval.exact(0, prec)), "collection quadratic q(L0) > 0")
    q_deriv = (
        2 * Interval.exact(Fraction(206, 10), prec) * l0
        - 2 * Interval.exact(Fraction(179, 10), prec) * log3 * (l0 + c_shift)
        - one
    )
    require(q_deriv.gt(Interval.exact(0, prec)), "collection quadratic q'(L0) > 0")
    require(
        (Interval.exact(Fraction(93, 100), prec) * Interval.exact(3, prec) * log2).le(
            (Interval.exact(3, prec) - Interval.exact(Fraction(2, 10), prec)) * log2
        ),
        "0.93 x <= x - 0.2 at x = 3",
    )
    require(
        (Interval.exact(Fraction(206, 10), prec)
         / (Interval.exact(Fraction(93, 100), prec) * log2))
        .lt(Interval.exact(32, prec)),
        "20.6 / (0.93 log2) < 32",
    )
    notes.append("x < 32 (log M + log x)^2 certified (corner L0, convex beyond)")

    # S6: log x < 3.66 + 2.11 log log M
    require(Interval.log_of(32, prec).lt(Interval.exact(Fraction(347, 100), prec)),
            "log 32 < 3.47")
    require(
        Interval.exact(Fraction(2, 46), prec).lt(Interval.exact(Fraction(5, 100), prec)),
        "2/46 < 0.05",
    )
    require(
        (Interval.exact(Fraction(347, 100), prec) / Interval.exact(Fraction(95, 100), prec))
        .lt(Interval.exact(Fraction(366, 100), prec)),
        "3.47/0.95 < 3.66",
    )
    require(
        (Interval.exact(2, prec) / Interval.exact(Fraction(95, 100), prec))
        .lt(Interval.exact(Fraction(211, 100), prec)),
        "2/0.95 < 2.11",
    )
    notes.append("log x < 3.66 + 2.11 log log M certified")

    # S7: 3.66 + 2.11 log log M <= 0.26 log M for log M >= 46, and
    # 32 * 1.26^2 <= 50.9.
    loglog = log_m0.log()
    require(
        (Interval.exact(Fraction(366, 100), prec)
         + Interval.exact(Fraction(211, 100), prec) * loglog)
        .le(Interval.exact(Fraction(26, 100), prec) * log_m0),
        "3.66 + 2.11 loglogM <= 0.26 logM at corner",
    )
    require(
        (Interval.exact(Fraction(211, 100), prec) / log_m0)
        .lt(Interval.exact(Fraction(26, 100), prec)),
        "2.11 / logM < 0.26 (derivative positive beyond corner)",
    )
    require(
        (Interval.exact(32, prec) * Interval.exact(Fraction(126, 100), prec).square())
        .le(Interval.exact(Fraction(509, 10), prec)),
        "32 * 1.26^2 <= 50.9",
    )
    notes.append("x < 50.9 (log M)^2 certified")

    # S8: Matveev constant: 1.4 * 4^4.5 * 30^7 * log3 * log2 *
    #     ((x+1)log2 + log(17/16)) (x log2 + log(9/8)) <= 8.6e12 x^2 at x=3,
    #     both bracket factors decreasing in x after division by x.
    k4 = Interval.exact(Fraction(14, 10) * 512 * 30**7, prec) * log3 * log2
    f1 = Interval.exact(4, prec) * log2 + Interval.log_of(Fraction(17, 16), prec)
    f2 = Interval.exact(3, prec) * log2 + Interval.log_of(Fraction(9, 8), prec)
    require(
        (k4 * f1 * f2).le(Interval.exact(86 * 10**11 * 9, prec)),
        "Matveev constant corner: K4 * logs <= 8.6e12 * 9 at x=3",
    )
    notes.append("Matveev step: -8.6e12 (1 + log(50.9 M log^2 M)) x^2 certified")

    # S9: Eq.(17) constant: 8.6e12 * 50.9^2 / log2 <= 3.22e16.
    require(
        (Interval.exact(86 * 10**11, prec)
         * Interval.exact(Fraction(509, 10), prec).square() / log2)
        .le(Interval.exact(322 * 10**14, prec)),
        "8.6e12 * 50.9^2 / log2 <= 3.22e16",
    )
    notes.append("y + (x - 0.2) z - 1 < 3.22e16 (1 + log(50.9 M log^2 M)) log^4 M")

    # S10: w-bound: (1 - log2/log5) y + ((x-0.2) - (x+0.2) log2/log5) z >= 1
    # at corner x=3, y=z=1; all coefficients positive and increasing.
    ratio = log2 / log5
    corner = (one - ratio) + (
        Interval.exact(Fraction(28, 10), prec)
        - Interval.exact(Fraction(32, 10), prec) * ratio
    )
    require(corner.gt(one), "w-bound corner (x=3, y=z=1)")
    require(ratio.lt(one), "log2/log5 < 1 (monotone in x, y, z)")
    notes.append("w < y + (x - 0.2) z - 1 certified")

    # S11: fixed point.
    m_star = 272 * 10**23
    _verify_m_dominates(m_star, prec, notes)
    if sharp:
        m_report = _sharp_crossing(prec)
        notes.append(f"sharp fixed-point crossing: {m_report}")
    else:
        m_report = m_star
    notes.append(f"M_max = {m_report}")

    # S12: x_max and r_max from the certified M.
    x_star = 175 * 10**3
    require(
        (Interval.exact(Fraction(509, 10), prec)
         * Interval.exact(m_star, prec).log().square())
        .lt(Interval.exact(x_star, prec)),
        "50.9 log^2(M_max) < 1.75e5",
    )
    r_star = 476 * 10**28
    require(
        Interval.exact(m_star * x_star, prec).le(Interval.exact(r_star, prec)),
        "M_max * x_max <= 4.76e30",
    )
    notes.append(f"x_max = {x_star}, r_max = {r_star}")

    r_reduced = None
    if x_reduced is not None:
        r_reduced = 806 * 10**25
        require(
            Interval.exact(m_star * x_reduced, prec).le(Interval.exact(r_reduced, prec)),
            "M_max * x_reduced <= 8.06e27",
        )
        notes.append(f"post-reduction r bound = {r_reduced} (x <= {x_reduced})")

    return PipelineBounds(r_star, m_report, x_star, r_reduced, tuple(notes))


def _sharp_crossing(prec: int) -> int:
    """Smallest power-of-1.001 multiple of 1e25 with Phi(M) < M proven."""
    m = Fraction(10**25)
    for _ in range(10000):
        iv = Interval.exact(m, prec)
        if _phi_fixed_point(iv, prec).lt(iv) is True:
            return int(m) + 1
        m *= Fraction(1001, 1000)
    raise PipelineError("sharp crossing not found")


# -- pipeline: x^2 - 2 = y^n ------------------------------------------------


@dataclass(frozen=True)
class X2Minus2Report:
    n_max: int
    C_max: Interval
    C_prime_max: Interval
    a2_coefficient: Interval
    b_subtr: Interval
    h_subtr: Interval
    swept: tuple[int, int]
    provenance: tuple[str, ...]


def x2minus2_constants(prec: int = DEFAULT_PREC):
    """Certified constants of the two-log stage: parameters
    mu=0.55, rho=26, y0=1e102, n0=1289."""
    params = LaurentParams(Fraction(11, 20), Fraction(26))
    unit_log = (Interval.exact(2, prec).sqrt() + 1).log()
    a1 = Interval.exact(27, prec) * unit_log
    log_y0 = Interval.log_of(10**102, prec)
    n0 = 1289
    coef = Interval.exact(2, prec) + (
        Interval.exact(27, prec) * unit_log / log_y0
    ) * Interval.exact(Fraction(3, n0), prec)
    a2_min = coef * log_y0
    inv_a1 = Interval.exact(1, prec) / a1
    # b_subtr(n) = -log(1/a1 + 2/(a2 n)) for n >= n0: enclosure over the range
    worst = inv_a1 + Interval.exact(2, prec) / (a2_min * Interval.exact(n0, prec))
    b_subtr = Interval((-(worst.log())).lo, (-(inv_a1.log())).hi, prec)
    lam = params.lam(prec)
    h_subtr = 2 * b_subtr - 2 * lam.log() - Interval.exact(Fraction(356, 100), prec)
    h0 = 2 * Interval.log_of(n0, prec) - h_subtr
    return params, unit_log, a1, a2_min, coef, b_subtr, h_subtr, h0, log_y0


def x2minus2_exponent_bound(
    prec: int = DEFAULT_PREC,
    sweep_hi: int = 17000,
    use_published_coefficients: bool = True,
) -> X2Minus2Report:
    """Exponent bound n <= 1237 for x^2 - 2 = y^n.

    Stage 1 certifies the crude two-log corollary bound eliminating
    n >= 17000.  Stage 2 evaluates the full two-log theorem with
    (mu, rho) = (0.55, 26), certifies C < 0.0471 and C' < 0.1158, and
    proves the final inequality fails for every integer n in
    [1289, 17000).  Stage 3 intersects n < 1289 with the congruence
    classes mod 24 and primality, returning the largest admissible
    exponent.
    """
    notes: list[str] = []
    (params, unit_log, a1, a2_min, coef, b_subtr, h_subtr, h0, log_y0) = (
        x2minus2_constants(prec)
    )
    require(
        coef.gt(Interval.exact(Fraction(200023, 100000), prec)),
        "a2 coefficient > 2.00023",
    )
    require(
        coef.lt(Interval.exact(Fraction(200024, 100000), prec)),
        "a2 coefficient < 2.00024",
    )
    require(
        b_subtr.gt(Interval.exact(Fraction(31694, 10000), prec)), "b_subtr > 3.1694"
    )
    require(
        b_subtr.lt(Interval.exact(Fraction(31696, 10000), prec)), "b_subtr < 3.1696"
    )
    require(
        h_subtr.gt(Interval.exact(Fraction(6300, 10000), prec)), "h_subtr > 0.6300"
    )
    require(
        h_subtr.lt(Interval.exact(Fraction(6305, 10000), prec)), "h_subtr < 0.6305"
    )
    require(h0.gt(Interval.exact(Fraction(136927, 10000), prec)), "h0 > 13.6927")
    notes.append("a2 bracket, b_subtr, h_subtr, h0 certified")

    # crude stage: n < 17000 from the corollary route
    _crude_cutoff(prec, notes)

    # Condition (2) holds by construction, with equality at the corners:
    # a1 := (rho+1) log(sqrt2+1) equals (rho-1) log(a1) + 2 D h(a1) exactly
    # since h(sqrt2+1) = log(sqrt2+1)/2, and (coef - 2) log y0 equals
    # (rho+1)(3/n0) log(sqrt2+1) by the definition of coef, while the
    # requirement itself sits strictly below via log(alpha2) < (3/n) *
    # log(sqrt2+1) and the minimal-polynomial height bound.  The floors
    # a_i >= 1 and the monotonicity in y are the checkable parts:
    require(a1.gt(Interval.exact(1, prec)), "a1 >= 1")
    require(a2_min.gt(Interval.exact(1, prec)), "a2 >= 1")
    require(
        coef.gt(Interval.exact(2, prec)), "a2 coefficient exceeds 2 (monotone in y)"
    )
    notes.append(
        "Laurent conditions (2) hold by construction of a1, a2 "
        "(corner equalities; floors and monotonicity certified)"
    )

    h_range = Interval.upper_unbounded(h0.lo, prec)
    a2_range = Interval.upper_unbounded(a2_min.lo, prec)
    ev = laurent_theorem_bound(
        params, h_range, a1, a2_range, prec, condition_two_verified=True
    )
    require(ev.C.lt(Interval.exact(Fraction(471, 10000), prec)), "C_max < 0.0471")
    require(
        ev.C_prime.lt(Interval.exact(Fraction(1158, 10000), prec)), "C'_max < 0.1158"
    )
    notes.append("C_max < 0.0471 and C'_max < 0.1158 certified")

    # per-n sweep coefficients (published roundings, certified to dominate)
    om, th = ev.omega, ev.theta
    c1 = ev.C * a1 * Interval.exact(Fraction(200024, 100000), prec)
    c2 = (om * th).sqrt() / log_y0
    c3 = (
        ev.C_prime.log() + a1.log() + Interval.log_of(Fraction(200024, 100000), prec)
    ) / log_y0 + log_y0.log() / log_y0
    c4 = Interval.exact(2, prec) / log_y0
    published = [
        (c1, Fraction(22420, 10000), "2.2420"),
        (c2, Fraction(89, 10000), "0.0089"),
        (c3, Fraction(306, 10000), "0.0306"),
        (c4, Fraction(86, 10000), "0.0086"),
    ]
    coeffs = []
    for val, pub, label in published:
        require(val.lt(Interval.exact(pub, prec)), f"sweep coefficient <= {label}")
        coeffs.append(Interval.exact(pub, prec) if use_published_coefficients else val)
    k1, k2, k3, k4c = coeffs
    notes.append("sweep coefficients certified against published roundings")

    log_rho = Interval.exact(params.rho, prec).log()  # lambda / sigma
    tail = Interval.log_of(32, prec) / log_y0
    n0, hi = 1289, sweep_hi
    step_prec = 128  # narrow scalar work; plenty for a margin > 0.1
    for n in range(n0, hi):
        h_up = 2 * Interval.log_of(n, step_prec) - Interval.exact(
            Fraction(6300, 10000), step_prec
        )
        hl = h_up + log_rho
        t_val = k1 * hl.square() + k2 * hl + k3 + k4c * hl.log()
        rhs = tail + 2 * t_val
        if rhs.lt(Interval.exact(n, step_prec)) is not True:
            raise PipelineError(f"final inequality not refuted at n = {n}")
    notes.append(f"final inequality refuted for every n in [{n0}, {hi})")

    from .dioph import admissible_exponents_x2minus2

    admissible = admissible_exponents_x2minus2()
    n_max = max(admissible)
    notes.append(f"largest admissible exponent below 1289: {n_max}")
    return X2Minus2Report(
        n_max, ev.C, ev.C_prime, coef, b_subtr, h_subtr, (n0, hi), tuple(notes)
    )


def _crude_cutoff(prec: int, notes: list[str]) -> None:
    """Certify that the corollary route excludes n >= 17000:
    n > 178 log^2 n + 2 log(4 sqrt2)/log y0 at n = 17000, widening in n."""
    n_iv = Interval.exact(17000, prec)
    rhs = Interval.exact(178, prec) * n_iv.log().square() + (
        2 * (Interval.exact(32, prec).sqrt()).log() / Interval.log_of(10**102, prec)
    )
    require(rhs.lt(n_iv), "crude cutoff at n = 17000")
    # monotone: d/dn (n - 178 log^2 n) = 1 - 356 log n / n > 0 at 17000
    require(
        (Interval.exact(356, prec) * n_iv.log() / n_iv).lt(Interval.exact(1, prec)),
        "crude cutoff margin widens past 17000",
    )
    notes.append("crude corollary stage: no solutions with n >= 17000")
