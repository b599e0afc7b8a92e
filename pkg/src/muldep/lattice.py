"""Integer-lattice LLL reduction and linear-form lower-bound extraction.

The reduction itself runs in exact rational arithmetic (gmpy2.mpq), so the
Lovasz and size-reduction conditions of the output are facts, not floating
point claims; a post-hoc verifier re-checks them anyway since the result
feeds a proof chain.  The lower-bound lemma turns the smallest
Gram-Schmidt norm of the reduced basis for

        [ I_3 | 0 ]
        [ [C log g_1] ... [C log g_4] ]

into a bound |x_1 log g_1 + ... + x_4 log g_4| > (sqrt(c^2 - S) - T) / C
valid for all integer coefficient vectors bounded by M, provided
c^2 > T^2 + S with S = 3M^2 and T = (1 + 4M)/2.
"""

from __future__ import annotations

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpq, mpz

from .intervals import DEFAULT_PREC, Interval, PrecisionError


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class LatticeBasis:
    """Columns of a square integer matrix spanning a full-rank lattice."""

    columns: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = len(self.columns)
        if d == 0 or any(len(c) != d for c in self.columns):
            raise LatticeError("basis must be square")
        if _gram_det(self.columns) == 0:
            raise LatticeError("columns are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.columns)


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _gram_det(cols):
    d = len(cols)
    m = [[mpq(_dot(cols[i], cols[j])) for j in range(d)] for i in range(d)]
    det = mpq(1)
    for k in range(d):
        piv = next((i for i in range(k, d) if m[i][k] != 0), None)
        if piv is None:
            return mpq(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, d):
            f = m[i][k] / m[k][k]
            for j in range(k, d):
                m[i][j] -= f * m[k][j]
    return det


def _gram_schmidt(cols):
    """Exact Gram-Schmidt: returns (Bstar rows as mpq lists, mu, squared norms)."""
    d = len(cols)
    bstar = []
    mu = [[mpq(0)] * d for _ in range(d)]
    nsq = []
    for i in range(d):
        vec = [mpq(x) for x in cols[i]]
        for j in range(i):
            mu[i][j] = sum(mpq(cols[i][t]) * bstar[j][t] for t in range(d)) / nsq[j]
            for t in range(d):
                vec[t] -= mu[i][j] * bstar[j][t]
        bstar.append(vec)
        nsq.append(sum(x * x for x in vec))
    return bstar, mu, nsq


def _round_mpq(q: mpq) -> int:
    return int((q.numerator * 2 + q.denominator) // (2 * q.denominator))


def lll_reduce(basis: LatticeBasis, delta: mpq = mpq(3, 4)) -> LatticeBasis:
    """delta-LLL-reduced basis of the same lattice, exact arithmetic."""
    if not (mpq(1, 4) < delta < 1):
        raise LatticeError("delta must lie in (1/4, 1)")
    cols = [list(map(mpz, c)) for c in basis.columns]
    d = len(cols)
    _, mu, nsq = _gram_schmidt(cols)
    k = 1
    while k < d:
        for j in range(k - 1, -1, -1):
            r = _round_mpq(mu[k][j])
            if r:
                for t in range(d):
                    cols[k][t] -= r * cols[j][t]
                for jj in range(j):
                    mu[k][jj] -= r * mu[j][jj]
                mu[k][j] -= r
        if nsq[k] >= (delta - mu[k][k - 1] * mu[k][k - 1]) * nsq[k - 1]:
            k += 1
        else:
            cols[k], cols[k - 1] = cols[k - 1], cols[k]
            _, mu, nsq = _gram_schmidt(cols)
            k = max(k - 1, 1)
    out = LatticeBasis(tuple(tuple(int(x) for x in c) for c in cols))
    ok, why = verify_reduced(out, delta)
    if not ok:
        raise AssertionError(f"LLL output failed exact verification: {why}")
    return out


def verify_reduced(basis: LatticeBasis, delta: mpq = mpq(3, 4)) -> tuple[bool, str]:
    """Exact post-hoc check of size reduction and the Lovasz condition."""
    _, mu, nsq = _gram_schmidt([list(c) for c in basis.columns])
    d = basis.dimension
    for i in range(d):
        for j in range(i):
            if abs(mu[i][j]) * 2 > 1:
                return False, f"|mu[{i}][{j}]| > 1/2"
    for k in range(1, d):
        if nsq[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * nsq[k - 1]:
            return False, f"Lovasz fails at k={k}"
    return True, ""


@dataclass(frozen=True)
class ReductionCertificate:
    C: int
    M: int
    S: int          # 3 M^2
    T: mpq          # (1 + 4M)/2
    c_squared: mpq  # exact min Gram-Schmidt squared norm
    lower_bound: Interval | None  # on |Lambda|; present iff c^2 > T^2 + S

    @property
    def succeeded(self) -> bool:
        return self.lower_bound is not None

    def u_value(self, prec: int = DEFAULT_PREC) -> Interval:
        """-log2(lower bound): exponent budget for the equation search."""
        if self.lower_bound is None:
            raise LatticeError("certificate has no lower bound")
        return -self.lower_bound.log2()


def _nearest_scaled_log(log_iv: Interval, c_scale: int) -> int:
    lo = mpq(log_iv.lo) * c_scale
    hi = mpq(log_iv.hi) * c_scale
    if hi - lo >= mpq(1, 4):
        raise PrecisionError("log enclosure too wide to scale")
    rlo = _round_mpq(lo)
    rhi = _round_mpq(hi)
    if rlo != rhi:
        raise PrecisionError("ambiguous nearest integer for [C log g]")
    return rlo


def _log_intervals(logs, c_scale: int) -> list[Interval]:
    prec = int(c_scale).bit_length() + 128
    out = []
    for g in logs:
        if isinstance(g, Interval):
            out.append(g)
        else:
            if g < 2:
                raise LatticeError("log arguments must be >= 2")
            out.append(Interval.log_of(g, prec))
    return out


def linform_lower_bound(logs, coeff_bound: int, c_scale: int) -> ReductionCertificate:
    """One reduction attempt at scaling constant C = c_scale.

    ``logs`` is a sequence of four positive integers (logs taken here) or
    ready Interval enclosures of the log values.  Requires C > M^4.
    """
    if len(logs) != 4:
        raise LatticeError("exactly four logarithms required")
    m_bound = int(coeff_bound)
    if c_scale <= m_bound**4:
        raise LatticeError("C must exceed M^4")
    ivs = _log_intervals(logs, c_scale)
    row = [_nearest_scaled_log(iv, c_scale) for iv in ivs]
    cols = tuple(
        tuple((1 if i == j else 0) for i in range(3)) + (row[j],) for j in range(4)
    )
    reduced = lll_reduce(LatticeBasis(cols))
    _, _, nsq = _gram_schmidt([list(c) for c in reduced.columns])
    c_sq = min(nsq)
    s_val = 3 * m_bound * m_bound
    t_val = mpq(1 + 4 * m_bound, 2)
    if c_sq <= t_val * t_val + s_val:
        return ReductionCertificate(c_scale, m_bound, s_val, t_val, c_sq, None)
    prec = max(DEFAULT_PREC, 128)
    radicand = Interval.exact(c_sq - s_val, prec)
    bound = (radicand.sqrt() - Interval.exact(t_val, prec)) / Interval.exact(
        c_scale, prec
    )
    assert bound.lo > 0
    return ReductionCertificate(c_scale, m_bound, s_val, t_val, c_sq, bound)


def auto_reduce(
    logs, coeff_bound: int, c_seed: int, max_factor: int = 10**10
) -> ReductionCertificate:
    """Escalate C by factors of 10 until the reduction certifies a bound.

    Returns the first success; gives up past c_seed * max_factor.  Seed
    with the C that worked for the previous instance when sweeping a
    family (monotone warm start).
    """
    if c_seed <= coeff_bound**4:
        raise LatticeError("C seed must exceed M^4")
    c_scale = int(c_seed)
    ceiling = c_seed * max_factor
    while True:
        cert = linform_lower_bound(logs, coeff_bound, c_scale)
        if cert.succeeded:
            return cert
        if c_scale > ceiling:
            raise LatticeError(
                f"auto_reduce gave up at C={c_scale} (seed {c_seed})"
            )
        c_scale *= 10
