"""Equation-specific bounded searches and verifiers.

Covers the final search for 2^y (2^x +/- 1)^z -/+ 1 = 3^r (2^(x+1) +/- 1)^w,
the small-case lemma searches it rests on, the 102-prime exponent list and
modulus Q machinery for x^2 - 2 = y^n, and the factor-table check of
2^(t-1) - 1 square parts.
"""

from __future__ import annotations

import hashlib
import importlib.resources
import math
from dataclasses import dataclass

from gmpy2 import mpq

from .arith import DomainError, is_power_of, is_prime, perfect_power, vp
from .lattice import ReductionCertificate, auto_reduce


# -- the q(x, y, z) machinery ----------------------------------------------


def _sit_lhs(sign: str, x: int, y: int, z: int) -> int:
    if sign == "+":
        return 2**y * (2**x + 1) ** z - 1
    if sign == "-":
        return 2**y * (2**x - 1) ** z + 1
    raise DomainError("sign must be '+' or '-'")


def q_strip3(sign: str, x: int, y: int, z: int) -> tuple[int, int]:
    """(value with all factors of 3 removed, removed valuation) for
    2^y (2^x +/- 1)^z -/+ 1."""
    if x < 3 or y < 1 or z < 0:
        raise DomainError("requires x >= 3, y >= 1, z >= 0")
    val = _sit_lhs(sign, x, y, z)
    if val <= 0:
        raise DomainError("left-hand side is nonpositive")
    v = 0
    while val % 3 == 0:
        val //= 3
        v += 1
    return val, v


@dataclass(frozen=True)
class SitSolution:
    """Solution of 2^y (2^x +/- 1)^z -/+ 1 = 3^r (2^(x+1) +/- 1)^w."""

    sign: str
    x: int
    y: int
    z: int
    w: int
    r: int

    def validates(self) -> bool:
        lhs = _sit_lhs(self.sign, self.x, self.y, self.z)
        base = 2 ** (self.x + 1) + (1 if self.sign == "+" else -1)
        rhs = base**self.w
        if self.r >= 0:
            return lhs == 3**self.r * rhs
        return lhs * 3 ** (-self.r) == rhs


def _solutions_at(sign: str, x: int, y: int, z: int) -> SitSolution | None:
    """Check one (x, y, z) cell: is the stripped value a power of the
    stripped base?"""
    q_val, v = q_strip3(sign, x, y, z)
    base = 2 ** (x + 1) + (1 if sign == "+" else -1)
    tv = 0
    b = base
    while b % 3 == 0:
        b //= 3
        tv += 1
    w = is_power_of(b, q_val) if q_val >= 1 else None
    if w is None:
        return None
    sol = SitSolution(sign, x, y, z, w, v - w * tv)
    if not sol.validates():
        raise AssertionError(f"candidate {sol} failed exact validation")
    return sol


def naive_sit_solutions(
    sign: str, x_hi: int = 8, y_hi: int = 12, z_hi: int = 12
) -> list[SitSolution]:
    """Exhaustive double-loop oracle over a small box, ignoring any
    analytic bounds.  Includes z = 0."""
    out = []
    for x in range(3, x_hi + 1):
        for y in range(1, y_hi + 1):
            for z in range(0, z_hi + 1):
                sol = _solutions_at(sign, x, y, z)
                if sol is not None:
                    out.append(sol)
    return out


@dataclass
class SitSweepEntry:
    x: int
    sign: str
    C_used: int
    U_hi: float  # display value; the exact cap comes from the certificate
    certificate: ReductionCertificate

    def u_cap(self) -> mpq:
        """Exact rational upper bound on y + (x - 0.2) z - 1."""
        return mpq(self.certificate.u_value().hi)


def sit_sweep(
    sign: str,
    x_range: tuple[int, int] = (3, 296),
    coeff_bound: int = 806 * 10**25,
    c_seed: int | None = None,
) -> list[SitSweepEntry]:
    """Per-x lattice reduction over the admissible parities.

    For the plus equation only even x carry solutions with r != 0; for
    minus only odd x.  The scaling constant warm-starts from the previous
    x as the logarithms drift toward multiples of log 2.
    """
    lo, hi = x_range
    want_parity = 0 if sign == "+" else 1
    if c_seed is None:
        c_seed = 10 ** (4 * len(str(coeff_bound)))
    entries = []
    c_cur = c_seed
    for x in range(lo, hi + 1):
        if x % 2 != want_parity:
            continue
        s = 1 if sign == "+" else -1
        gammas = [3, 2 ** (x + 1) + s, 2, 2**x + s]
        cert = auto_reduce(gammas, coeff_bound, c_cur)
        u_hi = float(cert.u_value().hi)
        entries.append(SitSweepEntry(x, sign, cert.C, u_hi, cert))
        c_cur = cert.C
    return entries


def solve_sit_final(
    sign: str,
    x_range: tuple[int, int] = (3, 296),
    coeff_bound: int = 806 * 10**25,
    sweep: list[SitSweepEntry] | None = None,
) -> list[SitSolution]:
    """Final bounded search of the two equations for z >= 1.

    For each admissible x, the lattice certificate caps
    y + (x - 0.2) z - 1 < U(x); every (y, z) cell under the cap is tested
    exactly via the strip-3 power check.  The z = 0 face belongs to the
    small-case lemma searches.
    """
    if sweep is None:
        sweep = sit_sweep(sign, x_range, coeff_bound)
    out: list[SitSolution] = []
    for entry in sweep:
        x = entry.x
        u = entry.u_cap()
        slope = mpq(5 * x - 1, 5)  # x - 0.2, exactly
        z = 1
        while mpq(1) + slope * z - 1 < u:
            y = 1
            while mpq(y) + slope * z - 1 < u:
                sol = _solutions_at(sign, x, y, z)
                if sol is not None:
                    out.append(sol)
                y += 1
            z += 1
    return out


# -- small-case lemma searches ----------------------------------------------


def _powers_of(val: int, n_min: int, n_max: int):
    """(root, n) pairs with root**n == val, n in [n_min, n_max]."""
    if val < 2:
        return
    pp = perfect_power(val)
    e = pp[1] if pp else 1
    for n in range(max(n_min, 2), min(e, n_max) + 1):
        if e % n == 0:
            root, exact = _iroot(val, n)
            if exact:
                yield root, n
    if n_min <= 1 <= n_max:
        yield val, 1


def _iroot(val: int, n: int) -> tuple[int, bool]:
    import gmpy2

    r, exact = gmpy2.iroot(gmpy2.mpz(val), n)
    return int(r), bool(exact)


def _search_sit1_z0(box) -> set[tuple]:
    """2^y - 1 = 3^r (2^(x+1) + 1)^w, x >= 3."""
    out = set()
    for x in range(3, box["x"] + 1):
        base = 2 ** (x + 1) + 1
        for y in range(1, box["e"] + 1):
            lhs = 2**y - 1
            for w in range(0, box["e"] + 1):
                p = base**w
                if p > lhs:
                    break
                if lhs % p == 0:
                    rest = lhs // p
                    r = is_power_of(3, rest) if rest >= 1 else None
                    if r is not None:
                        out.add((x, y, w, r))
    return out


def _search_sit2_z0(box) -> set[tuple]:
    """2^y + 1 = 3^r (2^(x+1) - 1)^w, x >= 3, r possibly negative."""
    out = set()
    for x in range(3, box["x"] + 1):
        base = 2 ** (x + 1) - 1
        tv = vp(3, base) if base % 3 == 0 else 0
        stripped = base // 3**tv
        for y in range(1, box["e"] + 1):
            lhs = 2**y + 1
            v = vp(3, lhs) if lhs % 3 == 0 else 0
            q = lhs // 3**v
            w = is_power_of(stripped, q)
            if w is not None:
                r = v - w * tv
                if 3 ** max(r, 0) * base**w == lhs * 3 ** max(-r, 0):
                    out.add((x, y, w, r))
    return out


def _search_sit1_r0(box) -> set[tuple]:
    """2^y (2^x + 1)^z - 1 = (2^(x+1) + 1)^w, x >= 3."""
    out = set()
    for x in range(3, box["x"] + 1):
        base = 2 ** (x + 1) + 1
        for y in range(1, box["e"] + 1):
            for z in range(0, box["e"] + 1):
                lhs = 2**y * (2**x + 1) ** z - 1
                if lhs < 1:
                    continue
                w = is_power_of(base, lhs) if lhs > 1 else (0 if lhs == 1 else None)
                if w is not None:
                    out.add((x, y, z, w))
    return out


def _search_sit2_r0(box) -> set[tuple]:
    """2^y (2^x - 1)^z + 1 = (2^(x+1) - 1)^w, x >= 3."""
    out = set()
    for x in range(3, box["x"] + 1):
        base = 2 ** (x + 1) - 1
        for y in range(1, box["e"] + 1):
            for z in range(0, box["e"] + 1):
                lhs = 2**y * (2**x - 1) ** z + 1
                w = is_power_of(base, lhs) if lhs > 1 else None
                if w is not None:
                    out.add((x, y, z, w))
    return out


def _search_catalan(box) -> set[tuple]:
    """a^x - b^y = 1 with everything >= 2."""
    out = set()
    cap = box["v"]
    for a in range(2, box["x"] + 1):
        for x in range(2, box["e"] + 1):
            val = a**x
            if val > cap:
                break
            target = val - 1
            if target < 4:
                continue
            for b, y in _powers_of(target, 2, box["e"]):
                if b >= 2:
                    out.add((a, x, b, y))
    return out


def _search_nagell(box) -> set[tuple]:
    """x^n - y^2 = 2, n >= 2."""
    out = set()
    for x in range(1, box["x"] + 1):
        for n in range(2, box["e"] + 1):
            val = x**n - 2
            if val < 1:
                continue
            if x**n > box["v"]:
                break
            y = math.isqrt(val)
            if y * y == val and y >= 1:
                out.add((x, y, n))
    return out


def _search_stormer(box) -> set[tuple]:
    """x^2 + 1 = 2 y^n, x >= 2, n >= 3."""
    out = set()
    for x in range(2, box["x"] + 1):
        val = x * x + 1
        if val % 2:
            continue
        half = val // 2
        if half < 2:
            continue
        for y, n in _powers_of(half, 3, box["e"]):
            out.add((x, y, n))
    return out


def _search_cohn(box) -> set[tuple]:
    """2 x^2 - 1 = y^n, x, y >= 2, n >= 3."""
    out = set()
    for x in range(2, box["x"] + 1):
        val = 2 * x * x - 1
        for y, n in _powers_of(val, 3, box["e"]):
            if y >= 2:
                out.add((x, y, n))
    return out


def _search_two_three_power(box) -> set[tuple]:
    """2^k - 3^l x^n = +/-1, k, l >= 0, x >= 2, n >= 3 (expected empty)."""
    out = set()
    for k in range(0, box["e"] + 1):
        for eps in (1, -1):
            val = 2**k - eps
            if val < 2:
                continue
            m = val
            l = 0
            while True:
                for x, n in _powers_of(m, 3, box["e"]):
                    if x >= 2:
                        out.add((k, l, x, n, eps))
                if m % 3:
                    break
                m //= 3
                l += 1
    return out


def _search_pow3_minus_2xn(box) -> set[tuple]:
    """3^k - 2 x^n = +/-1, k >= 1, x >= 3, n >= 2."""
    out = set()
    for k in range(1, box["e"] + 1):
        for eps in (1, -1):
            val = 3**k - eps
            if val % 2 or val < 2:
                continue
            half = val // 2
            if half < 3:
                continue
            for x, n in _powers_of(half, 2, box["e"]):
                if x >= 3:
                    out.add((k, x, n, eps))
    return out


_DEFAULT_BOX = {"x": 30, "e": 60, "v": 10**18}

LEMMA_SEARCHES = {
    "sit1_z0": _search_sit1_z0,
    "sit1_r0": _search_sit1_r0,
    "sit2_z0": _search_sit2_z0,
    "sit2_r0": _search_sit2_r0,
    "catalan": _search_catalan,
    "nagell": _search_nagell,
    "stormer": _search_stormer,
    "cohn": _search_cohn,
    "two_three_power": _search_two_three_power,
    "pow3_minus_2xn": _search_pow3_minus_2xn,
}


def lemma_search(lemma_id: str, bounds: dict | None = None) -> set[tuple]:
    """Exhaustive search of one registered small-case equation within a
    box; keys of ``bounds``: x (base range), e (exponent range), v
    (value cap where applicable)."""
    if lemma_id not in LEMMA_SEARCHES:
        raise DomainError(f"unknown lemma id {lemma_id!r}; "
                          f"known: {sorted(LEMMA_SEARCHES)}")
    box = dict(_DEFAULT_BOX)
    if bounds:
        box.update(bounds)
    return LEMMA_SEARCHES[lemma_id](box)


# -- x^2 - 2 = y^n congruence data ------------------------------------------

# Chen's 46 primes; the modulus Q below forces y = -1 (mod Q) for any
# solution.  Data, not derived here; the digest guards against edits.
CHEN_S = (
    5, 7, 11, 13, 19, 23, 29, 31, 37, 41, 61, 67, 73, 89, 113, 127, 137,
    149, 181, 191, 193, 197, 223, 233, 251, 257, 349, 373, 379, 421, 457,
    461, 521, 547, 599, 617, 661, 677, 701, 761, 769, 811, 829, 881, 883,
    953,
)
_CHEN_S_SHA256 = "d733a809c21bd6d3a12daf9f7437e92af7d869c4c70edc4ff038958e93851682"


def _check_chen_digest() -> None:
    digest = hashlib.sha256(",".join(map(str, CHEN_S)).encode()).hexdigest()
    if digest != _CHEN_S_SHA256:
        raise AssertionError("CHEN_S data corrupted")


def compute_Q() -> int:
    """Product of the 46 primes of the embedded set."""
    _check_chen_digest()
    q = 1
    for p in CHEN_S:
        q *= p
    return q


def chen_filter(y: int) -> bool:
    """Does y satisfy the forced congruence y = -1 (mod Q)?"""
    return y % compute_Q() == compute_Q() - 1


def admissible_exponents_x2minus2() -> list[int]:
    """Primes n with 41 <= n <= 1237 and n in {13,17,19,23} mod 24."""
    out = [
        n
        for n in range(41, 1238)
        if n % 24 in (13, 17, 19, 23) and is_prime(n)
    ]
    return out


# -- factor tables -----------------------------------------------------------


@dataclass(frozen=True)
class FactorTableEntry:
    t: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int | None          # unresolved composite part, or None
    cofactor_digits: int | None   # stated digit count from the source line

    def value(self) -> int:
        return 2 ** (self.t - 1) - 1

    def square_part(self) -> dict[int, int]:
        return {p: e for p, e in self.factors if e >= 2}


@dataclass(frozen=True)
class FactorTable:
    entries: tuple[FactorTableEntry, ...]
    source: str

    def by_t(self) -> dict[int, FactorTableEntry]:
        return {e.t: e for e in self.entries}


class FactorTableError(ValueError):
    pass


def parse_factor_table(text: str, source: str = "<inline>") -> FactorTable:
    """Parse "t: p1^e1 p2 ... [* Cddd]" lines, enforcing the product check.

    Each listed prime must pass the primality certificate; a trailing
    ``* Cddd`` marks an unresolved composite cofactor whose implied value
    must have exactly ddd digits.
    """
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            head, rest = line.split(":", 1)
            t = int(head)
        except ValueError as exc:
            raise FactorTableError(f"line {lineno}: bad header") from exc
        cof_digits = None
        if "*" in rest:
            rest, cof = rest.split("*", 1)
            cof = cof.strip()
            if not cof.startswith("C"):
                raise FactorTableError(f"line {lineno}: bad cofactor tag {cof!r}")
            cof_digits = int(cof[1:])
        factors = []
        for tok in rest.split():
            if "^" in tok:
                p_s, e_s = tok.split("^")
                p, e = int(p_s), int(e_s)
            else:
                p, e = int(tok), 1
            if not is_prime(p):
                raise FactorTableError(f"line {lineno}: {p} fails primality")
            factors.append((p, e))
        factors.sort()
        n_val = 2 ** (t - 1) - 1
        prod = 1
        for p, e in factors:
            prod *= p**e
        if cof_digits is None:
            if prod != n_val:
                raise FactorTableError(f"line {lineno}: product check failed")
            cofactor = None
        else:
            if n_val % prod:
                raise FactorTableError(f"line {lineno}: factors do not divide value")
            cofactor = n_val // prod
            if len(str(cofactor)) != cof_digits:
                raise FactorTableError(
                    f"line {lineno}: cofactor has {len(str(cofactor))} digits, "
                    f"tag says {cof_digits}"
                )
        entries.append(FactorTableEntry(t, tuple(factors), cofactor, cof_digits))
    return FactorTable(tuple(entries), source)


def load_bundled_factor_table() -> FactorTable:
    text = (
        importlib.resources.files("muldep")
        .joinpath("data/factors_2pow.txt")
        .read_text()
    )
    return parse_factor_table(text, source="bundled")


@dataclass
class FactorTableReport:
    checked_t: list[int]
    missing_t: list[int]
    incomplete_t: list[int]   # entries with unresolved cofactors
    violations: list[tuple[int, int, int]]  # (t, d, x) with d^x = 1 mod Q
    square_parts: dict[int, dict[int, int]]

    @property
    def ok(self) -> bool:
        return not self.violations


def factor_table_check(table: FactorTable, q_mod: int | None = None) -> FactorTableReport:
    """Check every perfect-power divisor d^x (x >= 2) of each 2^(t-1) - 1
    against the congruence d^x = 1 (mod Q).

    Candidates are drawn from the resolved square part; entries with an
    unresolved cofactor are flagged incomplete (their hidden part could
    in principle hide more square divisors).
    """
    if q_mod is None:
        q_mod = compute_Q()
    admissible = set(admissible_exponents_x2minus2())
    by_t = table.by_t()
    checked, missing, incomplete, violations = [], [], [], []
    square_parts: dict[int, dict[int, int]] = {}
    for t in sorted(admissible):
        entry = by_t.get(t)
        if entry is None:
            missing.append(t)
            continue
        checked.append(t)
        if entry.cofactor is not None:
            incomplete.append(t)
        sq = entry.square_part()
        square_parts[t] = sq
        max_e = max(sq.values(), default=1)
        for x in range(2, max_e + 1):
            pool = {p: e // x for p, e in sq.items() if e >= x}
            for d in _divisors_from(pool):
                if d >= 2 and pow(d, x, q_mod) == 1 % q_mod:
                    violations.append((t, d, x))
    return FactorTableReport(checked, missing, incomplete, violations, square_parts)


def _divisors_from(pool: dict[int, int]):
    divs = [1]
    for p, e in pool.items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return divs


# -- Problem-equation verifiers ---------------------------------------------


def _verify_eq48(box) -> list[tuple]:
    """((d^x + 1)^s + 1)^t - d^y = 2: expected no solutions."""
    cap = box["v"]
    hits = []
    for d in range(2, box["x"] + 1):
        for x in range(1, box["e"] + 1):
            if d**x > cap:
                break
            inner = d**x + 1
            for s in range(2, box["e"] + 1):
                mid = inner**s + 1
                if mid > cap:
                    break
                for t in range(2, box["e"] + 1):
                    val = mid**t
                    if val > cap:
                        break
                    y = is_power_of(d, val - 2) if val - 2 >= 1 else None
                    if y is not None and y >= 2:
                        hits.append((d, x, y, s, t))
    return hits


def _verify_eq50(box) -> list[tuple]:
    """(d^x + 1)^s - (d^y - 1)^m = 2: expected no solutions."""
    cap = box["v"]
    hits = []
    for d in range(2, box["x"] + 1):
        for x in range(1, box["e"] + 1):
            if d**x > cap:
                break
            for s in range(2, box["e"] + 1):
                lhs = (d**x + 1) ** s
                if lhs > cap:
                    break
                target = lhs - 2
                if target < 1:
                    continue
                for root, m in _powers_of(target, 2, box["e"]):
                    y = is_power_of(d, root + 1)
                    if y is not None and y >= 1:
                        hits.append((d, x, y, s, m))
    return hits


def _verify_eq49(box) -> list[tuple]:
    """d^y - ((d^x - 1)^s - 1)^t = 2: expected no solutions."""
    cap = box["v"]
    hits = []
    for d in range(2, box["x"] + 1):
        for x in range(1, box["e"] + 1):
            if d**x > cap:
                break
            base = d**x - 1
            if base < 2:
                continue
            for s in range(2, box["e"] + 1):
                mid = base**s - 1
                if mid > cap:
                    break
                for t in range(2, box["e"] + 1):
                    val = mid**t
                    if val > cap:
                        break
                    y = is_power_of(d, val + 2)
                    if y is not None and y >= 2:
                        hits.append((d, x, y, s, t))
    return hits


_PROP_SEARCHES = {"eq48": _verify_eq48, "eq50": _verify_eq50, "eq49": _verify_eq49}
_PROP_BOX = {"x": 12, "e": 12, "v": 10**18}


def verify_prop_searches(prop_id: str, box: dict | None = None) -> list[tuple]:
    """Desk-scale exhaustive check of one of the three problem equations;
    the expected result is an empty list."""
    if prop_id not in _PROP_SEARCHES:
        raise DomainError(f"unknown proposition id {prop_id!r}")
    b = dict(_PROP_BOX)
    if box:
        b.update(box)
    return _PROP_SEARCHES[prop_id](b)
