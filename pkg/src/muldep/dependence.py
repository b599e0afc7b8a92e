"""Multiplicative dependence testing and classification of integer tuples.

A tuple (z_1, ..., z_n) of integers > 1 is multiplicatively dependent if
some nonzero integer vector (k_1, ..., k_n) gives z_1^k_1 * ... * z_n^k_n = 1,
i.e. the exponent matrix over the primes has rank < n.  All rank work is
fraction-free integer elimination; returned witnesses are re-verified in
exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .arith import DomainError, factorize


@dataclass(frozen=True)
class ExponentMatrix:
    """Exponent vectors of a tuple over the union of its prime supports."""

    primes: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, values: tuple[int, ...]) -> "ExponentMatrix":
        facs = [factorize(v).as_dict() for v in values]
        primes = tuple(sorted(set().union(*facs)))
        rows = tuple(tuple(f.get(p, 0) for p in primes) for f in facs)
        return cls(primes, rows)

    def reconstruct(self, i: int) -> int:
        out = 1
        for p, e in zip(self.primes, self.rows[i]):
            out *= p**e
        return out


@dataclass(frozen=True)
class DependenceClass:
    """Outcome of a dependence test.

    ``witness`` is a primitive integer kernel vector (first nonzero entry
    positive) whenever ``dependent``; ``k`` is the smallest size of a
    dependent subtuple, present iff dependent.
    """

    dependent: bool
    witness: tuple[int, ...] | None = None
    k: int | None = None


def _integer_kernel_vector(rows: list[list[int]]) -> tuple[int, ...] | None:
    """Nonzero integer vector v with sum_i v_i * rows[i] = 0, or None.

    Fraction-free row elimination tracking the transform; the first row
    of the transform that reaches an all-zero reduced row is a kernel
    vector of the row span.
    """
    m = len(rows)
    if m == 0:
        return None
    ncols = len(rows[0])
    work = [list(r) for r in rows]
    trans = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    pivot_row = 0
    for col in range(ncols):
        if pivot_row == m:
            break
        sel = None
        for i in range(pivot_row, m):
            if work[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        trans[pivot_row], trans[sel] = trans[sel], trans[pivot_row]
        a = work[pivot_row][col]
        for i in range(pivot_row + 1, m):
            b = work[i][col]
            if b == 0:
                continue
            g = math.gcd(a, b)
            ca, cb = a // g, b // g
            work[i] = [ca * work[i][j] - cb * work[pivot_row][j] for j in range(ncols)]
            trans[i] = [ca * trans[i][j] - cb * trans[pivot_row][j] for j in range(m)]
        pivot_row += 1
    for i in range(m):
        if all(x == 0 for x in work[i]) and any(t != 0 for t in trans[i]):
            return _normalize(trans[i])
    return None


def _normalize(vec: list[int]) -> tuple[int, ...]:
    g = 0
    for x in vec:
        g = math.gcd(g, x)
    vec = [x // g for x in vec]
    for x in vec:
        if x != 0:
            if x < 0:
                vec = [-y for y in vec]
            break
    return tuple(vec)


def verify_witness(values: tuple[int, ...], witness: tuple[int, ...]) -> bool:
    """Exact check that prod values[i]**witness[i] == 1."""
    pos, neg = 1, 1
    for v, k in zip(values, witness):
        if k > 0:
            pos *= v**k
        elif k < 0:
            neg *= v ** (-k)
    return pos == neg and any(witness)


def _check_entries(values) -> tuple[int, ...]:
    t = tuple(int(v) for v in values)
    if len(t) < 1:
        raise DomainError("empty tuple")
    for v in t:
        if v <= 1:
            raise DomainError(f"entries must exceed 1, got {v}")
    if len(set(t)) != len(t):
        raise DomainError("repeated entries are rejected")
    return t


def exponent_rank(values: tuple[int, ...]) -> int:
    """Rank over Q of the exponent matrix (== rank over Z)."""
    em = ExponentMatrix.of(values)
    rows = [list(r) for r in em.rows]
    rank = 0
    ncols = len(em.primes)
    for col in range(ncols):
        sel = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[rank], rows[sel] = rows[sel], rows[rank]
        a = rows[rank][col]
        for i in range(rank + 1, len(rows)):
            b = rows[i][col]
            if b:
                g = math.gcd(a, b)
                rows[i] = [
                    (a // g) * rows[i][j] - (b // g) * rows[rank][j]
                    for j in range(ncols)
                ]
        rank += 1
        if rank == len(rows):
            break
    return rank


def is_multiplicatively_dependent(values) -> DependenceClass:
    """Dependence test with verified witness and k-level.

    Dependent iff the exponent matrix has rank < length; the returned
    kernel vector is primitive with positive leading entry and satisfies
    prod z_i^k_i = 1 exactly.
    """
    t = _check_entries(values)
    em = ExponentMatrix.of(t)
    wit = _integer_kernel_vector([list(r) for r in em.rows])
    if wit is None:
        return DependenceClass(False)
    if not verify_witness(t, wit):
        raise AssertionError(f"witness {wit} failed exact verification on {t}")
    return DependenceClass(True, wit, _min_dependent_size(t))


def _min_dependent_size(t: tuple[int, ...]) -> int:
    for size in range(2, len(t) + 1):
        for sub in combinations(range(len(t)), size):
            vals = tuple(t[i] for i in sub)
            if exponent_rank(vals) < size:
                return size
    raise AssertionError("dependent tuple with no dependent subtuple")


def classify_k(values) -> int | None:
    """Smallest k with a dependent k-subtuple while all (k-1)-subtuples
    are independent; None for an independent tuple."""
    t = _check_entries(values)
    if exponent_rank(t) == len(t):
        return None
    return _min_dependent_size(t)


# -- family classification of consecutive triples ----------------------

FAM1 = "Fam1"
NEW_FAMILY = "NewFamily"
SPORADIC = "Sporadic"


def _strip_2_5(m: int) -> int:
    while m % 2 == 0:
        m //= 2
    while m % 5 == 0:
        m //= 5
    return m


def classify_family(a: int, b: int, c: int) -> str:
    """Family tag for an ordered triple 1 < a < b < c.

    Fam1 covers the {2, 8, 2^x*5^y - 2} family including its unordered
    small members (2,3,8) and (2,6,8); NewFamily is
    (2, 2^x - 2, 2^(2x) - 2^(x+1)) for x >= 3; everything else is
    Sporadic.
    """
    if not (1 < a < b < c):
        raise DomainError("requires 1 < a < b < c")
    if a == 2:
        if b == 8 and _strip_2_5(c + 2) == 1:
            return FAM1
        if c == 8 and _strip_2_5(b + 2) == 1:
            return FAM1
        m = b + 2
        x = m.bit_length() - 1
        if (1 << x) == m and x >= 3 and c == (1 << (2 * x)) - (1 << (x + 1)):
            return NEW_FAMILY
    return SPORADIC


@dataclass(frozen=True)
class TripleRecord:
    """A consecutive-triple search hit with per-shift classification."""

    a: int
    b: int
    c: int
    class_at_shift: tuple[DependenceClass, DependenceClass, DependenceClass]
    family: str

    @property
    def k_levels(self) -> tuple[int | None, int | None, int | None]:
        return tuple(cl.k for cl in self.class_at_shift)

    def to_json_dict(self) -> dict:
        k0, k1, k2 = self.k_levels
        return {
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "k0": k0,
            "k1": k1,
            "k2": k2,
            "family": self.family,
        }


def make_triple_record(a: int, b: int, c: int) -> TripleRecord:
    shifts = tuple(
        is_multiplicatively_dependent((a + i, b + i, c + i)) for i in range(3)
    )
    if not all(s.dependent for s in shifts):
        raise DomainError(f"({a},{b},{c}) is not dependent at every shift")
    return TripleRecord(a, b, c, shifts, classify_family(a, b, c))
