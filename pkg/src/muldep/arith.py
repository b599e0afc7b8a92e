"""Exact integer arithmetic primitives.

Factorization, p-adic valuations, perfect-power detection and
primitive-divisor queries for a^n +/- b^n.  Everything here works on plain
Python ints and is deterministic for a fixed input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import gmpy2

TRIAL_LIMIT = 10**6

# Deterministic Miller-Rabin witness set, valid for all n < 3.317e24
# (Sorenson & Webster).  Beyond that we fall back to a high-repetition
# strong probable-prime test, which is the documented limit of this module.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_LIMIT = 3317044064679887385961981


class DomainError(ValueError):
    """Raised when an operation is called outside its stated domain."""


def _small_primes(limit: int = TRIAL_LIMIT) -> list[int]:
    return _sieve_primes(limit)


@lru_cache(maxsize=4)
def _sieve_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(limit + 1) if sieve[i]]


def is_prime(n: int) -> bool:
    """Primality check: deterministic below 3.3e24, strong-probable beyond.

    Uses the fixed Miller-Rabin base set that is provably correct for all
    64-bit (and somewhat larger) inputs; larger inputs get a 64-round
    strong test via gmpy2.
    """
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    if n < _MR_DETERMINISTIC_LIMIT:
        bases = _MR_BASES
    else:
        return bool(gmpy2.is_prime(gmpy2.mpz(n), 64))
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _brent_rho(n: int) -> int:
    """Return a nontrivial factor of composite n (Brent's cycle variant).

    Deterministic: the parameter sequence is fixed, so repeated calls on
    the same n return the same factor.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 1000):
        y, m = 2, 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # pragma: no cover


@dataclass(frozen=True)
class Factorization:
    """Complete factorization of a positive integer.

    ``factors`` is a tuple of (prime, exponent) pairs with strictly
    increasing primes; the product reconstructs ``value`` exactly.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise DomainError("factors must be sorted with exponents >= 1")
            last = p
            prod *= p**e
        if prod != self.value:
            raise DomainError("factor product does not reconstruct value")

    def as_dict(self) -> dict[int, int]:
        return dict(self.factors)

    def square_part(self) -> dict[int, int]:
        """Primes occurring with exponent >= 2, with their full exponents."""
        return {p: e for p, e in self.factors if e >= 2}


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    """Complete prime factorization of n >= 2.

    Trial division up to 10^6 followed by Brent's rho; every reported
    prime passes the primality certificate in :func:`is_prime`.  Suitable
    for the desk-scale inputs of this package, not for cryptographic-size
    integers.  Results are immutable and cached.
    """
    if n < 2:
        raise DomainError(f"factorize requires n >= 2, got {n}")
    out: dict[int, int] = {}
    m = n
    for p in _small_primes():
        if p * p > m:
            break
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
    stack = [m] if m > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _brent_rho(m)
        stack.append(d)
        stack.append(m // d)
    return Factorization(n, tuple(sorted(out.items())))


def vp(p: int, m: int) -> int:
    """p-adic valuation: largest k with p^k | m.  Requires m != 0."""
    if m == 0:
        raise DomainError("valuation of 0 is infinite")
    if p < 2 or not is_prime(p):
        raise DomainError(f"{p} is not prime")
    m = abs(m)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return k


def perfect_power(n: int) -> tuple[int, int] | None:
    """Maximal-exponent power representation of n >= 2.

    Returns (base, exponent) with base**exponent == n and exponent
    maximal (>= 2), or None if n is not a perfect power.  Callers that
    need "is a k-th power" should check k divides the exponent.
    """
    if n < 2:
        raise DomainError(f"perfect_power requires n >= 2, got {n}")
    z = gmpy2.mpz(n)
    for e in range(z.bit_length(), 1, -1):
        root, exact = gmpy2.iroot(z, e)
        if exact:
            return int(root), e
    return None


def is_power_of(base: int, n: int) -> int | None:
    """Exponent e with base**e == n, or None.  is_power_of(b, 1) == 0."""
    if base < 2 or n < 1:
        raise DomainError("requires base >= 2 and n >= 1")
    if n == 1:
        return 0
    # estimate e from bit lengths, then verify exactly
    e = max((n.bit_length() - 1) // max(base.bit_length() - 1, 1), 1)
    for cand in (e, e + 1, e - 1):
        if cand >= 1 and base**cand == n:
            return cand
    return None


@dataclass(frozen=True)
class ZsigmondyException:
    """One of the listed no-primitive-divisor cases of a^n -/+ b^n."""

    a: int
    b: int
    n: int
    sign: str


def _strip_common(n_val: int, other: int) -> int:
    g = math.gcd(n_val, other)
    while g > 1:
        n_val //= g
        g = math.gcd(n_val, g)
    return n_val


def primitive_part(a: int, b: int, n: int, sign: str) -> int:
    """Part of a^n -/+ b^n coprime to every earlier term of the sequence.

    A prime divides the result iff it is a primitive divisor.  Runs on
    gcds only, no factoring.
    """
    if sign not in ("+", "-"):
        raise DomainError("sign must be '+' or '-'")
    if not (a > b >= 1) or math.gcd(a, b) != 1:
        raise DomainError("requires a > b >= 1 coprime")
    if n < 1:
        raise DomainError("requires n >= 1")
    if sign == "-":
        val = a**n - b**n
        if val == 0:
            return 1
        for d in range(1, n):
            if n % d == 0:
                val = _strip_common(val, a**d - b**d)
        return val
    val = a**n + b**n
    for d in range(1, n):
        # p | a^d + b^d and p | a^n + b^n forces d | n with n/d odd
        if n % d == 0 and (n // d) % 2 == 1:
            val = _strip_common(val, a**d + b**d)
    if n > 1 and (a + b) % 2 == 0:
        # 2 divides a^1 + b^1, hence is never primitive past n = 1
        while val % 2 == 0:
            val //= 2
    return val


def _any_prime_factor(m: int) -> int:
    """Some prime factor of m > 1 (smallest found, deterministic)."""
    for p in _small_primes(10**5):
        if m % p == 0:
            return p
    if is_prime(m):
        return m
    d = _brent_rho(m)
    d = min(d, m // d)
    while not is_prime(d):
        e = _brent_rho(d)
        d = min(e, d // e)
    return d


def primitive_divisor(a: int, b: int, n: int, sign: str) -> int | ZsigmondyException:
    """Prime dividing a^n -/+ b^n but no earlier a^k -/+ b^k, or the exception.

    The exception cases are exactly: n=1 with a-b=1, n=2 with a+b a power
    of two, (a,b,n)=(2,1,6) for the minus sign; (a,b,n)=(2,1,3) for plus.
    Witness extraction factors the primitive part, which can be slow for
    adversarial inputs far above the tested desk scale.
    """
    part = primitive_part(a, b, n, sign)
    if part == 1:
        return ZsigmondyException(a, b, n, sign)
    return _any_prime_factor(part)


def squarefree_kernel(n: int) -> int:
    """Radical of n (product of its distinct primes)."""
    if n < 1:
        raise DomainError("requires n >= 1")
    if n == 1:
        return 1
    r = 1
    for p, _ in factorize(n).factors:
        r *= p
    return r
