import random

import pytest

from muldep.arith import (
    DomainError,
    Factorization,
    ZsigmondyException,
    factorize,
    is_power_of,
    is_prime,
    perfect_power,
    primitive_divisor,
    primitive_part,
    vp,
)

random.seed(20240817)


def test_factorize_examples():
    assert factorize(900).as_dict() == {2: 2, 3: 2, 5: 2}
    # 2*78^2 - 1 = 12167 = 23^3
    assert 2 * 78**2 - 1 == 12167
    assert factorize(12167).as_dict() == {23: 3}


def test_factorize_rejects_small():
    with pytest.raises(DomainError):
        factorize(1)
    with pytest.raises(DomainError):
        factorize(0)


def test_factorization_invariants_enforced():
    with pytest.raises(DomainError):
        Factorization(12, ((3, 1), (2, 2)))  # unsorted
    with pytest.raises(DomainError):
        Factorization(12, ((2, 2), (3, 2)))  # wrong product


def test_factorize_roundtrip_smooth_and_semiprime():
    smalls = [2, 3, 5, 7, 11, 13, 10007, 65537]
    for _ in range(200):
        n = 1
        for _ in range(random.randint(1, 6)):
            n *= random.choice(smalls)
        f = factorize(n)
        prod = 1
        for p, e in f.factors:
            prod *= p**e
            assert is_prime(p)
        assert prod == n
    # 64-bit semiprimes
    for _ in range(10):
        p = _random_prime(2**31, 2**32)
        q = _random_prime(2**31, 2**32)
        f = factorize(p * q).as_dict()
        assert f == ({p: 2} if p == q else {p: 1, q: 1})


def _random_prime(lo, hi):
    while True:
        n = random.randrange(lo, hi) | 1
        if is_prime(n):
            return n


def test_vp_examples():
    assert vp(3, 2**4 - 1) == 1
    assert vp(2, 7**5 + 1) == 3  # equals v2(7 + 1) = 3 for odd exponent
    assert vp(5, 7) == 0


def test_vp_domain():
    with pytest.raises(DomainError):
        vp(3, 0)
    with pytest.raises(DomainError):
        vp(4, 12)


def test_perfect_power_examples():
    assert perfect_power(8) == (2, 3)
    assert 2**5 * 7 + 1 == 225
    assert perfect_power(225) == (15, 2)
    assert perfect_power(10) is None


def test_perfect_power_maximal_exponent():
    for _ in range(100):
        base = random.randint(2, 50)
        k = random.randint(2, 6)
        got = perfect_power(base**k)
        assert got is not None
        assert got[1] % k == 0
        assert got[0] ** got[1] == base**k


def test_is_power_of():
    assert is_power_of(5, 1) == 0
    assert is_power_of(33, 35937) == 3
    assert is_power_of(33, 34) is None
    # oracle: repeated division
    for _ in range(200):
        b = random.randint(2, 40)
        n = random.randint(1, 10**12)
        e, m = 0, n
        while m > 1 and m % b == 0:
            m //= b
            e += 1
        expect = e if m == 1 else None
        assert is_power_of(b, n) == expect


def test_zsigmondy_paper_exceptions():
    assert primitive_divisor(2, 1, 6, "-") == ZsigmondyException(2, 1, 6, "-")
    assert primitive_divisor(2, 1, 4, "-") == 5
    assert primitive_divisor(2, 1, 3, "+") == ZsigmondyException(2, 1, 3, "+")


def test_zsigmondy_witness_properties():
    for _ in range(60):
        a = random.randint(2, 14)
        b = random.randint(1, a - 1)
        if vp_gcd(a, b) != 1:
            continue
        n = random.randint(1, 16)
        sign = random.choice("+-")
        got = primitive_divisor(a, b, n, sign)
        if isinstance(got, ZsigmondyException):
            continue
        p = got
        assert is_prime(p)
        term = a**n - b**n if sign == "-" else a**n + b**n
        assert term % p == 0
        for k in range(1, n):
            earlier = a**k - b**k if sign == "-" else a**k + b**k
            assert earlier % p != 0


def vp_gcd(a, b):
    import math

    return math.gcd(a, b)


# -- valuation lemma property suite (the five identities) -----------------

CASES = 10**4


def _rand_odd_prime():
    while True:
        p = random.randrange(3, 100)
        if is_prime(p):
            return p


def test_vp_lemma_an_minus_1():
    # p > 2, p | a - 1:  vp(a^n - 1) = vp(a - 1) + vp(n)
    for _ in range(CASES):
        p = _rand_odd_prime()
        a = 1 + p * random.randint(1, 50)
        n = random.randint(1, 500)
        assert vp(p, a**n - 1) == vp(p, a - 1) + vp(p, n)


def test_vp_lemma_an_plus_1():
    # p > 2, p | a + 1: odd n gives vp(n) + vp(a+1), even n gives 0
    for _ in range(CASES):
        p = _rand_odd_prime()
        a = p * random.randint(1, 50) - 1
        n = random.randint(1, 500)
        got = vp(p, a**n + 1)
        if n % 2:
            assert got == vp(p, n) + vp(p, a + 1)
        else:
            assert got == 0


def test_v2_lemma_an_minus_1():
    # odd a: v2(a^n - 1) = v2(a-1) for odd n, v2(a^2-1) + v2(n) - 1 for even
    for _ in range(CASES):
        a = 2 * random.randint(1, 500) + 1
        n = random.randint(1, 300)
        if a == 1:
            continue
        got = vp(2, a**n - 1)
        if n % 2:
            assert got == vp(2, a - 1)
        else:
            assert got == vp(2, a * a - 1) + vp(2, n) - 1


def test_v2_lemma_an_plus_1_odd_n():
    for _ in range(CASES):
        a = random.randint(1, 1000)
        n = 2 * random.randint(0, 150) + 1
        if a + 1 < 2:
            continue
        assert vp(2, a**n + 1) == vp(2, a + 1)


def test_v3_lemma_2n_exhaustive():
    val_minus = 1  # 2^n - 1 built incrementally
    for n in range(1, 10**4 + 1):
        val_minus = 2 * val_minus + 1 if n > 1 else 1
        minus = vp(3, val_minus)
        plus = vp(3, val_minus + 2)  # 2^n + 1
        if n % 2:
            assert minus == 0
            assert plus == vp(3, n) + 1
        else:
            assert minus == vp(3, n) + 1
            assert plus == 0


def test_primitive_part_brute_force_consistency():
    # existence by gcd-stripping vs. brute force over full factorizations
    for a in range(2, 11):
        for b in range(1, a):
            if vp_gcd(a, b) != 1:
                continue
            for n in range(1, 13):
                for sign in "+-":
                    term = a**n - b**n if sign == "-" else a**n + b**n
                    if term <= 1:
                        expected = False
                    else:
                        expected = False
                        for p, _ in factorize(term).factors:
                            earlier = [
                                a**k - b**k if sign == "-" else a**k + b**k
                                for k in range(1, n)
                            ]
                            if all(e % p for e in earlier):
                                expected = True
                                break
                    assert (primitive_part(a, b, n, sign) > 1) == expected
