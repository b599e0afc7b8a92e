import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from muldep.arith import DomainError, factorize
from muldep.dependence import (
    classify_family,
    classify_k,
    exponent_rank,
    is_multiplicatively_dependent,
    make_triple_record,
    verify_witness,
)

random.seed(96321)


def test_paper_triple_2_8_13():
    d = is_multiplicatively_dependent((2, 8, 13))
    assert d.dependent
    assert d.witness == (3, -1, 0)
    assert d.k == 2


def test_independent_examples():
    assert not is_multiplicatively_dependent((2, 3)).dependent
    # exponent matrix of (6,10,15) over {2,3,5} has determinant +-2
    assert not is_multiplicatively_dependent((6, 10, 15)).dependent
    assert exponent_rank((6, 10, 15)) == 3


def test_entry_domain():
    with pytest.raises(DomainError):
        is_multiplicatively_dependent((1, 4))
    with pytest.raises(DomainError):
        is_multiplicatively_dependent((4, 4))
    with pytest.raises(DomainError):
        is_multiplicatively_dependent(())


def test_classify_k_paper_examples():
    assert classify_k((2, 4, 14)) == 2
    assert classify_k((3, 5, 15)) == 3
    assert classify_k((4, 6, 16)) == 2


def test_classify_family_examples():
    assert 123 + 2 == 125 == 5**3
    assert classify_family(2, 8, 123) == "Fam1"
    assert classify_family(2, 14, 224) == "NewFamily"
    assert classify_family(2, 6, 16) == "Sporadic"
    # unordered members of the first family
    assert classify_family(2, 3, 8) == "Fam1"
    assert classify_family(2, 6, 8) == "Fam1"
    assert classify_family(3, 6, 48) == "Sporadic"


def test_witness_exactness_random():
    for _ in range(300):
        n = random.randint(2, 5)
        vals = random.sample(range(2, 400), n)
        d = is_multiplicatively_dependent(tuple(vals))
        if d.dependent:
            assert verify_witness(tuple(vals), d.witness)
            nz = [w for w in d.witness if w]
            assert nz[0] > 0  # sign normalization
            from math import gcd

            g = 0
            for w in d.witness:
                g = gcd(g, w)
            assert g == 1  # primitive


def _rank_oracle(vals):
    """Rational Gaussian elimination over Fraction."""
    facs = [factorize(v).as_dict() for v in vals]
    primes = sorted(set().union(*facs))
    rows = [[Fraction(f.get(p, 0)) for p in primes] for f in facs]
    rank = 0
    for col in range(len(primes)):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(rank + 1, len(rows)):
            if rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def test_rank_matches_rational_oracle():
    for _ in range(300):
        n = random.randint(2, 6)
        vals = tuple(random.sample(range(2, 10**4), n))
        assert exponent_rank(vals) == _rank_oracle(vals)


@settings(max_examples=150, deadline=None)
@given(
    st.lists(st.integers(2, 500), min_size=2, max_size=5, unique=True),
    st.randoms(use_true_random=False),
)
def test_permutation_invariance(vals, rng):
    t = tuple(vals)
    perm = list(t)
    rng.shuffle(perm)
    d1 = is_multiplicatively_dependent(t)
    d2 = is_multiplicatively_dependent(tuple(perm))
    assert d1.dependent == d2.dependent
    assert d1.k == d2.k


def test_k2_implies_common_base_pair():
    # every 2-md triple contains a pair of powers of a common base
    from muldep.arith import perfect_power

    for vals in [(2, 4, 14), (2, 8, 13), (7, 15, 49), (9, 27, 10)]:
        if classify_k(vals) != 2:
            continue
        found = False
        for x, y in itertools.combinations(vals, 2):
            if exponent_rank((x, y)) == 1:
                px = perfect_power(x) or (x, 1)
                py = perfect_power(y) or (y, 1)
                found = found or px[0] ** (px[1] // 1) == x
        assert found


def test_triple_record():
    rec = make_triple_record(2, 4, 14)
    assert rec.k_levels == (2, 3, 2)
    assert rec.family == "Sporadic"
    assert rec.to_json_dict() == {
        "a": 2, "b": 4, "c": 14, "k0": 2, "k1": 3, "k2": 2, "family": "Sporadic",
    }
    with pytest.raises(DomainError):
        make_triple_record(2, 3, 5)  # (3,4,6) / (4,5,7) not all dependent
