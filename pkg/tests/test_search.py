import itertools
import json
import os

import pytest

from muldep.dependence import is_multiplicatively_dependent
from muldep.search import (
    _Tables,
    search_consecutive_md_triples,
    verify_main_theorems,
)


def naive_search(n_max: int, all_2md: bool = False):
    """Direct O(N^3) oracle on top of the exact dependence test."""
    out = []
    for a, b, c in itertools.combinations(range(2, n_max + 1), 3):
        cls = [is_multiplicatively_dependent((a + i, b + i, c + i)) for i in range(3)]
        if all(d.dependent for d in cls):
            if not all_2md or all(d.k == 2 for d in cls):
                out.append((a, b, c))
    return out


def test_matches_naive_oracle_n60():
    got = [(r.a, r.b, r.c) for r in search_consecutive_md_triples(60)]
    assert got == naive_search(60)


def test_matches_naive_oracle_n100():
    got = [(r.a, r.b, r.c) for r in search_consecutive_md_triples(100)]
    assert got == naive_search(100)


def test_all_2md_n20_frozen_oracle():
    # frozen from the direct scan: the all-2md triples up to 20
    got = [(r.a, r.b, r.c) for r in search_consecutive_md_triples(20, "all-2md")]
    assert got == [(2, 6, 8), (2, 8, 14)]
    assert got == naive_search(20, all_2md=True)


def test_records_revalidate_and_sorted():
    recs = search_consecutive_md_triples(150)
    triples = [(r.a, r.b, r.c) for r in recs]
    assert triples == sorted(triples)
    for r in recs:
        for i, cl in enumerate(r.class_at_shift):
            assert cl.dependent
            fresh = is_multiplicatively_dependent((r.a + i, r.b + i, r.c + i))
            assert fresh.dependent and fresh.k == cl.k


def test_monotone_prefix_property():
    small = [(r.a, r.b, r.c) for r in search_consecutive_md_triples(120)]
    large = [(r.a, r.b, r.c) for r in search_consecutive_md_triples(240)]
    assert set(small) <= set(large)
    assert [t for t in large if t[2] <= 120] == small


def test_worker_count_invariance():
    seq = [(r.a, r.b, r.c) for r in search_consecutive_md_triples(200, jobs=1)]
    par = [(r.a, r.b, r.c) for r in search_consecutive_md_triples(200, jobs=3)]
    assert seq == par


def test_checkpoint_resume(tmp_path):
    ckpt = str(tmp_path / "ck.txt")
    full = search_consecutive_md_triples(150, jobs=2, checkpoint=ckpt)
    lines = open(ckpt).read().strip().splitlines()
    assert all(ln.startswith("done ") for ln in lines)
    # resuming with the completed checkpoint reproduces the same output
    again = search_consecutive_md_triples(150, jobs=2, checkpoint=ckpt)
    assert [(r.a, r.b, r.c) for r in again] == [(r.a, r.b, r.c) for r in full]
    sink = open(ckpt + ".results").read().splitlines()
    assert len({tuple(map(int, ln.split())) for ln in sink}) == len(full)


def test_theorem_reports_small():
    rep = verify_main_theorems(10, "a2")
    assert rep.ok
    assert set(rep.checked) == {(2, 3, 8), (2, 6, 8)}
    rep2 = verify_main_theorems(10, "3x2md")
    assert rep2.ok
    assert (2, 6, 8) in rep2.checked


def test_theorem_report_trivial_range():
    rep = verify_main_theorems(3, "a2")
    assert rep.checked == [] and rep.ok


def test_tables_dependence_consistency():
    tab = _Tables(100)
    for a, b, c in itertools.combinations(range(2, 40), 3):
        assert tab.dependent(a, b, c) == is_multiplicatively_dependent(
            (a, b, c)
        ).dependent
