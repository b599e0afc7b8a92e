"""muldep: multiplicative dependence of integer tuples, consecutive-triple
searches, and certified Diophantine bound pipelines."""

from .arith import (
    Factorization,
    factorize,
    is_power_of,
    is_prime,
    perfect_power,
    primitive_divisor,
    vp,
)
from .dependence import (
    DependenceClass,
    TripleRecord,
    classify_family,
    classify_k,
    is_multiplicatively_dependent,
)
from .intervals import Interval
from .search import search_consecutive_md_triples, verify_main_theorems

__all__ = [
    "Factorization",
    "factorize",
    "vp",
    "perfect_power",
    "is_power_of",
    "is_prime",
    "primitive_divisor",
    "DependenceClass",
    "TripleRecord",
    "is_multiplicatively_dependent",
    "classify_k",
    "classify_family",
    "Interval",
    "search_consecutive_md_triples",
    "verify_main_theorems",
]

__version__ = "0.1.0"
