"""Consecutive Artin primes from polynomial sequences.

Compute how many initial primes p of f(0), f(1), ... (skipping those that
divide g) have g as a primitive root, verify Gallot's 2004 quadratic record
c = 38639, and search for new candidates.
"""

__version__ = "0.1.0"

from .artin import (  # noqa: E402
    ArtinEvent,
    Base,
    RunReport,
    Termination,
    Verdict,
    artin_run,
    is_primitive_root,
    merge_reports,
    multiplicative_order,
)
from .factor import Factorization, factorize, pollard_brent  # noqa: E402
from .modmath import gcd, jacobi, mulmod, powmod  # noqa: E402
from .polynomial import Polynomial, eval_poly  # noqa: E402
from .primality import PrimalityVerdict, is_prime  # noqa: E402
from .records import GALLOT_2004, RECORDS, RecordInstance, verify_record  # noqa: E402
from .sieve import poly_roots_mod_q, sieve_segment  # noqa: E402

__all__ = [
    "ArtinEvent",
    "Base",
    "Factorization",
    "GALLOT_2004",
    "Polynomial",
    "PrimalityVerdict",
    "RECORDS",
    "RecordInstance",
    "RunReport",
    "Termination",
    "Verdict",
    "artin_run",
    "eval_poly",
    "factorize",
    "gcd",
    "is_prime",
    "is_primitive_root",
    "jacobi",
    "merge_reports",
    "mulmod",
    "multiplicative_order",
    "poly_roots_mod_q",
    "pollard_brent",
    "powmod",
    "sieve_segment",
    "verify_record",
]
