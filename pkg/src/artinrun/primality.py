"""Primality testing for integers below 2**72.

Below 2**64 the answer is a proof: Miller-Rabin with the first twelve prime
bases has no strong pseudoprime under 3.18e23, and smaller n need fewer bases.  Above 2**64 we run BPSW
(strong base-2 test plus Selfridge strong Lucas test) and eight further
Miller-Rabin rounds whose bases are a pure function of ``n``.  The verdict
records which of these paths produced it.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .modmath import jacobi

MR_BASES_64 = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# (bound, k): the first k prime bases admit no strong pseudoprime below bound
_MR_TIERS = (
    (3_215_031_751, 4),
    (3_474_749_660_383, 6),
    (341_550_071_728_321, 7),
    (3_825_123_056_546_413_051, 9),
    (1 << 64, 12),
)
EXTRA_MR_ROUNDS = 8
TRIAL_LIMIT = 256

SMALL_PRIMES = tuple(
    q for q in range(2, TRIAL_LIMIT) if all(q % d for d in range(2, math.isqrt(q) + 1))
)
_SMALL_PRIME_SET = frozenset(SMALL_PRIMES)
_SMALL_PRIMORIAL = math.prod(SMALL_PRIMES)


class Method(enum.Enum):
    SMALL_SIEVE = "SmallSieve"
    DETERMINISTIC_MR = "DeterministicMR"
    BPSW_PLUS_MR = "BpswPlusMR"


@dataclass(frozen=True)
class PrimalityVerdict:
    prime: bool
    method: Method

    def __bool__(self) -> bool:
        return self.prime

    @property
    def value(self) -> str:
        return "Prime" if self.prime else "Composite"

    def __str__(self) -> str:
        return f"{self.value} ({self.method.value})"


def strong_probable_prime(n: int, a: int) -> bool:
    """Miller-Rabin round: is odd ``n > 2`` a strong probable prime to base ``a``?"""
    d = n - 1
    s = (d & -d).bit_length() - 1
    d >>= s
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
        if x == 1:
            return False
    return False


def _selfridge_d(n: int) -> int:
    """First D in 5, -7, 9, -11, ... with (D|n) = -1; 0 if n has a small factor."""
    d = 5
    while True:
        j = jacobi(d, n)
        if j == -1:
            return d
        if j == 0 and abs(d) != n:
            return 0
        d = -d - 2 if d > 0 else -d + 2


def strong_lucas_probable_prime(n: int) -> bool:
    """Strong Lucas test with Selfridge parameters (P = 1, Q = (1 - D)/4).

    ``n`` must be odd and greater than 2.  Perfect squares are rejected up
    front since no D with (D|n) = -1 exists for them.
    """
    if math.isqrt(n) ** 2 == n:
        return False
    D = _selfridge_d(n)
    if D == 0:
        return False
    Q = (1 - D) // 4
    k = n + 1
    s = (k & -k).bit_length() - 1
    k >>= s

    # Binary ladder for U_k, V_k with P = 1; halving uses (x + n)/2 when x is odd.
    U, V, Qk = 1, 1, Q % n
    for bit in bin(k)[3:]:
        U = U * V % n
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = U + V, D * U + V
            if U & 1:
                U += n
            U = (U >> 1) % n
            if V & 1:
                V += n
            V = (V >> 1) % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


def _splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
    return x ^ (x >> 31)


def derived_bases(n: int, rounds: int = EXTRA_MR_ROUNDS) -> list[int]:
    """Deterministic pseudo-random bases in [3, n - 2], seeded by ``n`` alone."""
    state = (n ^ (n >> 64)) & 0xFFFFFFFFFFFFFFFF
    bases = []
    for _ in range(rounds):
        state = _splitmix64(state)
        bases.append(3 + state % (n - 4))
    return bases


_SMALL_YES = PrimalityVerdict(True, Method.SMALL_SIEVE)
_SMALL_NO = PrimalityVerdict(False, Method.SMALL_SIEVE)
_MR_YES = PrimalityVerdict(True, Method.DETERMINISTIC_MR)
_MR_NO = PrimalityVerdict(False, Method.DETERMINISTIC_MR)
_BPSW_YES = PrimalityVerdict(True, Method.BPSW_PLUS_MR)
_BPSW_NO = PrimalityVerdict(False, Method.BPSW_PLUS_MR)


def is_prime(n: int) -> PrimalityVerdict:
    if n < TRIAL_LIMIT:
        return _SMALL_YES if n in _SMALL_PRIME_SET else _SMALL_NO
    # trial division by every prime below 256 at once
    if math.gcd(n, _SMALL_PRIMORIAL) != 1:
        return _SMALL_NO
    if n < TRIAL_LIMIT * TRIAL_LIMIT:
        return _SMALL_YES

    if n < 1 << 64:
        k = next(k for bound, k in _MR_TIERS if n < bound)
        for a in MR_BASES_64[:k]:
            if not strong_probable_prime(n, a):
                return _MR_NO
        return _MR_YES

    if (
        strong_probable_prime(n, 2)
        and strong_lucas_probable_prime(n)
        and all(strong_probable_prime(n, a) for a in derived_bases(n))
    ):
        return _BPSW_YES
    return _BPSW_NO


def isprime(n: int) -> bool:
    """Boolean shorthand for ``is_prime(n).prime``."""
    return is_prime(n).prime
