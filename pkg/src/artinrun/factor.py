"""Complete factorization of integers below 2**72.

Pipeline: strip primes below 10**5 using a product tree of the prime table,
then split what is left with primality tests, perfect-power checks and
Brent's variant of Pollard rho.  Every step is deterministic, so the same
input always yields the same factor list.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import reduce
from operator import mul

import numpy as np

from .modmath import MODULUS_LIMIT, DomainError, iroot
from .primality import isprime

TRIAL_BOUND = 100_000
SEED_BUDGET = 64
BRENT_BATCH = 128
MAX_INPUT = MODULUS_LIMIT


class FactorizationError(RuntimeError):
    """Pollard rho exhausted its seed budget without splitting ``n``."""

    def __init__(self, n: int):
        super().__init__(f"factorization failed for n={n}")
        self.n = n


def primes_below(limit: int) -> np.ndarray:
    """Sieve of Eratosthenes; returns the primes < limit as int64."""
    if limit <= 2:
        return np.zeros(0, dtype=np.int64)
    flags = np.ones(limit, dtype=bool)
    flags[:2] = False
    for q in range(2, math.isqrt(limit - 1) + 1):
        if flags[q]:
            flags[q * q :: q] = False
    return np.flatnonzero(flags).astype(np.int64)


_PRIME_TABLE: tuple[int, ...] = tuple(int(q) for q in primes_below(TRIAL_BOUND))


def _build_tree(primes: tuple[int, ...]) -> list[list[int]]:
    # levels[0] are the primes; each level above holds pairwise products.
    levels = [list(primes)]
    while len(levels[-1]) > 1:
        prev = levels[-1]
        levels.append([reduce(mul, prev[i : i + 2]) for i in range(0, len(prev), 2)])
    return levels


_TREE = _build_tree(_PRIME_TABLE)


def _small_prime_divisors(n: int) -> list[int]:
    """Primes below TRIAL_BOUND dividing n, in increasing order."""
    top = len(_TREE) - 1
    if math.gcd(_TREE[top][0] % n, n) == 1:
        return []
    found = []
    stack = [(top, 0)]
    while stack:
        level, idx = stack.pop()
        if level == 0:
            found.append(_TREE[0][idx])
            continue
        below = _TREE[level - 1]
        # push right child first so the left subtree is explored first
        for child in (2 * idx + 1, 2 * idx):
            if child < len(below) and math.gcd(below[child] % n, n) > 1:
                stack.append((level - 1, child))
    return found


@dataclass(frozen=True)
class Factorization:
    original: int
    factors: tuple[tuple[int, int], ...]
    primes: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        prev = 0
        for q, e in self.factors:
            if q <= prev or e < 1:
                raise ValueError("factors must be strictly increasing with positive exponents")
            prev = q
        object.__setattr__(self, "primes", tuple(q for q, _ in self.factors))

    def product(self) -> int:
        out = 1
        for q, e in self.factors:
            out *= q**e
        return out

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return " * ".join(f"{q}^{e}" if e > 1 else str(q) for q, e in self.factors)


def pollard_brent(n: int, seed_index: int = 0) -> int:
    """Return a nontrivial divisor of composite ``n``.

    Uses x -> x*x + c with c = 1, 3, 5, ... taken from ``seed_index`` on,
    and gcd batching every BRENT_BATCH steps.  Even ``n`` and perfect squares
    are answered directly.
    """
    if n < 4:
        raise DomainError(f"pollard_brent needs a composite n >= 4, got {n}")
    if n % 2 == 0:
        return 2
    r = math.isqrt(n)
    if r * r == n:
        return r
    for attempt in range(seed_index, seed_index + SEED_BUDGET):
        d = _brent_attempt(n, 2 * attempt + 1)
        if 1 < d < n:
            return d
    raise FactorizationError(n)


def _brent_attempt(n: int, c: int, x0: int = 2) -> int:
    y, g, q, r = x0, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(BRENT_BATCH, r - k)):
                y = (y * y + c) % n
                q = q * (x - y) % n
            g = math.gcd(q, n)
            k += BRENT_BATCH
        r <<= 1
        if r > 1 << 26:
            return n
    if g == n:
        # batch overshot; replay one step at a time from the saved point
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(x - ys, n)
            if g > 1:
                break
    return g


def _split_large(n: int, out: dict[int, int], mult: int) -> None:
    """Factor ``n`` whose prime factors all exceed TRIAL_BOUND."""
    if n == 1:
        return
    if isprime(n):
        out[n] = out.get(n, 0) + mult
        return
    # n < 2**72 with every prime factor > 10**5 has at most four of them
    for k in (2, 3):
        root = iroot(n, k)
        if root**k == n:
            _split_large(root, out, mult * k)
            return
    d = pollard_brent(n)
    _split_large(d, out, mult)
    _split_large(n // d, out, mult)


def factorize(n: int) -> Factorization:
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    if n >= MAX_INPUT:
        raise DomainError(f"{n} exceeds 2**72")
    original = n
    out: dict[int, int] = {}
    for q in _small_prime_divisors(n):
        e = 0
        while n % q == 0:
            n //= q
            e += 1
        out[q] = e
    _split_large(n, out, 1)
    return Factorization(original, tuple(sorted(out.items())))
