"""Segmented sieving of polynomial values by small primes.

For each prime q <= B the roots of f mod q give the residue classes of n in
which q divides f(n).  Striking those classes leaves a survivor mask; any n
with |f(n)| prime and larger than B survives, and |f(n)| equal to a sieving
prime is put back explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .factor import primes_below
from .modmath import jacobi
from .polynomial import Polynomial
from .primality import isprime

DEFAULT_BOUND = 100_000
SEGMENT_LENGTH = 1 << 20
MAX_SEGMENT = 1 << 26
EXHAUSTIVE_LIMIT = 1 << 16


def sqrt_mod(a: int, q: int) -> int:
    """Tonelli-Shanks square root of a quadratic residue ``a`` modulo odd prime ``q``."""
    a %= q
    if a == 0:
        return 0
    if q % 4 == 3:
        return pow(a, (q + 1) // 4, q)
    s, t = 0, q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2
    z = 2
    while jacobi(z, q) != -1:
        z += 1
    m, c, x, b = s, pow(z, t, q), pow(a, (t + 1) // 2, q), pow(a, t, q)
    while b != 1:
        i, b2 = 0, b
        while b2 != 1:
            b2 = b2 * b2 % q
            i += 1
        step = pow(c, 1 << (m - i - 1), q)
        m, c = i, step * step % q
        x, b = x * step % q, b * c % q
    return x


# -- polynomials over F_q, coefficient lists constant term first ----------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list[int], m: list[int], q: int) -> list[int]:
    a = _trim([c % q for c in a])
    inv = pow(m[-1], -1, q)
    while len(a) >= len(m):
        coef = a[-1] * inv % q
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - coef * c) % q
        _trim(a)
    return a


def _pmulmod(a: list[int], b: list[int], m: list[int], q: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _pmod(out, m, q)


def _ppow(base: list[int], e: int, m: list[int], q: int) -> list[int]:
    result, base = [1], _pmod(base, m, q)
    while e:
        if e & 1:
            result = _pmulmod(result, base, m, q)
        base = _pmulmod(base, base, m, q)
        e >>= 1
    return result


def _pgcd(a: list[int], b: list[int], q: int) -> list[int]:
    a, b = _trim([c % q for c in a]), _trim([c % q for c in b])
    while b:
        a, b = b, _pmod(a, b, q)
    if a:
        inv = pow(a[-1], -1, q)
        a = [c * inv % q for c in a]
    return a


def _split_linear(g: list[int], q: int, out: list[int]) -> None:
    """Collect the roots of monic ``g`` that is a product of distinct linear factors."""
    if len(g) == 2:
        out.append(-g[0] % q)
        return
    delta = 0
    while True:
        h = _ppow([delta, 1], (q - 1) // 2, g, q)
        h = list(h) or [0]
        h[0] = (h[0] - 1) % q
        d = _pgcd(g, h, q)
        if 1 < len(d) < len(g):
            _split_linear(d, q, out)
            rest = _pdiv_exact(g, d, q)
            _split_linear(rest, q, out)
            return
        delta += 1


def _pdiv_exact(a: list[int], b: list[int], q: int) -> list[int]:
    a = list(a)
    inv = pow(b[-1], -1, q)
    quot = [0] * (len(a) - len(b) + 1)
    for shift in range(len(a) - len(b), -1, -1):
        coef = a[shift + len(b) - 1] * inv % q
        quot[shift] = coef
        for i, c in enumerate(b):
            a[shift + i] = (a[shift + i] - coef * c) % q
    return quot


def _roots_exhaustive(cs: list[int], q: int) -> list[int]:
    r = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(cs):
        acc = (acc * r + c) % q
    return [int(x) for x in np.flatnonzero(acc == 0)]


def poly_roots_mod_q(f: Polynomial, q: int) -> list[int]:
    """All residues r in [0, q) with f(r) = 0 mod q, in increasing order."""
    cs = _trim([c % q for c in f.coefficients])
    if not cs:
        return list(range(q))
    deg = len(cs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-cs[0] * pow(cs[1], -1, q) % q]
    if q == 2:
        return _roots_exhaustive(cs, q)
    if deg == 2:
        c0, c1, c2 = cs
        disc = (c1 * c1 - 4 * c2 * c0) % q
        inv = pow(2 * c2, -1, q)
        if disc == 0:
            return [-c1 * inv % q]
        if jacobi(disc, q) != 1:
            return []
        s = sqrt_mod(disc, q)
        return sorted({(-c1 + s) * inv % q, (-c1 - s) * inv % q})
    if q < EXHAUSTIVE_LIMIT:
        return _roots_exhaustive(cs, q)
    # cubic, large q: distinct roots are exactly those of gcd(f, x^q - x)
    xq = _ppow([0, 1], q, cs, q)
    xq = xq + [0] * (2 - len(xq))
    xq[1] = (xq[1] - 1) % q
    g = _pgcd(cs, _trim(xq), q)
    if len(g) <= 1:
        return []
    roots: list[int] = []
    _split_linear(g, q, roots)
    return sorted(roots)


@lru_cache(maxsize=64)
def root_table(f: Polynomial, bound: int) -> tuple[tuple[int, tuple[int, ...]], ...]:
    """``((q, roots), ...)`` for every prime q <= bound with at least one root."""
    table = []
    for q in primes_below(bound + 1).tolist():
        roots = poly_roots_mod_q(f, q)
        if roots:
            table.append((q, tuple(roots)))
    return tuple(table)


@dataclass
class SieveSegment:
    n_start: int
    length: int
    survivor_mask: np.ndarray
    bound: int

    def survivors(self) -> np.ndarray:
        return np.flatnonzero(self.survivor_mask) + self.n_start

    @property
    def survivor_count(self) -> int:
        return int(self.survivor_mask.sum())


def _small_value_positions(f: Polynomial, n_start: int, length: int, bound: int) -> np.ndarray:
    """Offsets where |f(n)| might be <= bound (float screen, checked exactly by the caller)."""
    x = np.arange(n_start, n_start + length, dtype=np.float64)
    approx = np.zeros(length)
    scale = np.zeros(length)
    for c in reversed(f.coefficients):
        approx = approx * x + float(c)
        scale = scale * np.abs(x) + abs(float(c))
    slack = 1e-9 * scale + 2.0
    return np.flatnonzero(np.abs(approx) <= bound + slack)


def sieve_segment(f: Polynomial, n_start: int, length: int, bound: int = DEFAULT_BOUND) -> SieveSegment:
    if length < 1 or length > MAX_SEGMENT:
        raise ValueError(f"segment length must be in [1, 2**26], got {length}")
    if n_start < 0:
        raise ValueError("segment must start at n >= 0")
    mask = np.ones(length, dtype=bool)
    if bound < 2:
        return SieveSegment(n_start, length, mask, bound)
    for q, roots in root_table(f, bound):
        for r in roots:
            mask[(r - n_start) % q :: q] = False
    for i in _small_value_positions(f, n_start, length, bound).tolist():
        v = abs(f(n_start + i))
        if 2 <= v <= bound and isprime(v):
            mask[i] = True
    return SieveSegment(n_start, length, mask, bound)
