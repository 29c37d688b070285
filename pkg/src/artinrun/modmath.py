"""Exact modular arithmetic on residues below 2**72.

Python integers never wrap, so exactness is free; what this module adds is
the width contract (moduli in [2, 2**72)) and the handful of kernels the
rest of the package is built on.
"""

from __future__ import annotations

import math

#: Largest supported modulus is ``MODULUS_LIMIT - 1``.
MODULUS_LIMIT = 1 << 72
#: Values handled by the kernels must fit in this many bits.
WORD_BITS = 128


class DomainError(ValueError):
    """An argument lies outside the domain of a modular kernel."""


def _check_modulus(m: int) -> None:
    if m < 2:
        raise DomainError(f"modulus must be >= 2, got {m}")
    if m >= MODULUS_LIMIT:
        raise DomainError(f"modulus {m} exceeds 2**72")


def mulmod(a: int, b: int, m: int) -> int:
    """Return ``a*b mod m`` for residues ``a, b < m``."""
    _check_modulus(m)
    if not (0 <= a < m and 0 <= b < m):
        raise DomainError(f"operands must be reduced modulo {m}")
    return a * b % m


def powmod(b: int, e: int, m: int) -> int:
    """``b**e mod m``; ``e == 0`` gives ``1 % m``."""
    _check_modulus(m)
    if not 0 <= b < m:
        raise DomainError(f"base must be reduced modulo {m}")
    if e < 0:
        raise DomainError("negative exponent")
    return pow(b, e, m)


def gcd(a: int, b: int) -> int:
    """Greatest common divisor of non-negative integers; ``gcd(0, 0) == 0``."""
    if a < 0 or b < 0:
        raise DomainError("gcd operands must be non-negative")
    return math.gcd(a, b)


def lcm(a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return a // gcd(a, b) * b


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol ``(a|n)`` for odd positive ``n``; ``a`` may be negative."""
    if n <= 0 or n % 2 == 0:
        raise DomainError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    result = 1
    if a < 0:
        a = -a
        # (-1|n) = (-1)^((n-1)/2)
        if n % 4 == 3:
            result = -result
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def iroot(n: int, k: int) -> int:
    """Floor of the k-th root of a non-negative integer."""
    if n < 0:
        raise DomainError("iroot of a negative number")
    if k == 1 or n < 2:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y
