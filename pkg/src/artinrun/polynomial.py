"""Integer polynomials of degree 1 to 3 generating candidate sequences."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .modmath import MODULUS_LIMIT

COEFF_LIMIT = 1 << 70


class PolynomialRangeError(OverflowError):
    """|f(n)| left the supported width; shrink the scan range."""


@dataclass(frozen=True)
class Polynomial:
    """Coefficients are stored constant term first: ``(c0, c1, ...)``."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coefficients)
        object.__setattr__(self, "coefficients", cs)
        if not 2 <= len(cs) <= 4:
            raise ValueError(f"degree must be 1..3, got {len(cs) - 1}")
        if cs[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")
        if any(abs(c) >= COEFF_LIMIT for c in cs):
            raise ValueError("coefficient magnitude must be below 2**70")

    @classmethod
    def parse(cls, text: str) -> Polynomial:
        """Parse ``"c0,c1,..."`` (constant term first)."""
        parts = [p.strip() for p in text.split(",")]
        if any(not p for p in parts):
            raise ValueError(f"malformed polynomial {text!r}")
        return cls(tuple(int(p) for p in parts))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def leading(self) -> int:
        return self.coefficients[-1]

    def __call__(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * n + c
        return acc

    def spec(self) -> str:
        return ",".join(str(c) for c in self.coefficients)

    def __str__(self) -> str:
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}" if mono else str(abs(c))
            sign = "-" if c < 0 else "+"
            terms.append(f"{sign} {body}")
        out = " ".join(terms)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def taylor_shift(self, t: int) -> Polynomial:
        """Return g with g(X) = f(X + t)."""
        d = self.degree
        out = [0] * (d + 1)
        for k, c in enumerate(self.coefficients):
            for j in range(k + 1):
                out[j] += c * comb(k, j) * t ** (k - j)
        return Polynomial(tuple(out))

    def depressing_shift(self) -> int:
        """Integer s such that f(X - s) has no X^(d-1) term, or 0 if none.

        Only defined for degree >= 2 with a non-negative integral shift; for
        the record quadratic this is 620651.
        """
        d = self.degree
        if d < 2:
            return 0
        num, den = self.coefficients[d - 1], d * self.leading
        if num % den or num // den < 0:
            return 0
        return num // den

    def depressed(self) -> tuple[int, Polynomial]:
        """``(s, h)`` with h(n) = f(n - s); h is ``self`` when s == 0."""
        s = self.depressing_shift()
        return s, (self.taylor_shift(-s) if s else self)

    def increments_sign(self, start: int, stop: int) -> int:
        """+1/-1 if f is strictly increasing/decreasing on integers in
        [start, stop), else 0."""
        if stop - start <= 1:
            return 1
        # f(n+1) - f(n) has degree <= 2; extremes sit at the ends or the vertex
        diff = self.taylor_shift(1).coefficients
        delta = [a - b for a, b in zip(diff, self.coefficients)][:-1]

        def dval(n: int) -> int:
            acc = 0
            for c in reversed(delta):
                acc = acc * n + c
            return acc

        last = stop - 2
        points = {start, last}
        if len(delta) == 3 and delta[2] != 0:
            v = -delta[1] // (2 * delta[2])
            points.update(p for p in (v, v + 1) if start <= p <= last)
        values = [dval(p) for p in points]
        if all(v > 0 for v in values):
            return 1
        if all(v < 0 for v in values):
            return -1
        return 0


def eval_poly(f: Polynomial, n: int) -> int:
    """Exact f(n) by Horner's rule; raises if |f(n)| >= 2**72."""
    if n < 0:
        raise ValueError(f"scan index must be non-negative, got {n}")
    value = f(n)
    if abs(value) >= MODULUS_LIMIT:
        raise PolynomialRangeError(f"|f({n})| >= 2**72")
    return value
