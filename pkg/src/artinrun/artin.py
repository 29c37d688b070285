"""Consecutive Artin primes of a polynomial sequence.

Walk f(0), f(1), ... and keep the prime values that do not divide g.  The
run length r is the number of those, from the start, for which g is a
primitive root; c counts the distinct primes among them.
"""

from __future__ import annotations

import enum
import hashlib
import json
import math
import os
from collections.abc import Callable, Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .factor import Factorization, factorize
from .modmath import MODULUS_LIMIT, jacobi
from .polynomial import Polynomial, PolynomialRangeError, eval_poly
from .primality import isprime
from .sieve import DEFAULT_BOUND, sieve_segment

__all__ = [
    "ArtinEvent",
    "Base",
    "ContractError",
    "Polynomial",
    "PolynomialRangeError",
    "RunReport",
    "Termination",
    "Verdict",
    "artin_run",
    "classify_prime",
    "eval_poly",
    "is_primitive_root",
    "merge_reports",
    "multiplicative_order",
]

CHUNK = 1 << 15


class ContractError(ValueError):
    """A precondition of the primitive-root test does not hold."""


class Verdict(enum.Enum):
    PRIMITIVE_ROOT = "PrimitiveRoot"
    NOT_PRIMITIVE_ROOT = "NotPrimitiveRoot"
    DIVIDES_G = "DividesG"


class Termination(enum.Enum):
    FAILURE_FOUND = "FailureFound"
    RANGE_EXHAUSTED = "RangeExhausted"


@dataclass(frozen=True)
class Base:
    g: int
    is_unit: bool = field(init=False)
    is_perfect_square: bool = field(init=False)

    def __post_init__(self):
        if abs(self.g) >= 1 << 70:
            raise ValueError("|g| must be below 2**70")
        object.__setattr__(self, "is_unit", self.g in (-1, 0, 1))
        sq = self.g >= 0 and math.isqrt(self.g) ** 2 == self.g
        object.__setattr__(self, "is_perfect_square", sq)


def _as_int(g: int | Base) -> int:
    return g.g if isinstance(g, Base) else int(g)


@lru_cache(maxsize=1024)
def _prime_modulus(p: int) -> bool:
    return isprime(p)


def _check_contract(g: int, p: int, fac: Factorization) -> int:
    if not 2 <= p < MODULUS_LIMIT:
        raise ContractError(f"p={p} outside [2, 2**72)")
    if fac.original != p - 1:
        raise ContractError(f"factorization is of {fac.original}, expected p-1={p - 1}")
    gm = g % p
    if math.gcd(gm, p) != 1:
        raise ContractError(f"g={g} is not coprime to p={p}")
    if not _prime_modulus(p):
        raise ContractError(f"p={p} is not prime")
    return gm


def is_primitive_root(g: int | Base, p: int, fac: Factorization) -> bool:
    """True iff g^((p-1)/q) != 1 mod p for every prime q dividing p-1."""
    gm = _check_contract(g if type(g) is int else _as_int(g), p, fac)
    n = p - 1
    for q in fac.primes:
        if pow(gm, n // q, p) == 1:
            return False
    return True


def multiplicative_order(g: int | Base, p: int, fac: Factorization) -> int:
    gm = _check_contract(g if type(g) is int else _as_int(g), p, fac)
    order = p - 1
    for q, e in fac.factors:
        for _ in range(e):
            if pow(gm, order // q, p) != 1:
                break
            order //= q
    return order


@lru_cache(maxsize=1 << 17)
def classify_prime(g: int, p: int) -> Verdict:
    """Verdict for a prime p of the sequence; a quadratic residue g fails
    before any factoring happens."""
    gm = g % p
    if gm == 0:
        return Verdict.DIVIDES_G
    if p == 2:
        return Verdict.PRIMITIVE_ROOT
    if jacobi(gm, p) == 1:
        return Verdict.NOT_PRIMITIVE_ROOT
    fac = factorize(p - 1)
    for q in fac.primes:
        if q != 2 and pow(gm, (p - 1) // q, p) == 1:
            return Verdict.NOT_PRIMITIVE_ROOT
    return Verdict.PRIMITIVE_ROOT


@dataclass(frozen=True)
class ArtinEvent:
    """One prime value met during a scan.

    ``j`` is the position in the Artin-prime sequence; it is ``None`` for
    primes dividing g, which are not part of the sequence.
    """

    j: int | None
    n: int
    p: int
    verdict: Verdict
    duplicate: bool = False


@dataclass(frozen=True)
class Counts:
    evaluated: int
    prime: int
    skipped_divides_g: int


@dataclass(frozen=True)
class RunReport:
    f: Polynomial
    g: int
    n_range: tuple[int, int]
    stop_on_failure: bool
    use_abs: bool
    r: int
    c: int
    first_failure: tuple[int, int] | None
    n_scanned: tuple[int, int]
    counts: Counts
    terminated: Termination
    events: tuple[ArtinEvent, ...] = field(default=(), repr=False, compare=False)

    @property
    def fingerprint(self) -> str:
        return config_fingerprint(self.f, self.g, self.n_range, self.stop_on_failure, self.use_abs)

    def run_events(self) -> list[ArtinEvent]:
        """Sequence events making up the initial run (positions 1..r)."""
        return [e for e in self.events if e.j is not None and e.j <= self.r]


def config_fingerprint(f: Polynomial, g: int, n_range, stop_on_failure: bool, use_abs: bool) -> str:
    payload = {
        "f": list(f.coefficients),
        "g": g,
        "n_range": list(n_range),
        "stop_on_failure": stop_on_failure,
        "use_abs": use_abs,
    }
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


# -- scanning ---------------------------------------------------------------

# A piece is the raw outcome of scanning one contiguous block of n:
# (start, stop_scanned, [(n, p, verdict), ...]).
Piece = tuple[int, int, list[tuple[int, int, Verdict]]]


def _check_width(f: Polynomial, start: int, stop: int) -> None:
    x = np.arange(start, stop, dtype=np.float64)
    approx = np.zeros(len(x))
    for c in reversed(f.coefficients):
        approx = approx * x + float(c)
    for i in np.flatnonzero(np.abs(approx) >= MODULUS_LIMIT * (1 - 1e-6)).tolist():
        eval_poly(f, start + i)


def _scan_block(g: int, f: Polynomial, start: int, stop: int, stop_on_failure: bool,
                use_abs: bool, sieve_bound: int) -> Piece:
    _check_width(f, start, stop)
    seg = sieve_segment(f, start, stop - start, sieve_bound)
    found = []
    for n in seg.survivors().tolist():
        v = f(n)
        if v < 0 and use_abs:
            v = -v
        if v < 2 or not isprime(v):
            continue
        verdict = classify_prime(g, v)
        found.append((n, v, verdict))
        if stop_on_failure and verdict is Verdict.NOT_PRIMITIVE_ROOT:
            return start, n + 1, found
    return start, stop, found


def _assemble(f: Polynomial, g: int, n_range: tuple[int, int], pieces: Iterable[Piece],
              stop_on_failure: bool, use_abs: bool,
              on_event: Callable[[ArtinEvent], None] | None = None) -> RunReport:
    """Fold pieces, in n order, into one report.  This is the only place
    where positions, duplicates, r and c are decided."""
    monotone = not use_abs and f.increments_sign(*n_range) != 0
    seen: set[int] = set()
    last_p = None
    events: list[ArtinEvent] = []
    r = c = j = skipped = 0
    failure = None
    scanned_stop = n_range[0]
    for start, stop, found in pieces:
        if start != scanned_stop:
            raise ValueError(f"pieces are not contiguous at n={start}")
        scanned_stop = stop
        for n, p, verdict in found:
            if verdict is Verdict.DIVIDES_G:
                skipped += 1
                ev = ArtinEvent(None, n, p, verdict)
            else:
                j += 1
                if monotone:
                    dup = p == last_p
                    last_p = p
                else:
                    dup = p in seen
                    seen.add(p)
                ev = ArtinEvent(j, n, p, verdict, dup)
                if failure is None:
                    if verdict is Verdict.PRIMITIVE_ROOT:
                        r += 1
                        c += not dup
                    else:
                        failure = (n, p)
            events.append(ev)
            if on_event is not None:
                on_event(ev)
            if failure is not None and stop_on_failure:
                scanned_stop = n + 1
                break
        if failure is not None and stop_on_failure:
            break
    return RunReport(
        f=f,
        g=g,
        n_range=n_range,
        stop_on_failure=stop_on_failure,
        use_abs=use_abs,
        r=r,
        c=c,
        first_failure=failure,
        n_scanned=(n_range[0], scanned_stop),
        counts=Counts(scanned_stop - n_range[0], len(events), skipped),
        terminated=Termination.FAILURE_FOUND if failure else Termination.RANGE_EXHAUSTED,
        events=tuple(events),
    )


def default_workers() -> int:
    return max(1, int(os.environ.get("ARTIN_THREADS", "1")))


def _blocks(start: int, stop: int, chunk: int) -> list[tuple[int, int]]:
    # aligned to multiples of `chunk` so sub-range runs hit the same block edges
    edges = sorted({start, stop, *range((start // chunk + 1) * chunk, stop, chunk)})
    return list(zip(edges[:-1], edges[1:]))


def _ordered_pieces(args_list, workers: int, stop_on_failure: bool):
    if workers <= 1 or len(args_list) <= 1:
        for args in args_list:
            piece = _scan_block(*args)
            yield piece
            if stop_on_failure and any(v is Verdict.NOT_PRIMITIVE_ROOT for _, _, v in piece[2]):
                return
        return
    window = 2 * workers
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = [pool.submit(_scan_block, *a) for a in args_list[:window]]
        nxt = len(pending)
        try:
            while pending:
                piece = pending.pop(0).result()
                if nxt < len(args_list):
                    pending.append(pool.submit(_scan_block, *args_list[nxt]))
                    nxt += 1
                yield piece
                if stop_on_failure and any(v is Verdict.NOT_PRIMITIVE_ROOT for _, _, v in piece[2]):
                    return
        finally:
            for fut in pending:
                fut.cancel()


def artin_run(
    g: int | Base,
    f: Polynomial,
    n_range: tuple[int, int],
    stop_on_failure: bool = True,
    *,
    use_abs: bool = False,
    sieve_bound: int = DEFAULT_BOUND,
    workers: int | None = None,
    chunk: int = CHUNK,
    on_event: Callable[[ArtinEvent], None] | None = None,
    progress: Callable[[int, int], None] | None = None,
) -> RunReport:
    """Scan n in ``[start, stop)`` in ascending order.

    Values f(n) <= 1 are skipped unless ``use_abs`` is set, in which case
    |f(n)| is used.  Blocks of ``chunk`` values may be scanned by
    ``workers`` processes; the result does not depend on either setting.
    """
    g = _as_int(g)
    start, stop = map(int, n_range)
    if start < 0 or stop < start:
        raise ValueError(f"bad scan range [{start}, {stop})")
    workers = default_workers() if workers is None else workers
    # a root table larger than the range costs more than it saves
    sieve_bound = min(sieve_bound, max(100, stop - start))
    args = [(g, f, a, b, stop_on_failure, use_abs, sieve_bound) for a, b in _blocks(start, stop, chunk)]

    def pieces():
        for piece in _ordered_pieces(args, workers, stop_on_failure):
            if progress is not None:
                progress(piece[1], stop)
            yield piece

    return _assemble(f, g, (start, stop), pieces(), stop_on_failure, use_abs, on_event)


def merge_reports(reports: Sequence[RunReport], stop_on_failure: bool | None = None) -> RunReport:
    """Combine reports of consecutive sub-ranges into the report of their union."""
    if not reports:
        raise ValueError("nothing to merge")
    first = reports[0]
    for a, b in zip(reports, reports[1:]):
        if (a.f, a.g, a.use_abs) != (b.f, b.g, b.use_abs):
            raise ValueError("reports describe different scans")
        if a.n_scanned[1] != b.n_range[0] or a.n_scanned != a.n_range:
            raise ValueError("reports must cover adjacent, fully scanned ranges")
    stop = first.stop_on_failure if stop_on_failure is None else stop_on_failure
    pieces = [
        (rep.n_scanned[0], rep.n_scanned[1], [(e.n, e.p, e.verdict) for e in rep.events])
        for rep in reports
    ]
    n_range = (first.n_range[0], reports[-1].n_range[1])
    return _assemble(first.f, first.g, n_range, pieces, stop, first.use_abs)
