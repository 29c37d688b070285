"""Re-verification of published consecutive-Artin-prime records."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace

from .artin import RunReport, Termination, artin_run
from .polynomial import Polynomial
from .sieve import DEFAULT_BOUND


@dataclass(frozen=True)
class RecordInstance:
    """A claimed run.

    ``scan_range`` is the half-open range of X for the f-form scan.
    ``expected_n_range`` is the inclusive interval of the depressed-form
    index n = X + shift that the run is claimed to occupy, if any.
    """

    name: str
    f: Polynomial
    g: int
    expected_c: int
    scan_range: tuple[int, int]
    expected_n_range: tuple[int, int] | None = None


GALLOT_2004 = RecordInstance(
    name="gallot2004",
    f=Polynomial((182215381147285848449, 39721664, 32)),
    g=593856338459898,
    expected_c=38639,
    scan_range=(0, 1_200_000),
    expected_n_range=(620651, 1749283),
)

RECORDS = {GALLOT_2004.name: GALLOT_2004}


class CheckStatus(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    INCONCLUSIVE = "inconclusive"
    SKIPPED = "skipped"


@dataclass(frozen=True)
class Check:
    name: str
    status: CheckStatus
    detail: str


@dataclass(frozen=True)
class VerificationReport:
    instance: RecordInstance
    shift: int
    h: Polynomial
    f_run: RunReport
    h_run: RunReport
    checks: tuple[Check, ...]

    @property
    def c(self) -> int:
        return self.f_run.c

    @property
    def status(self) -> CheckStatus:
        states = {ch.status for ch in self.checks}
        if CheckStatus.FAIL in states:
            return CheckStatus.FAIL
        if CheckStatus.INCONCLUSIVE in states:
            return CheckStatus.INCONCLUSIVE
        return CheckStatus.PASS

    @property
    def passed(self) -> bool:
        return self.status is CheckStatus.PASS


def _check_sequences(f_run: RunReport, h_run: RunReport) -> Check:
    fp = [e.p for e in f_run.run_events()]
    hp = [e.p for e in h_run.run_events()]
    if fp == hp:
        return Check("sequences", CheckStatus.PASS, f"{len(fp)} primes agree")
    k = next((i for i, (a, b) in enumerate(zip(fp, hp)) if a != b), min(len(fp), len(hp)))
    return Check("sequences", CheckStatus.FAIL, f"f-form and h-form runs diverge at position {k + 1}")


def _check_count(inst: RecordInstance, f_run: RunReport) -> Check:
    detail = f"c={f_run.c}, expected {inst.expected_c}"
    if f_run.terminated is Termination.FAILURE_FOUND:
        ok = f_run.c == inst.expected_c
        return Check("count", CheckStatus.PASS if ok else CheckStatus.FAIL, detail)
    if f_run.c > inst.expected_c:
        return Check("count", CheckStatus.FAIL, detail + " (lower bound already exceeds claim)")
    return Check("count", CheckStatus.INCONCLUSIVE, detail + " (scan exhausted; c is a lower bound)")


def _check_interval(inst: RecordInstance, shift: int, f_run: RunReport, h_run: RunReport) -> Check:
    if inst.expected_n_range is None:
        return Check("interval", CheckStatus.SKIPPED, "no interval claimed")
    lo, hi = inst.expected_n_range
    ns = [e.n + shift for e in f_run.run_events()]
    if not ns:
        return Check("interval", CheckStatus.FAIL, "run is empty")
    span = f"run occupies n in [{ns[0]}, {ns[-1]}], claimed [{lo}, {hi}]"
    # run inside the interval, and every prime-producing n of the interval in the run
    clean = h_run.terminated is Termination.RANGE_EXHAUSTED and h_run.n_scanned == (lo, hi + 1)
    ok = clean and lo <= ns[0] and ns[-1] <= hi and len(h_run.run_events()) == len(ns)
    if not clean:
        span += f"; interval contains a failure at n={h_run.first_failure[0]}" if h_run.first_failure else ""
    return Check("interval", CheckStatus.PASS if ok else CheckStatus.FAIL, span)


def _check_failure(inst: RecordInstance, shift: int, f_run: RunReport) -> Check:
    if f_run.first_failure is None:
        return Check("next_fails", CheckStatus.INCONCLUSIVE, "no failure inside the scan range")
    n, p = f_run.first_failure
    detail = f"first non-primitive-root Artin prime p={p} at X={n} (n={n + shift})"
    if inst.expected_n_range is not None and n + shift <= inst.expected_n_range[1]:
        return Check("next_fails", CheckStatus.FAIL, detail + " lies inside the claimed interval")
    return Check("next_fails", CheckStatus.PASS, detail)


def evaluate_checks(inst: RecordInstance, shift: int, f_run: RunReport, h_run: RunReport) -> tuple[Check, ...]:
    return (
        _check_sequences(f_run, h_run),
        _check_count(inst, f_run),
        _check_interval(inst, shift, f_run, h_run),
        _check_failure(inst, shift, f_run),
    )


def verify_record(inst: RecordInstance, *, workers: int | None = None, sieve_bound: int = DEFAULT_BOUND,
                  progress=None) -> VerificationReport:
    """Scan the claim in f-form from X = scan_range[0] and in depressed
    h-form, then grade it.  Failed checks are reported, never raised."""
    shift, h = inst.f.depressed()
    f_run = artin_run(inst.g, inst.f, inst.scan_range, True, workers=workers,
                      sieve_bound=sieve_bound, progress=progress)
    if inst.expected_n_range is not None:
        h_range = (inst.expected_n_range[0], inst.expected_n_range[1] + 1)
    else:
        h_range = (f_run.n_scanned[0] + shift, f_run.n_scanned[1] + shift)
    h_run = artin_run(inst.g, h, h_range, True, workers=workers, sieve_bound=sieve_bound, progress=progress)
    checks = evaluate_checks(inst, shift, f_run, h_run)
    return VerificationReport(inst, shift, h, f_run, h_run, checks)


def with_expected_c(inst: RecordInstance, expected_c: int) -> RecordInstance:
    return replace(inst, expected_c=expected_c)
