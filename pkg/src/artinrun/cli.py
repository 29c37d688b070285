"""Command-line entry point: artinrun <command> ...

Exit codes: 0 success/pass, 1 verification failed, 2 usage or input error,
3 inconclusive (scan range exhausted), 4 checkpoint could not be written.
Report lines go to stdout (or ``--out``); progress goes to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
from contextlib import contextmanager

from .artin import artin_run, default_workers, is_primitive_root
from .factor import MAX_INPUT, FactorizationError, factorize
from .polynomial import Polynomial, PolynomialRangeError
from .primality import is_prime
from .records import RECORDS, CheckStatus, RecordInstance, verify_record, with_expected_c
from .report import event_line, leaderboard_line, progress_line, summary_line, verification_line
from .search import Checkpoint, CheckpointWriteError, FingerprintMismatch, SearchConfig, run_search
from .sieve import DEFAULT_BOUND

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE, EXIT_IO = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


def _range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(":")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected START:STOP, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad range {text!r}")
    return lo, hi


def _poly(text: str) -> Polynomial:
    try:
        return Polynomial.parse(text)
    except ValueError as exc:
        raise UsageError(f"malformed polynomial {text!r}: {exc}") from None


def _bounded(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"not a decimal integer: {text!r}") from None
    if n < 0 or n >= MAX_INPUT:
        raise UsageError(f"{n} is outside [0, 2**72)")
    return n


@contextmanager
def _output(path):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w") as fh:
            yield fh


def _emit(out, line) -> None:
    out.write(line.dumps() + "\n")


def _progress_printer(args):
    if args.quiet:
        return None

    def report(done, total):
        sys.stderr.write(progress_line(n=done, stop=total).dumps() + "\n")

    return report


def cmd_verify(args) -> int:
    if args.record is not None:
        if args.record not in RECORDS:
            raise UsageError(f"unknown record {args.record!r}; known: {', '.join(sorted(RECORDS))}")
        inst = RECORDS[args.record]
        if args.expect_c is not None:
            inst = with_expected_c(inst, args.expect_c)
    else:
        if args.poly is None or args.g is None or args.expect_c is None or args.n_range is None:
            raise UsageError("a custom claim needs --poly, --g, --expect-c and --n-range")
        inst = RecordInstance("custom", _poly(args.poly), args.g, args.expect_c, args.n_range, args.expect_n_range)
    vr = verify_record(inst, workers=args.threads, sieve_bound=args.sieve_bound, progress=_progress_printer(args))
    with _output(args.out) as out:
        _emit(out, summary_line(vr.f_run))
        _emit(out, summary_line(vr.h_run))
        _emit(out, verification_line(vr))
    for ch in vr.checks:
        print(f"{ch.status.value:>12}  {ch.name}: {ch.detail}", file=sys.stderr)
    print(f"c = {vr.c}: {vr.status.value}", file=sys.stderr)
    return {CheckStatus.PASS: EXIT_OK, CheckStatus.FAIL: EXIT_FAIL}.get(vr.status, EXIT_INCONCLUSIVE)


def cmd_run(args) -> int:
    f = _poly(args.poly)
    with _output(args.out) as out:
        rep = artin_run(
            args.g, f, args.n_range, not args.no_stop,
            use_abs=args.abs, sieve_bound=args.sieve_bound, workers=args.threads,
            on_event=lambda ev: _emit(out, event_line(ev)),
            progress=_progress_printer(args),
        )
        _emit(out, summary_line(rep))
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        cfg = SearchConfig.load(args.config)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"cannot load config: {exc}") from None
    ckpt_path = args.checkpoint or f"{args.config}.ckpt.json"
    board_path = args.leaderboard or f"{args.config}.leaderboard.jsonl"
    resume = None
    if args.resume:
        try:
            resume = Checkpoint.load(args.resume)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot load checkpoint: {exc}") from None

    def progress(info):
        if not args.quiet:
            sys.stderr.write(progress_line(**info).dumps() + "\n")

    try:
        final = run_search(cfg, resume, checkpoint_path=ckpt_path, every=args.every,
                           workers=args.threads, progress=progress)
    except FingerprintMismatch as exc:
        raise UsageError(str(exc)) from None
    except CheckpointWriteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        with open(board_path, "w") as fh:
            for rank, entry in enumerate(final.leaderboard, 1):
                fh.write(leaderboard_line(rank, entry, final.config_fingerprint).dumps() + "\n")
    except OSError as exc:
        print(f"error: cannot write leaderboard: {exc}", file=sys.stderr)
        return EXIT_IO
    head = final.leaderboard[0] if final.leaderboard else None
    state = "complete" if final.complete else "interrupted"
    print(f"{state}: cursor {final.cursor}, {len(final.leaderboard)} entries"
          + (f", best c = {head.c}" if head else ""), file=sys.stderr)
    return EXIT_OK


def cmd_factor(args) -> int:
    n = _bounded(args.n)
    if n == 0:
        raise UsageError("cannot factor 0")
    try:
        print(factorize(n))
    except FactorizationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_is_prime(args) -> int:
    verdict = is_prime(_bounded(args.n))
    print(f"{verdict.value} ({verdict.method.value})")
    return EXIT_OK


def cmd_pr_test(args) -> int:
    p = _bounded(str(args.p))
    if not is_prime(p):
        raise UsageError(f"p={p} is not prime")
    if args.g % p == 0:
        raise UsageError(f"p={p} divides g")
    fac = factorize(p - 1)
    print("true" if is_primitive_root(args.g, p, fac) else "false")
    print(f"p-1 = {fac}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artinrun", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def scan_opts(p):
        p.add_argument("--sieve-bound", type=int, default=DEFAULT_BOUND)
        p.add_argument("--threads", type=int, default=None,
                       help="worker processes (default: $ARTIN_THREADS or 1)")
        p.add_argument("--out", default=None, help="write report lines here instead of stdout")
        p.add_argument("--quiet", action="store_true", help="no progress lines on stderr")

    p = sub.add_parser("verify", help="re-verify a recorded run")
    p.add_argument("record", nargs="?", default=None, help=f"built-in record ({', '.join(RECORDS)})")
    p.add_argument("--poly", help="coefficients, constant term first, e.g. 3,2 for 2n+3")
    p.add_argument("--g", type=int)
    p.add_argument("--expect-c", type=int)
    p.add_argument("--n-range", type=_range, help="f-form scan range START:STOP")
    p.add_argument("--expect-n-range", type=_range, help="claimed inclusive interval LO:HI of the depressed index")
    scan_opts(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("run", help="scan a range and report r and c")
    p.add_argument("--poly", required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--n-range", type=_range, required=True)
    p.add_argument("--no-stop", action="store_true", help="keep scanning past the first failure")
    p.add_argument("--abs", action="store_true", help="use |f(n)| for negative values")
    scan_opts(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("search", help="search candidate (f, g) pairs")
    p.add_argument("--config", required=True)
    p.add_argument("--resume", default=None, help="checkpoint file to resume from")
    p.add_argument("--checkpoint", default=None, help="where to write checkpoints")
    p.add_argument("--leaderboard", default=None, help="where to write the final leaderboard")
    p.add_argument("--every", type=int, default=1000, help="checkpoint interval in candidates")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("factor", help="factor an integer below 2**72")
    p.add_argument("n")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("is-prime", help="primality verdict and method")
    p.add_argument("n")
    p.set_defaults(func=cmd_is_prime)

    p = sub.add_parser("pr-test", help="is g a primitive root mod p?")
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.set_defaults(func=cmd_pr_test)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        args.threads = default_workers()
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PolynomialRangeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
