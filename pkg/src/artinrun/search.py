"""Search over (f, g) pairs for long runs of consecutive Artin primes.

Candidates are enumerated deterministically, screened by static filters,
scanned in two phases and ranked on a bounded leaderboard.  Progress is
saved to a checkpoint that can only be resumed under the same config.
"""

from __future__ import annotations

import bisect
import hashlib
import itertools
import json
import logging
import math
import os
import tempfile
from collections.abc import Callable, Iterator
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone

from .artin import RunReport, Termination, artin_run, merge_reports
from .factor import factorize
from .modmath import MODULUS_LIMIT
from .polynomial import Polynomial, PolynomialRangeError
from .sieve import DEFAULT_BOUND

log = logging.getLogger(__name__)

FORMAT_VERSION = 1
LEADERBOARD_SIZE = 100
CHECKPOINT_EVERY = 1000
GALLOT_RECORD = 38639


class FingerprintMismatch(ValueError):
    """Checkpoint was written under a different search config."""


class CheckpointWriteError(OSError):
    pass


# -- config -----------------------------------------------------------------


def _expand(spec) -> tuple[int, ...]:
    """``{"values": [...]}`` or ``{"range": [lo, hi]}`` (inclusive, optional step)."""
    if "values" in spec:
        return tuple(int(v) for v in spec["values"])
    lo, hi, *step = spec["range"]
    return tuple(range(int(lo), int(hi) + 1, int(step[0]) if step else 1))


@dataclass(frozen=True)
class Congruence:
    """Keep only candidates whose coefficient at ``position`` is in ``residues`` mod ``modulus``.

    A search heuristic, not a mathematical filter: nothing guarantees a
    discarded candidate is a poor one.
    """

    position: int
    modulus: int
    residues: tuple[int, ...]


@dataclass(frozen=True)
class SearchConfig:
    """Coefficient value lists are given constant term first."""

    degree: int
    coefficients: tuple[tuple[int, ...], ...]
    g_values: tuple[int, ...] = ()
    g_rule: str | None = None
    g_multipliers: tuple[int, ...] = (1, 2, -1, -2)
    quick_reject_threshold: int = 1
    n_budget: int = 10_000
    sieve_bound: int = DEFAULT_BOUND
    record_floor: int = GALLOT_RECORD
    congruences: tuple[Congruence, ...] = ()

    def __post_init__(self):
        if not 1 <= self.degree <= 3:
            raise ValueError("degree must be 1..3")
        if len(self.coefficients) != self.degree + 1:
            raise ValueError(f"need {self.degree + 1} coefficient ranges, got {len(self.coefficients)}")
        if self.quick_reject_threshold < 1 or self.n_budget < 1:
            raise ValueError("quick_reject_threshold and n_budget must be >= 1")
        if self.g_rule not in (None, "constant_divisors"):
            raise ValueError(f"unknown g rule {self.g_rule!r}")

    @classmethod
    def from_dict(cls, d: dict) -> SearchConfig:
        gspec = d.get("g", {"values": []})
        return cls(
            degree=int(d["degree"]),
            coefficients=tuple(_expand(s) for s in d["coefficients"]),
            g_values=() if "rule" in gspec else _expand(gspec),
            g_rule=gspec.get("rule"),
            g_multipliers=tuple(gspec.get("multipliers", (1, 2, -1, -2))),
            quick_reject_threshold=int(d.get("quick_reject_threshold", 1)),
            n_budget=int(d.get("n_budget", 10_000)),
            sieve_bound=int(d.get("sieve_bound", DEFAULT_BOUND)),
            record_floor=int(d.get("record_floor", GALLOT_RECORD)),
            congruences=tuple(
                Congruence(int(c["position"]), int(c["modulus"]), tuple(c["residues"]))
                for c in d.get("congruences", ())
            ),
        )

    @classmethod
    def load(cls, path) -> SearchConfig:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self) -> dict:
        return json.loads(json.dumps(asdict(self)))

    @property
    def fingerprint(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


# -- candidates ---------------------------------------------------------------


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


def g_is_vacuous(g: int) -> bool:
    """Units and squares cannot be primitive roots modulo any prime p > 3."""
    return g in (-1, 0, 1) or _is_square(g)


def fixed_divisor(f: Polynomial) -> int:
    """gcd of f(0), ..., f(d): it divides every value f(n)."""
    return math.gcd(*(f(i) for i in range(f.degree + 1)))


def f_is_vacuous(f: Polynomial) -> bool:
    """A fixed divisor > 1 lets f produce at most one prime; a negative
    leading coefficient leaves only finitely many positive values."""
    return f.leading < 0 or fixed_divisor(f) > 1


def _passes_congruences(cfg: SearchConfig, coeffs: tuple[int, ...]) -> bool:
    return all(coeffs[c.position] % c.modulus in c.residues for c in cfg.congruences)


def _derived_g(cfg: SearchConfig, f: Polynomial) -> list[int]:
    """g = m * d over squarefree divisors d > 1 of the depressed constant term."""
    _, h = f.depressed()
    const = abs(h.coefficients[0])
    if const < 2 or const >= MODULUS_LIMIT:
        return []
    primes = factorize(const).primes
    divisors = sorted(
        math.prod(combo)
        for k in range(1, len(primes) + 1)
        for combo in itertools.combinations(primes, k)
    )
    return [m * d for d in divisors for m in cfg.g_multipliers]


def _g_list(cfg: SearchConfig, f: Polynomial) -> list[int]:
    return _derived_g(cfg, f) if cfg.g_rule else list(cfg.g_values)


def enumerate_candidates(cfg: SearchConfig, cursor: int = 0) -> Iterator[tuple[int, Polynomial, int]]:
    """Yield ``(index, f, g)`` in row-major order (first listed coefficient
    varies slowest, g fastest), starting at raw index ``cursor``.

    Filtered pairs are not yielded but still consume an index.
    """
    if cursor < 0:
        raise ValueError(f"invalid cursor {cursor}")
    index = 0
    for coeffs in itertools.product(*cfg.coefficients):
        f = Polynomial(coeffs) if coeffs[-1] != 0 else None
        gs = _g_list(cfg, f) if f is not None else list(cfg.g_values)
        if index + len(gs) <= cursor:
            index += len(gs)
            continue
        keep_f = f is not None and not f_is_vacuous(f) and _passes_congruences(cfg, coeffs)
        for g in gs:
            if index >= cursor and keep_f and not g_is_vacuous(g):
                yield index, f, g
            index += 1
    if cursor > index:
        raise ValueError(f"invalid cursor {cursor}: enumeration has {index} candidates")


def count_candidates(cfg: SearchConfig) -> int:
    total = 0
    for coeffs in itertools.product(*cfg.coefficients):
        f = Polynomial(coeffs) if coeffs[-1] != 0 else None
        total += len(_g_list(cfg, f)) if f is not None else len(cfg.g_values)
    return total


# -- leaderboard --------------------------------------------------------------


@dataclass(frozen=True)
class LeaderboardEntry:
    f: Polynomial
    g: int
    c: int
    r: int
    n_range: tuple[int, int]
    terminated: Termination
    timestamp: str = field(default="", compare=False)

    @property
    def sort_key(self):
        return (-self.c, -self.r, self.f.coefficients, self.g)

    def to_dict(self) -> dict:
        return {
            "f": list(self.f.coefficients),
            "g": self.g,
            "c": self.c,
            "r": self.r,
            "n_range": list(self.n_range),
            "terminated": self.terminated.value,
            "timestamp": self.timestamp,
        }

    @classmethod
    def from_dict(cls, d: dict) -> LeaderboardEntry:
        return cls(
            Polynomial(tuple(d["f"])),
            int(d["g"]),
            int(d["c"]),
            int(d["r"]),
            tuple(d["n_range"]),
            Termination(d["terminated"]),
            d.get("timestamp", ""),
        )

    @classmethod
    def from_report(cls, rep: RunReport) -> LeaderboardEntry:
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
        return cls(rep.f, rep.g, rep.c, rep.r, rep.n_scanned, rep.terminated, stamp)


class Leaderboard:
    def __init__(self, entries=(), capacity: int = LEADERBOARD_SIZE):
        self.capacity = capacity
        self.entries: list[LeaderboardEntry] = []
        for e in entries:
            self.insert(e)

    def insert(self, entry: LeaderboardEntry) -> None:
        keys = [e.sort_key for e in self.entries]
        self.entries.insert(bisect.bisect_right(keys, entry.sort_key), entry)
        del self.entries[self.capacity :]

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    @property
    def head(self) -> LeaderboardEntry | None:
        return self.entries[0] if self.entries else None


# -- checkpoint ---------------------------------------------------------------


@dataclass
class Checkpoint:
    config_fingerprint: str
    cursor: int
    leaderboard: list[LeaderboardEntry]
    format_version: int = FORMAT_VERSION
    complete: bool = False
    config: dict | None = None

    def to_json(self) -> str:
        doc = {
            "format_version": self.format_version,
            "config_fingerprint": self.config_fingerprint,
            "cursor": self.cursor,
            "complete": self.complete,
            "config": self.config,
            "leaderboard": [e.to_dict() for e in self.leaderboard],
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"

    @classmethod
    def from_json(cls, text: str) -> Checkpoint:
        doc = json.loads(text)
        if doc.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported checkpoint format {doc.get('format_version')}")
        return cls(
            config_fingerprint=doc["config_fingerprint"],
            cursor=int(doc["cursor"]),
            leaderboard=[LeaderboardEntry.from_dict(e) for e in doc["leaderboard"]],
            format_version=doc["format_version"],
            complete=bool(doc.get("complete", False)),
            config=doc.get("config"),
        )

    def save(self, path) -> None:
        """Write atomically: temp file in the same directory, then rename."""
        path = os.fspath(path)
        try:
            fd, tmp = tempfile.mkstemp(dir=os.path.dirname(path) or ".", prefix=".ckpt-")
            with os.fdopen(fd, "w") as fh:
                fh.write(self.to_json())
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, path)
        except OSError as exc:
            raise CheckpointWriteError(f"cannot write checkpoint {path}: {exc}") from exc

    @classmethod
    def load(cls, path) -> Checkpoint:
        with open(path) as fh:
            return cls.from_json(fh.read())


# -- evaluation ---------------------------------------------------------------


def evaluate_candidate(f: Polynomial, g: int, cfg: SearchConfig) -> LeaderboardEntry | None:
    """Two-phase scan; ``None`` when the candidate is filtered or discarded."""
    if g_is_vacuous(g) or f_is_vacuous(f):
        return None
    split = max(1, cfg.n_budget // 64)
    try:
        first = artin_run(g, f, (0, split), True, sieve_bound=cfg.sieve_bound, workers=1)
        if first.r < cfg.quick_reject_threshold:
            return None
        rep = first
        if first.terminated is Termination.RANGE_EXHAUSTED and split < cfg.n_budget:
            second = artin_run(g, f, (split, cfg.n_budget), True,
                               sieve_bound=cfg.sieve_bound, workers=1)
            rep = merge_reports([first, second], stop_on_failure=True)
    except PolynomialRangeError as exc:
        log.warning("skipping f=%s g=%d: %s", f.spec(), g, exc)
        return None
    return LeaderboardEntry.from_report(rep)


def _evaluate_packed(args):
    return evaluate_candidate(*args)


def run_search(
    cfg: SearchConfig,
    checkpoint: Checkpoint | None = None,
    *,
    checkpoint_path=None,
    every: int = CHECKPOINT_EVERY,
    workers: int = 1,
    progress: Callable[[dict], None] | None = None,
) -> Checkpoint:
    """Process candidates from the checkpoint's cursor to the end.

    The cursor only moves past a candidate once it and everything before it
    have been evaluated.  On KeyboardInterrupt the current state is saved and
    returned with ``complete=False``.
    """
    fp = cfg.fingerprint
    if checkpoint is not None and checkpoint.config_fingerprint != fp:
        raise FingerprintMismatch("checkpoint was written under a different config")
    board = Leaderboard(checkpoint.leaderboard if checkpoint else ())
    state = Checkpoint(fp, checkpoint.cursor if checkpoint else 0, [], config=cfg.to_dict())

    def snapshot(complete=False) -> Checkpoint:
        state.leaderboard = list(board)
        state.complete = complete
        if checkpoint_path is not None:
            state.save(checkpoint_path)
        return state

    if checkpoint is not None and checkpoint.complete:
        return snapshot(True)

    pool = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    since_save = 0
    try:
        stream = enumerate_candidates(cfg, state.cursor)
        batch_size = 4 * workers
        while True:
            batch = list(itertools.islice(stream, batch_size))
            if not batch:
                break
            if pool is None:
                results = (evaluate_candidate(f, g, cfg) for _, f, g in batch)
            else:
                results = pool.map(_evaluate_packed, [(f, g, cfg) for _, f, g in batch])
            for (index, f, g), entry in zip(batch, results):
                if entry is not None:
                    board.insert(entry)
                    if entry.c > cfg.record_floor:
                        log.warning("c=%d beats the floor %d: f=%s g=%d", entry.c, cfg.record_floor, f.spec(), g)
                state.cursor = index + 1
                since_save += 1
                if progress is not None:
                    progress({"cursor": state.cursor, "f": f.spec(), "g": g,
                              "c": entry.c if entry else None})
                if since_save >= every:
                    snapshot()
                    since_save = 0
        state.cursor = count_candidates(cfg)
        return snapshot(True)
    except KeyboardInterrupt:
        log.info("interrupted at cursor %d; saving checkpoint", state.cursor)
        return snapshot(False)
    finally:
        if pool is not None:
            pool.shutdown(cancel_futures=True)
