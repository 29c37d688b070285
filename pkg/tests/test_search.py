import json
import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from artinrun.artin import Termination, artin_run
from artinrun.polynomial import Polynomial
from artinrun.search import (
    Checkpoint,
    CheckpointWriteError,
    FingerprintMismatch,
    Leaderboard,
    LeaderboardEntry,
    SearchConfig,
    count_candidates,
    enumerate_candidates,
    evaluate_candidate,
    f_is_vacuous,
    fixed_divisor,
    g_is_vacuous,
    run_search,
)

from .conftest import ORACLE_C, RECORD_F, RECORD_G


def small_cfg(**kw):
    d = {
        "degree": 2,
        "coefficients": [{"range": [1, 9]}, {"range": [0, 3]}, {"values": [1, 2]}],
        "g": {"values": [-3, 2, 3, 5]},
        "n_budget": 640,
    }
    d.update(kw)
    return SearchConfig.from_dict(d)


def test_enumeration_order_example():
    cfg = SearchConfig.from_dict({
        "degree": 1,
        "coefficients": [{"values": [1]}, {"values": [1, 2]}],
        "g": {"values": [2]},
    })
    got = [(i, f.coefficients, g) for i, f, g in enumerate_candidates(cfg)]
    assert got == [(0, (1, 1), 2), (1, (1, 2), 2)]


def test_cursor_at_end_is_empty():
    cfg = small_cfg()
    total = count_candidates(cfg)
    assert total == 9 * 4 * 2 * 4
    assert list(enumerate_candidates(cfg, total)) == []
    with pytest.raises(ValueError):
        list(enumerate_candidates(cfg, total + 1))
    with pytest.raises(ValueError):
        list(enumerate_candidates(cfg, -1))


def test_resumed_enumeration_is_a_suffix():
    cfg = small_cfg()
    full = list(enumerate_candidates(cfg))
    for k in (0, 1, 17, 100, 287):
        assert list(enumerate_candidates(cfg, k)) == [t for t in full if t[0] >= k]


def test_even_polynomials_never_yielded():
    cfg = SearchConfig.from_dict({
        "degree": 2,
        "coefficients": [{"range": [0, 6, 2]}, {"range": [0, 6, 2]}, {"range": [2, 6, 2]}],
        "g": {"values": [2, 3]},
    })
    assert count_candidates(cfg) > 0
    assert list(enumerate_candidates(cfg)) == []


def test_static_filters():
    assert g_is_vacuous(0) and g_is_vacuous(1) and g_is_vacuous(-1)
    assert g_is_vacuous(4) and g_is_vacuous(49)
    assert not g_is_vacuous(-4) and not g_is_vacuous(2)
    assert fixed_divisor(Polynomial((0, 1, 1))) == 2  # n(n+1)
    assert f_is_vacuous(Polynomial((0, 1, 1)))
    assert f_is_vacuous(Polynomial((5, 0, -1)))
    assert not f_is_vacuous(RECORD_F)


# Each static filter comes with the run it would have produced: never long.

@settings(max_examples=60, deadline=None)
@given(st.integers(0, 40), st.lists(st.integers(-20, 20), min_size=2, max_size=4).filter(lambda c: c[-1] > 0))
def test_square_or_unit_g_runs_are_vacuous(k, cs):
    # a square is a residue mod every p not dividing it, so only p = 2 can count
    f = Polynomial(tuple(cs))
    for g in (k * k, -1, 1):
        rep = artin_run(g, f, (0, 300), stop_on_failure=True)
        assert rep.r <= 3


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 12), st.lists(st.integers(-20, 20), min_size=2, max_size=4).filter(lambda c: c[-1] > 0),
       st.integers(2, 30))
def test_fixed_divisor_runs_are_vacuous(d, cs, g):
    f = Polynomial(tuple(d * c for c in cs))
    assert fixed_divisor(f) % d == 0
    rep = artin_run(g, f, (0, 300), stop_on_failure=False)
    # every value is a multiple of d, so only d itself can be prime (at most deg times)
    assert rep.counts.prime <= f.degree


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-20, 20), min_size=2, max_size=4).filter(lambda c: c[-1] < 0))
def test_negative_leading_runs_end(cs):
    f = Polynomial(tuple(cs))
    bound = 2 + sum(abs(c) for c in cs)  # beyond this every value is negative
    assert all(f(n) < 0 for n in range(bound, bound + 50))
    rep = artin_run(2, f, (bound, bound + 500), stop_on_failure=False)
    assert rep.counts.prime == 0


def test_evaluate_discards_short_prefix():
    cfg = SearchConfig.from_dict({
        "degree": 1, "coefficients": [{"values": [0]}, {"values": [1]}],
        "g": {"values": [2]}, "quick_reject_threshold": 3, "n_budget": 64 * 20,
    })
    assert evaluate_candidate(Polynomial((0, 1)), 2, cfg) is None
    e = evaluate_candidate(Polynomial((0, 1)), 2, replace(cfg, quick_reject_threshold=2))
    assert (e.c, e.r, e.terminated) == (2, 2, Termination.FAILURE_FOUND)


def test_evaluate_square_g_is_discarded():
    cfg = small_cfg()
    assert evaluate_candidate(Polynomial((1, 1)), 9, cfg) is None


def test_evaluate_overflow_is_skipped(caplog):
    cfg = SearchConfig.from_dict({
        "degree": 2, "coefficients": [{"values": [1]}, {"values": [0]}, {"values": [1 << 60]}],
        "g": {"values": [3]}, "n_budget": 100000,
    })
    assert evaluate_candidate(Polynomial((1, 0, 1 << 60)), 3, cfg) is None
    assert "skipping" in caplog.text


entries = st.builds(
    LeaderboardEntry,
    f=st.lists(st.integers(-3, 3), min_size=2, max_size=3).filter(lambda c: c[-1] != 0).map(
        lambda c: Polynomial(tuple(c))),
    g=st.integers(-5, 5),
    c=st.integers(0, 6),
    r=st.integers(0, 6),
    n_range=st.just((0, 10)),
    terminated=st.sampled_from(list(Termination)),
)


@given(st.lists(entries, max_size=40), st.integers(1, 10))
def test_leaderboard_ordering(items, cap):
    board = Leaderboard(capacity=cap)
    for e in items:
        board.insert(e)
        keys = [x.sort_key for x in board]
        assert keys == sorted(keys)
        assert len(board) <= cap
    best = sorted(items, key=lambda e: e.sort_key)[:cap]
    assert [e.sort_key for e in board] == [e.sort_key for e in best]


def test_checkpoint_round_trip(tmp_path):
    cfg = small_cfg()
    final = run_search(cfg, checkpoint_path=tmp_path / "c.json")
    loaded = Checkpoint.load(tmp_path / "c.json")
    assert loaded.cursor == final.cursor == count_candidates(cfg)
    assert loaded.complete
    assert loaded.leaderboard == final.leaderboard
    assert loaded.config_fingerprint == cfg.fingerprint
    assert json.loads((tmp_path / "c.json").read_text())["format_version"] == 1


def test_fingerprint_mismatch_refused():
    a = run_search(small_cfg())
    with pytest.raises(FingerprintMismatch):
        run_search(small_cfg(n_budget=641), a)


def test_empty_ranges_complete_immediately():
    cfg = SearchConfig.from_dict({
        "degree": 1, "coefficients": [{"range": [1, 0]}, {"values": [1]}], "g": {"values": [2]},
    })
    final = run_search(cfg)
    assert final.complete and final.leaderboard == [] and final.cursor == 0


class Killed(Exception):
    pass


def interrupt_at(k, exc):
    def hook(info):
        if info["cursor"] >= k:
            raise exc
    return hook


def test_interrupt_and_resume_matches_uninterrupted(tmp_path):
    cfg = small_cfg()
    reference = run_search(cfg)
    assert len(reference.leaderboard) == 100
    rng = random.Random(1)
    for k in rng.sample(range(1, count_candidates(cfg)), 4):
        path = tmp_path / f"k{k}.json"
        part = run_search(cfg, checkpoint_path=path, progress=interrupt_at(k, KeyboardInterrupt()))
        assert not part.complete and part.cursor >= k
        resumed = run_search(cfg, Checkpoint.load(path), checkpoint_path=path)
        assert resumed.complete
        assert resumed.cursor == reference.cursor
        assert resumed.leaderboard == reference.leaderboard


def test_hard_kill_resumes_from_last_periodic_save(tmp_path):
    cfg = small_cfg()
    reference = run_search(cfg)
    path = tmp_path / "c.json"
    with pytest.raises(Killed):
        run_search(cfg, checkpoint_path=path, every=7, progress=interrupt_at(53, Killed()))
    on_disk = Checkpoint.load(path)
    assert on_disk.cursor <= 53 and not on_disk.complete
    resumed = run_search(cfg, on_disk)
    assert resumed.leaderboard == reference.leaderboard


def test_unwritable_checkpoint_is_fatal(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("")
    with pytest.raises(CheckpointWriteError):
        run_search(small_cfg(), checkpoint_path=blocker / "c.json", every=1)


def test_derived_g_rule():
    # X^2 + 30 has depressed constant 30 = 2*3*5
    cfg = SearchConfig.from_dict({
        "degree": 2, "coefficients": [{"values": [30]}, {"values": [0]}, {"values": [1]}],
        "g": {"rule": "constant_divisors", "multipliers": [1, -1]},
    })
    gs = [g for _, _, g in enumerate_candidates(cfg)]
    assert sorted(gs) == sorted([2, 3, 5, 6, 10, 15, 30, -2, -3, -5, -6, -10, -15, -30])


def test_record_floor_is_logged(caplog):
    cfg = small_cfg(record_floor=50)
    best = run_search(cfg).leaderboard[0]
    assert best.c > 50
    assert f"c={best.c} beats the floor 50" in caplog.text


def test_workers_do_not_change_leaderboard():
    cfg = small_cfg()
    assert run_search(cfg, workers=2).leaderboard == run_search(cfg).leaderboard


@pytest.mark.slow
def test_record_candidate():
    cfg = SearchConfig.from_dict({
        "degree": 2,
        "coefficients": [{"values": [RECORD_F.coefficients[0]]}, {"values": [39721664]}, {"values": [32]}],
        "g": {"values": [RECORD_G]},
        "quick_reject_threshold": 100,
        "n_budget": 1_200_000,
    })
    entry = evaluate_candidate(RECORD_F, RECORD_G, cfg)
    assert entry.c == ORACLE_C
