"""A tiny search over quadratics, interrupted halfway and resumed."""

import tempfile
from pathlib import Path

from artinrun.search import Checkpoint, SearchConfig, count_candidates, run_search

cfg = SearchConfig.from_dict({
    "degree": 2,
    "coefficients": [{"range": [1, 30]}, {"range": [0, 4]}, {"values": [1, 2]}],
    "g": {"values": [-3, 2, 3, 5, 7]},
    "n_budget": 6400,
})
total = count_candidates(cfg)


class Stop(Exception):
    pass


def stop_halfway(info):
    if info["cursor"] >= total // 2:
        raise Stop


with tempfile.TemporaryDirectory() as d:
    path = Path(d) / "ck.json"
    try:
        run_search(cfg, checkpoint_path=path, every=10, progress=stop_halfway)
    except Stop:
        print(f"stopped; checkpoint at cursor {Checkpoint.load(path).cursor} of {total}")
    final = run_search(cfg, Checkpoint.load(path), checkpoint_path=path)

print(f"complete={final.complete}; top five:")
for e in final.leaderboard[:5]:
    print(f"  c={e.c:<3} r={e.r:<3} g={e.g:<3} f={e.f}")
