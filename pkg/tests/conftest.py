from pathlib import Path

import pytest

from artinrun.polynomial import Polynomial

DATA = Path(__file__).parent / "data"

RECORD_G = 593856338459898
RECORD_F = Polynomial((182215381147285848449, 39721664, 32))
RECORD_H = Polynomial((182215368820640606817, 0, 32))
RECORD_SHIFT = 620651

# Frozen from tests/oracles/record_scan.py, an independent scan with
# gmpy2.is_prime (30 rounds) and sympy.factorint over X in [0, 1300000).
ORACLE_C = 38639
ORACLE_FIRST_X = 53
ORACLE_LAST_X = 1128624
ORACLE_FAILURE = (1128633, 182215466740465011809)
ORACLE_RUN_IN_FIRST_100K = 3519


def h_of(n: int) -> int:
    return 32 * n * n + 182215368820640606817


@pytest.fixture(scope="session")
def carmichael_numbers():
    return [int(x) for x in (DATA / "carmichael_below_1e9.txt").read_text().split()]


# Acceptance criteria outcomes, filled in by tests/test_acceptance.py and
# printed as one line each at the end of the session.
ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        status, name, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k}: {status}  {name}  ({detail})")
