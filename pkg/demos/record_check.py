"""Re-check the 38639-prime record.  Takes a few minutes on one core.

Pass --quick to scan only the first 20000 indices of both forms.
"""

import sys
import time

from artinrun.artin import artin_run
from artinrun.records import GALLOT_2004, verify_record

if "--quick" in sys.argv:
    inst = GALLOT_2004
    shift, h = inst.f.depressed()
    f_run = artin_run(inst.g, inst.f, (0, 20_000))
    h_run = artin_run(inst.g, h, (shift, shift + 20_000))
    same = [e.p for e in f_run.run_events()] == [e.p for e in h_run.run_events()]
    print(f"shift={shift}  c={f_run.c} in the first 20000  forms agree: {same}")
    sys.exit(0)

t0 = time.perf_counter()
vr = verify_record(GALLOT_2004)
for ch in vr.checks:
    print(f"{ch.name:<11} {ch.status.value:<13} {ch.detail}")
print(f"c={vr.c}  failure {vr.f_run.first_failure}  ({time.perf_counter() - t0:.0f}s)")
