"""Artin runs on small polynomials, printed event by event."""

from artinrun.artin import artin_run
from artinrun.polynomial import Polynomial

rep = artin_run(2, Polynomial((0, 1)), (0, 100))
for e in rep.events:
    print(f"n={e.n:<3} p={e.p:<3} {e.verdict.value:<16} j={e.j}")
print(f"r={rep.r} c={rep.c} first failure {rep.first_failure}\n")

# n^2 + 4n + 7 with g = -4 keeps going for a while
rep = artin_run(-4, Polynomial((7, 4, 1)), (0, 5000))
print(f"X^2+4X+7, g=-4: r={rep.r} c={rep.c} failure at {rep.first_failure}")
