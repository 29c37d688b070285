"""Primality, factoring and primitive roots on a few hand-picked numbers."""

from artinrun.artin import is_primitive_root, multiplicative_order
from artinrun.factor import factorize
from artinrun.primality import is_prime

for n in (561, 2**61 - 1, 2**64 - 59, 3825123056546413051, 2**71 - 1):
    v = is_prime(n)
    print(f"{n:>24}  prime={v.prime!s:5}  via {v.method.value}")

print()
for n in (8051, 2**64 + 1, 2**72 - 1):
    print(n, "=", factorize(n))

print()
p = 1000003
fac = factorize(p - 1)
for g in range(2, 8):
    print(f"g={g}  order mod {p} = {multiplicative_order(g, p, fac):>7}  primitive={is_primitive_root(g, p, fac)}")
