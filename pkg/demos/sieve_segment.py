"""How much a small-prime sieve thins out a quadratic before any primality test."""

from artinrun.polynomial import Polynomial
from artinrun.primality import is_prime
from artinrun.sieve import root_table, sieve_segment

h = Polynomial((182215368820640606817, 0, 32))
n0, length = 620651, 200_000

print("roots of h mod q, q < 40:")
for q, roots in root_table(h, 40):
    print(f"  q={q:<3} {roots}")

for bound in (10, 1000, 100_000):
    seg = sieve_segment(h, n0, length, bound)
    print(f"B={bound:>6}: {len(seg.survivors()):>6} of {length} survive")

seg = sieve_segment(h, n0, length, 100_000)
primes = sum(is_prime(h(int(n))).prime for n in seg.survivors())
print(f"{primes} primes among the survivors")
