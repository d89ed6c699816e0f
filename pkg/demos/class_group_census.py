"""Class groups of Q(sqrt(-q)) and the census of q with r > 1.

For q = 7 mod 8 the prime 2 splits as p * pbar in K.  The class of p has some
order j dividing h, and r = h/j.  Most q have r = 1, so p generates the whole
class group.  This script shows one class group in detail and then lists every
q = 7 mod 8 below 4663 where p does not generate the group.

Run:  python3 demos/class_group_census.py
"""

from gross_sha.classgroup import class_of, dirichlet_h, enumerate_class_group
from gross_sha.heckechar import distinguished_prime_above_two
from gross_sha.quadfield import FieldParams
from gross_sha.verify import census

q = 431
G = enumerate_class_group(q)
p = distinguished_prime_above_two(FieldParams(q))
j, r = G.order_of_class(class_of(p))

print(f"q = {q}: h = {G.h} (character-sum formula gives {dirichlet_h(q)})")
print(f"cyclic factors: {G.orders}")
for form, order in G.generators:
    print(f"  generator {tuple(form)} of order {order}")
print(f"p above 2 is {p}, its class is {tuple(class_of(p))}")
print(f"order of [p]: j = {j}, so r = h/j = {r}")
print()

# the reduced forms themselves: (a, b, c) with b^2 - 4ac = -q, |b| <= a <= c
print("first reduced forms:", [tuple(f) for f in G.forms[:8]], "...")
print()

n, rows = census()
print(f"{n} primes q <= 4663 with q = 7 mod 8 and r > 1:")
print(f"{'q':>6} {'h':>4} {'j':>4} {'r':>3}")
for q_, h, j_, r_ in rows:
    print(f"{q_:>6} {h:>4} {j_:>4} {r_:>3}")
