"""Checking rho against an honest elliptic curve when h = 1.

For class number one the twisted curve has a simple model over K,

    y^2 = x^3 - (j^(1/3)/48) x + sqrt(j - 1728)/864,

where the square root is +-t sqrt(-q).  At a split prime P of norm ell the
number of points on the reduction gives a_P = ell + 1 - #E(F_ell), and CM
theory says a_P = rho(P) + conj(rho(P)).  Matching the two over many primes
pins down eps and shows which sign of the square root goes with it.

Run:  python3 demos/anchor_point_counts.py [q]
"""

import sys

from gross_sha.anchor import LOWER, UPPER, build_curve, count_points, rho_trace, split_primes
from gross_sha.heckechar import grossencharacters

q = int(sys.argv[1]) if len(sys.argv) > 1 else 11
rhos = grossencharacters(q)
signs = (UPPER, LOWER) if q % 8 == 3 else (UPPER,)
curves = {s: build_curve(q, s) for s in signs}
for s, E in curves.items():
    print(f"{s:>5}: y^2 = x^3 + ({E.a4}) x + ({E.a6_coeff}) sqrt(-{q})")

header = f"{'P':>28} " + " ".join(f"a_P({s})".rjust(10) for s in signs)
header += " " + " ".join(f"tr(eps{R.epsilon.ident})".rjust(10) for R in rhos)
print("\n" + header)
for P in split_primes(q, 120):
    row = f"{str(P):>28} " + " ".join(f"{count_points(E, P):>10}" for E in curves.values())
    row += " " + " ".join(f"{rho_trace(R, P)[0]:>10}" for R in rhos)
    print(row)
