"""One row of the table, computed step by step for q = 47.

1. K = Q(sqrt(-47)) has class number 5, so the Hilbert class field H has
   degree 5 over K and L(E/H, s) factors into five Hecke L-functions
   L(rho * chi, s), one per class-group character chi.
2. rho is fixed on principal ideals by rho((g)) = eps(g) g.  On a
   generator class it is an h-th root of that, and the branch is fixed once.
3. Each L(rho * chi, 1) comes from a smoothed functional equation.  The
   root number W is solved for, and |W| = 1 is the built-in accuracy check.
4. L(E/H,1) = prod |L(rho * chi, 1)|^2, and #Sha follows from the period.

Run:  python3 demos/single_q_walkthrough.py [q]
"""

import sys

import mpmath

from gross_sha.heckechar import grossencharacters
from gross_sha.lseries import afe_config, l_product_for
from gross_sha.numerics import PrecisionContext
from gross_sha.period_sha import omega, sha_exponent, sha_order
from gross_sha.pipeline import j_and_r

q = int(sys.argv[1]) if len(sys.argv) > 1 else 47
ctx = PrecisionContext(50)

R = grossencharacters(q, ctx)[0]
G = R.group
print(f"q = {q}, h = {G.h}, conductor {R.conductor} of norm {R.conductor.norm()}")
print(f"eps: {R.epsilon.describe()}")
with ctx.activate():
    for b in R.branch:
        print(f"  l = {b.ideal}: l^{b.order} = ({b.beta}), rho(l) = {mpmath.nstr(b.rho, 20)}")

cfg = afe_config(R, ctx)
print(f"\nscale C = {mpmath.nstr(cfg.C, 12)}, truncation X = {cfg.X}, cutoffs {cfg.cutoffs}")

res = l_product_for(R, ctx)
with ctx.activate():
    for c in res.per_char:
        print(
            f"  chi={c.label:<6} L = {mpmath.nstr(c.L, 20)}   "
            f"|W|-1 = {mpmath.nstr(c.unitarity_residual, 3)}   cutoff check {mpmath.nstr(c.cutoff_residual, 3)}"
        )
    print(f"\nL(E/H,1) = {mpmath.nstr(res.product, 40)}")

j, r = j_and_r(q, G)
period = omega(q, G.h, ctx)
rep = sha_order(q, res.product, period, j, r, ctx)
with ctx.activate():
    print(f"Omega({q}) = {mpmath.nstr(period.omega, 40)}  (m = {period.m})")
    print(f"exponent of 2: {sha_exponent(q, G.h, r)}  (j = {j}, r = {r})")
    print(f"#Sha = {mpmath.nstr(rep.sha_analytic, 50)}")
    print(f"     = {rep.sha_rounded} with error {mpmath.nstr(rep.abs_error, 3)}, square: {rep.is_perfect_square}")
