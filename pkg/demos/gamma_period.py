"""The period Omega(q) as a product of Gamma values.

    Omega(q) = prod_{(c/q) = 1} Gamma(c/q) / ((2 pi)^m q^(h/2)),   m = (q-1)/4 - h/2

is a Chowla-Selberg period of the CM curve.  For q = 7 it equals the real
period of the curve 49a1.  Gamma is computed with Spouge's formula; the
Gauss product identity and mpmath's independent Gamma serve as checks.

Run:  python3 demos/gamma_period.py
"""

from fractions import Fraction

import mpmath

from gross_sha.classgroup import enumerate_class_group
from gross_sha.numerics import PrecisionContext, gamma, spouge_parameter, sum_log_gamma
from gross_sha.period_sha import omega

ctx = PrecisionContext(50)
print(f"Spouge parameter a = {spouge_parameter(ctx.total_digits)} for {ctx.total_digits} digits")

with ctx.activate():
    x = Fraction(1, 7)
    ours = gamma(x, ctx)
    ref = mpmath.gamma(mpmath.mpf(1) / 7)
    print(f"Gamma(1/7) = {mpmath.nstr(ours, 50)}")
    print(f"relative difference from mpmath: {mpmath.nstr(abs(ours / ref - 1), 3)}")

    for q in (7, 11, 23):
        prod = mpmath.exp(sum_log_gamma([Fraction(c, q) for c in range(1, q)], ctx))
        rhs = (2 * mpmath.pi) ** (mpmath.mpf(q - 1) / 2) / mpmath.sqrt(q)
        print(f"Gauss product q={q}: relative error {mpmath.nstr(abs(prod / rhs - 1), 3)}")

print()
for q in (7, 11, 19, 23, 47, 431):
    G = enumerate_class_group(q)
    p = omega(q, G.h, ctx)
    with ctx.activate():
        print(f"Omega({q:>3}) = {mpmath.nstr(p.omega, 30):<34} h = {G.h:<3} m = {p.m}")
