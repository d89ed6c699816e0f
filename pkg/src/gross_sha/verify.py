"""Verification suites behind ``gross-sha verify``.

Each suite returns a list of :class:`Check` results; a suite passes when every
check does.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .classgroup import class_of, dirichlet_h, enumerate_class_group
from .heckechar import distinguished_prime_above_two
from .lseries import l_product
from .numerics import PrecisionContext
from .period_sha import m_exponent
from .quadfield import FieldParams, primes_up_to

CENSUS_QMAX = 4663
CENSUS_EXPECTED = 18
LSERIES_SAMPLE = (7, 23, 31, 47, 71, 79, 11, 19, 43, 59, 67, 83)
ANCHOR_SAMPLE = (7, 11, 19, 43)


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name}  {self.detail}".rstrip()


def family(mod8: int, qmax: int, qmin: int = 5) -> list[int]:
    return [q for q in primes_up_to(qmax) if q >= qmin and q % 8 == mod8]


def census(qmax: int = CENSUS_QMAX) -> tuple[int, list[tuple[int, int, int, int]]]:
    """Primes q <= qmax, q = 7 mod 8, with r = h/j > 1, as (q, h, j, r)."""
    rows = []
    for q in family(7, qmax):
        G = enumerate_class_group(q)
        j, r = G.order_of_class(class_of(distinguished_prime_above_two(FieldParams(q))))
        if r > 1:
            rows.append((q, G.h, j, r))
    return len(rows), rows


def suite_census(qmax: int = CENSUS_QMAX) -> list[Check]:
    n, rows = census(qmax)
    expected = CENSUS_EXPECTED if qmax == CENSUS_QMAX else None
    ok = expected is None or n == expected
    exp = f"{expected} expected" if expected is not None else "no reference count"
    return [Check("census r>1", ok, f"{n}/{exp}: " + ",".join(str(r[0]) for r in rows))]


def suite_classgroup(qmax: int = 2000) -> list[Check]:
    bad = []
    for q in primes_up_to(qmax):
        if q <= 3 or q % 4 != 3:
            continue
        G = enumerate_class_group(q)
        if G.h != dirichlet_h(q) or G.h % 2 == 0:
            bad.append(q)
            continue
        try:
            m_exponent(q, G.h)
        except ArithmeticError:
            bad.append(q)
    return [Check(f"class number vs Dirichlet, q <= {qmax}", not bad, f"mismatches: {bad}" if bad else "")]


def suite_lseries(qs=LSERIES_SAMPLE, ctx: PrecisionContext = PrecisionContext()) -> list[Check]:
    checks = []
    tol = mpmath.mpf(10) ** (-(ctx.decimal_digits - 10))
    for q in qs:
        for res in l_product(q, ctx):
            u = res.max_unitarity_residual()
            d = res.max_cutoff_residual()
            tag = f"q={q} eps={res.epsilon_id}"
            checks.append(Check(f"{tag} |W|=1", u < tol, mpmath.nstr(u, 3)))
            checks.append(Check(f"{tag} cutoff consistency", d < tol, mpmath.nstr(d, 3)))
            checks.append(Check(f"{tag} L(E/H,1) > 0", res.product > 0, mpmath.nstr(res.product, 12)))
    return checks


def suite_anchor(qs=ANCHOR_SAMPLE, bound: int = 500, ctx: PrecisionContext = PrecisionContext()) -> list[Check]:
    from .anchor import anchor_report

    checks = []
    tol = mpmath.mpf(10) ** (-(ctx.decimal_digits - 10))
    for q in qs:
        rep = anchor_report(q, bound, ctx)
        for sign, m in rep.matches.items():
            checks.append(
                Check(
                    f"q={q} {sign} trace match",
                    bool(m.matched) and m.n_primes >= 10,
                    f"eps={rep.selected[sign]} over {m.n_primes} primes",
                )
            )
        if len(rep.abs_L) == 2:
            vals = list(rep.abs_L.values())
            diff = abs(vals[0] - vals[1])
            checks.append(Check(f"q={q} conjugate curves |L| equal", diff < tol, mpmath.nstr(diff, 3)))
    return checks


SUITES = {
    "classgroup": suite_classgroup,
    "census": suite_census,
    "lseries": suite_lseries,
    "anchor": suite_anchor,
}
