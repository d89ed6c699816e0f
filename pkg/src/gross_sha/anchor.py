"""Explicit CM curve for class number one, and Frobenius-trace matching.

For h(-q) = 1 the twisted Gross curve is

    y^2 = x^3 - (j^(1/3)/48) x + sqrt(j - 1728)/864,

with j = j(O_K) a rational integer, j^(1/3) its real cube root, and
j - 1728 = -q t^2, so sqrt(j - 1728) = +-t sqrt(-q).  Its discriminant is
identically 1 (up to the model's denominators), so it has good reduction at
every prime of K above ell >= 5.

Point counts at split primes are compared with the traces of rho, which pins
the finite part eps (and checks the whole character construction).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .heckechar import Grossencharacter, grossencharacters
from .lseries import l_product_for
from .numerics import DEFAULT_CONTEXT, PrecisionContext
from .quadfield import FieldParams, QuadIdeal, Splitting, coprime, legendre, prime_above, primes_up_to

# j(O_K) for the class-number-one fields Q(sqrt(-q)), q = 3 mod 4, q > 3
J_INVARIANTS = {
    7: -3375,
    11: -32768,
    19: -884736,
    43: -884736000,
    67: -147197952000,
    163: -262537412640768000,
}

UPPER, LOWER = "upper", "lower"


class UnsupportedField(ValueError):
    pass


def icbrt(n: int) -> int:
    """Exact integer cube root; raises if n is not a cube."""
    s = -1 if n < 0 else 1
    m = abs(n)
    r = round(m ** (1 / 3))
    while r**3 > m:
        r -= 1
    while (r + 1) ** 3 <= m:
        r += 1
    if r**3 != m:
        raise ValueError(f"{n} is not a perfect cube")
    return s * r


def default_sign(q: int) -> str:
    """Upper half-plane root for q = 7 mod 8; the corrected (lower) one for q = 3 mod 8."""
    return UPPER if q % 8 == 7 else LOWER


@dataclass(frozen=True)
class CurveOverK:
    """y^2 = x^3 + a4 x + a6 with a4 in Q and a6 = a6_coeff * sqrt(-q)."""

    q: int
    j: int
    a4: Fraction
    a6_coeff: Fraction
    sign_choice: str

    def reduce_at(self, P: QuadIdeal) -> tuple[int, int, int]:
        """(ell, a4 mod ell, a6 mod ell) for a degree-one prime P = [ell, (b + sqrt(-q))/2]."""
        ell = P.a
        if P.content != 1 or ell < 5:
            raise ValueError(f"cannot reduce at {P}")
        s = -P.b % ell  # sqrt(-q) = -b mod P
        a4 = self.a4.numerator * pow(self.a4.denominator, -1, ell) % ell
        a6 = self.a6_coeff.numerator * s * pow(self.a6_coeff.denominator, -1, ell) % ell
        return ell, a4, a6


def build_curve(q: int, sign_choice: str | None = None) -> CurveOverK:
    if q not in J_INVARIANTS:
        raise UnsupportedField(f"explicit model only for class number one, not q={q}")
    sign_choice = sign_choice or default_sign(q)
    if sign_choice not in (UPPER, LOWER):
        raise ValueError(sign_choice)
    j = J_INVARIANTS[q]
    cube = icbrt(j)
    t2, rem = divmod(1728 - j, q)
    t = math.isqrt(t2)
    if rem or t * t != t2:
        raise ValueError(f"j - 1728 = {j - 1728} is not -q times a square")
    sign = 1 if sign_choice == UPPER else -1
    return CurveOverK(q, j, Fraction(-cube, 48), Fraction(sign * t, 864), sign_choice)


def count_points(E: CurveOverK, P: QuadIdeal) -> int:
    """a_P = N(P) + 1 - #E(O_K/P) by direct enumeration over F_ell."""
    ell, a4, a6 = E.reduce_at(P)
    disc = (4 * a4**3 + 27 * a6 * a6) % ell
    if disc == 0:
        raise ValueError(f"bad reduction at {P}")
    total = 0
    for x in range(ell):
        total += legendre(x * x * x + a4 * x + a6, ell)
    a = -total
    if a * a > 4 * ell:
        raise AssertionError(f"Hasse bound violated at {P}: a={a}")
    return a


def split_primes(q: int, bound: int) -> list[QuadIdeal]:
    """Degree-one primes above split ell in [5, bound)."""
    params = FieldParams(q)
    out = []
    for ell in primes_up_to(bound - 1):
        if ell < 5 or ell == q:
            continue
        kind, ps = prime_above(params, ell)
        if kind is Splitting.SPLIT:
            out.extend(ps)
    return out


@dataclass
class TraceMatch:
    q: int
    sign_choice: str
    rows: list = field(default_factory=list)  # (P, a_P, trace per eps id)
    matched: list = field(default_factory=list)  # eps ids matching every prime
    max_trace_residual: mpmath.mpf = mpmath.mpf(0)

    @property
    def n_primes(self) -> int:
        return len(self.rows)


def rho_trace(R: Grossencharacter, P: QuadIdeal) -> tuple[int, mpmath.mpf]:
    """(nearest integer, residual) of rho(P) + conj(rho(P))."""
    with R.ctx.activate():
        v = R(P)
        tr = 2 * v.real
        n = int(mpmath.nint(tr))
        return n, abs(tr - n)


def match_epsilon(
    q: int,
    candidates: list[Grossencharacter] | None = None,
    primes_bound: int = 500,
    sign_choice: str | None = None,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
) -> TraceMatch:
    """Compare point counts with rho-traces for each eps candidate."""
    E = build_curve(q, sign_choice)
    if candidates is None:
        candidates = grossencharacters(q, ctx)
    out = TraceMatch(q, E.sign_choice)
    ok = {R.epsilon.ident: True for R in candidates}
    worst = mpmath.mpf(0)
    for P in split_primes(q, primes_bound):
        if not all(coprime(P, R.conductor) for R in candidates):
            continue
        a = count_points(E, P)
        traces = {}
        for R in candidates:
            t, res = rho_trace(R, P)
            worst = max(worst, res)
            traces[R.epsilon.ident] = t
            if t != a:
                ok[R.epsilon.ident] = False
        out.rows.append((P, a, traces))
    out.matched = [i for i, good in ok.items() if good]
    out.max_trace_residual = worst
    if not out.matched:
        raise AssertionError(f"no eps candidate matches the point counts for q={q} ({E.sign_choice})")
    return out


@dataclass
class AnchorReport:
    q: int
    matches: dict  # sign_choice -> TraceMatch
    selected: dict  # sign_choice -> eps id
    abs_L: dict  # sign_choice -> |L(rho_selected, 1)|


def anchor_report(q: int, primes_bound: int = 500, ctx: PrecisionContext = DEFAULT_CONTEXT) -> AnchorReport:
    """Trace matching and |L(rho, 1)| of the matched character, per sign choice.

    Both signs are tried for q = 3 mod 8.  For q = 7 mod 8 the conductor p^2 is
    tied to the upper root, so only that sign is matched.
    """
    candidates = grossencharacters(q, ctx)
    by_id = {R.epsilon.ident: R for R in candidates}
    matches, selected, abs_L = {}, {}, {}
    signs = (UPPER, LOWER) if q % 8 == 3 else (UPPER,)
    for sign in signs:
        m = match_epsilon(q, candidates, primes_bound, sign, ctx)
        matches[sign] = m
        selected[sign] = m.matched[0]
        res = l_product_for(by_id[m.matched[0]], ctx)
        with ctx.activate():
            abs_L[sign] = abs(res.per_char[0].L)
    return AnchorReport(q, matches, selected, abs_L)
