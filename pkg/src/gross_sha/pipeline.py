"""End-to-end computation of one row: class group, rho, L(E/H,1), Omega, Sha."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

import mpmath

from .classgroup import ClassGroup, class_of, enumerate_class_group
from .heckechar import Grossencharacter, distinguished_prime_above_two, grossencharacters
from .lseries import LSeriesResult, l_product_for
from .numerics import PrecisionContext
from .period_sha import PeriodResult, ShaReport, omega, sha_exponent, sha_order
from .quadfield import FieldParams

# eps candidate matching the corrected (lower half-plane) curve for every
# class-number-one q = 3 mod 8; used to break the tie when h > 1
CORRECTED_SIGN_EPSILON_ID = 1


class EpsilonAmbiguity(RuntimeError):
    pass


def j_and_r(q: int, G: ClassGroup) -> tuple[int, int]:
    """Order j of the class of p above 2 and r = h/j; 2 is inert for q = 3 mod 8 (j = 1)."""
    if q % 8 == 7:
        return G.order_of_class(class_of(distinguished_prime_above_two(FieldParams(q))))
    return 1, G.h


@dataclass
class CandidateResult:
    rho: Grossencharacter
    lseries: LSeriesResult
    report: ShaReport


@dataclass
class QResult:
    q: int
    group: ClassGroup
    period: PeriodResult
    candidates: list
    selected: int
    selection_rule: str
    anchor: Optional[object] = None
    runtime_ms: int = 0
    started_at: float = 0.0
    finished_at: float = 0.0
    work_ctx: Optional[PrecisionContext] = None

    @property
    def report(self) -> ShaReport:
        return self.candidates[self.selected].report

    @property
    def lseries(self) -> LSeriesResult:
        return self.candidates[self.selected].lseries


def _select(q: int, G: ClassGroup, cands: list, ctx: PrecisionContext, with_anchor: bool):
    if len(cands) == 1:
        return 0, "unique", None
    anchor = None
    if G.h == 1 and with_anchor:
        from .anchor import LOWER, match_epsilon

        anchor = match_epsilon(q, [c.rho for c in cands], sign_choice=LOWER, ctx=ctx)
        ident = anchor.matched[0]
        return next(i for i, c in enumerate(cands) if c.rho.epsilon.ident == ident), "anchor", anchor
    tol = mpmath.mpf(10) ** (-(ctx.decimal_digits // 2))
    passing = [i for i, c in enumerate(cands) if c.report.sha_rounded > 0 and c.report.abs_error < tol]
    if not passing:
        best = min(range(len(cands)), key=lambda i: cands[i].report.abs_error)
        return best, "nearest-integer", None
    values = {cands[i].report.sha_rounded for i in passing}
    if len(values) > 1:
        raise EpsilonAmbiguity(f"q={q}: eps candidates give different integral Sha values {sorted(values)}")
    for i in passing:
        if cands[i].rho.epsilon.ident == CORRECTED_SIGN_EPSILON_ID:
            return i, "integrality+sign-rule", None
    return passing[0], "integrality", None


PROBE_CONTEXT = PrecisionContext(12, 8)


def sha_digits(q: int) -> int:
    """Decimal digits before the point of the analytic Sha, from a cheap low-precision pass."""
    G = enumerate_class_group(q)
    j, r = j_and_r(q, G)
    period = omega(q, G.h, PROBE_CONTEXT)
    R = grossencharacters(q, PROBE_CONTEXT)[0]
    res = l_product_for(R, PROBE_CONTEXT)
    with PROBE_CONTEXT.activate():
        e = sha_exponent(q, G.h, r)
        sha = res.product * mpmath.mpf(2) ** e / (period.omega**2 * mpmath.sqrt(q))
        return max(0, int(mpmath.ceil(mpmath.log10(sha)))) + 1


def working_context(q: int, ctx: PrecisionContext) -> PrecisionContext:
    """ctx widened so that P digits survive after the decimal point of #Sha."""
    return PrecisionContext(ctx.decimal_digits + sha_digits(q), ctx.guard_digits)


def compute(q: int, ctx: PrecisionContext, with_anchor: bool = True, adaptive: bool = True) -> QResult:
    """Run the full pipeline for one q, every eps candidate included.

    With ``adaptive`` the working precision is ctx plus the number of digits of
    #Sha, so the integrality test sees P digits after the point.  Reports keep
    ``precision = ctx.decimal_digits``.
    """
    FieldParams(q)
    start = time.time()
    t0 = time.perf_counter()
    work = working_context(q, ctx) if adaptive else ctx
    G = enumerate_class_group(q)
    j, r = j_and_r(q, G)
    period = omega(q, G.h, work)
    cands = []
    for R in grossencharacters(q, work):
        res = l_product_for(R, work)
        rep = sha_order(q, res.product, period, j, r, work, epsilon_id=R.epsilon.ident)
        rep.X = res.X
        rep.precision = ctx.decimal_digits
        cands.append(CandidateResult(R, res, rep))
    selected, rule, anchor = _select(q, G, cands, ctx, with_anchor)
    if anchor is None and G.h == 1 and q % 8 == 7 and with_anchor:
        from .anchor import match_epsilon

        anchor = match_epsilon(q, [cands[0].rho], ctx=work)
    elapsed = int((time.perf_counter() - t0) * 1000)
    for c in cands:
        c.report.runtime_ms = elapsed
    return QResult(q, G, period, cands, selected, rule, anchor, elapsed, start, time.time(), work)
