"""Central values L(rho*chi, 1) and the product L(E/H, 1).

With Lambda(s) = C^s Gamma(s) L(s), C = sqrt(q N(f)) / (2 pi), and
Lambda(psi, s) = W Lambda(conj psi, 2 - s), splitting the Mellin integral of
Lambda(1) at any cutoff delta gives

    L(psi, 1) = S(delta) + W * conj(S(1/delta)),
    S(delta)  = sum_n c(n)/n * exp(-n delta / C).

Two cutoffs give a 2x2 linear system for (L, W); a third cutoff checks it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath

from .classgroup import ClassCharacter
from .heckechar import CoefficientSeries, Grossencharacter, coefficients, grossencharacters, local_data
from .numerics import DEFAULT_CONTEXT, PrecisionContext, pi

DEFAULT_CUTOFFS = (Fraction(1), Fraction(5, 4))
FALLBACK_CUTOFF = Fraction(3, 2)


class RootNumberError(ArithmeticError):
    pass


@dataclass(frozen=True)
class AFEConfig:
    C: mpmath.mpf
    X: int
    ctx: PrecisionContext
    cutoffs: tuple = DEFAULT_CUTOFFS
    check_cutoff: Fraction = FALLBACK_CUTOFF


def scale(q: int, conductor_norm: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    with ctx.activate():
        return mpmath.sqrt(mpmath.mpf(q * conductor_norm)) / (2 * pi(ctx))


def truncation_bound(C, ctx: PrecisionContext, min_cutoff) -> int:
    """X with the neglected tail below 10^-(P + guard) for every cutoff used."""
    c = float(C)
    digits = ctx.total_digits
    return math.ceil(c * (digits * math.log(10) + 3 * math.log(c + 2) + 20) / float(min_cutoff)) + 1


def afe_config(R: Grossencharacter, ctx: Optional[PrecisionContext] = None, X: Optional[int] = None) -> AFEConfig:
    ctx = ctx or R.ctx
    C = scale(R.params.q, R.conductor.norm(), ctx)
    deltas = list(DEFAULT_CUTOFFS) + [FALLBACK_CUTOFF]
    min_cut = min(min(deltas), min(1 / d for d in deltas))
    if X is None:
        X = truncation_bound(C, ctx, min_cut)
    return AFEConfig(C, X, ctx)


def partial_sum(c: CoefficientSeries, delta, C, X: Optional[int] = None) -> mpmath.mpc:
    """sum_{n <= X} c(n)/n exp(-n delta / C), in ascending n."""
    X = c.X if X is None else X
    d = mpmath.mpf(delta.numerator) / delta.denominator if isinstance(delta, Fraction) else mpmath.mpf(delta)
    step = mpmath.exp(-d / C)
    total = mpmath.mpc(0)
    w = mpmath.mpf(1)
    for n in range(1, X + 1):
        w *= step
        cn = c[n]
        if cn:
            total += cn * w / n
    return total


@dataclass
class CharResult:
    chi: ClassCharacter
    L: mpmath.mpc
    W: mpmath.mpc
    unitarity_residual: mpmath.mpf
    cutoff_residual: mpmath.mpf

    @property
    def label(self) -> str:
        return self.chi.label()


def _solve(S, deltas):
    """(L, W) from the cutoffs deltas[0], deltas[1]."""
    d1, d2 = deltas
    A1, A2 = mpmath.conj(S[1 / d1]), mpmath.conj(S[1 / d2])
    den = A2 - A1
    if abs(den) < mpmath.mpf(10) ** (-(mpmath.mp.dps // 2)):
        return None
    W = (S[d1] - S[d2]) / den
    return S[d1] + W * A1, W


def l_value(c: CoefficientSeries, cfg: AFEConfig, chi: Optional[ClassCharacter] = None) -> CharResult:
    """L(psi, 1) and the root number W for the series c."""
    with cfg.ctx.activate():
        d1, d2 = cfg.cutoffs
        d3 = cfg.check_cutoff
        deltas = {d1, d2, d3, 1 / d1, 1 / d2, 1 / d3}
        S = {d: partial_sum(c, d, cfg.C, cfg.X) for d in sorted(deltas)}
        first = _solve(S, (d1, d2))
        second = _solve(S, (d1, d3))
        if first is None:
            first, second = second, _solve(S, (d2, d3))
        if first is None or second is None:
            raise RootNumberError("root-number solve degenerate")
        L, W = first
        L2, _ = second
        return CharResult(chi, L, W, abs(abs(W) - 1), abs(L - L2))


@dataclass
class LSeriesResult:
    q: int
    per_char: list
    product: mpmath.mpf
    X: int
    epsilon_id: int = 0

    def max_unitarity_residual(self):
        return max(r.unitarity_residual for r in self.per_char)

    def max_cutoff_residual(self):
        return max(r.cutoff_residual for r in self.per_char)


def l_product_for(R: Grossencharacter, ctx: Optional[PrecisionContext] = None, X: Optional[int] = None) -> LSeriesResult:
    """prod over chi of |L(rho*chi, 1)|^2 = L(E/H, 1)."""
    cfg = afe_config(R, ctx, X)
    local = local_data(R, cfg.X)
    results = []
    with cfg.ctx.activate():
        product = mpmath.mpf(1)
        for chi in R.group.characters():
            c = coefficients(R, chi, cfg.X, local)
            try:
                res = l_value(c, cfg, chi)
            except RootNumberError as exc:
                raise RootNumberError(f"q={R.params.q} chi={chi.label()}: {exc}") from exc
            results.append(res)
            product *= abs(res.L) ** 2
    return LSeriesResult(R.params.q, results, product, cfg.X, R.epsilon.ident)


def l_product(q: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> list[LSeriesResult]:
    """L(E/H, 1) for every admissible eps of q (one entry for q = 7 mod 8)."""
    return [l_product_for(R, ctx) for R in grossencharacters(q, ctx)]
