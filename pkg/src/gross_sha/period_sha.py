"""Gross's period Omega(q) and the analytic order of Sha(E/H).

    Omega(q) = prod_{0<c<q, (c/q)=1} Gamma(c/q) / ((2 pi)^m q^(h/2)),
    m = (q - 1)/4 - h/2,

    #Sha = L(E/H,1) 2^e / (Omega(q)^2 sqrt(q)),
    e = h + 6 - 2r  (q = 7 mod 8),   e = 2h  (q = 3 mod 8).

L(E/H,1) is in the standard normalization, with central point s = 1.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .numerics import DEFAULT_CONTEXT, PrecisionContext, pi, sum_log_gamma
from .quadfield import FieldParams, legendre


class NonPositiveLValue(ArithmeticError):
    pass


class NonSquareShaWarning(UserWarning):
    pass


def m_exponent(q: int, h: int) -> int:
    twice = (q - 1) // 2 - h
    if twice % 2 or twice < 0:
        raise ArithmeticError(f"m = (q-1)/4 - h/2 is not a nonnegative integer for q={q}, h={h}")
    return twice // 2


@dataclass(frozen=True)
class PeriodResult:
    q: int
    h: int
    m: int
    omega: mpmath.mpf
    log_omega: mpmath.mpf


def quadratic_residues(q: int) -> list[int]:
    return [c for c in range(1, q) if legendre(c, q) == 1]


def omega(q: int, h: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> PeriodResult:
    FieldParams(q)
    m = m_exponent(q, h)
    lg = sum_log_gamma((Fraction(c, q) for c in quadratic_residues(q)), ctx)
    with ctx.activate():
        log_om = lg - m * mpmath.log(2 * pi(ctx)) - mpmath.mpf(h) / 2 * mpmath.log(q)
        return PeriodResult(q, h, m, mpmath.exp(log_om), +log_om)


def sha_exponent(q: int, h: int, r: int) -> int:
    if q % 8 == 7:
        return h + 6 - 2 * r
    if q % 8 == 3:
        return 2 * h
    raise ValueError(f"q={q} is not 3 or 7 mod 8")


def is_square(n: int) -> bool:
    import math

    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass
class ShaReport:
    q: int
    mod8: int
    h: int
    j: int
    r: int
    m: int
    epsilon_id: int
    L: mpmath.mpf
    omega: mpmath.mpf
    sha_analytic: mpmath.mpf
    sha_rounded: int
    abs_error: mpmath.mpf
    is_perfect_square: bool
    precision: int
    X: int = 0
    runtime_ms: int = 0
    working_digits: int = 0

    def fractional_digits(self) -> int:
        """Significant digits left after the decimal point of sha_analytic."""
        return self.working_digits - len(str(abs(self.sha_rounded)))

    def integral(self, tol=None) -> bool:
        if tol is None:
            tol = mpmath.mpf(10) ** (-(self.precision // 2))
        # an error below 10^-fractional_digits is rounding noise, not evidence
        if mpmath.mpf(10) ** (-self.fractional_digits()) > tol:
            return False
        return self.sha_rounded > 0 and self.abs_error < tol


def sha_order(
    q: int,
    L,
    period: PeriodResult,
    j: int,
    r: int,
    ctx: PrecisionContext = DEFAULT_CONTEXT,
    epsilon_id: int = 0,
) -> ShaReport:
    """Analytic #Sha(E/H) from L(E/H,1) and the period."""
    with ctx.activate():
        if not L > 0:
            raise NonPositiveLValue(f"L(E/H,1) = {L} is not positive for q={q}")
        e = sha_exponent(q, period.h, r)
        sha = L * mpmath.mpf(2) ** e / (period.omega**2 * mpmath.sqrt(q))
        n = int(mpmath.nint(sha))
        err = abs(sha - n)
    square = is_square(n)
    if not square:
        warnings.warn(f"analytic Sha {n} for q={q} is not a perfect square", NonSquareShaWarning)
    return ShaReport(
        q=q,
        mod8=q % 8,
        h=period.h,
        j=j,
        r=r,
        m=period.m,
        epsilon_id=epsilon_id,
        L=L,
        omega=period.omega,
        sha_analytic=sha,
        sha_rounded=n,
        abs_error=err,
        is_perfect_square=square,
        precision=ctx.decimal_digits,
        working_digits=ctx.decimal_digits,
    )
