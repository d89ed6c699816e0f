"""Arbitrary-precision helpers built on mpmath.

Real and complex values are plain ``mpmath.mpf`` / ``mpmath.mpc`` objects.  A
:class:`PrecisionContext` fixes the working precision; every function here
evaluates inside that precision and returns immutable mpmath values, so results
can be shared freely between workers.

The Gamma function is evaluated with Spouge's approximation, whose truncation
parameter is chosen from the requested number of digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import mpmath

Real = Union[int, Fraction, mpmath.mpf, str]


class DomainError(ValueError):
    """Argument outside the domain of a special function."""


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision: ``decimal_digits`` target plus ``guard_digits``."""

    decimal_digits: int = 50
    guard_digits: int = 15

    def __post_init__(self):
        if self.decimal_digits < 1 or self.guard_digits < 1:
            raise ValueError("precision digits must be positive")

    @property
    def total_digits(self) -> int:
        return self.decimal_digits + self.guard_digits

    @property
    def prec(self) -> int:
        """Binary precision, at least ceil((P + guard) * log2(10))."""
        return math.ceil(self.total_digits * math.log2(10)) + 4

    def activate(self):
        """Context manager setting mpmath's working precision."""
        return mpmath.workprec(self.prec)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.decimal_digits, self.guard_digits)


DEFAULT_CONTEXT = PrecisionContext()


def to_mpf(x: Real) -> mpmath.mpf:
    """Convert exactly-known input to mpf at the current precision."""
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


@lru_cache(maxsize=None)
def pi(ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    with ctx.activate():
        return +mpmath.pi


@lru_cache(maxsize=None)
def two_pi(ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    with ctx.activate():
        return 2 * pi(ctx)


def exp(z, ctx: PrecisionContext = DEFAULT_CONTEXT):
    with ctx.activate():
        return mpmath.exp(z)


def log(x, ctx: PrecisionContext = DEFAULT_CONTEXT):
    with ctx.activate():
        return mpmath.log(x)


def sqrt_real(x: Real, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    with ctx.activate():
        x = to_mpf(x)
        if x < 0:
            raise DomainError(f"sqrt of negative real {x}")
        return mpmath.sqrt(x)


def spouge_parameter(digits: int) -> int:
    """Smallest integer a with a^(-1/2) (2 pi)^(-(a + 1/2)) below 10^-digits."""
    target = -digits * math.log(10)
    a = 2
    while -0.5 * math.log(a) - (a + 0.5) * math.log(2 * math.pi) > target:
        a += 1
    return a


@lru_cache(maxsize=None)
def _spouge_coefficients(ctx: PrecisionContext):
    a = spouge_parameter(ctx.total_digits)
    # the c_k alternate and reach ~e^a in size; the extra bits absorb that cancellation
    extra = math.ceil(a * math.log2(math.e)) + 16
    with mpmath.workprec(ctx.prec + extra):
        coeffs = [mpmath.sqrt(2 * mpmath.pi)]
        fact = mpmath.mpf(1)
        for k in range(1, a):
            if k > 1:
                fact *= k - 1
            sign = 1 if k % 2 == 1 else -1
            ck = sign * mpmath.power(a - k, k - mpmath.mpf(1) / 2) * mpmath.exp(a - k) / fact
            coeffs.append(ck)
    return a, tuple(coeffs), extra


def _spouge_log_gamma_plus_one(z: mpmath.mpf, ctx: PrecisionContext) -> mpmath.mpf:
    """log Gamma(z + 1) for z > -1."""
    a, coeffs, extra = _spouge_coefficients(ctx)
    with mpmath.workprec(ctx.prec + extra):
        s = coeffs[0]
        for k in range(1, a):
            s += coeffs[k] / (z + k)
        za = z + a
        return (z + mpmath.mpf(1) / 2) * mpmath.log(za) - za + mpmath.log(s)


def _log_gamma_wide(x: Real, ctx: PrecisionContext) -> mpmath.mpf:
    a, _, extra = _spouge_coefficients(ctx)
    with mpmath.workprec(ctx.prec + extra):
        x = to_mpf(x)
        if x <= 0:
            raise DomainError(f"Gamma evaluated at non-positive {x}")
        if x < 1:
            # Gamma(x) = Gamma(x + 1) / x
            return _spouge_log_gamma_plus_one(x, ctx) - mpmath.log(x)
        return _spouge_log_gamma_plus_one(x - 1, ctx)


def log_gamma(x: Real, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """log Gamma(x) for real x > 0."""
    val = _log_gamma_wide(x, ctx)
    with ctx.activate():
        return +val


def gamma(x: Real, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """Gamma(x) for real x > 0 to about 10^-(P + guard - 2) relative error."""
    lg = _log_gamma_wide(x, ctx)
    _, _, extra = _spouge_coefficients(ctx)
    with mpmath.workprec(ctx.prec + extra):
        val = mpmath.exp(lg)
    with ctx.activate():
        return +val


def sum_log_gamma(xs, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpf:
    """Sum of log Gamma(x) over ``xs``, accumulated at widened precision."""
    _, _, extra = _spouge_coefficients(ctx)
    with mpmath.workprec(ctx.prec + extra):
        total = mpmath.mpf(0)
        for x in xs:
            total += _log_gamma_wide(x, ctx)
    return total


def root_of_unity(k: int, n: int, ctx: PrecisionContext = DEFAULT_CONTEXT) -> mpmath.mpc:
    """exp(2 pi i k / n)."""
    k %= n
    if k == 0:
        return mpmath.mpc(1)
    with ctx.activate():
        return mpmath.expjpi(mpmath.mpf(2 * k) / n)
