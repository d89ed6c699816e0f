from collections import Counter
from fractions import Fraction

import mpmath
import pytest

from conftest import cached_rhos
from gross_sha.anchor import (
    J_INVARIANTS,
    LOWER,
    UPPER,
    UnsupportedField,
    build_curve,
    count_points,
    icbrt,
    match_epsilon,
    rho_trace,
    split_primes,
)
from gross_sha.numerics import PrecisionContext

CTX = PrecisionContext(50)


@pytest.mark.parametrize("q", sorted(J_INVARIANTS))
def test_j_invariant_from_modular_function(q):
    with mpmath.workprec(300):
        tau = (1 + 1j * mpmath.sqrt(q)) / 2
        j = 1728 * mpmath.kleinj(tau)
        assert abs(j.imag) < 1e-20
        assert int(mpmath.nint(j.real)) == J_INVARIANTS[q]


def test_icbrt():
    assert icbrt(-3375) == -15
    assert icbrt(-262537412640768000) == -640320
    with pytest.raises(ValueError):
        icbrt(10)


@pytest.mark.parametrize("q,cube,t", [(7, -15, 27), (11, -32, 56), (19, -96, 216)])
def test_model_coefficients(q, cube, t):
    E = build_curve(q, UPPER)
    assert E.a4 == Fraction(-cube, 48)
    assert E.a6_coeff == Fraction(t, 864)
    assert build_curve(q, LOWER).a6_coeff == -E.a6_coeff


def test_model_discriminant_is_a_unit():
    # 4 a4^3 + 27 a6^2 with a6^2 = -q (t/864)^2
    for q in J_INVARIANTS:
        E = build_curve(q)
        assert -16 * (4 * E.a4**3 - 27 * q * E.a6_coeff**2) == 1


def test_unsupported_field():
    with pytest.raises(UnsupportedField):
        build_curve(23)


def test_point_counts_by_brute_force():
    # enumerate affine points directly and compare
    E = build_curve(11)
    for P in split_primes(11, 60):
        ell, a4, a6 = E.reduce_at(P)
        n = 1 + sum(1 for x in range(ell) for y in range(ell) if (y * y - x**3 - a4 * x - a6) % ell == 0)
        assert count_points(E, P) == ell + 1 - n


def test_conjugate_primes_swap_traces_up_to_order():
    # for q = 3 mod 8 the conjugate model at P equals the original at Pbar
    up, lo = build_curve(19, UPPER), build_curve(19, LOWER)
    primes = split_primes(19, 300)
    a_up = Counter(count_points(up, P) for P in primes)
    a_lo = Counter(count_points(lo, P) for P in primes)
    assert a_up == a_lo
    for P in primes:
        assert count_points(up, P) == count_points(lo, P.conjugate())


@pytest.mark.parametrize("q,sign,expected", [(7, UPPER, [0]), (11, UPPER, [0]), (11, LOWER, [1]), (43, LOWER, [1])])
def test_selected_epsilon(q, sign, expected):
    m = match_epsilon(q, list(cached_rhos(q)), 500, sign, CTX)
    assert m.matched == expected
    assert m.n_primes >= 10
    assert m.max_trace_residual < mpmath.mpf(10) ** -40


def test_lower_sign_fails_for_seven():
    with pytest.raises(AssertionError):
        match_epsilon(7, list(cached_rhos(7)), 500, LOWER, CTX)


def test_rho_trace_is_integral():
    R = cached_rhos(11)[0]
    for P in split_primes(11, 100):
        t, res = rho_trace(R, P)
        assert res < mpmath.mpf(10) ** -45
        assert t * t <= 4 * P.norm()
