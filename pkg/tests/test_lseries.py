from fractions import Fraction

import mpmath
import pytest

from conftest import cached_rhos
from gross_sha.heckechar import CoefficientSeries
from gross_sha.lseries import afe_config, l_product_for, partial_sum, scale, truncation_bound
from gross_sha.numerics import PrecisionContext

CTX = PrecisionContext(50)
TOL = mpmath.mpf(10) ** -45

# first derivation at P = 50, frozen
L7 = ("0.506673803548482469180543176813889881630682871", "-0.228720778057816523888112454467611617246632467")
L11 = "0.932324493193654136849457877004846317112733873"


def test_partial_sum_of_delta_series():
    c = CoefficientSeries(5, (0, mpmath.mpc(1), 0, 0, 0, 0))
    with CTX.activate():
        C = mpmath.mpf(3)
        assert abs(partial_sum(c, Fraction(1), C) - mpmath.exp(-mpmath.mpf(1) / 3)) < TOL


def test_partial_sum_geometric():
    X = 60
    c = CoefficientSeries(X, (0,) + tuple(mpmath.mpc(1) for _ in range(X)))
    with CTX.activate():
        C = mpmath.mpf(2)
        ref = mpmath.fsum(mpmath.exp(-mpmath.mpf(n) / 2) / n for n in range(1, X + 1))
        assert abs(partial_sum(c, Fraction(1), C) - ref) < TOL


def test_scale_and_bound():
    with CTX.activate():
        C = scale(7, 4, CTX)
        assert abs(C - mpmath.sqrt(28) / (2 * mpmath.pi)) < TOL
        assert truncation_bound(C, CTX, Fraction(2, 3)) > truncation_bound(C, CTX, Fraction(1))
        assert truncation_bound(C, CTX.doubled(), Fraction(2, 3)) > truncation_bound(C, CTX, Fraction(2, 3))


def test_frozen_value_q7():
    res = l_product_for(cached_rhos(7)[0], CTX)
    with CTX.activate():
        (r,) = res.per_char
        L7v = mpmath.mpc(*L7)
        assert abs(r.L - L7v) < TOL
        # the root number comes out algebraic: (sqrt 7 - 3i)/4
        assert abs(r.W - (mpmath.sqrt(7) - 3j) / 4) < TOL
        assert abs(res.product - abs(L7v) ** 2) < TOL


def test_frozen_value_q11():
    res = l_product_for(cached_rhos(11)[0], CTX)
    with CTX.activate():
        (r,) = res.per_char
        assert abs(r.L - mpmath.mpf(L11) * (1 + 1j)) < TOL
        assert abs(r.W - 1j) < TOL


@pytest.mark.parametrize("q", [7, 23, 11])
def test_doubling_truncation_is_stable(q):
    R = cached_rhos(q)[0]
    cfg = afe_config(R, CTX)
    a = l_product_for(R, CTX)
    b = l_product_for(R, CTX, X=2 * cfg.X)
    bound = mpmath.mpf(10) ** -(CTX.decimal_digits + CTX.guard_digits - 5)
    with CTX.activate():
        for x, y in zip(a.per_char, b.per_char):
            assert abs(x.L - y.L) < bound


def test_short_truncation_is_detected():
    # an under-resolved series breaks |W| = 1 and cutoff agreement
    R = cached_rhos(23)[0]
    res = l_product_for(R, CTX, X=40)
    assert res.max_unitarity_residual() > mpmath.mpf(10) ** -20 or res.max_cutoff_residual() > mpmath.mpf(10) ** -20


def test_deterministic_digits():
    R = cached_rhos(47)[0]
    a = l_product_for(R, CTX)
    b = l_product_for(R, CTX)
    with CTX.activate():
        assert mpmath.nstr(a.product, 60) == mpmath.nstr(b.product, 60)
        assert [mpmath.nstr(r.L, 60) for r in a.per_char] == [mpmath.nstr(r.L, 60) for r in b.per_char]


@pytest.mark.parametrize("q", [7, 23, 47, 11, 59])
def test_root_numbers_unitary(q):
    for R in cached_rhos(q):
        res = l_product_for(R, CTX)
        assert res.max_unitarity_residual() < mpmath.mpf(10) ** -40
        assert res.max_cutoff_residual() < mpmath.mpf(10) ** -40
        assert res.product > 0
