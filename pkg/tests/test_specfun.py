import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from scipy import special

from curved_wigner.specfun import (
    EULER_GAMMA,
    RootPolishingError,
    exp_integral_ei,
    hermite,
    hermite_coefficients,
    incomplete_gamma_upper,
    laguerre,
    laguerre_coefficients,
    laguerre_derivative,
    laguerre_roots,
    log_gamma,
)

mp.mp.dps = 40


def _mp_laguerre(n, t):
    # explicit sum; mpmath's hypergeometric form struggles exactly at a root
    return mp.fsum((-1) ** k * mp.binomial(n, k) * t**k / mp.factorial(k) for k in range(n + 1))


def test_euler_gamma():
    assert EULER_GAMMA == pytest.approx(float(mp.euler), abs=1e-16)


@pytest.mark.parametrize("n", [0, 1, 2, 5, 12])
def test_hermite_matches_scipy(n):
    x = np.linspace(-4, 4, 41)
    np.testing.assert_allclose(hermite(n, x), special.eval_hermite(n, x), rtol=1e-12, atol=1e-12)


def test_hermite_low_orders():
    assert hermite(0, 0.3) == 1.0
    assert hermite(1, 0.3) == pytest.approx(0.6)
    assert hermite(2, 0.5) == pytest.approx(4 * 0.25 - 2)


@pytest.mark.parametrize("n", [0, 1, 3, 7, 20])
def test_laguerre_matches_mpmath(n):
    for x in (0.0, 0.4, 2.5, 11.0, 37.0):
        ref = float(mp.laguerre(n, 0, x))
        assert laguerre(n, x) == pytest.approx(ref, rel=1e-11, abs=1e-11)


def test_negative_order_rejected():
    with pytest.raises(ValueError):
        hermite(-1, 0.0)
    with pytest.raises(ValueError):
        laguerre(-2, 0.0)


def test_laguerre_derivative():
    x = np.array([0.3, 1.7, 6.0])
    n = 6
    num = np.array([float(mp.diff(lambda t: mp.laguerre(n, 0, t), v)) for v in x])
    np.testing.assert_allclose(laguerre_derivative(n, x), num, rtol=1e-11)
    assert np.all(laguerre_derivative(0, x) == 0)


def test_coefficients_reproduce_recurrences():
    x = np.linspace(-2, 3, 17)
    for n in range(8):
        np.testing.assert_allclose(hermite_coefficients(n)(x), hermite(n, x), rtol=1e-12, atol=1e-10)
        np.testing.assert_allclose(laguerre_coefficients(n)(x), laguerre(n, x), rtol=1e-12, atol=1e-12)
    # L_2 = 1 - 2x + x^2/2
    assert laguerre_coefficients(2).coefficients == (1.0, -2.0, 0.5)
    assert hermite_coefficients(3).coefficients == (0.0, -12.0, 0.0, 8.0)
    assert laguerre_coefficients(3).coefficients[3] == float(Fraction(-1, 6))


@pytest.mark.parametrize("n", [1, 2, 5, 10, 15, 25, 40])
def test_laguerre_roots_against_mpmath(n):
    r = laguerre_roots(n)
    assert r.shape == (n,)
    assert np.all(np.diff(r) > 0)
    for v in r:
        ref = mp.findroot(lambda t: _mp_laguerre(n, t), mp.mpf(v), tol=mp.mpf(10) ** -70, verify=False)
        assert abs(v - float(ref)) <= 4e-15 * max(1.0, abs(v))


def test_laguerre_roots_small_residual_low_order():
    # rounding floor of the recurrence is ~|L_n'(r)| ulp(r), which stays below
    # 1e-12 for small n
    for n in range(1, 7):
        assert np.max(np.abs(laguerre(n, laguerre_roots(n)))) < 1e-12


def test_laguerre_roots_rejects_zero():
    with pytest.raises(ValueError):
        laguerre_roots(0)


def test_root_polishing_error_is_arithmetic():
    assert issubclass(RootPolishingError, ArithmeticError)


@pytest.mark.parametrize(
    "x", [-80.0, -5.0, -1.0, -0.3, -1e-6, 1e-8, 0.5, 1.0, 5.0, 39.0, 41.0, 120.0, 600.0]
)
def test_ei_against_mpmath(x):
    assert exp_integral_ei(x) == pytest.approx(float(mp.ei(x)), rel=1e-13)


def test_ei_vectorized_and_zero():
    v = exp_integral_ei(np.array([0.5, 2.0]))
    assert v.shape == (2,)
    assert v[0] == pytest.approx(float(mp.ei(0.5)), rel=1e-14)
    with pytest.raises(ValueError):
        exp_integral_ei(0.0)


@pytest.mark.parametrize("k", [1, 2, 4, 9])
def test_incomplete_gamma(k):
    for x in (0.0, 0.25, 3.0, 17.5):
        ref = float(mp.gammainc(k, x))
        assert incomplete_gamma_upper(k, x) == pytest.approx(ref, rel=1e-13)
    with pytest.raises(ValueError):
        incomplete_gamma_upper(0, 1.0)


def test_log_gamma():
    assert log_gamma(4.5) == pytest.approx(math.log(math.gamma(4.5)), rel=1e-15)
    with pytest.raises(ValueError):
        log_gamma(0.0)
