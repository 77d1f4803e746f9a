import math

import numpy as np
import pytest
from mpmath import mp

from curved_wigner.entropy import (
    BBM_BOUND,
    QuasiDistribution,
    ZeroMarginalError,
    appendix_integral,
    appendix_integral_quadrature,
    bound_report,
    ensemble_mutual_information,
    flat_entropy_closed_form,
    flat_violation_closed_form,
    lebesgue_position_entropy,
    metric_log_volume,
    momentum_entropy,
    phase_space_entropy,
    phase_space_entropy_details,
    phase_space_normalization,
    position_entropy,
    quasientropy_chain_check,
    quasientropy_discrete,
    quasientropy_two_state,
    total_entropy_mixed,
)
from curved_wigner.geometry import Units
from curved_wigner.quadrature import QuadratureConfig
from curved_wigner.states import (
    OscillatorAdS2GroundParams,
    OscillatorFlatParams,
    ads2_ground_state,
    ads2_momentum_closed,
    flat_oscillator_state,
)
from curved_wigner.wigner import wigner_ads2_j1, wigner_flat_closed, wigner_mixed

LOG2 = math.log(2.0)


# --- discrete quasientropy


def test_quasientropy_basics():
    assert quasientropy_discrete([0.5, 0.5]) == pytest.approx(LOG2)
    assert quasientropy_discrete([1.0, 0.0]) == 0.0
    # a negative weight counts with its sign
    assert quasientropy_discrete([1.5, -0.5]) == pytest.approx(-1.5 * math.log(1.5) + 0.5 * math.log(0.5))
    assert not QuasiDistribution([1.5, -0.5]).is_probability
    with pytest.raises(ValueError):
        QuasiDistribution([0.5, 0.6])
    with pytest.raises(ValueError):
        QuasiDistribution([])


def test_two_state_curve():
    assert quasientropy_two_state(0.0) == 0.0
    assert quasientropy_two_state(0.5) == LOG2
    assert quasientropy_two_state(1.0) == 0.0
    # symmetric about 1/2, continuous through 0
    for p in (-0.7, 0.2, 1.9):
        assert quasientropy_two_state(p) == pytest.approx(quasientropy_two_state(1 - p), abs=1e-15)
    assert abs(quasientropy_two_state(1e-12)) < 1e-10


def test_chain_rule_random_quasi_joints():
    rng = np.random.default_rng(7)
    for _ in range(100):
        P = rng.normal(size=(rng.integers(2, 6), rng.integers(2, 6)))
        P /= P.sum()
        try:
            _, _, d = quasientropy_chain_check(P)
        except ZeroMarginalError:
            continue
        assert abs(d) < 1e-12


def test_chain_rule_zero_marginal():
    with pytest.raises(ZeroMarginalError):
        quasientropy_chain_check([[0.5, 0.5], [0.5, -0.5]])


# --- closed forms


def _mp_laguerre(n, x):
    return mp.fsum((-1) ** k * mp.binomial(n, k) * x**k / mp.factorial(k) for k in range(n + 1))


def _mp_flat_entropy(n):
    # -(1/2) int_0^inf f log|f| du, f = 2 (-1)^n L_n(2u) e^{-u}, split at the roots
    mp.dps = 30

    def g(u):
        f = 2 * (-1) ** n * _mp_laguerre(n, 2 * u) * mp.exp(-u)
        return f * mp.log(abs(f)) if f != 0 else mp.mpf(0)

    guesses = np.polynomial.laguerre.lagroots([0] * n + [1]) / 2 if n else []
    roots = [mp.findroot(lambda t: _mp_laguerre(n, 2 * t), mp.mpf(r)) for r in guesses]
    return float(-mp.quad(g, [0] + roots + [mp.inf]) / 2)


@pytest.mark.parametrize("n", range(6))
def test_flat_entropy_closed_form_vs_mpmath(n):
    assert flat_entropy_closed_form(n) == pytest.approx(_mp_flat_entropy(n), abs=1e-11)


def test_flat_ground_and_first_excited_values():
    assert flat_entropy_closed_form(0) == 1 - LOG2
    mp.dps = 30
    ref = 1 - mp.log(2) + 2 / mp.sqrt(mp.e) * mp.ei(0.5)
    assert flat_entropy_closed_form(1) == pytest.approx(float(ref), abs=1e-13)
    ref_v = -2 + mp.log(4) - 2 / mp.sqrt(mp.e) * mp.ei(0.5) + 2 * mp.euler
    assert flat_violation_closed_form() == pytest.approx(float(ref_v), abs=1e-14)
    with pytest.raises(ValueError):
        flat_entropy_closed_form(-1)


@pytest.mark.parametrize("n", range(1, 6))
def test_appendix_integral(n):
    r = appendix_integral_quadrature(n, QuadratureConfig(1e-13, 1e-13))
    assert r.converged
    assert appendix_integral(n) == pytest.approx(r.value, abs=1e-10)


# --- phase-space entropy


@pytest.mark.parametrize("n", [0, 1, 2])
def test_radial_vs_2d(n):
    W = wigner_flat_closed(OscillatorFlatParams(n))
    a = phase_space_entropy(W, method="radial")
    b = phase_space_entropy_details(W, method="2d")
    assert b.converged
    assert a == pytest.approx(flat_entropy_closed_form(n), abs=1e-11)
    assert b.value == pytest.approx(a, abs=1e-7)


def test_radial_requires_flat_closed():
    with pytest.raises(ValueError):
        phase_space_entropy(wigner_ads2_j1(1.0), method="radial")
    with pytest.raises(ValueError):
        phase_space_entropy(wigner_ads2_j1(1.0), method="bogus")


def test_entropy_independent_of_alpha_and_hbar():
    ref = flat_entropy_closed_form(2)
    for alpha, hbar in ((0.3, 1.0), (2.0, 3.0)):
        p = OscillatorFlatParams.from_alpha(2, alpha, Units(hbar=hbar))
        assert phase_space_entropy(wigner_flat_closed(p)) == pytest.approx(ref, abs=1e-11)


def test_normalization_flat_and_ads2():
    for W in (wigner_flat_closed(OscillatorFlatParams(3)), wigner_ads2_j1(1.0)):
        assert phase_space_normalization(W) == pytest.approx(1.0, abs=1e-8)


# --- position and momentum entropies


def test_flat_ground_position_momentum():
    s = flat_oscillator_state(OscillatorFlatParams(0))
    hx = 0.5 * math.log(math.pi * math.e)
    assert position_entropy(s) == pytest.approx(hx, abs=1e-12)
    assert lebesgue_position_entropy(s) == pytest.approx(hx, abs=1e-12)
    assert metric_log_volume(s) == 0.0
    # H_X + H_P saturates the bound for a Gaussian
    assert position_entropy(s) + momentum_entropy(s) == pytest.approx(BBM_BOUND, abs=1e-10)


def test_ads2_j1_position_momentum():
    R = 1.7
    s = ads2_ground_state(OscillatorAdS2GroundParams(1, R))
    c = math.log(2 * math.pi * R)
    assert position_entropy(s) == pytest.approx(-1.5 + LOG2 + c, abs=1e-9)
    rho = lambda p: np.abs(ads2_momentum_closed(1, R)(p)) ** 2  # noqa: E731
    assert momentum_entropy(s, momentum_density=rho) == pytest.approx(0.5 + LOG2 - c, abs=1e-9)
    assert momentum_entropy(s) == pytest.approx(0.5 + LOG2 - c, abs=1e-8)


def test_planck_length_cancels_in_sum():
    a = ads2_ground_state(OscillatorAdS2GroundParams(1, 1.0))
    b = ads2_ground_state(OscillatorAdS2GroundParams(1, 1.0, units=Units(planck_length=3.0)))
    assert position_entropy(a) - position_entropy(b) == pytest.approx(math.log(3.0), abs=1e-10)
    sa = position_entropy(a) + momentum_entropy(a)
    sb = position_entropy(b) + momentum_entropy(b)
    assert sb == pytest.approx(sa, abs=1e-8)


def test_bound_report_flat_n1():
    p = OscillatorFlatParams(1)
    r = bound_report(flat_oscillator_state(p), wigner_flat_closed(p))
    assert r.bbm_satisfied
    assert r.mutual_info_defect == pytest.approx(flat_violation_closed_form(), abs=1e-8)
    assert r.mutual_info_defect < 0
    d = r.to_dict()
    assert d["diagnostics"]["phase_space_method"] == "radial"
    assert '"H_phase_space"' in r.to_json()


# --- mixtures


def test_total_entropy_mixed():
    hvn, tot = total_entropy_mixed([0.5, 0.5], [0.3, 0.9])
    assert hvn == pytest.approx(LOG2)
    assert tot == pytest.approx(LOG2 + 0.6)
    with pytest.raises(ValueError):
        total_entropy_mixed([0.5, 0.6], [0, 0])
    with pytest.raises(ValueError):
        total_entropy_mixed([1.0], [0, 0])


def test_ensemble_mutual_information():
    W0 = wigner_flat_closed(OscillatorFlatParams(0))
    W1 = wigner_flat_closed(OscillatorFlatParams(1))
    assert ensemble_mutual_information(W0, [1.0, 0.0], [W0, W1]) == 0.0
    M = wigner_mixed([(0.5, W0), (0.5, W1)])
    h = [flat_entropy_closed_form(0), flat_entropy_closed_form(1)]
    i = ensemble_mutual_information(M, [0.5, 0.5], [W0, W1], QuadratureConfig(1e-8, 1e-8), h)
    assert math.isfinite(i)
    assert 0.0 < i < LOG2 + 0.1
