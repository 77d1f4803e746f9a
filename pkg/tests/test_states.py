import math

import numpy as np
import pytest

from curved_wigner.geometry import Units, linear_map, sinh_map, tan_map
from curved_wigner.quadrature import integrate_real_line
from curved_wigner.states import (
    GridTooCoarseError,
    OscillatorAdS2GroundParams,
    OscillatorFlatParams,
    ads2_ground_state,
    ads2_momentum_closed,
    flat_oscillator_state,
    hamiltonian_residual,
    momentum_cutoff,
    momentum_representation,
    reparametrize_state,
)


@pytest.mark.parametrize("n", range(6))
def test_flat_states_normalized(n):
    s = flat_oscillator_state(OscillatorFlatParams(n))
    assert s.normalization_check == pytest.approx(1.0, abs=1e-12)
    assert s.parity == (1 if n % 2 == 0 else -1)


def test_flat_state_far_tail_is_zero_not_nan():
    s = flat_oscillator_state(OscillatorFlatParams(5))
    assert s(1e6) == 0.0 and s(-1e300) == 0.0


@pytest.mark.parametrize("j", [1, 2, 3, 6])
def test_ads2_states_normalized(j):
    s = ads2_ground_state(OscillatorAdS2GroundParams(j, 1.3))
    assert s.normalization_check == pytest.approx(1.0, abs=1e-10)


def test_ads2_parameter_constraints():
    p = OscillatorAdS2GroundParams(2, 1.0)
    assert p.inv_lambda == 3.5
    assert p.Lambda_from_coupling == pytest.approx(p.Lambda, rel=1e-14)
    for bad in (0, 1.5, True):
        with pytest.raises(ValueError):
            OscillatorAdS2GroundParams(bad, 1.0)
    with pytest.raises(ValueError):
        OscillatorAdS2GroundParams(1, -1.0)


def test_flat_params():
    p = OscillatorFlatParams.from_alpha(2, 3.0)
    assert p.alpha == pytest.approx(3.0)
    assert p.energy == pytest.approx(2.5 * 3.0)
    with pytest.raises(ValueError):
        OscillatorFlatParams(-1)


def test_ordinary_wavefunction_normalized_in_proper_length():
    # int |psi|^2 sqrt(g) dx / l_P = 1
    u = Units(planck_length=2.0)
    s = ads2_ground_state(OscillatorAdS2GroundParams(1, 1.0, units=u))
    r = integrate_real_line(lambda x: s.ordinary(x) ** 2 * np.sqrt(s.metric.g(x)) / 2.0)
    assert r.value == pytest.approx(1.0, abs=1e-10)
    np.testing.assert_allclose(
        s.invariant_density(np.array([0.5])), 2.0 * s.density(0.5) / np.sqrt(s.metric.g(0.5))
    )


@pytest.mark.parametrize("j", [1, 2, 3])
def test_ads2_momentum_numeric_vs_closed(j):
    s = ads2_ground_state(OscillatorAdS2GroundParams(j, 1.0))
    num = momentum_representation(s)
    ps = np.array([0.0, 1e-9, 1e-3, 0.2, 1.0, 3.0, 9.0])
    np.testing.assert_allclose(num(ps).real, ads2_momentum_closed(j, 1.0)(ps), atol=1e-11)
    assert np.max(np.abs(num(ps).imag)) == 0.0


def test_flat_momentum_is_fourier_self_dual():
    # alpha = 1, hbar = 1: psi_p(p) = (-i)^n psi(p) / sqrt(hbar)
    for n in (0, 1, 2):
        s = flat_oscillator_state(OscillatorFlatParams(n))
        ps = np.linspace(-3, 3, 7)
        ref = (-1j) ** n * s(ps)
        np.testing.assert_allclose(momentum_representation(s)(ps), ref, atol=1e-12)


def test_ads2_momentum_density_normalized():
    rho = lambda p: np.abs(ads2_momentum_closed(2, 0.7)(p)) ** 2  # noqa: E731
    assert integrate_real_line(rho, scale=1 / 0.7).value == pytest.approx(1.0, abs=1e-12)


def test_momentum_cutoff():
    pc = momentum_cutoff(lambda p: np.exp(-np.abs(p)), 1.0, rel=1e-10)
    assert math.exp(-pc) < 1e-10
    with pytest.raises(ArithmeticError):
        momentum_cutoff(lambda p: np.ones_like(np.asarray(p, float)), 1.0)


def test_tabulate_spline():
    s = ads2_ground_state(OscillatorAdS2GroundParams(1, 1.0))
    m = momentum_representation(s)
    sp = m.tabulate(np.linspace(0, 3, 31))
    assert sp(1.05) == pytest.approx(m.density(1.05), rel=1e-3)


@pytest.mark.parametrize("n", range(4))
def test_flat_hamiltonian_residual(n):
    p = OscillatorFlatParams(n)
    s = flat_oscillator_state(p)
    assert hamiltonian_residual(s, "flat", p, np.linspace(-6, 6, 481)) < 1e-5


def test_ads2_hamiltonian_residual():
    p = OscillatorAdS2GroundParams(1, 1.0)
    s = ads2_ground_state(p)
    assert hamiltonian_residual(s, "ads2", p, np.linspace(-8, 8, 641)) < 1e-5


def test_wrong_energy_gives_large_residual():
    p = OscillatorFlatParams(1)
    s = flat_oscillator_state(OscillatorFlatParams(2))
    assert hamiltonian_residual(s, "flat", p, np.linspace(-6, 6, 481)) > 0.1


def test_coarse_grid_detected():
    p = OscillatorFlatParams(3)
    s = flat_oscillator_state(p)
    with pytest.raises(GridTooCoarseError):
        hamiltonian_residual(s, "flat", p, np.linspace(-6, 6, 13))
    with pytest.raises(ValueError):
        hamiltonian_residual(s, "flat", p, np.array([0.0, 1.0]))


def test_reparametrized_state_normalized_and_parity():
    s = ads2_ground_state(OscillatorAdS2GroundParams(1, 1.0))
    s2 = reparametrize_state(s, sinh_map(1.0), tail="exponential")
    assert s2.normalization_check == pytest.approx(1.0, abs=1e-10)
    assert s2.parity == 1 and s2.tail == "exponential"
    s3 = reparametrize_state(s, linear_map(2.0, 0.3))
    assert s3.parity == 0
    assert s3.normalization_check == pytest.approx(1.0, abs=1e-10)


def test_reparametrized_state_finite_at_chart_overflow():
    s = flat_oscillator_state(OscillatorFlatParams(0))
    s2 = reparametrize_state(s, sinh_map(1.0))
    assert s2(np.array([800.0, -900.0])).tolist() == [0.0, 0.0]
    s3 = reparametrize_state(s, tan_map(1.0))
    assert s3.metric.domain == pytest.approx((-math.pi / 2, math.pi / 2))


def test_reference_values():
    s = flat_oscillator_state(OscillatorFlatParams(0))
    assert s(0.0) == pytest.approx(math.pi**-0.25, rel=1e-15)
    assert flat_oscillator_state(OscillatorFlatParams.from_alpha(1, 2.7))(0.0) == 0.0
    p = OscillatorAdS2GroundParams(1, 1.0)
    assert p.norm == pytest.approx(2 / math.pi, rel=1e-15)
    xs = np.array([0.0, 0.5, 3.0])
    np.testing.assert_allclose(ads2_ground_state(p).density(xs), (2 / math.pi) / (1 + xs**2) ** 2, rtol=1e-14)
    m = momentum_representation(s)
    assert m.density(0.0) == pytest.approx(math.pi**-0.5, rel=1e-12)
    assert momentum_representation(flat_oscillator_state(OscillatorFlatParams(1)))(0.0) == 0.0


@pytest.mark.parametrize("j", range(1, 11))
def test_ads2_exponent_identity(j):
    p = OscillatorAdS2GroundParams(j, 1.0)
    assert 0.5 * p.inv_lambda + 0.25 == j


def test_flat_ground_residual_fine_grid():
    p = OscillatorFlatParams(0)
    r = hamiltonian_residual(flat_oscillator_state(p), "flat", p, np.linspace(-5, 5, 2001))
    assert r < 1e-6


def test_invariant_density_under_sinh():
    s = ads2_ground_state(OscillatorAdS2GroundParams(1, 1.0))
    d = sinh_map(1.0)
    s2 = reparametrize_state(s, d)
    ys = np.linspace(-3, 3, 25)
    np.testing.assert_allclose(s2.invariant_density(ys), s.invariant_density(d(ys)), rtol=1e-10, atol=0)


def test_identity_map_keeps_values():
    from curved_wigner.geometry import identity_map

    s = flat_oscillator_state(OscillatorFlatParams(2))
    s2 = reparametrize_state(s, identity_map())
    xs = np.linspace(-3, 3, 13)
    np.testing.assert_array_equal(s2(xs), s(xs))


def test_ads2_approaches_gaussian_with_j():
    # with m kappa tied to j, the ground-state density tends to the flat
    # Gaussian of the same oscillator frequency; the distance shrinks with j
    def dist(j):
        p = OscillatorAdS2GroundParams(j, 1.0)
        alpha = math.sqrt(p.m_kappa) / p.units.hbar
        g = flat_oscillator_state(OscillatorFlatParams.from_alpha(0, alpha))
        xs = np.linspace(-2, 2, 41) / math.sqrt(alpha)
        return np.max(np.abs(ads2_ground_state(p).density(xs) - g.density(xs))) / g.density(0.0)

    d = [dist(j) for j in range(1, 9)]
    assert all(b < a for a, b in zip(d, d[1:]))
    assert d[-1] < 0.2 * d[0]
