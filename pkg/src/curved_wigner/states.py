"""Oscillator eigenstates as lambda-wavefunctions, their momentum
representations, chart changes and Hamiltonian residual checks.

A lambda-wavefunction is ``psi_lam = g^{1/4} psi`` (up to a power of the
Planck length), normalized against plain Lebesgue measure dx. The ordinary
wavefunction ``psi`` is normalized against sqrt(g) dx.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np

from .geometry import (
    Diffeomorphism,
    Metric1D,
    Units,
    ads2_metric,
    flat_metric,
    pull_back_metric,
)
from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    fourier_integral,
    integrate_real_line,
    integrate_semi_infinite,
)
from .specfun import hermite, log_gamma

__all__ = [
    "OscillatorFlatParams",
    "OscillatorAdS2GroundParams",
    "LambdaWavefunction",
    "MomentumWavefunction",
    "GridTooCoarseError",
    "flat_oscillator_state",
    "ads2_ground_state",
    "ads2_momentum_closed",
    "momentum_representation",
    "hamiltonian_residual",
    "reparametrize_state",
    "momentum_cutoff",
]


@dataclass(frozen=True)
class OscillatorFlatParams:
    """Flat-space oscillator level ``n`` with mass and spring constant."""

    n: int = 0
    mass: float = 1.0
    kappa: float = 1.0
    units: Units = field(default_factory=Units)

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise ValueError("n must be a non-negative integer")
        if not (self.mass > 0 and self.kappa > 0):
            raise ValueError("mass and kappa must be positive")

    @classmethod
    def from_alpha(cls, n: int, alpha: float, units: Units | None = None):
        """Parameters with m = 1 and kappa chosen to give the scale alpha."""
        units = units or Units()
        return cls(n, 1.0, (alpha * units.hbar) ** 2, units)

    @property
    def alpha(self) -> float:
        return math.sqrt(self.kappa * self.mass) / self.units.hbar

    @property
    def energy(self) -> float:
        return self.units.hbar * math.sqrt(self.kappa / self.mass) * (self.n + 0.5)


@dataclass(frozen=True)
class OscillatorAdS2GroundParams:
    """Ground state of the oscillator on the AdS2 slice.

    Single-valuedness forces ``1/Lambda = 2 j - 1/2`` with integer j. The
    product m kappa is then fixed; ``mass`` only splits it for the
    Hamiltonian check.
    """

    j: int = 1
    R: float = 1.0
    mass: float = 1.0
    units: Units = field(default_factory=Units)

    def __post_init__(self):
        if isinstance(self.j, bool) or int(self.j) != self.j or self.j < 1:
            raise ValueError("j must be a positive integer (wavefunction is multi-valued otherwise)")
        if not (self.R > 0 and self.mass > 0):
            raise ValueError("R and mass must be positive")

    @property
    def inv_lambda(self) -> float:
        return 2.0 * self.j - 0.5

    @property
    def Lambda(self) -> float:
        return 1.0 / self.inv_lambda

    @property
    def norm(self) -> float:
        a = self.inv_lambda
        return math.exp(log_gamma(a + 0.5) - log_gamma(a)) / (math.sqrt(math.pi) * self.R)

    @property
    def m_kappa(self) -> float:
        hb = self.units.hbar
        return 4.0 * hb**2 / self.R**4 * (self.j + 0.25) * (self.j - 0.25)

    @property
    def kappa(self) -> float:
        return self.m_kappa / self.mass

    @property
    def Lambda_from_coupling(self) -> float:
        """Lambda recovered from m kappa (consistency check of the constraint)."""
        hb = self.units.hbar
        return 2.0 * hb / (-hb + math.sqrt(hb**2 + 4.0 * self.m_kappa * self.R**4))

    @property
    def energy(self) -> float:
        return self.units.hbar**2 / (2.0 * self.mass * self.R**2 * self.Lambda)


@dataclass(frozen=True)
class LambdaWavefunction:
    """Real lambda-wavefunction on a 1D metric.

    Attributes
    ----------
    func : callable
        Vectorized x -> psi_lam(x).
    metric : Metric1D
    label : str
    units : Units
    parity : int
        +1 even, -1 odd, 0 unknown.
    tail : str
        'gaussian' for super-exponential decay, 'algebraic' or
        'exponential' otherwise; selects the Fourier-transform route.
    scale : float
        Characteristic length used by quadrature maps.
    params : dict
    """

    func: Callable
    metric: Metric1D
    label: str
    units: Units = field(default_factory=Units)
    parity: int = 0
    tail: str = "gaussian"
    scale: float = 1.0
    params: dict = field(default_factory=dict)

    def __call__(self, x):
        return self.func(x)

    def density(self, x):
        """Lebesgue position density |psi_lam|^2."""
        return np.asarray(self.func(x), dtype=float) ** 2

    def ordinary(self, x):
        """psi = l_P^{1/2} g^{-1/4} psi_lam."""
        g = np.asarray(self.metric.g(x), dtype=float)
        return math.sqrt(self.units.planck_length) * g**-0.25 * self.func(x)

    def invariant_density(self, x):
        """l_P rho_x / sqrt(g): density per unit proper length, in l_P units."""
        return self.units.planck_length * self.density(x) / np.sqrt(self.metric.g(x))

    @cached_property
    def normalization_check(self) -> float:
        lo, hi = self.metric.domain
        if math.isinf(lo) and math.isinf(hi):
            r = integrate_real_line(self.density, DEFAULT_CONFIG, 0.0, self.scale)
        else:
            from .quadrature import integrate

            r = integrate(self.density, lo, hi, DEFAULT_CONFIG, scale=self.scale)
        return r.value


def flat_oscillator_state(params: OscillatorFlatParams) -> LambdaWavefunction:
    n = params.n
    alpha = params.alpha
    c = (alpha / math.pi) ** 0.25 / math.sqrt(2.0**n * math.factorial(n))
    sa = math.sqrt(alpha)

    # beyond alpha x^2 / 2 = 800 the Gaussian underflows; skip the polynomial
    x_cut = math.sqrt(1600.0 / alpha)

    def psi(x):
        x = np.asarray(x, dtype=float)
        live = np.abs(x) < x_cut
        xl = np.where(live, x, 0.0)
        out = c * hermite(n, sa * xl) * np.exp(-0.5 * alpha * xl * xl)
        out = np.where(live, out, 0.0)
        return out if out.ndim else float(out)

    return LambdaWavefunction(
        psi,
        flat_metric(),
        f"flat n={n}",
        params.units,
        parity=1 if n % 2 == 0 else -1,
        tail="gaussian",
        scale=1.0 / sa,
        params={"n": n, "alpha": alpha, "mass": params.mass, "kappa": params.kappa},
    )


def ads2_ground_state(params: OscillatorAdS2GroundParams) -> LambdaWavefunction:
    j, R = params.j, params.R
    # exponent of gamma in psi_lam, as given by the quantization constraint
    expo = 0.5 * params.inv_lambda + 0.25
    if abs(expo - j) > 1e-14:
        raise ArithmeticError(f"exponent {expo!r} differs from j = {j}")
    metric = ads2_metric(R)
    amp = math.sqrt(params.norm)

    def psi(x):
        x = np.asarray(x, dtype=float)
        t = x / R
        return amp * (1.0 / (1.0 + t * t)) ** j

    return LambdaWavefunction(
        psi,
        metric,
        f"ads2 j={j} R={R:g}",
        params.units,
        parity=1,
        tail="algebraic",
        scale=R,
        params={"j": j, "R": R, "norm": params.norm},
    )


def ads2_momentum_closed(j: int, R: float, units: Units | None = None) -> Callable:
    """Closed-form momentum wavefunction of the AdS2 ground state.

    Uses the transform of (1 + t^2)^{-j}, which is
    pi e^{-|k|} / (4^{j-1} (j-1)!) sum_m (2j-2-m)! / (m! (j-1-m)!) (2|k|)^m.
    Returned values are real (the state is even).
    """
    units = units or Units()
    params = OscillatorAdS2GroundParams(j, R, units=units)
    hb = units.hbar
    coef = [
        math.factorial(2 * j - 2 - m) / (math.factorial(m) * math.factorial(j - 1 - m))
        for m in range(j)
    ]
    pref = (
        math.sqrt(params.norm)
        * R
        * math.pi
        / (4.0 ** (j - 1) * math.factorial(j - 1))
        / math.sqrt(units.h)
    )

    def psi_p(p):
        k = np.abs(np.asarray(p, dtype=float)) * R / hb
        poly = np.zeros_like(k)
        for c in reversed(coef):
            poly = poly * 2.0 * k + c
        return pref * np.exp(-k) * poly

    return psi_p


@dataclass(frozen=True)
class MomentumWavefunction:
    """psi_p(p) = h^{-1/2} int exp(-i p x / hbar) psi_lam(x) dx."""

    func: Callable
    parent: LambdaWavefunction

    def __call__(self, p):
        return self.func(p)

    def density(self, p):
        return np.abs(self.func(p)) ** 2

    def tabulate(self, p_grid):
        """Cubic spline through |psi_p|^2 on ``p_grid`` (plotting only)."""
        from scipy.interpolate import CubicSpline

        p_grid = np.asarray(p_grid, dtype=float)
        return CubicSpline(p_grid, self.density(p_grid))


def momentum_representation(
    psi: LambdaWavefunction, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> MomentumWavefunction:
    """Fourier transform of a lambda-wavefunction, evaluated pointwise.

    The integrand is folded onto x >= 0: the cosine transform uses the even
    part of psi_lam and the sine transform its odd part; parts vanishing by
    parity are skipped. Gaussian-tailed states use tanh-sinh, slower tails
    QUADPACK's Fourier routine.
    """
    hb = psi.units.hbar
    c = 1.0 / math.sqrt(psi.units.h)
    f = psi.func
    lo, hi = psi.metric.domain
    if not (math.isinf(lo) and math.isinf(hi)):
        raise ValueError("momentum_representation needs a state on the whole line")

    def even(x):
        return 0.5 * (f(x) + f(-x))

    def odd(x):
        return 0.5 * (f(x) - f(-x))

    use_even = psi.parity >= 0
    use_odd = psi.parity <= 0

    def transform(part, k, kind):
        if psi.tail == "gaussian":
            trig = np.cos if kind == "cos" else np.sin
            r = integrate_semi_infinite(lambda x: part(x) * trig(k * x), 0.0, cfg, psi.scale)
        else:
            r = fourier_integral(part, k, 0.0, kind, cfg, psi.scale)
        return r.value

    def one(p):
        k = p / hb
        re = 2.0 * transform(even, k, "cos") if use_even else 0.0
        im = -2.0 * transform(odd, k, "sin") if use_odd else 0.0
        return c * complex(re, im)

    def psi_p(p):
        p = np.asarray(p, dtype=float)
        out = np.array([one(float(v)) for v in p.ravel()], dtype=complex).reshape(p.shape)
        return out if out.ndim else complex(out)

    return MomentumWavefunction(psi_p, psi)


class GridTooCoarseError(ValueError):
    """Finite-difference Hamiltonian disagrees with its half-step refinement."""


def _d1(f, x, h):
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h)


def _d2(f, x, h):
    return (
        -f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)
    ) / (12.0 * h * h)


def _apply_hamiltonian(psi: LambdaWavefunction, which, params, x, h):
    hb = psi.units.hbar
    phi = psi.ordinary
    if which == "flat":
        m, k = params.mass, params.kappa
        return -(hb**2) / (2 * m) * _d2(phi, x, h) + 0.5 * k * x * x * phi(x)
    if which == "ads2":
        m, k = params.mass, params.kappa
        gam = psi.metric.g

        def flux(y):
            return gam(y) ** -0.5 * _d1(phi, y, h)

        p2 = -(hb**2) * gam(x) ** -0.5 * _d1(flux, x, h)
        return p2 / (2 * m) + 0.5 * k * gam(x) * x * x * phi(x)
    raise ValueError("which must be 'flat' or 'ads2'")


def hamiltonian_residual(
    psi: LambdaWavefunction,
    which: str,
    params,
    grid,
    richardson_tol: float = 1e-4,
) -> float:
    """max |H psi - E psi| / max |E psi| on ``grid``.

    Derivatives are 5-point central differences with the grid spacing as
    step, evaluated on the ordinary wavefunction g^{-1/4} psi_lam. The
    kinetic operator on the AdS2 slice is applied as two nested first
    derivatives, -hbar^2 g^{-1/2} d/dx (g^{-1/2} d/dx).

    Raises
    ------
    GridTooCoarseError
        if H psi at the grid step and at half of it differ by more than
        ``richardson_tol`` relative to max |E psi|.
    """
    x = np.asarray(grid, dtype=float)
    if x.ndim != 1 or x.size < 5:
        raise ValueError("grid must be 1D with at least 5 points")
    h = float(np.min(np.diff(x)))
    if not h > 0:
        raise ValueError("grid must be strictly increasing")
    E = params.energy
    e_psi = E * psi.ordinary(x)
    scale = float(np.max(np.abs(e_psi)))
    h_coarse = _apply_hamiltonian(psi, which, params, x, h)
    h_fine = _apply_hamiltonian(psi, which, params, x, 0.5 * h)
    if np.max(np.abs(h_coarse - h_fine)) > richardson_tol * scale:
        raise GridTooCoarseError(
            f"finite differences with step {h:g} disagree with step {h / 2:g}"
        )
    return float(np.max(np.abs(h_coarse - e_psi)) / scale)


def reparametrize_state(
    psi: LambdaWavefunction,
    d: Diffeomorphism,
    tail: str | None = None,
    scale: float | None = None,
) -> LambdaWavefunction:
    """The same state in the chart y with x = f(y).

    psi'_lam(y) = psi_lam(f(y)) sqrt(f'(y)), on the pulled-back metric.
    Parity is kept only when f is odd (checked at a few points). A map can
    change the decay class of the tails (sinh turns algebraic into
    exponential decay), so ``tail`` and ``scale`` may be overridden; by
    default they are inherited.
    """
    f, df = d.forward, d.derivative
    inner = psi.func

    def psi_y(y):
        y = np.asarray(y, dtype=float)
        with np.errstate(over="ignore", invalid="ignore"):
            fy = np.asarray(f(y), dtype=float)
            out = np.asarray(inner(fy), dtype=float) * np.sqrt(np.asarray(df(y), dtype=float))
        # charts that overflow (sinh, tan near its edge) send y to x = +-inf
        out = np.where(np.isfinite(fy), out, 0.0)
        return out if out.ndim else float(out)

    probe = np.array([0.3, 1.1, 2.7])
    odd_map = np.allclose(f(-probe), -f(probe), rtol=1e-14, atol=0.0)
    parity = psi.parity if odd_map else 0
    return LambdaWavefunction(
        psi_y,
        pull_back_metric(psi.metric, d),
        f"{psi.label}|{d.label}",
        psi.units,
        parity=parity,
        tail=tail or psi.tail,
        scale=scale or psi.scale,
        params={**psi.params, "chart": d.label},
    )


def momentum_cutoff(rho_p: Callable, p_scale: float, rel: float = 1e-24, two_sided: bool = False) -> float:
    """Smallest p = p_scale 2^k beyond which rho_p stays below rel * peak.

    The density is probed on a doubling ladder; two consecutive probes below
    the threshold end the search.
    """
    probes = p_scale * 2.0 ** np.arange(-3, 40)
    vals = np.asarray(rho_p(probes), dtype=float)
    if two_sided:
        vals = np.maximum(vals, np.asarray(rho_p(-probes), dtype=float))
    peak = max(float(np.max(vals)), float(np.asarray(rho_p(np.array([0.0])))[0]))
    below = vals < rel * peak
    for i in range(1, len(probes)):
        if below[i] and below[i - 1]:
            return float(probes[i])
    raise ArithmeticError("momentum density does not decay on the probed range")
