"""Wigner quasiprobability functions on 1D slices.

Conventions: rho(x, p) = int psi_lam(x - y/2) psi_lam(x + y/2) e^{-i p y / hbar} dy
for real lambda-wavefunctions, normalized as (1/h) int int rho dx dp = 1, so a
Gaussian peaks at rho = 2.

Besides the numeric transform there are three closed forms: the flat
oscillator (Laguerre form), the AdS2 ground state at j = 1, and the general-j
AdS2 ground state as a finite sum of residues.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .geometry import Diffeomorphism, Units
from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    fourier_integral,
    integrate,
    integrate_real_line,
    integrate_semi_infinite,
    tanhsinh_finite,
)
from .specfun import laguerre, laguerre_roots
from .states import (
    LambdaWavefunction,
    OscillatorAdS2GroundParams,
    OscillatorFlatParams,
    momentum_cutoff,
    momentum_representation,
)

__all__ = [
    "WignerFunction",
    "wigner_numeric",
    "wigner_flat_closed",
    "wigner_ads2_j1",
    "wigner_ads2_residue",
    "wigner_mixed",
    "wigner_affine_pullback",
    "marginal_position",
    "marginal_momentum",
    "evaluate_grid",
    "find_sign_changes",
    "p_breakpoints",
]

KINDS = ("numeric", "flat_closed", "ads2_j1", "ads2_residue", "mixed", "affine_pullback")


@dataclass(frozen=True)
class WignerFunction:
    """Phase-space quasiprobability density with integration hints.

    Attributes
    ----------
    func : callable
        ``func(x, p)`` broadcasting over numpy arrays.
    kind : str
        One of 'numeric', 'flat_closed', 'ads2_j1', 'ads2_residue', 'mixed'.
    label : str
    params : dict
    units : Units
    state : LambdaWavefunction or None
        Source pure state, when there is one.
    even_x, even_p : bool
        Reflection symmetries used to fold integration domains.
    x_scale, p_scale : float
        Characteristic widths for quadrature maps.
    p_cut : float
        |rho| is negligible (below ~1e-18) for |p| beyond this.
    x_tail : str
        'gaussian' or 'algebraic' decay of rho in x.
    p_zeros : callable or None
        ``p_zeros(x, p_max)`` -> sorted zeros of rho(x, .) in (0, p_max).
    p_half_period : callable or None
        ``p_half_period(x)`` -> half-period of the oscillation of rho(x, .)
        in p, used to size zero searches.
    x_oscillation : callable or None
        ``x_oscillation(p)`` -> (omega, cos_amp, sin_amp, x0) with
        rho(x, p) = cos_amp(x) cos(omega x) + sin_amp(x) sin(omega x) for
        x >= x0.
    noise_floor : float
        |rho| below this is rounding noise; sign changes there are ignored.
    """

    func: Callable
    kind: str
    label: str
    params: dict = field(default_factory=dict)
    units: Units = field(default_factory=Units)
    state: LambdaWavefunction | None = None
    even_x: bool = False
    even_p: bool = False
    x_scale: float = 1.0
    p_scale: float = 1.0
    p_cut: float = math.inf
    x_tail: str = "gaussian"
    p_zeros: Callable | None = None
    p_half_period: Callable | None = None
    x_oscillation: Callable | None = None
    noise_floor: float = 0.0

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")

    def __call__(self, x, p):
        return self.func(x, p)


def evaluate_grid(W: WignerFunction, xs, ps) -> np.ndarray:
    """rho on the tensor grid, shape (len(xs), len(ps))."""
    X, P = np.meshgrid(np.asarray(xs, float), np.asarray(ps, float), indexing="ij")
    return np.asarray(W.func(X, P), dtype=float)


# ---------------------------------------------------------------------------
# flat oscillator


def wigner_flat_closed(params: OscillatorFlatParams) -> WignerFunction:
    """2 (-1)^n L_n(2u) e^{-u}, u = alpha x^2 + p^2 / (hbar^2 alpha)."""
    n = params.n
    alpha = params.alpha
    hb = params.units.hbar
    sign = -1.0 if n % 2 else 1.0
    roots = laguerre_roots(n) if n else np.empty(0)

    def rho(x, p):
        x = np.asarray(x, dtype=float)
        p = np.asarray(p, dtype=float)
        u = alpha * x * x + p * p / (hb * hb * alpha)
        # e^{-u} underflows past u = 800; keep L_n from overflowing there
        live = u < 800.0
        ul = np.where(live, u, 0.0)
        out = np.where(live, 2.0 * sign * laguerre(n, 2.0 * ul) * np.exp(-ul), 0.0)
        return out if np.ndim(out) else float(out)

    def p_zeros(x, p_max=math.inf):
        # 2u = lambda  <=>  p^2 = hbar^2 alpha (lambda/2 - alpha x^2)
        rem = 0.5 * roots - alpha * float(x) ** 2
        z = hb * np.sqrt(alpha * rem[rem > 0])
        return np.sort(z[z < p_max])

    # beyond u = 60 + 4n the Gaussian has crushed L_n
    u_max = 60.0 + 4.0 * n
    return WignerFunction(
        rho,
        "flat_closed",
        f"flat n={n}",
        # x where the zero circles 2u = lambda touch the x-axis; slice
        # integrals over p are not smooth in x there
        {"n": n, "alpha": alpha, "x_breaks": tuple(np.sqrt(0.5 * roots / alpha))},
        params.units,
        even_x=True,
        even_p=True,
        x_scale=1.0 / math.sqrt(alpha),
        p_scale=hb * math.sqrt(alpha),
        p_cut=hb * math.sqrt(alpha * u_max),
        x_tail="gaussian",
        p_zeros=p_zeros,
    )


# ---------------------------------------------------------------------------
# AdS2, j = 1


_TAYLOR_ARG = 1e-4


def _sin_over(arg):
    # sin(t)/t with a 4-term Taylor branch near 0
    t = np.asarray(arg, dtype=float)
    t2 = t * t
    series = 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0
    small = np.abs(t) < _TAYLOR_ARG
    safe = np.where(small, 1.0, t)
    return np.where(small, series, np.sin(safe) / safe)


def wigner_ads2_j1(R: float, units: Units | None = None) -> WignerFunction:
    """Closed-form Wigner function of the AdS2 ground state at j = 1.

    rho = 2 R^2 e^{-s R} / (R^2 + x^2) [cos(s x) + (R/x) sin(s x)] with
    s = 2|p|/hbar; the second term is evaluated as R s sin(sx)/(sx).
    """
    units = units or Units()
    R = float(R)
    if not R > 0:
        raise ValueError("R must be positive")
    hb = units.hbar

    def rho(x, p):
        x = np.asarray(x, dtype=float)
        s = 2.0 * np.abs(np.asarray(p, dtype=float)) / hb
        sx = s * x
        out = (
            2.0 * R * R * np.exp(-s * R) / (R * R + x * x)
            * (np.cos(sx) + R * s * _sin_over(sx))
        )
        return out if np.ndim(out) else float(out)

    def p_zeros(x, p_max=math.inf):
        # rho ~ cos(s|x| - phi), tan(phi) = R/|x|: zeros at s|x| = phi + (k + 1/2) pi
        ax = abs(float(x))
        if ax == 0.0:
            return np.empty(0)
        if not math.isfinite(p_max):
            raise ValueError("p_max must be finite for x != 0")
        phi = math.atan2(R, ax)
        # largest k with a zero below p_max
        k_max = (2.0 * ax * p_max / hb - phi) / math.pi - 0.5
        if not k_max < 1e9:
            raise ValueError("too many momentum zeros below p_max")
        if k_max < 0.0:
            return np.empty(0)
        k = np.arange(0, math.floor(k_max) + 1)
        z = hb * (phi + (k + 0.5) * math.pi) / (2.0 * ax)
        return z[z < p_max]

    def x_oscillation(p):
        s = 2.0 * abs(float(p)) / hb
        env = 2.0 * R * R * math.exp(-s * R)

        def cos_amp(x):
            x = np.asarray(x, dtype=float)
            return env / (R * R + x * x)

        def sin_amp(x):
            x = np.asarray(x, dtype=float)
            return env * R / (x * (R * R + x * x))

        return s, cos_amp, sin_amp, 0.5 * R

    return WignerFunction(
        rho,
        "ads2_j1",
        f"ads2 j=1 R={R:g}",
        {"j": 1, "R": R},
        units,
        even_x=True,
        even_p=True,
        x_scale=R,
        p_scale=hb / (2.0 * R),
        p_cut=_ads2_p_cut(1, R, hb),
        x_tail="algebraic",
        p_zeros=p_zeros,
        p_half_period=lambda x: math.pi * hb / (2.0 * max(abs(float(x)), 1e-300)),
        x_oscillation=x_oscillation,
    )


def _ads2_p_cut(j, R, hb):
    # envelope poly(|p|) e^{-2|p|R/hbar}: 45 e-folds plus room for the
    # polynomial prefactor of degree j - 1
    return hb / (2.0 * R) * (45.0 + 6.0 * j)


# ---------------------------------------------------------------------------
# AdS2, general j by residues


@dataclass(frozen=True)
class _ResidueTerm:
    coef: float  # exact rational part, times (-i)^l1 handled separately
    l1: int
    k: int  # power of 1/x
    m: int  # power of 1/(x -+ iR)
    p_pow: int  # power of |p|/hbar
    r_pow: int  # power of R


def _residue_terms(j: int):
    terms = []
    for l3 in range(j):
        for l2 in range(l3 + 1):
            for l1 in range(l2, l3 + 1):
                c = (
                    math.comb(j + l3 - l1 - 1, j - 1)
                    * math.comb(j + l2 - 1, j - 1)
                    * math.comb(j + l1 - l2 - 1, j - 1)
                )
                q = Fraction(c, math.factorial(j - 1 - l3) * 4 ** (3 * j + l3))
                terms.append(
                    _ResidueTerm(float(q), l1, j + l2, j + l1 - l2, j - 1 - l3, l1 - j - l3)
                )
    return tuple(terms)


_ELLIPSE_POINTS = 128


def wigner_ads2_residue(
    j: int, R: float, units: Units | None = None
) -> WignerFunction:
    """AdS2 ground-state Wigner function for integer j from a finite residue sum.

    The momentum integral of the pole representation closes on the poles of
    the two wavefunction factors, giving a triple sum over (l3, l2, l1) of
    terms e^{-2|p|R} |p|^a / (x^k (x -+ iR)^m) times e^{-+2i|p|x}. Coefficients
    are built from exact integers. The overall factor is N (4 R^2)^{2j}
    times 2 pi.

    Individual terms are singular at x = 0 and cancel there. For
    |x| < R 10^{-3/(2j-1)} the value is instead obtained from Cauchy's
    integral formula on an ellipse around the origin (128-point trapezoid
    rule), which avoids the cancellation.
    """
    if isinstance(j, bool) or int(j) != j or j < 1:
        raise ValueError("j must be a positive integer")
    j = int(j)
    if j > 12:
        raise ValueError("residue form is validated for j <= 12 only")
    units = units or Units()
    R = float(R)
    hb = units.hbar
    st = OscillatorAdS2GroundParams(j, R, units=units)
    # (2 pi) N (4R^2)^{2j}; R powers folded with each term's R^{r_pow}
    pref = 2.0 * math.pi * st.norm * 16.0**j
    terms = _residue_terms(j)
    x_switch = R * 10.0 ** (-3.0 / (2 * j - 1))
    a_ell = 1.5 * x_switch
    b_ell = min(0.35 * R, x_switch)
    th = 2.0 * math.pi * (np.arange(_ELLIPSE_POINTS) + 0.5) / _ELLIPSE_POINTS
    z_ell = a_ell * np.cos(th) + 1j * b_ell * np.sin(th)
    dz_ell = -a_ell * np.sin(th) + 1j * b_ell * np.cos(th)
    ipow = [(-1j) ** l for l in range(j)]

    def pieces(z, k):
        """Sums G, H with D = e^{-i k z} G(z) + e^{i k z} H(z), k = 2|p|/hbar.

        Both are polynomials in |p| whose coefficients depend on z only;
        the coefficients are built once per distinct z, which makes slices
        at fixed x cost O(j) per momentum.
        """
        z0 = np.asarray(z, dtype=complex)
        z, k = np.broadcast_arrays(z0, np.asarray(k, dtype=float))
        zr = z.ravel()
        if zr.size == 0 or np.all(zr == zr[0]):
            uz, inv = zr[:1], np.zeros(zr.size, dtype=int)
        else:
            uz, inv = np.unique(zr, return_inverse=True)
        zm = uz - 1j * R
        zp = uz + 1j * R
        A = np.zeros((j, uz.size), dtype=complex)
        B = np.zeros_like(A)
        for t in terms:
            # R^{4j} from (4R^2)^{2j}, R^{r_pow} from the term, R^{-a} from (|p|/hbar)^a
            scale = t.coef * R ** (4 * j + t.r_pow - t.p_pow)
            base = scale * ipow[t.l1] / uz**t.k
            A[t.p_pow] += base / zm**t.m
            B[t.p_pow] += (-1) ** t.l1 * base / zp**t.m
        kk = 0.5 * k.ravel() * R  # |p| R / hbar
        G = np.zeros(kk.shape, dtype=complex)
        H = np.zeros_like(G)
        for a in range(j - 1, -1, -1):  # Horner in kk
            G = G * kk + A[a][inv]
            H = H * kk + B[a][inv]
        env = pref * np.exp(-k.ravel() * R)
        return (env * G).reshape(z.shape), (env * H).reshape(z.shape)

    def D(z, k):
        G, H = pieces(z, k)
        return np.exp(-1j * k * z) * G + np.exp(1j * k * z) * H

    def rho(x, p):
        x = np.asarray(x, dtype=float)
        k = 2.0 * np.abs(np.asarray(p, dtype=float)) / hb
        x, k = np.broadcast_arrays(x, k)
        out = np.empty(x.shape)
        near = np.abs(x) < x_switch
        # rho ~ x^{-2j} e^{...}: below 1e-60 relative beyond 1e30 R
        huge = np.abs(x) > 1e30 * R
        out[huge] = 0.0
        far = ~near & ~huge
        if far.any():
            out[far] = D(x[far].astype(complex), k[far]).real
        if near.any():
            xn = x[near][:, None]
            kn = k[near][:, None]
            v = D(z_ell[None, :], kn)
            out[near] = (
                np.sum(v * dz_ell[None, :] / (z_ell[None, :] - xn), axis=1)
                / (1j * _ELLIPSE_POINTS)
            ).real
        return out if out.ndim else float(out)

    def x_oscillation(p):
        k = 2.0 * abs(float(p)) / hb

        def amps(x):
            x = np.asarray(x, dtype=float).astype(complex)
            G, H = pieces(x, k)
            return G, H

        def cos_amp(x):
            G, H = amps(x)
            return (G + H).real

        def sin_amp(x):
            G, H = amps(x)
            return (G - H).imag

        return k, cos_amp, sin_amp, max(x_switch, 0.5 * R)

    return WignerFunction(
        rho,
        "ads2_residue",
        f"ads2 j={j} R={R:g}",
        {"j": j, "R": R, "x_switch": x_switch},
        units,
        even_x=True,
        even_p=True,
        x_scale=R,
        p_scale=hb / (2.0 * R),
        p_cut=_ads2_p_cut(j, R, hb),
        x_tail="algebraic",
        p_zeros=None,
        p_half_period=lambda x: math.pi * hb / (2.0 * max(abs(float(x)), 1e-300)),
        x_oscillation=x_oscillation,
    )


# ---------------------------------------------------------------------------
# numeric transform


def _support_radius(f: Callable, scale: float, rel: float = 1e-20) -> float:
    """Radius beyond which |f| stays below rel * max|f| (doubling ladder)."""
    r = scale * 2.0 ** np.arange(-3, 48)
    v = np.maximum(np.abs(np.asarray(f(r), float)), np.abs(np.asarray(f(-r), float)))
    peak = max(float(np.max(v)), abs(float(np.asarray(f(np.array([0.0])))[0])))
    below = v < rel * peak
    for i in range(1, len(r)):
        if below[i] and below[i - 1]:
            return float(r[i])
    raise ArithmeticError("wavefunction does not decay fast enough for the trapezoid route")


def _trapezoid_cos(prod: Callable, ks, Y: float, h: float, tol: float, max_halvings: int = 10):
    """2 int_0^Y prod(y) cos(k y) dy for all k at once, by the trapezoid rule.

    ``prod`` must be even, analytic in a strip and negligible at Y, where the
    trapezoid rule converges geometrically; the step is halved until two
    successive sums agree to ``tol`` relative to 2 int |prod|, the natural
    size of the rounding error.
    """
    ks = np.asarray(ks, dtype=float)
    n = max(int(math.ceil(Y / h)), 2)
    h = Y / n
    y = np.arange(n + 1) * h
    fy = np.asarray(prod(y), dtype=float)
    fy[0] *= 0.5
    fy[-1] *= 0.5
    s = np.cos(np.outer(ks, y)) @ fy
    l1 = np.sum(np.abs(fy))
    val = 2.0 * h * s
    for _ in range(max_halvings):
        y_new = (np.arange(n) + 0.5) * h
        f_new = np.asarray(prod(y_new), dtype=float)
        s = s + np.cos(np.outer(ks, y_new)) @ f_new
        l1 += np.sum(np.abs(f_new))
        n *= 2
        h *= 0.5
        new = 2.0 * h * s
        if np.max(np.abs(new - val), initial=0.0) <= tol * max(2.0 * h * l1, 1e-300):
            return new, True
        val = new
    return val, False


def wigner_numeric(
    psi: LambdaWavefunction,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    p_cut: float | None = None,
) -> WignerFunction:
    """Wigner transform of a real lambda-wavefunction by quadrature.

    The product psi(x - y/2) psi(x + y/2) is even in y, so only the cosine
    transform over y >= 0 survives; the imaginary part vanishes identically
    and is never computed. States with Gaussian or exponential tails use a
    trapezoid sum batched over all momenta sharing an x; algebraic tails
    go pointwise through the QUADPACK Fourier routine.

    ``p_cut`` defaults to where the momentum density falls below 1e-18 of
    its peak; further out rho is at the level of the transform's rounding
    error, which is recorded as ``noise_floor``.
    """
    f = psi.func
    hb = psi.units.hbar
    sc = psi.scale
    fast = psi.tail in ("gaussian", "exponential")
    support = _support_radius(f, sc) if fast else math.inf

    def one(x, p):
        def prod(y):
            return f(x - 0.5 * y) * f(x + 0.5 * y)

        k = p / hb
        if k == 0.0:
            r = integrate_semi_infinite(prod, 0.0, cfg, sc)
        else:
            r = fourier_integral(prod, abs(k), 0.0, "cos", cfg, sc)
        return 2.0 * r.value

    def slice_fast(x, ps):
        Y = 2.0 * (support - abs(x))
        if Y <= 0.0:
            return np.zeros(len(ps))

        def prod(y):
            return f(x - 0.5 * y) * f(x + 0.5 * y)

        val, _ = _trapezoid_cos(prod, np.asarray(ps) / hb, Y, sc / 8.0, cfg.rel_tol)
        return val

    def rho(x, p):
        x, p = np.broadcast_arrays(np.asarray(x, float), np.asarray(p, float))
        flat_x, flat_p = x.ravel(), p.ravel()
        out = np.empty(flat_x.shape)
        if fast:
            ux, inv = np.unique(flat_x, return_inverse=True)
            for i, xv in enumerate(ux):
                sel = inv == i
                out[sel] = slice_fast(float(xv), flat_p[sel])
        else:
            out[:] = [one(float(a), float(b)) for a, b in zip(flat_x, flat_p)]
        out = out.reshape(x.shape)
        return out if out.ndim else float(out)

    if p_cut is None:
        mom = momentum_representation(psi, cfg)
        p_cut = momentum_cutoff(mom.density, hb / sc, rel=1e-18, two_sided=psi.parity == 0)

    even = psi.parity != 0
    return WignerFunction(
        rho,
        "numeric",
        psi.label,
        dict(psi.params),
        psi.units,
        state=psi,
        even_x=even,
        even_p=True,
        x_scale=sc,
        p_scale=hb / sc,
        p_cut=float(p_cut),
        x_tail="gaussian" if fast else "algebraic",
        noise_floor=20.0 * max(cfg.rel_tol, 1e-15),
    )


def wigner_affine_pullback(W: WignerFunction, d: Diffeomorphism) -> WignerFunction:
    """Wigner function of the same state in the chart x = a y + b.

    For affine charts the transform is exact: rho'(y, p) = rho(a y + b, p / a).
    Integration hints are carried over. Nonlinear charts have no such rule;
    use :func:`wigner_numeric` on the reparametrized state instead.
    """
    probe = np.array([-2.3, -0.7, 0.0, 0.4, 1.9])
    da = np.asarray(d.derivative(probe), dtype=float)
    a = float(da[0])
    if not np.allclose(da, a, rtol=1e-14, atol=0.0):
        raise ValueError(f"chart {d.label!r} is not affine")
    b = float(np.asarray(d.forward(np.array([0.0])), dtype=float)[0])
    f = W.func

    def rho(y, p):
        y = np.asarray(y, dtype=float)
        return f(a * y + b, np.asarray(p, dtype=float) / a)

    p_zeros = None
    if W.p_zeros is not None:
        def p_zeros(y, p_max=math.inf):
            return a * np.asarray(W.p_zeros(a * y + b, p_max / a))

    p_half_period = None
    if W.p_half_period is not None:
        def p_half_period(y):
            return a * W.p_half_period(a * y + b)

    x_osc = None
    if W.x_oscillation is not None and b == 0.0:
        def x_osc(p):
            omega, ca, sa, x0 = W.x_oscillation(p / a)
            return (
                a * omega,
                lambda y: ca(a * np.asarray(y, dtype=float)),
                lambda y: sa(a * np.asarray(y, dtype=float)),
                x0 / a,
            )

    params = dict(W.params)
    if "x_breaks" in params:
        params["x_breaks"] = [(xb - b) / a for xb in params["x_breaks"]]
    params["chart"] = d.label
    return replace(
        W,
        func=rho,
        kind="affine_pullback",
        label=f"{W.label}|{d.label}",
        params=params,
        state=None,
        even_x=W.even_x and b == 0.0,
        x_scale=W.x_scale / a,
        p_scale=W.p_scale * a,
        p_cut=W.p_cut * a,
        p_zeros=p_zeros,
        p_half_period=p_half_period,
        x_oscillation=x_osc,
    )


# ---------------------------------------------------------------------------
# mixtures


def wigner_mixed(components: Sequence[tuple]) -> WignerFunction:
    """Convex combination sum_a w_a rho_a of Wigner functions."""
    if not components:
        raise ValueError("need at least one component")
    ws = np.array([float(w) for w, _ in components])
    if np.any(ws < 0) or np.any(ws > 1) or abs(ws.sum() - 1.0) > 1e-12:
        raise ValueError("weights must lie in [0, 1] and sum to 1")
    Ws = [W for _, W in components]
    if len(components) == 1:
        return Ws[0]
    units = Ws[0].units
    if any(W.units != units for W in Ws):
        raise ValueError("components use different units")

    def rho(x, p):
        acc = 0.0
        for w, W in zip(ws, Ws):
            if w:
                acc = acc + w * np.asarray(W.func(x, p), dtype=float)
        return acc if np.ndim(acc) else float(acc)

    hp = [W.p_half_period for W in Ws if W.p_half_period is not None]
    return WignerFunction(
        rho,
        "mixed",
        " + ".join(f"{w:g}*[{W.label}]" for w, W in zip(ws, Ws)),
        {"weights": ws.tolist(), "components": [W.label for W in Ws]},
        units,
        even_x=all(W.even_x for W in Ws),
        even_p=all(W.even_p for W in Ws),
        x_scale=max(W.x_scale for W in Ws),
        p_scale=max(W.p_scale for W in Ws),
        p_cut=max(W.p_cut for W in Ws),
        x_tail="algebraic" if any(W.x_tail != "gaussian" for W in Ws) else "gaussian",
        p_half_period=(lambda x: min(h(x) for h in hp)) if hp else None,
    )


# ---------------------------------------------------------------------------
# zero finding along p


def _refine_brackets(
    f: Callable, lo, hi, flo, fhi, xtol: float = 0.0, max_iter: int = 100
) -> np.ndarray:
    """Roots in sign-change brackets [lo, hi], refined all at once.

    Vectorized Illinois iteration (regula falsi that halves the stale
    endpoint value after two updates on the same side), one batched call of
    ``f`` per iteration. A bracket is done when its estimate moves by less
    than max(xtol, 4 ulp) or f vanishes there.
    """
    lo, hi, flo, fhi = (np.array(v, dtype=float) for v in (lo, hi, flo, fhi))
    est = np.full(lo.shape, np.nan)
    side = np.zeros(lo.shape, dtype=int)
    active = np.ones(lo.shape, dtype=bool)
    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        a, b, fa, fb = lo[idx], hi[idx], flo[idx], fhi[idx]
        with np.errstate(invalid="ignore", divide="ignore"):
            c = (a * fb - b * fa) / (fb - fa)
        bad = ~np.isfinite(c) | (c <= a) | (c >= b)
        c = np.where(bad, 0.5 * (a + b), c)
        fc = np.asarray(f(c), dtype=float)
        tol = np.maximum(xtol, 4.0 * np.spacing(np.abs(c)))
        done = (fc == 0.0) | (np.abs(c - est[idx]) <= tol) | (b - a <= tol)
        est[idx] = c
        left = np.sign(fc) == np.sign(fa)
        s = side[idx]
        # c replaces a: if a was also replaced last time, halve f(b)
        lo[idx] = np.where(left, c, a)
        flo[idx] = np.where(left, fc, np.where(s == -1, 0.5 * fa, fa))
        hi[idx] = np.where(left, b, c)
        fhi[idx] = np.where(left, np.where(s == 1, 0.5 * fb, fb), fc)
        side[idx] = np.where(left, 1, -1)
        active[idx[done]] = False
    return est


def find_sign_changes(
    f: Callable, a: float, b: float, n: int, xtol: float = 0.0, floor: float = 0.0
) -> np.ndarray:
    """Roots of f in (a, b) bracketed on an n-interval uniform grid.

    ``f`` must accept arrays. Brackets are refined together (see
    :func:`_refine_brackets`). Zeros of even multiplicity and pairs closer
    than the grid spacing are missed.
    """
    t = np.linspace(a, b, n + 1)
    v = np.asarray(f(t), dtype=float)
    flip = np.sign(v[:-1]) * np.sign(v[1:]) < 0
    if floor > 0.0:
        flip &= np.maximum(np.abs(v[:-1]), np.abs(v[1:])) > floor
    i = np.nonzero(flip)[0]
    roots = _refine_brackets(f, t[i], t[i + 1], v[i], v[i + 1], xtol) if i.size else np.empty(0)
    exact = t[1:-1][(v[1:-1] == 0.0) & (floor == 0.0)]
    return np.sort(np.concatenate([roots, exact]))


def p_breakpoints(W: WignerFunction, x: float, p_max: float) -> np.ndarray:
    """Zeros of rho(x, .) on (0, p_max), from the hint or a bracketing search."""
    if W.p_zeros is not None:
        return np.asarray(W.p_zeros(x, p_max))
    if W.p_half_period is not None:
        n = int(min(max(12.0 * p_max / W.p_half_period(x), 400), 200_000))
    else:
        n = 2000
    # a zero misplaced by d moves the panel integral by O(d^2 log d): 1e-13 is ample
    return find_sign_changes(lambda p: W.func(x, p), 0.0, p_max, n, 1e-13 * p_max, W.noise_floor)


# ---------------------------------------------------------------------------
# marginals


def _p_integral(W: WignerFunction, x: float, g: Callable, cfg: QuadratureConfig):
    """int g(p) dp over the real line for the slice at x (g built from rho)."""
    if W.even_p:
        fac, lo = 2.0, 0.0
    else:
        fac, lo = 1.0, -W.p_cut
    if math.isfinite(W.p_cut):
        bks = ()
        if W.p_half_period is not None:
            hp = W.p_half_period(x)
            n = int(min((W.p_cut - lo) / hp, 100_000))
            if n > 1:
                bks = lo + hp * np.arange(1, n + 1)
        return integrate(g, lo, W.p_cut, cfg, bks).scaled(fac)
    if W.even_p:
        return integrate_semi_infinite(g, 0.0, cfg, W.p_scale).scaled(2.0)
    return integrate_real_line(g, cfg, 0.0, W.p_scale)


def marginal_position(
    W: WignerFunction, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> Callable:
    """x -> (1/h) int rho(x, p) dp."""
    h = W.units.h

    def one(x):
        return _p_integral(W, x, lambda p: W.func(x, p), cfg).value / h

    def rho_x(x):
        x = np.asarray(x, dtype=float)
        out = np.array([one(float(v)) for v in x.ravel()]).reshape(x.shape)
        return out if out.ndim else float(out)

    return rho_x


def marginal_momentum(
    W: WignerFunction, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> Callable:
    """p -> (1/h) int rho(x, p) dx.

    With an ``x_oscillation`` hint the tail x >= x0 is done by the QUADPACK
    Fourier routine on the cosine and sine amplitudes, the core by
    tanh-sinh.
    """
    h = W.units.h

    def one(p):
        if W.x_oscillation is not None and W.even_x:
            omega, ca, sa, x0 = W.x_oscillation(p)
            core = tanhsinh_finite(lambda x: W.func(x, p), 0.0, x0, cfg)
            sc = W.x_scale
            tail = fourier_integral(ca, omega, x0, "cos", cfg, sc) + fourier_integral(
                sa, omega, x0, "sin", cfg, sc
            )
            return 2.0 * (core.value + tail.value) / h
        g = lambda x: W.func(x, p)  # noqa: E731
        if W.even_x:
            r = integrate_semi_infinite(g, 0.0, cfg, W.x_scale).scaled(2.0)
        else:
            r = integrate_real_line(g, cfg, 0.0, W.x_scale)
        return r.value / h

    def rho_p(p):
        p = np.asarray(p, dtype=float)
        out = np.array([one(float(v)) for v in p.ravel()]).reshape(p.shape)
        return out if out.ndim else float(out)

    return rho_p
