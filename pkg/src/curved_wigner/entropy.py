"""Entropies of quasiprobability distributions.

Discrete quasientropy -sum p log|p|, phase-space entropy of Wigner
functions, invariant position and momentum entropies of lambda
wavefunctions, closed forms for the flat oscillator, entropic bounds and
mixed-state bookkeeping. Everything is in nats.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import minimize_scalar

from .quadrature import (
    DEFAULT_CONFIG,
    IntegralResult,
    QuadratureConfig,
    integrate,
    integrate_panels,
    integrate_real_line,
)
from .specfun import EULER_GAMMA, exp_integral_ei, laguerre, laguerre_roots
from .states import LambdaWavefunction, momentum_cutoff, momentum_representation
from .wigner import WignerFunction, _sin_over, p_breakpoints

__all__ = [
    "QuasiDistribution",
    "ZeroMarginalError",
    "EntropyReport",
    "PhaseSpaceEntropy",
    "quasientropy_discrete",
    "quasientropy_two_state",
    "quasientropy_chain_check",
    "phase_space_entropy",
    "phase_space_entropy_details",
    "phase_space_normalization",
    "iterated_zero_split_integral",
    "flat_entropy_closed_form",
    "flat_violation_closed_form",
    "appendix_integral",
    "appendix_integral_quadrature",
    "lebesgue_position_entropy",
    "position_entropy",
    "momentum_entropy",
    "metric_log_volume",
    "bound_report",
    "total_entropy_mixed",
    "ensemble_mutual_information",
    "footnote_integral",
    "BBM_BOUND",
]

BBM_BOUND = 1.0 - math.log(2.0)


def xlogabs(v):
    """v log|v| with the continuous value 0 at v = 0."""
    v = np.asarray(v, dtype=float)
    a = np.abs(v)
    pos = a > 0
    out = np.where(pos, v * np.log(np.where(pos, a, 1.0)), 0.0)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# discrete quasientropy


@dataclass(frozen=True)
class QuasiDistribution:
    """Finite list of real weights summing to one (signs unrestricted)."""

    weights: tuple

    def __init__(self, weights):
        w = tuple(float(v) for v in np.asarray(weights, dtype=float).ravel())
        if not w:
            raise ValueError("empty distribution")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {math.fsum(w)!r}, not 1")
        object.__setattr__(self, "weights", w)

    def __len__(self):
        return len(self.weights)

    @property
    def is_probability(self) -> bool:
        return all(0.0 <= v <= 1.0 for v in self.weights)


def _qent(w) -> float:
    # 0.0 - ... keeps an empty sum at +0.0
    return 0.0 - math.fsum(float(v) * math.log(abs(v)) for v in w if v != 0.0)


def quasientropy_discrete(q) -> float:
    """-sum p log|p|, with 0 log 0 = 0. Accepts a QuasiDistribution or weights."""
    if not isinstance(q, QuasiDistribution):
        q = QuasiDistribution(q)
    return _qent(q.weights)


def quasientropy_two_state(p) -> float:
    """Quasientropy of the pair (p, 1 - p)."""
    p = float(p)
    return _qent((p, 1.0 - p))


class ZeroMarginalError(ZeroDivisionError):
    """A marginal weight vanishes, so the conditional distribution is undefined."""


def quasientropy_chain_check(joint) -> tuple:
    """Both sides of H(X, Y) = H(Y) + sum_j p(y_j) H(X | Y = y_j).

    ``joint[i, j]`` is the weight of (x_i, y_j).

    Returns
    -------
    (lhs, rhs, defect) with defect = lhs - rhs.
    """
    P = np.asarray(joint, dtype=float)
    if P.ndim != 2:
        raise ValueError("joint must be a matrix")
    if abs(math.fsum(P.ravel()) - 1.0) > 1e-12:
        raise ValueError("joint weights must sum to 1")
    py = np.array([math.fsum(P[:, j]) for j in range(P.shape[1])])
    if np.any(py == 0.0):
        raise ZeroMarginalError("a marginal weight p(y_j) is zero")
    lhs = _qent(P.ravel())
    terms = [_qent(py)]
    for j in range(P.shape[1]):
        terms.append(py[j] * _qent(P[:, j] / py[j]))
    rhs = math.fsum(terms)
    return lhs, rhs, lhs - rhs


# ---------------------------------------------------------------------------
# flat oscillator closed forms


def flat_entropy_closed_form(n: int) -> float:
    """Phase-space entropy of the n-th flat oscillator eigenstate.

    Finite sum over the roots lambda of L_n with Ei(lambda/2) terms; for
    n = 0 the root sum is empty and the value is 1 - log 2.
    """
    if int(n) != n or n < 0:
        raise ValueError("n must be a non-negative integer")
    n = int(n)
    if n > 40:
        raise ValueError("n > 40 exceeds the root-conditioning limit")
    base = 1.0 + 2.0 * n - math.log(2.0)
    if n == 0:
        return base
    terms = []
    for lam in laguerre_roots(n):
        ei = math.exp(-0.5 * lam) * exp_integral_ei(0.5 * lam)
        for q in range(n + 1):
            bq = math.comb(n, q)
            sgn = (-1) ** (q + n)
            for l in range(q + 1):
                t = sgn * lam**l * 2.0 ** (q - l) / math.factorial(l) * ei
                for k in range(1, l + 1):
                    for s in range(k):
                        t -= (
                            (-1) ** (s + q + n)
                            * lam ** (l - k + s)
                            * 2.0 ** (q - l - s + k)
                            / (math.factorial(s) * math.factorial(l - k) * k)
                        )
                terms.append(bq * t)
    return base + math.fsum(terms)


def flat_violation_closed_form() -> float:
    """H_X + H_P - H_{X,P} for the first excited flat oscillator state."""
    return (
        -2.0
        + math.log(4.0)
        - 2.0 / math.sqrt(math.e) * exp_integral_ei(0.5)
        + 2.0 * EULER_GAMMA
    )


def appendix_integral(n: int) -> float:
    """int_0^inf e^{-r^2} L_n(2r^2) log|L_n(2r^2)| r dr in closed form."""
    if int(n) != n or not 1 <= n <= 40:
        raise ValueError("n must be an integer in [1, 40]")
    n = int(n)
    terms = []
    for lam in laguerre_roots(n):
        ei = math.exp(-0.5 * lam) * exp_integral_ei(0.5 * lam)
        for q in range(n + 1):
            bq = math.comb(n, q)
            for l in range(q + 1):
                t = (-1) ** (q + 1) * lam**l * 2.0 ** (q - l - 1) / math.factorial(l) * ei
                for k in range(1, l + 1):
                    for s in range(k):
                        t += (
                            (-1) ** (s + q)
                            * lam ** (l - k + s)
                            * 2.0 ** (q - l - s + k - 1)
                            / (math.factorial(s) * math.factorial(l - k) * k)
                        )
                terms.append(bq * t)
    return math.fsum(terms)


def appendix_integral_quadrature(n: int, cfg: QuadratureConfig = DEFAULT_CONFIG) -> IntegralResult:
    """The same integral by tanh-sinh, split at the zeros r^2 = lambda/2."""
    roots = laguerre_roots(n)

    def f(r):
        r2 = np.where(r * r < 800.0, r * r, np.inf)
        L = laguerre(n, 2.0 * np.where(np.isfinite(r2), r2, 0.0))
        return np.where(np.isfinite(r2), np.exp(-r2) * xlogabs(L) * r, 0.0)

    return integrate(f, 0.0, math.inf, cfg, np.sqrt(0.5 * roots))


def _flat_radial_entropy(W: WignerFunction, cfg: QuadratureConfig) -> IntegralResult:
    # with u = alpha x^2 + p^2/(hbar^2 alpha), dx dp = pi hbar du, so
    # H = -(1/2) int_0^inf f(u) log|f(u)| du with f = 2 (-1)^n L_n(2u) e^{-u}
    n = W.params["n"]
    sign = -1.0 if n % 2 else 1.0
    roots = laguerre_roots(n) if n else np.empty(0)

    def f(u):
        live = u < 800.0
        ul = np.where(live, u, 0.0)
        return np.where(live, xlogabs(2.0 * sign * laguerre(n, 2.0 * ul) * np.exp(-ul)), 0.0)

    r = integrate(f, 0.0, math.inf, cfg, 0.5 * roots)
    return r.scaled(-0.5)


# ---------------------------------------------------------------------------
# phase-space entropy by iterated quadrature


@dataclass(frozen=True)
class PhaseSpaceEntropy:
    """Phase-space entropy with quadrature diagnostics."""

    value: float
    error_estimate: float
    evaluations: int
    converged: bool
    method: str
    x_max: float = math.inf
    tail_correction: float = 0.0
    tail_exponent: float = math.nan


def _slice_integral(
    W: WignerFunction, x: float, g: Callable, cfg: QuadratureConfig
) -> IntegralResult:
    """int g(rho(x, p)) dp over the p-axis, split at the zeros of rho(x, .)."""
    pc = W.p_cut
    if not math.isfinite(pc):
        raise ValueError("Wigner function needs a finite p_cut for entropy quadrature")
    if W.even_p:
        z = p_breakpoints(W, x, pc)
        edges = np.concatenate([[0.0], z, [pc]])
        return integrate_panels(lambda p: g(W.func(x, p)), edges, cfg).scaled(2.0)
    from .wigner import find_sign_changes

    n = 4000
    if W.p_half_period is not None:
        n = int(min(max(24.0 * pc / W.p_half_period(x), 800), 400_000))
    z = find_sign_changes(lambda p: W.func(x, p), -pc, pc, n, 1e-13 * pc, W.noise_floor)
    edges = np.concatenate([[-pc], z, [pc]])
    return integrate_panels(lambda p: g(W.func(x, p)), edges, cfg)


def _fit_power_log_tail(F: Callable, X: float):
    """Fit F(x) ~ x^{-q} (a log x + c) on [X/4, X]; return (tail integral, q)."""
    xs = X * np.array([0.25, 0.35, 0.5, 0.7, 1.0])
    fs = np.asarray(F(xs), dtype=float)
    if np.max(np.abs(fs)) == 0.0:
        return 0.0, math.nan
    scale = np.max(np.abs(fs))

    def fit(q):
        A = np.stack([np.log(xs) * xs**-q, xs**-q], axis=1)
        coef = np.linalg.lstsq(A, fs / scale, rcond=None)[0]
        return coef * scale, float(np.sum((A @ coef - fs / scale) ** 2))

    q = minimize_scalar(
        lambda q: fit(q)[1], bounds=(1.5, 60.0), method="bounded", options={"xatol": 1e-10}
    ).x
    (a, c), _ = fit(q)
    m = q - 1.0
    tail = X**-m * (a * (math.log(X) / m + 1.0 / m**2) + c / m)
    return float(tail), float(q)


def _outer_integral(
    slice_integral: Callable,
    x_scale: float,
    cfg: QuadratureConfig,
    x_breaks: Sequence[float] = (),
    algebraic: bool = False,
    x_max: float | None = None,
    sides: tuple = (1.0, -1.0),
):
    """Outer x-integral of per-slice results ``slice_integral(x, cfg)``.

    Each half-line in ``sides`` is integrated from 0 outwards, split at
    ``x_breaks`` and a geometric ladder of multiples of ``x_scale``. For
    algebraic tails the range is cut at ``x_max`` (default 100 x-scales) and
    the remainder is added from a fitted x^{-q}(a log x + c) tail.

    Returns (IntegralResult, x_max, tail, q).
    """
    stats = {"evals": 0, "ok": True, "err": 0.0}

    def F(xv):
        xv = np.atleast_1d(np.asarray(xv, dtype=float))
        out = np.empty(xv.shape)
        for i, x in enumerate(xv):
            r = slice_integral(float(x), cfg)
            out[i] = r.value
            stats["evals"] += r.evaluations
            stats["ok"] &= r.converged
            stats["err"] = max(stats["err"], r.error_estimate)
        return out

    X = math.inf
    if algebraic:
        X = float(x_max) if x_max is not None else 100.0 * x_scale
    ladder = [x_scale * 2.0**k for k in range(-1, 12) if x_scale * 2.0**k < min(X, 1e3 * x_scale)]
    total = None
    tail = 0.0
    q = math.nan
    for side in sides:
        bks = sorted({abs(b) for b in x_breaks if b * side > 0} | set(ladder))
        fn = (lambda x, s=side: F(s * np.asarray(x, dtype=float)))
        r = integrate(fn, 0.0, X, cfg, bks, x_scale)
        if algebraic:
            t, q = _fit_power_log_tail(fn, X)
            tail += t
        total = r if total is None else total + r
    width = 2 * X if math.isfinite(X) else 10 * x_scale
    out = IntegralResult(
        total.value + tail,
        total.error_estimate + stats["err"] * width,
        total.evaluations + stats["evals"],
        total.converged and stats["ok"],
    )
    return out, X, tail, q


def iterated_zero_split_integral(
    W: WignerFunction,
    g: Callable,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    x_max: float | None = None,
):
    """int int g(rho(x, p)) dx dp over phase space.

    Inner p-integrals are split at the zeros of rho and done panel-wise;
    the outer x-integral is folded when rho is even in x and split at
    ``W.params['x_breaks']``. Algebraic x-tails are cut at ``x_max`` and
    completed with a fitted tail (see :func:`_outer_integral`).

    Returns (IntegralResult, x_max, tail, q).
    """
    tight = cfg.tightened()
    r, X, tail, q = _outer_integral(
        lambda x, c: _slice_integral(W, x, g, c),
        W.x_scale,
        tight,
        W.params.get("x_breaks", ()),
        W.x_tail != "gaussian",
        x_max,
        (1.0,) if W.even_x else (1.0, -1.0),
    )
    if W.even_x:
        r, tail = r.scaled(2.0), 2.0 * tail
    return r, X, tail, q


def phase_space_entropy_details(
    W: WignerFunction,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    method: str = "auto",
    x_max: float | None = None,
) -> PhaseSpaceEntropy:
    """-(1/h) int int rho log|rho| dx dp with diagnostics.

    ``method`` is 'radial' (flat closed forms only: 1D integral in
    u = alpha x^2 + p^2/(hbar^2 alpha)), '2d' (iterated quadrature split at
    the zeros of rho) or 'auto' (radial when available).
    """
    if method not in ("auto", "radial", "2d"):
        raise ValueError("method must be 'auto', 'radial' or '2d'")
    if method == "radial" and W.kind != "flat_closed":
        raise ValueError("radial reduction needs a flat closed-form Wigner function")
    if W.kind == "flat_closed" and method in ("auto", "radial"):
        r = _flat_radial_entropy(W, cfg)
        return PhaseSpaceEntropy(r.value, r.error_estimate, r.evaluations, r.converged, "radial")
    r, X, tail, q = iterated_zero_split_integral(W, xlogabs, cfg, x_max)
    h = W.units.h
    return PhaseSpaceEntropy(
        -r.value / h,
        r.error_estimate / h,
        r.evaluations,
        r.converged,
        "2d",
        X,
        -tail / h,
        q,
    )


def phase_space_entropy(
    W: WignerFunction, cfg: QuadratureConfig = DEFAULT_CONFIG, method: str = "auto"
) -> float:
    """Phase-space entropy in nats; see :func:`phase_space_entropy_details`."""
    return phase_space_entropy_details(W, cfg, method).value


def phase_space_normalization(
    W: WignerFunction, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """(1/h) int int rho dx dp, through the same zero-split quadrature."""
    r, *_ = iterated_zero_split_integral(W, lambda v: np.asarray(v, dtype=float), cfg)
    return r.value / W.units.h


# ---------------------------------------------------------------------------
# invariant position and momentum entropies


def _line_integral(psi: LambdaWavefunction, f: Callable, cfg: QuadratureConfig) -> IntegralResult:
    lo, hi = psi.metric.domain
    if math.isinf(lo) and math.isinf(hi):
        return integrate_real_line(f, cfg, 0.0, psi.scale)
    return integrate(f, lo, hi, cfg, scale=psi.scale)


def lebesgue_position_entropy(psi: LambdaWavefunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """H_x = -int rho_x log(rho_x) dx, chart-dependent."""
    return -_line_integral(psi, lambda x: xlogabs(psi.density(x)), cfg).value


def metric_log_volume(psi: LambdaWavefunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """int rho_x log sqrt(g) dx."""

    def f(x):
        rho = psi.density(x)
        pos = rho > 0
        with np.errstate(over="ignore"):
            g = np.where(pos, psi.metric.g(x), 1.0)
        return np.where(pos, rho * 0.5 * np.log(g), 0.0)

    return _line_integral(psi, f, cfg).value


def position_entropy(psi: LambdaWavefunction, cfg: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """H_X = -int rho_x log(l_P rho_x / sqrt(g)) dx (invariant)."""
    lp = psi.units.planck_length

    def f(x):
        rho = psi.density(x)
        pos = rho > 0
        with np.errstate(over="ignore"):
            inv = np.where(pos, lp * rho / np.sqrt(psi.metric.g(x)), 1.0)
        return np.where(pos, rho * np.log(inv), 0.0)

    return -_line_integral(psi, f, cfg).value


def _momentum_density(psi: LambdaWavefunction, cfg: QuadratureConfig) -> Callable:
    mom = momentum_representation(psi, cfg.tightened())
    return mom.density


def momentum_entropy(
    psi: LambdaWavefunction,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    momentum_density: Callable | None = None,
) -> float:
    """H_P = H_p - int rho_x log((h/l_P) sqrt(g)) dx (invariant).

    H_p = -int rho_p log rho_p dp with rho_p = |psi_p|^2 from the numeric
    momentum representation unless ``momentum_density`` is given.
    """
    rho_p = momentum_density or _momentum_density(psi, cfg)
    p_max = momentum_cutoff(rho_p, _p_scale(psi), two_sided=psi.parity == 0)
    f = lambda p: xlogabs(rho_p(p))  # noqa: E731
    if psi.parity != 0:
        H_p = -2.0 * integrate(f, 0.0, p_max, cfg, _ladder(_p_scale(psi), p_max)).value
    else:
        bks = _ladder(_p_scale(psi), p_max)
        H_p = -(
            integrate(f, 0.0, p_max, cfg, bks).value
            + integrate(lambda p: f(-p), 0.0, p_max, cfg, bks).value
        )
    log_c = math.log(psi.units.h / psi.units.planck_length)
    return H_p - log_c - metric_log_volume(psi, cfg)


def _p_scale(psi: LambdaWavefunction) -> float:
    return psi.units.hbar / psi.scale


def _ladder(scale, top):
    return [scale * 2.0**k for k in range(-2, 40) if scale * 2.0**k < top]




# ---------------------------------------------------------------------------
# bounds


@dataclass
class EntropyReport:
    """Entropies of one state and the entropic-bound comparisons.

    ``mutual_info_defect`` is H_X + H_P - H_{X,P};
    ``conjectured_bound_rhs`` is H_X + H_P + int rho_x log sqrt(g) dx.
    """

    label: str
    H_phase_space: float
    H_position: float
    H_momentum: float
    mutual_info_defect: float
    bbm_bound: float
    conjectured_bound_rhs: float
    metric_log_volume_term: float
    dimension: int = 1
    bbm_satisfied: bool = True
    conjectured_bound_satisfied: bool = True
    tolerance: float = 1e-6
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def bound_report(
    psi: LambdaWavefunction,
    W: WignerFunction,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    tolerance: float = 1e-6,
    momentum_density: Callable | None = None,
) -> EntropyReport:
    """Fill an EntropyReport for a consistent (state, Wigner function) pair."""
    ps = phase_space_entropy_details(W, cfg)
    hx = position_entropy(psi, cfg)
    hp = momentum_entropy(psi, cfg, momentum_density)
    mlv = metric_log_volume(psi, cfg)
    d = 1
    bbm = d * BBM_BOUND
    rhs = hx + hp + mlv
    return EntropyReport(
        label=psi.label,
        H_phase_space=ps.value,
        H_position=hx,
        H_momentum=hp,
        mutual_info_defect=hx + hp - ps.value,
        bbm_bound=bbm,
        conjectured_bound_rhs=rhs,
        metric_log_volume_term=mlv,
        dimension=d,
        bbm_satisfied=bool(hx + hp >= bbm - tolerance),
        conjectured_bound_satisfied=bool(ps.value >= rhs - tolerance),
        tolerance=tolerance,
        diagnostics={
            "phase_space_method": ps.method,
            "phase_space_error_estimate": ps.error_estimate,
            "phase_space_evaluations": ps.evaluations,
            "phase_space_converged": ps.converged,
            "x_max": ps.x_max,
            "tail_correction": ps.tail_correction,
            "abs_tol": cfg.abs_tol,
            "rel_tol": cfg.rel_tol,
        },
    )


# ---------------------------------------------------------------------------
# mixtures


def _check_probs(probs) -> np.ndarray:
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("probabilities must be a non-empty list")
    if np.any(p < 0) or np.any(p > 1) or abs(math.fsum(p) - 1.0) > 1e-12:
        raise ValueError("probabilities must lie in [0, 1] and sum to 1")
    return p


def total_entropy_mixed(probs: Sequence[float], component_entropies: Sequence[float]) -> tuple:
    """(H_vN, H_total) with H_total = H_vN + sum_a p_a H_a."""
    p = _check_probs(probs)
    h = np.asarray(component_entropies, dtype=float)
    if h.shape != p.shape:
        raise ValueError("need one entropy per probability")
    h_vn = _qent(p)
    return h_vn, h_vn + math.fsum(p * h)


def ensemble_mutual_information(
    mixed: WignerFunction,
    probs: Sequence[float],
    components: Sequence[WignerFunction],
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    component_entropies: Sequence[float] | None = None,
) -> float:
    """I = H_{X,P}(mixed) - sum_a p_a H_{X,P}(component a)."""
    p = _check_probs(probs)
    if len(components) != p.size:
        raise ValueError("need one component per probability")
    if np.count_nonzero(p) == 1:
        return 0.0
    if component_entropies is None:
        component_entropies = [
            phase_space_entropy(W, cfg) if w > 0 else 0.0 for w, W in zip(p, components)
        ]
    h_mixed = phase_space_entropy(mixed, cfg)
    return h_mixed - math.fsum(p * np.asarray(component_entropies, dtype=float))


# ---------------------------------------------------------------------------
# the damped-oscillation log integral of the AdS2 j = 1 entropy


def footnote_integral(
    cfg: QuadratureConfig = QuadratureConfig(1e-12, 1e-12), x_max: float = 200.0
) -> PhaseSpaceEntropy:
    """int_0^inf int_0^inf e^{-p}/(1+x^2) F log(F^2) dp dx, F = cos(px) + sin(px)/x.

    This is the oscillatory core of the AdS2 j = 1 phase-space entropy.
    It goes through the same machinery as the entropy: inner p-integrals
    split at the analytic zeros of F, outer x cut at ``x_max`` with a fitted
    power-log tail.
    """
    p_cut = 45.0

    def F(x, p):
        px = p * x
        return np.cos(px) + p * _sin_over(px)

    def zeros(x):
        # F = A cos(px - phi) with tan(phi) = 1/x
        if x == 0.0 or x * p_cut < 0.5 * math.pi:
            return np.empty(0)
        phi = math.atan2(1.0, x)
        k = np.arange(0, int((x * p_cut - phi) / math.pi) + 1)
        z = (phi + (k + 0.5) * math.pi) / x
        return z[z < p_cut]

    def slice_integral(x, c):
        edges = np.concatenate([[0.0], zeros(x), [p_cut]])
        # F log(F^2) = 2 F log|F|
        return integrate_panels(
            lambda p: 2.0 * np.exp(-p) / (1.0 + x * x) * xlogabs(F(x, p)), edges, c
        )

    r, X, tail, q = _outer_integral(
        slice_integral, 1.0, cfg.tightened(), (), True, x_max, (1.0,)
    )
    return PhaseSpaceEntropy(r.value, r.error_estimate, r.evaluations, r.converged, "2d", X, tail, q)
