"""Special functions used by the closed-form oscillator expressions.

Hermite and Laguerre polynomials are evaluated by their three-term
recurrences, the exponential integral by a series / asymptotic /
continued-fraction splice, and the upper incomplete gamma function only for
integer order (the finite-sum form).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "EULER_GAMMA",
    "MathConstants",
    "CONSTANTS",
    "PolyCoefficients",
    "hermite",
    "laguerre",
    "laguerre_derivative",
    "hermite_coefficients",
    "laguerre_coefficients",
    "laguerre_roots",
    "exp_integral_ei",
    "incomplete_gamma_upper",
    "log_gamma",
    "RootPolishingError",
]

EULER_GAMMA = 0.57721566490153286061


@dataclass(frozen=True)
class MathConstants:
    euler_mascheroni: float = EULER_GAMMA
    pi: float = math.pi
    log2: float = math.log(2.0)


CONSTANTS = MathConstants()


class RootPolishingError(ArithmeticError):
    """Newton polishing of a polynomial root failed to converge."""


@dataclass(frozen=True)
class PolyCoefficients:
    """Real polynomial stored in ascending powers."""

    degree: int
    coefficients: tuple

    def __post_init__(self):
        if len(self.coefficients) != self.degree + 1:
            raise ValueError("need degree + 1 coefficients")
        if self.coefficients[-1] == 0:
            raise ValueError("leading coefficient must be nonzero")

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for c in reversed(self.coefficients):
            acc = acc * x + float(c)
        return acc


def hermite(n: int, x):
    """Physicists' Hermite polynomial H_n(x)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if h_prev.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if h.ndim else float(h)


def laguerre(n: int, x):
    """Laguerre polynomial L_n(x) (alpha = 0)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    l_prev = np.ones_like(x)
    if n == 0:
        return l_prev if l_prev.ndim else float(l_prev)
    l = 1.0 - x
    for k in range(1, n):
        l_prev, l = l, ((2 * k + 1 - x) * l - k * l_prev) / (k + 1)
    return l if l.ndim else float(l)


def _laguerre_pair(n, x):
    # (L_n(x), L_n'(x)) from x L_n' = n (L_n - L_{n-1})
    x = float(x)
    l_prev, l = 1.0, 1.0 - x
    d_prev, d = 0.0, -1.0
    for k in range(1, n):
        l_new = ((2 * k + 1 - x) * l - k * l_prev) / (k + 1)
        d_new = ((2 * k + 1 - x) * d - l - k * d_prev) / (k + 1)
        l_prev, l = l, l_new
        d_prev, d = d, d_new
    return l, d


def laguerre_derivative(n: int, x):
    if n == 0:
        return np.zeros_like(np.asarray(x, dtype=float))
    return np.vectorize(lambda t: _laguerre_pair(n, t)[1])(x)


def hermite_coefficients(n: int) -> PolyCoefficients:
    """Exact coefficients of H_n from the explicit sum, as floats."""
    c = [Fraction(0)] * (n + 1)
    for m in range(n // 2 + 1):
        c[n - 2 * m] = Fraction(
            (-1) ** m * math.factorial(n) * 2 ** (n - 2 * m),
            math.factorial(m) * math.factorial(n - 2 * m),
        )
    return PolyCoefficients(n, tuple(float(v) for v in c))


def laguerre_coefficients(n: int) -> PolyCoefficients:
    c = [
        Fraction((-1) ** k * math.comb(n, k), math.factorial(k)) for k in range(n + 1)
    ]
    return PolyCoefficients(n, tuple(float(v) for v in c))


def laguerre_roots(n: int, max_newton: int = 50) -> np.ndarray:
    """All roots of L_n in ascending order.

    Eigenvalues of the symmetric Jacobi matrix of the weight e^{-x} on
    [0, inf) give starting points; each is then Newton-polished on the
    recurrence. Polishing stops when the step falls to a few ulps or stops
    shrinking (the residual is then at the rounding floor of the recurrence,
    roughly ``|L_n'(r)| * ulp(r)``, which exceeds 1e-12 from n of about 7 on).

    Raises
    ------
    RootPolishingError
        if a root does not settle within ``max_newton`` steps or the roots
        come out unordered.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k = np.arange(n)
    diag = 2.0 * k + 1.0
    off = np.arange(1, n, dtype=float)
    jac = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    roots = np.linalg.eigvalsh(jac)
    out = np.empty(n)
    for i, r in enumerate(roots):
        last = np.inf
        for _ in range(max_newton):
            val, der = _laguerre_pair(n, r)
            if der == 0.0 or val == 0.0:
                break
            step = val / der
            if abs(step) >= last:
                # rounding noise: Newton has stopped contracting
                break
            r -= step
            last = abs(step)
            if last <= 4.0 * np.spacing(r):
                break
        else:
            raise RootPolishingError(f"root {i} of L_{n} did not converge")
        out[i] = r
    if np.any(np.diff(out) <= 0):
        raise RootPolishingError(f"roots of L_{n} not strictly increasing")
    return out


# ---------------------------------------------------------------------------
# exponential integral

_EI_SERIES_MAX = 40.0


def _ei_series(x):
    # gamma + ln|x| + sum_{k>=1} x^k / (k k!)
    term = 1.0
    total = 0.0
    k = 0
    while True:
        k += 1
        term *= x / k
        inc = term / k
        total += inc
        if abs(inc) <= 1e-17 * abs(total) or k > 500:
            break
    return EULER_GAMMA + math.log(abs(x)) + total


def _ei_asymptotic(x):
    # e^x / x * sum_k k! / x^k, truncated at the smallest term
    total = 1.0
    term = 1.0
    k = 0
    while True:
        k += 1
        nxt = term * k / x
        if abs(nxt) >= abs(term) or abs(nxt) < 1e-18:
            if abs(nxt) < 1e-18:
                total += nxt
            break
        term = nxt
        total += term
    return math.exp(x) / x * total


def _e1_continued_fraction(x):
    # E1(x) for x > 1, modified Lentz on the standard continued fraction
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, 1000):
        a = -float(i * i)
        b += 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < 1e-16:
            break
    return h * math.exp(-x)


def _ei_scalar(x: float) -> float:
    if x == 0.0:
        raise ValueError("Ei is singular at x = 0")
    if x > 0.0:
        if x <= _EI_SERIES_MAX:
            return _ei_series(x)
        return _ei_asymptotic(x)
    if x >= -1.0:
        return _ei_series(x)
    return -_e1_continued_fraction(-x)


def exp_integral_ei(x):
    """Principal-value exponential integral Ei(x) for real x != 0."""
    if np.ndim(x) == 0:
        return _ei_scalar(float(x))
    return np.vectorize(_ei_scalar, otypes=[float])(x)


def incomplete_gamma_upper(k: int, x):
    """Gamma(k, x) for integer k >= 1 via (k-1)! e^{-x} sum_{s<k} x^s/s!."""
    if int(k) != k or k < 1:
        raise ValueError("k must be a positive integer")
    k = int(k)
    x = np.asarray(x, dtype=float)
    term = np.ones_like(x)
    acc = np.ones_like(x)
    for s in range(1, k):
        term = term * x / s
        acc = acc + term
    out = math.factorial(k - 1) * np.exp(-x) * acc
    return out if out.ndim else float(out)


def log_gamma(x: float) -> float:
    if x <= 0:
        raise ValueError("log_gamma needs x > 0")
    return math.lgamma(x)
