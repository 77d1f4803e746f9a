"""One-dimensional Riemannian metrics, unit conventions and chart changes.

A metric is stored as its single component g(x) > 0 on a (possibly
infinite) coordinate window. Chart changes x = f(y) carry an analytic
derivative so that pulled-back metrics and transformed wavefunctions are
free of differentiation error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "Units",
    "Metric1D",
    "Diffeomorphism",
    "flat_metric",
    "ads2_metric",
    "custom_metric",
    "lambda_factor",
    "volume_element",
    "pull_back_metric",
    "identity_map",
    "linear_map",
    "sinh_map",
    "tan_map",
]


@dataclass(frozen=True)
class Units:
    """Reduced Planck constant and Planck length (defaults 1).

    ``h = 2 pi hbar`` is derived.
    """

    hbar: float = 1.0
    planck_length: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and self.planck_length > 0):
            raise ValueError("hbar and planck_length must be positive")

    @property
    def h(self) -> float:
        return 2.0 * math.pi * self.hbar


@dataclass(frozen=True)
class Metric1D:
    """Metric component g(x) on the window ``domain``.

    Attributes
    ----------
    g : callable
        Vectorized x -> g(x) > 0.
    name : str
    params : dict
    domain : tuple
        Coordinate window, (-inf, inf) for the built-in metrics.
    """

    g: Callable
    name: str
    params: dict = field(default_factory=dict)
    domain: tuple = (-math.inf, math.inf)

    def __call__(self, x):
        return self.g(x)

    def sqrt_g(self, x):
        return np.sqrt(self.g(x))


def _flat_g(x):
    x = np.asarray(x, dtype=float)
    out = np.ones_like(x)
    return out if out.ndim else float(out)


def flat_metric() -> Metric1D:
    return Metric1D(_flat_g, "flat")


def ads2_metric(R: float) -> Metric1D:
    """Spatial slice of AdS2 in the chart where g = R^2 / (R^2 + x^2)."""
    R = float(R)
    if not R > 0:
        raise ValueError("radius R must be positive")
    r2 = R * R

    def g(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore"):
            out = r2 / (r2 + x * x)
        return out if out.ndim else float(out)

    return Metric1D(g, "ads2", {"R": R})


def custom_metric(g: Callable, name: str = "custom", domain=(-math.inf, math.inf), **params):
    return Metric1D(g, name, dict(params), tuple(domain))


def lambda_factor(m: Metric1D, x):
    """(det g)^{1/4}, the factor relating lambda- and ordinary wavefunctions."""
    return np.asarray(m.g(x), dtype=float) ** 0.25


def volume_element(m: Metric1D, x):
    return np.sqrt(np.asarray(m.g(x), dtype=float))


@dataclass(frozen=True)
class Diffeomorphism:
    """Orientation-preserving chart change x = forward(y).

    ``derivative`` is f'(y) > 0, supplied analytically. ``domain`` is the
    y-window mapped onto the x-window of the target metric.
    """

    forward: Callable
    derivative: Callable
    label: str
    domain: tuple = (-math.inf, math.inf)

    def __call__(self, y):
        return self.forward(y)

    def jacobian(self, y):
        return self.derivative(y)

    def compose(self, inner: "Diffeomorphism") -> "Diffeomorphism":
        """self o inner: y -> self(inner(y))."""
        f, df = self.forward, self.derivative
        g, dg = inner.forward, inner.derivative
        return Diffeomorphism(
            lambda y: f(g(y)),
            lambda y: df(g(y)) * dg(y),
            f"{self.label}o{inner.label}",
            inner.domain,
        )


def identity_map() -> Diffeomorphism:
    return Diffeomorphism(
        lambda y: np.asarray(y, dtype=float),
        lambda y: np.ones_like(np.asarray(y, dtype=float)),
        "identity",
    )


def linear_map(scale: float, shift: float = 0.0) -> Diffeomorphism:
    if not scale > 0:
        raise ValueError("scale must be positive")
    return Diffeomorphism(
        lambda y: scale * np.asarray(y, dtype=float) + shift,
        lambda y: np.full_like(np.asarray(y, dtype=float), scale),
        f"linear({scale:g},{shift:g})",
    )


def sinh_map(length: float = 1.0) -> Diffeomorphism:
    """x = L sinh(y / L)."""
    L = float(length)
    return Diffeomorphism(
        lambda y: L * np.sinh(np.asarray(y, dtype=float) / L),
        lambda y: np.cosh(np.asarray(y, dtype=float) / L),
        f"sinh({L:g})",
    )


def tan_map(length: float = 1.0) -> Diffeomorphism:
    """x = L tan(y / L) on y in (-pi L / 2, pi L / 2)."""
    L = float(length)
    return Diffeomorphism(
        lambda y: L * np.tan(np.asarray(y, dtype=float) / L),
        lambda y: 1.0 / np.cos(np.asarray(y, dtype=float) / L) ** 2,
        f"tan({L:g})",
        (-0.5 * math.pi * L, 0.5 * math.pi * L),
    )


def pull_back_metric(m: Metric1D, d: Diffeomorphism) -> Metric1D:
    """Metric in the y-chart: g'(y) = g(f(y)) f'(y)^2."""

    def g(y):
        return np.asarray(m.g(d.forward(y)), dtype=float) * np.asarray(
            d.derivative(y), dtype=float
        ) ** 2

    params = dict(m.params)
    params["chart"] = d.label
    return Metric1D(g, f"{m.name}|{d.label}", params, d.domain)
