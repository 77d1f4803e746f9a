"""Figure/table data emission and the verification suites behind the CLI.

Every command returns a :class:`FigureTable`; writers turn it into CSV
(``#``-prefixed provenance lines, then a header row) or JSON
(``{schema_version, config, rows, provenance}``). Output depends only on
the configuration, so reruns are bit-identical.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from .entropy import (
    BBM_BOUND,
    appendix_integral,
    appendix_integral_quadrature,
    bound_report,
    flat_entropy_closed_form,
    flat_violation_closed_form,
    footnote_integral,
    momentum_entropy,
    phase_space_entropy_details,
    phase_space_normalization,
    position_entropy,
    quasientropy_two_state,
)
from .geometry import Units
from .quadrature import QuadratureConfig
from .states import (
    OscillatorAdS2GroundParams,
    OscillatorFlatParams,
    ads2_ground_state,
    ads2_momentum_closed,
    flat_oscillator_state,
)
from .wigner import (
    evaluate_grid,
    marginal_momentum,
    marginal_position,
    wigner_ads2_j1,
    wigner_ads2_residue,
    wigner_flat_closed,
)

__all__ = [
    "SCHEMA_VERSION",
    "ConfigError",
    "RunConfig",
    "FigureTable",
    "Check",
    "cmd_quasientropy_curve",
    "cmd_flat_levels",
    "cmd_ads2_levels",
    "cmd_wigner_grid",
    "cmd_verify",
    "read_csv",
]

SCHEMA_VERSION = 1
COMMANDS = ("quasientropy-curve", "flat-levels", "ads2-levels", "wigner-grid", "verify")
SUITES = ("all", "bounds", "marginals", "closedforms")
UNITS_NOTE = "hbar = l_P = 1 unless stated; entropies in nats"


class ConfigError(ValueError):
    """Invalid run configuration (CLI exit status 2)."""


@dataclass
class RunConfig:
    command: str
    geometry: str = "flat"
    n_max: int = 5
    j_max: int = 8
    radius: float = 1.0
    alpha: float = 1.0
    tol: float = 1e-8
    out: str | None = None
    fmt: str = "csv"
    level: int = 0
    p_min: float = -1.0
    p_max: float = 2.0
    steps: int = 301
    x_range: tuple = (-4.0, 4.0)
    p_range: tuple = (-4.0, 4.0)
    nx: int = 81
    np_: int = 81
    suite: str = "all"
    perturbation: float = 0.0

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.geometry not in ("flat", "ads2"):
            raise ConfigError("geometry must be 'flat' or 'ads2'")
        if self.fmt not in ("csv", "json"):
            raise ConfigError("format must be 'csv' or 'json'")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise ConfigError("tolerance must be positive")
        if not 0 <= self.n_max <= 10:
            raise ConfigError("n-max must lie in 0..10")
        if not 1 <= self.j_max <= 8:
            raise ConfigError("j-max must lie in 1..8")
        if not (self.radius > 0 and self.alpha > 0):
            raise ConfigError("radius and alpha must be positive")
        if self.level < 0 or (self.geometry == "ads2" and self.level < 1):
            raise ConfigError("level must be n >= 0 (flat) or j >= 1 (ads2)")
        if not self.p_min < self.p_max or self.steps < 2:
            raise ConfigError("need p-min < p-max and at least 2 steps")
        for lo, hi in (self.x_range, self.p_range):
            if not lo < hi:
                raise ConfigError("empty grid range")
        if self.nx < 2 or self.np_ < 2 or self.nx * self.np_ > 10**6:
            raise ConfigError("grid must have 2..1e6 points per side product")
        if self.suite not in SUITES:
            raise ConfigError(f"suite must be one of {SUITES}")
        return self

    def quadrature(self) -> QuadratureConfig:
        return QuadratureConfig(abs_tol=self.tol, rel_tol=self.tol)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["x_range"] = list(self.x_range)
        d["p_range"] = list(self.p_range)
        return d


@dataclass
class FigureTable:
    """Rectangular table of reals plus a provenance block."""

    columns: list
    rows: list
    provenance: dict
    config: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.provenance:
            raise ValueError("provenance must not be empty")
        w = len(self.columns)
        if any(len(r) != w for r in self.rows):
            raise ValueError("table is not rectangular")
        self.rows = [[float(v) for v in r] for r in self.rows]

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        for k, v in self.provenance.items():
            buf.write(f"# {k}: {json.dumps(v, sort_keys=True)}\n")
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        # repr() round-trips doubles exactly
        for r in self.rows:
            w.writerow([repr(v) for v in r])
        return buf.getvalue()

    def to_json(self) -> str:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "config": self.config,
            "rows": [dict(zip(self.columns, r)) for r in self.rows],
            "provenance": self.provenance,
        }
        return json.dumps(doc, indent=2, sort_keys=True, allow_nan=True)

    def write(self, path: str | None, fmt: str = "csv") -> str:
        text = self.to_csv() if fmt == "csv" else self.to_json()
        if path:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text)
        return text


def read_csv(text: str) -> FigureTable:
    """Parse :meth:`FigureTable.to_csv` output back into a table."""
    prov, body = {}, []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, val = line[1:].strip().partition(": ")
            prov[key] = json.loads(val)
        elif line:
            body.append(line)
    rows = list(csv.reader(body))
    return FigureTable(rows[0], [[float(v) for v in r] for r in rows[1:]], prov)


def _provenance(command: str, cfg: QuadratureConfig | None, **params) -> dict:
    from . import __version__

    out = {"command": command, "params": params, "units": UNITS_NOTE, "version": __version__}
    if cfg is not None:
        out["tolerances"] = {"abs_tol": cfg.abs_tol, "rel_tol": cfg.rel_tol}
    return out


# ---------------------------------------------------------------------------
# figure commands


def cmd_quasientropy_curve(p_min: float = -1.0, p_max: float = 2.0, steps: int = 301) -> FigureTable:
    """H(p, 1 - p) for a two-outcome quasiprobability; flags H < 0."""
    if not p_min < p_max:
        raise ConfigError("p_min must be below p_max")
    ps = np.linspace(p_min, p_max, steps)
    rows = []
    for p in ps:
        h = quasientropy_two_state(float(p))
        rows.append([p, h, 1.0 if h < 0 else 0.0])
    return FigureTable(
        ["p", "entropy", "negative"],
        rows,
        _provenance("quasientropy-curve", None, p_min=p_min, p_max=p_max, steps=steps),
    )


def cmd_flat_levels(n_max: int = 5, alpha: float = 1.0, cfg: QuadratureConfig | None = None) -> FigureTable:
    """Per level n: closed-form and numeric H_{X,P}, H_X + H_P, BBM bound."""
    cfg = cfg or QuadratureConfig(1e-8, 1e-8)
    rows = []
    for n in range(n_max + 1):
        params = OscillatorFlatParams.from_alpha(n, alpha)
        W = wigner_flat_closed(params)
        psi = flat_oscillator_state(params)
        num = phase_space_entropy_details(W, cfg, method="radial")
        hx = position_entropy(psi, cfg)
        hp = momentum_entropy(psi, cfg)
        rows.append([n, flat_entropy_closed_form(n), num.value, hx + hp, BBM_BOUND])
    return FigureTable(
        ["n", "H_XP_closed", "H_XP_numeric", "H_X_plus_H_P", "bbm_bound"],
        rows,
        _provenance("flat-levels", cfg, n_max=n_max, alpha=alpha),
    )


def _ads2_pair(j: int, R: float, units: Units | None = None):
    W = wigner_ads2_j1(R, units) if j == 1 else wigner_ads2_residue(j, R, units)
    psi = ads2_ground_state(OscillatorAdS2GroundParams(j, R, units=units or Units()))
    return psi, W


def cmd_ads2_levels(j_max: int = 8, R: float = 1.0, cfg: QuadratureConfig | None = None) -> FigureTable:
    """Per j: H_{X,P}, H_X + H_P, the curved conjectured bound and BBM."""
    cfg = cfg or QuadratureConfig(1e-8, 1e-8)
    rows = []
    for j in range(1, j_max + 1):
        psi, W = _ads2_pair(j, R)
        rep = bound_report(psi, W, cfg)
        rows.append(
            [
                j,
                rep.H_phase_space,
                rep.H_position + rep.H_momentum,
                rep.conjectured_bound_rhs,
                rep.bbm_bound,
            ]
        )
    return FigureTable(
        ["j", "H_XP", "H_X_plus_H_P", "conjectured_bound", "bbm_bound"],
        rows,
        _provenance("ads2-levels", cfg, j_max=j_max, R=R),
    )


def cmd_wigner_grid(
    geometry: str = "ads2",
    params: dict | None = None,
    x_range=(-4.0, 4.0),
    p_range=(-4.0, 4.0),
    nx: int = 81,
    np_: int = 81,
) -> FigureTable:
    """rho on a tensor grid as rows (x, p, rho).

    ``params``: flat {'n', 'alpha'}, ads2 {'j', 'R'}.
    """
    params = dict(params or {})
    if nx * np_ > 10**6:
        raise ConfigError("grid larger than 1e6 points")
    if geometry == "flat":
        n, alpha = int(params.get("n", 0)), float(params.get("alpha", 1.0))
        W = wigner_flat_closed(OscillatorFlatParams.from_alpha(n, alpha))
        label = {"n": n, "alpha": alpha}
    elif geometry == "ads2":
        j, R = int(params.get("j", 1)), float(params.get("R", 1.0))
        _, W = _ads2_pair(j, R)
        label = {"j": j, "R": R}
    else:
        raise ConfigError("geometry must be 'flat' or 'ads2'")
    xs = np.linspace(*x_range, nx)
    ps = np.linspace(*p_range, np_)
    grid = evaluate_grid(W, xs, ps)
    X, P = np.meshgrid(xs, ps, indexing="ij")
    rows = np.stack([X.ravel(), P.ravel(), grid.ravel()], axis=1).tolist()
    prov = _provenance(
        "wigner-grid", None, geometry=geometry, state=W.label, x_range=list(x_range),
        p_range=list(p_range), nx=nx, np=np_, **label,
    )
    return FigureTable(["x", "p", "rho"], rows, prov)


# ---------------------------------------------------------------------------
# verification


@dataclass
class Check:
    name: str
    expected: float
    actual: float
    tolerance: float
    passed: bool
    note: str = ""


def _run_check(checks: list, name: str, expected, compute: Callable, tol: float, relation: str = "eq"):
    """Append one check; exceptions become failed checks, never abort."""
    try:
        actual = float(compute())
        if relation == "eq":
            ok = abs(actual - expected) <= tol
        elif relation == "ge":
            ok = actual >= expected - tol
        else:
            ok = actual <= expected + tol
        checks.append(Check(name, float(expected), actual, tol, bool(ok), relation))
    except Exception as exc:  # reported, not raised: batch runs must finish
        checks.append(Check(name, float(expected), math.nan, tol, False, f"error: {exc!r}"))


def _suite_closedforms(cfg, checks):
    for n in range(6):
        W = wigner_flat_closed(OscillatorFlatParams(n))
        _run_check(
            checks, f"flat n={n} entropy closed vs quadrature", flat_entropy_closed_form(n),
            lambda W=W: phase_space_entropy_details(W, cfg).value, 1e-5,
        )
    for n in range(1, 6):
        _run_check(
            checks, f"log-Laguerre integral n={n}", appendix_integral(n),
            lambda n=n: appendix_integral_quadrature(n).value, 1e-8,
        )
    _run_check(checks, "oscillatory footnote integral", math.pi / 2, lambda: footnote_integral().value, 1e-9)
    xs = np.linspace(-3.0, 3.0, 51)
    ps = np.linspace(-3.0, 3.0, 51)
    _run_check(
        checks, "ads2 j=1 residue sum vs closed form", 0.0,
        lambda: np.max(np.abs(evaluate_grid(wigner_ads2_residue(1, 1.0), xs, ps)
                              - evaluate_grid(wigner_ads2_j1(1.0), xs, ps))),
        1e-10,
    )
    _run_check(
        checks, "ads2 j=1 entropy", math.log(2.0) - 0.5,
        lambda: phase_space_entropy_details(wigner_ads2_j1(1.0), cfg).value, 1e-6,
    )
    for n in range(3):
        W = wigner_flat_closed(OscillatorFlatParams(n))
        _run_check(checks, f"flat n={n} normalization", 1.0, lambda W=W: phase_space_normalization(W, cfg), 1e-8)


def _suite_bounds(cfg, checks, perturbation=0.0):
    psi0 = flat_oscillator_state(OscillatorFlatParams(0))
    r0 = bound_report(psi0, wigner_flat_closed(OscillatorFlatParams(0)), cfg)
    _run_check(checks, "flat n=0 BBM saturation", BBM_BOUND,
               lambda: r0.H_position + r0.H_momentum + perturbation, 1e-9)
    _run_check(checks, "flat n=0 phase-space entropy", BBM_BOUND,
               lambda: r0.H_phase_space + perturbation, 1e-6)
    psi1 = flat_oscillator_state(OscillatorFlatParams(1))
    r1 = bound_report(psi1, wigner_flat_closed(OscillatorFlatParams(1)), cfg)
    _run_check(checks, "flat n=1 mutual-information defect", flat_violation_closed_form(),
               lambda: r1.mutual_info_defect + perturbation, 1e-4)
    _run_check(checks, "flat n=1 BBM", BBM_BOUND, lambda: r1.H_position + r1.H_momentum + perturbation,
               1e-9, "ge")
    psi, W = _ads2_pair(1, 1.0)
    ra = bound_report(psi, W, cfg, momentum_density=lambda p: np.abs(ads2_momentum_closed(1, 1.0)(p)) ** 2)
    _run_check(checks, "ads2 j=1 decomposition identity", ra.H_phase_space,
               lambda: ra.conjectured_bound_rhs + perturbation, 1e-6)
    _run_check(checks, "ads2 j=1 BBM", BBM_BOUND, lambda: ra.H_position + ra.H_momentum + perturbation,
               1e-9, "ge")


def _suite_marginals(cfg, checks):
    W = wigner_ads2_j1(1.0)
    xs = np.linspace(-3.0, 3.0, 11)
    ps = np.linspace(-3.0, 3.0, 11)
    _run_check(
        checks, "ads2 j=1 position marginal", 0.0,
        lambda: np.max(np.abs(marginal_position(W, cfg)(xs) - (2 / np.pi) / (1 + xs**2) ** 2)), 1e-8,
    )
    _run_check(
        checks, "ads2 j=1 momentum marginal", 0.0,
        lambda: np.max(np.abs(marginal_momentum(W, cfg)(ps) - np.exp(-2 * np.abs(ps)))), 1e-8,
    )
    for n in range(3):
        p = OscillatorFlatParams(n)
        Wn, psi = wigner_flat_closed(p), flat_oscillator_state(p)
        _run_check(
            checks, f"flat n={n} position marginal", 0.0,
            lambda Wn=Wn, psi=psi: np.max(np.abs(marginal_position(Wn, cfg)(xs) - psi.density(xs))), 1e-8,
        )


def cmd_verify(suite: str = "all", cfg: QuadratureConfig | None = None, perturbation: float = 0.0):
    """Run verification suites; return (exit status, report dict).

    Status 0 when every check passes, 1 otherwise. ``perturbation`` is added
    to every entropy compared in the bounds suite (a hook for testing that
    failures are detected).
    """
    if suite not in SUITES:
        raise ConfigError(f"suite must be one of {SUITES}")
    cfg = cfg or QuadratureConfig(1e-10, 1e-10)
    checks: list = []
    if suite in ("all", "closedforms"):
        _suite_closedforms(cfg, checks)
    if suite in ("all", "bounds"):
        _suite_bounds(cfg, checks, perturbation)
    if suite in ("all", "marginals"):
        _suite_marginals(cfg, checks)
    status = 0 if all(c.passed for c in checks) else 1
    report = {
        "schema_version": SCHEMA_VERSION,
        "suite": suite,
        "passed": status == 0,
        "checks": [asdict(c) for c in checks],
        "provenance": _provenance("verify", cfg, suite=suite, perturbation=perturbation),
    }
    return status, report
