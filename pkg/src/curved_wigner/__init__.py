"""Wigner quasiprobability functions and invariant entropies on 1D slices.

Submodules: specfun (Hermite/Laguerre, Ei), quadrature (tanh-sinh and
Fourier integrals), geometry (metrics and charts), states, wigner, entropy,
report (CLI data emission).
"""

__version__ = "0.1.0"

from .entropy import (  # noqa: F401
    BBM_BOUND,
    EntropyReport,
    QuasiDistribution,
    bound_report,
    flat_entropy_closed_form,
    momentum_entropy,
    phase_space_entropy,
    phase_space_entropy_details,
    position_entropy,
    quasientropy_discrete,
)
from .geometry import Units, ads2_metric, flat_metric, linear_map, sinh_map  # noqa: F401
from .quadrature import IntegralResult, QuadratureConfig  # noqa: F401
from .states import (  # noqa: F401
    OscillatorAdS2GroundParams,
    OscillatorFlatParams,
    ads2_ground_state,
    flat_oscillator_state,
    reparametrize_state,
)
from .wigner import (  # noqa: F401
    WignerFunction,
    evaluate_grid,
    wigner_ads2_j1,
    wigner_ads2_residue,
    wigner_flat_closed,
    wigner_numeric,
)
