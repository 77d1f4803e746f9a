"""AdS2 oscillator ground states: phase-space entropy versus j.

For each j prints H_XP, H_X + H_P and the curved bound
H_X + H_P + <log sqrt g>, which H_XP should exceed. j = 1 uses the closed
form Wigner function, j >= 2 the residue sum. Large j take ~40 s each.

    python demos/ads2_ground_states.py [j_max] [R]
"""

import sys
import time

import numpy as np

from curved_wigner import (
    OscillatorAdS2GroundParams,
    QuadratureConfig,
    ads2_ground_state,
    bound_report,
    evaluate_grid,
    wigner_ads2_j1,
    wigner_ads2_residue,
)

j_max = int(sys.argv[1]) if len(sys.argv) > 1 else 4
R = float(sys.argv[2]) if len(sys.argv) > 2 else 1.0
cfg = QuadratureConfig(1e-9, 1e-9)

print(f"R = {R}, 1 - log 2 = {1 - np.log(2):.6f}")
print(f"{'j':>2} {'H_XP':>10} {'H_X+H_P':>10} {'bound':>10} {'margin':>9} {'min rho':>9} {'s':>6}")
for j in range(1, j_max + 1):
    t = time.perf_counter()
    psi = ads2_ground_state(OscillatorAdS2GroundParams(j, R))
    W = wigner_ads2_j1(R) if j == 1 else wigner_ads2_residue(j, R)
    r = bound_report(psi, W, cfg)
    # most negative value on a coarse grid, to show the state is not Wigner-positive
    neg = evaluate_grid(W, np.linspace(0.05, 4, 80) * R, np.linspace(0, 8, 160) / R).min()
    print(
        f"{j:>2} {r.H_phase_space:10.6f} {r.H_position + r.H_momentum:10.6f} "
        f"{r.conjectured_bound_rhs:10.6f} {r.H_phase_space - r.conjectured_bound_rhs:9.1e} "
        f"{neg:9.5f} {time.perf_counter() - t:6.1f}"
    )
