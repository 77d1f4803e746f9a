"""Phase-space entropy of flat harmonic-oscillator eigenstates.

Prints, per level n, the closed-form entropy, the same number from the
radial quadrature and from a numeric Wigner transform of the wavefunction
(n <= 1, slower), and the sum of position and momentum entropies next to
the BBM bound 1 - log 2. Run:  python demos/flat_oscillator.py
"""

import time

from curved_wigner import (
    BBM_BOUND,
    OscillatorFlatParams,
    flat_entropy_closed_form,
    flat_oscillator_state,
    momentum_entropy,
    phase_space_entropy,
    position_entropy,
    wigner_flat_closed,
    wigner_numeric,
)

print(f"{'n':>2} {'closed':>12} {'radial':>12} {'transform':>12} {'H_X+H_P':>10} {'bound':>8}")
for n in range(6):
    p = OscillatorFlatParams(n)
    psi = flat_oscillator_state(p)
    closed = flat_entropy_closed_form(n)
    radial = phase_space_entropy(wigner_flat_closed(p))
    # the numeric transform goes through the generic 2D quadrature: ~30 s each
    numeric = phase_space_entropy(wigner_numeric(psi)) if n <= 1 else float("nan")
    hxp = position_entropy(psi) + momentum_entropy(psi)
    print(f"{n:>2} {closed:12.9f} {radial:12.9f} {numeric:12.9f} {hxp:10.6f} {BBM_BOUND:8.5f}")

# n = 1: the phase-space entropy exceeds H_X + H_P, so the "mutual
# information" H_X + H_P - H_XP is negative
p = OscillatorFlatParams(1)
psi = flat_oscillator_state(p)
t = time.perf_counter()
d = position_entropy(psi) + momentum_entropy(psi) - phase_space_entropy(wigner_flat_closed(p))
print(f"\nn=1 H_X + H_P - H_XP = {d:.6f}  ({time.perf_counter() - t:.1f}s)")
