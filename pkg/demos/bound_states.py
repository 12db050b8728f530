"""
Bound states of the exponential well
====================================

The well V(x) = -g^2 exp(-|x|) binds at least one state for every
coupling g > 0.  Energies E_m = -kappa_m^2 come from order-zeros of
Bessel functions at the fixed argument 2g: even states solve
J'(2 kappa, 2g) = 0, odd states solve J(2 kappa, 2g) = 0, and the two
root families interlace strictly.

Run:  python demos/bound_states.py
"""

import numpy as np

from expwell import (
    PotentialParams,
    eigenfunction,
    find_spectrum,
    normalize,
    order_zeros,
)

# %% How the spectrum grows with the coupling
print("state count vs coupling")
print(f"{'g':>8}  {'count':>5}  kappa_0 .. kappa_max")
for g in (0.05, 0.5, 1.0, 1.2024, 1.2025, 2.0, 5.0, 10.0):
    s = find_spectrum(PotentialParams(g))
    kappas = ", ".join(f"{st.kappa:.4f}" for st in s.states[:4])
    more = " ..." if s.count > 4 else ""
    print(f"{g:8.4f}  {s.count:5d}  {kappas}{more}")
print()
print("note the second state appearing as 2g crosses the first zero of J_0")
print()

# %% The full table at g = 5, normalized
params = PotentialParams(5.0)
spectrum = normalize(find_spectrum(params))
print("g = 5 spectrum (normalized)")
print(f"{'m':>2} {'parity':>6} {'kappa':>12} {'energy':>12} {'norm':>10}")
for st in spectrum.states:
    print(f"{st.m:2d} {st.parity:>6} {st.kappa:12.8f} {st.energy:12.8f} "
          f"{st.norm_const:10.6f}")
print()

# %% Interlacing of the two order-zero families
zeros = order_zeros(params)
chain = []
for i in range(len(zeros.lam)):
    chain.append(("J'", zeros.lam[i]))
    if i < len(zeros.mu):
        chain.append(("J", zeros.mu[i]))
print(f"order-zero chain at argument 2g = {zeros.x_arg}:")
print("  " + " > ".join(f"{fam}:{v:.4f}" for fam, v in chain))
print()

# %% Wavefunction samples: parity and node structure are visible by eye
xs = np.linspace(-6.0, 6.0, 13)
print("psi_m(x) samples (columns m = 0..3)")
print(f"{'x':>6} " + " ".join(f"{('psi_' + str(m)):>11}" for m in range(4)))
for x in xs:
    row = " ".join(f"{eigenfunction(spectrum.states[m], params, float(x)):11.6f}"
                   for m in range(4))
    print(f"{x:6.2f} {row}")
print()
print("even columns are symmetric, odd columns antisymmetric; state m")
print("changes sign m times across the line")
