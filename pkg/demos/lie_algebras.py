"""The Jacobi algebra inside sp(2, R): brackets, Killing forms and exponentials."""

import numpy as np

from jacobi_geometry import lie_core as lc

print("Generators F, G, H, P, Q, R are 4x4 real matrices.")
for name, x in zip(lc.JACOBI.labels, lc.JACOBI.generators):
    print(f"  {name}: trace {np.trace(x):+.0f}, nonzero entries {int(np.count_nonzero(x))}")

print("\nA few brackets, decomposed back onto the basis:")
for a, b in (("F", "G"), ("H", "P"), ("P", "Q"), ("F", "P")):
    x, y = (lc.JACOBI.generators[lc.JACOBI.labels.index(n)] for n in (a, b))
    coeffs = lc.JACOBI.coefficients(lc.commutator(x, y))
    terms = " ".join(f"{c:+g}{n}" for c, n in zip(coeffs, lc.JACOBI.labels) if abs(c) > 1e-12) or "0"
    print(f"  [{a},{b}] = {terms}")

print("\nThe Heisenberg part is an ideal; the Jacobi identity holds to",
      f"{lc.jacobi_identity_residual(lc.JACOBI):.1e}")

print("\nKilling forms computed as Tr(ad X ad Y):")
print("  sl(2, R) in (F, G, H):\n", np.round(lc.killing_matrix(lc.SL2), 12))
print("  su(2):\n", np.round(np.real(lc.killing_matrix(lc.SU2)), 12))
print("  su(1,1):\n", np.round(np.real(lc.killing_matrix(lc.SU11)), 12))

print("\nExponentials against their closed forms at t = 0.7:")
for name, (gen, closed) in lc.exp_closed_forms(0.7).items():
    print(f"  {name:10s} max error {np.max(np.abs(lc.matrix_exp(gen) - closed)):.1e}")
