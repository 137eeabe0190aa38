"""A Sasaki structure on SL(2, R) and why the extended Siegel-Jacobi space has none of this kind."""

import numpy as np

from jacobi_geometry import contact_lab as cl
from jacobi_geometry.group_atlas import MetricParams

params = MetricParams(alpha=1.0, beta=1.0)
s = cl.sl2_structure(params)
point = (0.2, 1.3, 0.4)
phi, xi, eta = s.values(point)
print("On SL(2, R) at", point)
print("  eta =", np.round(eta, 4), " xi =", np.round(xi, 4))
print("  Phi =\n", np.round(phi, 4))
print("  axioms:", {k: v for k, v in cl.almost_contact_residuals(s, point).items()})
print(f"  eta ^ d eta = {cl.contact_top_form('SL2R', s.eta, point):.6f} (2 beta / y^2 = {2 / 1.3 ** 2:.6f})")
print(f"  |N^1| = {np.max(np.abs(cl.nijenhuis_n1(s, point))):.1e}, with the other sign of Phi-hat "
      f"{np.max(np.abs(cl.nijenhuis_n1(s, point, convention='negative'))):.3f}")
print(f"  xi is Killing to {cl.xi_killing_residual(s, point):.1e}")
print("  cone:", cl.cone_checks(s, 1.5, point))

ext = cl.sasaki_report("ExtXJ1", MetricParams(alpha=1.0, gamma=1.0, delta=1.0),
                       [(0.1, 1.2, 0.3, -0.2, 0.5), (-0.4, 0.8, 1.0, 0.6, -1.1)])
print("\nExtended Siegel-Jacobi space with eta = lambda_6:", ext.verdict, "-", ext.reason)
print("  max |eta ^ (d eta)^2| =", ext.residuals["max_top_form"])
