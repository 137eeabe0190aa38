"""Natural reductivity of the half-plane, the Siegel-Jacobi space and its product model."""

from jacobi_geometry import geodesic_lab as gl
from jacobi_geometry.group_atlas import MetricParams

for alpha in (1.0, 2.5):
    params = MetricParams(alpha=alpha, gamma=0.7)
    x1 = gl.natural_reductivity_report("X1", params)
    xj = gl.natural_reductivity_report("XJ1", params)
    prod = gl.natural_reductivity_report("XJ1", params, split="product")
    print(f"alpha = {alpha}")
    print(f"  half-plane: {x1.verdict} (max residual {x1.max_residual:.1e})")
    print(f"  balanced metric: {xj.verdict}, witness {xj.witness} with value {xj.witness_value:+.6f}")
    print(f"  product metric in FC coordinates: {prod.verdict}")
