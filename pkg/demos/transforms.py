"""Cayley and FC transforms between the disk and the upper half-plane models."""

import numpy as np

from jacobi_geometry import transform_lab as tl
from jacobi_geometry.group_atlas import ChartPoint, MetricParams

p = ChartPoint("ComplexHP", (0.0, 1.0, 0.0, 0.0))
print("Cayley sends (i, 0) to", tl.apply_map("Cayley", p).coords)

rng = np.random.default_rng(5)
for tag in tl.MAPS:
    worst = max(tl.round_trip_residual(tag, tl.random_map_point(rng, tag)) for _ in range(50))
    print(f"  round trip through {tag:12s} {worst:.1e}")

disk_point = ChartPoint("Disk", (0.4, -0.3, 0.7, 0.2))
print("\nthe two ways round the square from the disk agree to", f"{tl.diagram_residual(disk_point):.1e}")

params = MetricParams(alpha=1.0, gamma=1.0)
point = (0.3, 1.2, 0.4, -0.5)
form = tl.kahler_form_at("XJ1", params, point)
print("\nKahler two-form at", point)
print(np.round(form.matrix, 4))
print("from the potential:", f"{np.max(np.abs(tl.kahler_from_potential(params, point).matrix - form.matrix)):.1e}")
print("against the metric:", f"{tl.metric_consistency_residual(params, point):.1e}")
print("pulled back from the disk:", f"{tl.cayley_pullback_residual(params, point):.1e}")
