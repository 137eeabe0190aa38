"""Invariant metrics and their Killing fields."""

import numpy as np

from jacobi_geometry import metric_lab as ml
from jacobi_geometry.group_atlas import MetricParams, random_element

params = MetricParams(alpha=1.0, gamma=1.0)
point = (0.2, 1.5, 0.3, -0.4)
g = ml.metric_at("XJ1", params, point).matrix
print("Balanced metric on the Siegel-Jacobi upper half-plane at", point)
print(np.round(g, 4))
print("eigenvalues", np.round(np.linalg.eigvalsh(g), 4))

rng = np.random.default_rng(1)
element = random_element(rng, "GJ1")
print("\npullback under a random group element differs by",
      f"{ml.isometry_pullback_residual('XJ1', params, element, point):.1e}")

print("\nFundamental vector fields and |L_X g|:")
algebra = ml.ACTING_ALGEBRA["XJ1"]
for label, gen in zip(algebra.labels, algebra.generators):
    field = ml.FundamentalField("XJ1", gen)
    print(f"  {label}: X = {np.round(field.at(point), 4)}, |L_X g| = {ml.killing_norm(field, 'XJ1', params, point):.1e}")

print("\nModel surfaces:")
for space in ("Sphere2", "Disk1", "Plane2", ml.BCV(1.0, 0.5)):
    pts = [ml.random_corpus_point(rng, space) for _ in range(10)]
    rep = ml.corpus_killing_suite(space, pts)
    print(f"  {space}: worst Killing residual {max(rep['killing'].values()):.1e}, "
          f"worst bracket residual {max(rep['brackets'].values()):.1e}")
