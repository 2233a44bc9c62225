"""
Scoring a round trip by the curvature it introduces
===================================================

If a reducer returns the original grid up to a rigid move, the pullback
metric of the round trip is flat and the score is zero.  Any bending or
folding shows up as nonzero sectional curvature, integrated into a single
L2 score.
"""

import numpy as np

from curvebench import EstimationConfig, roundtrip_score, unit_grid

grid = unit_grid(2, 32)
pts = grid.points()
config = EstimationConfig(method="metric_knn", k_neighbors=8, trim=2)

# Perfect recovery: the identity round trip.
print("identity:        ", roundtrip_score(grid, pts, config).score)

# Still perfect: a rigid move of the grid.
theta = 0.5
rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
print("rotation+shift:  ", roundtrip_score(grid, pts @ rot.T + [2.0, -1.0], config).score)

# A smooth warp: same-dimension diffeomorphisms still pull the flat metric
# back to a flat one.  The spline-the-function estimator sees that almost
# exactly; the KNN route carries a small boundary-stencil bias.
warped = np.column_stack([pts[:, 0], pts[:, 1] + 0.3 * pts[:, 0] ** 2])
spline_cfg = EstimationConfig(method="function_spline")
print("smooth shear:    ", roundtrip_score(grid, warped, spline_cfg).score,
      "(spline) /", roundtrip_score(grid, warped, config).score, "(knn)")

# A fold (the map stops being an immersion) is punished hard by both.
folded = np.column_stack([np.abs(pts[:, 0] - 0.5), pts[:, 1]])
print("fold at x=0.5:   ", roundtrip_score(grid, folded, config).score)

# Feeding the sphere patch exercises the estimator against a known answer:
# sectional curvature 1/r^2 everywhere.
u = pts[:, 0]
v = pts[:, 1]
r = 2.0
sphere = np.column_stack(
    [r * np.cos(u) * np.cos(v), r * np.sin(u) * np.cos(v), r * np.sin(v)]
)
fld = roundtrip_score(grid, sphere, EstimationConfig(rescale_output=False)).field
axis = grid.axes[0]
window = (axis >= 0.3) & (axis <= 0.7)
interior = fld.as_grid()[np.ix_(window, window)][..., 0]
print(f"sphere r={r}: interior K in [{interior.min():.4f}, {interior.max():.4f}]"
      f" (expected {1 / r**2})")
