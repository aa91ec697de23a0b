"""The limit law of the concomitant maxima (V1/n, V2/n).

Evaluates the two conditional limits H1 and H2, the joint limit cdf, and
shows the exact finite-sample cdf approaching it as n grows.
"""
import math

import numpy as np

from tailcord import ModelSpec, QuadratureConfig
from tailcord import asymptotics as A

clayton = ModelSpec.survival_clayton(2.0)
logistic = ModelSpec.logistic(0.5)
quad = QuadratureConfig(abs_tol=1e-12, rel_tol=1e-10)

print("H1 and H2 at x = y = 1")
for model in (clayton, logistic):
    print(f"  {model.family.value:>16}: H1 = {A.H1(model, 1.0, 1.0):.5f}, "
          f"H2 = {A.H2(model, 1.0, 1.0):.5f}")

# The stand-alone closed H2 for the survival Clayton model drops a 1/x in
# its exponent, so it only agrees with the product form at x = 1.
for x in (0.5, 1.0, 2.0):
    print(f"  x={x}: product H2 = {A.H2(clayton, 1.0, x):.5f}, "
          f"closed form = {A.H2_closed(clayton, 1.0, x):.5f}")

print("\nJoint limit cdf, k = 10")
for v1, v2 in [(1.0, 1.0), (5.0, 1.0), (50.0, 2.0), (1e6, 1e6)]:
    vals = [A.joint_limit_cdf(mod, 10, v1, v2, quad)[0] for mod in (clayton, logistic)]
    print(f"  ({v1:g}, {v2:g}): clayton {vals[0]:.6f}, logistic {vals[1]:.6f}")

# On the diagonal max(V1, V2) is the sample maximum of Y, so the value
# must be exp(-1/v) whatever k is.
for v in (0.5, 2.0):
    print(f"  diagonal v={v}: {A.joint_limit_cdf(clayton, 3, v, v, quad)[0]:.12f} "
          f"vs exp(-1/v) = {math.exp(-1 / v):.12f}")

print("\nFinite-sample cdf at (50n, 2n) approaching the limit")
limit = A.joint_limit_cdf(clayton, 10, 50.0, 2.0, quad)[0]
for n in (100, 1000, 10_000, 100_000):
    fin = A.finite_sample_cdf(clayton, n, 10, 50.0 * n, 2.0 * n, quad)[0]
    print(f"  n={n:>6}: {fin:.9f}  gap {abs(fin - limit):.2e}")

grid = np.array([(a, b) for a in (0.5, 2.0, 10.0) for b in (0.5, 2.0, 10.0)])
surf = A.limit_surface(logistic, 1, grid, quad)
print("\nlogistic k=1 surface:", np.round(surf.values, 4).reshape(3, 3).tolist())
