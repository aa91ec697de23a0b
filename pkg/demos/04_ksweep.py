"""How the size of the top set changes V1 and V2.

Enlarging k moves candidates from the V2 pool into the V1 pool, so V2 can
only fall and V1 can only rise within each sample.
"""
import numpy as np

from tailcord import ModelSpec, run_replicates

model = ModelSpec.survival_clayton(2.0)
ks = [1, 10, 50, 250, 1000]
records = run_replicates(model, 10_000, ks, 300, 11, parallelism_hint=4)

v1 = np.array([[r.split(k).v1 for k in ks] for r in records])
v2 = np.array([[r.split(k).v2 for k in ks] for r in records])
print("   k   median V1   median V2   90% V2")
for j, k in enumerate(ks):
    print(f"{k:>5} {np.median(v1[:, j]):>11.1f} {np.median(v2[:, j]):>11.1f} "
          f"{np.quantile(v2[:, j], 0.9):>8.1f}")

print("V2 nonincreasing in k for every replicate:", bool(np.all(np.diff(v2, axis=1) <= 0)))
print("V1 nondecreasing in k for every replicate:", bool(np.all(np.diff(v1, axis=1) >= 0)))
