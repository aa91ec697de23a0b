"""Norming constants and the conditional tail limit for the Gaussian family.

The Gaussian pair has no extremal dependence, so the split maxima need a
different normalisation.  Here we print the constants and compare the
conditional exceedance frequency with its claimed limit for a few values
of the threshold, which plays the role of log n.
"""
import math

from tailcord import gaussian_norming as G

rho = 0.5
print("  n        a_n      b_n     a~_nE    b~_nE")
for n in (1e3, 1e5, 1e8):
    c = G.norming_constants(n, rho)
    print(f"{n:>6.0e} {c.a_n:8.5f} {c.b_n:8.5f} {c.a_tilde_nE:8.5f} {c.b_tilde_nE:8.5f}")

print(f"\nlimit at y=2: {G.gaussian_conditional_tail_limit(rho, 2.0):.5f}, "
      f"Mills form {G.mills_approx(rho, 2.0):.5f}")

# Exact tail-conditioned sampling lets the threshold go far beyond any
# feasible sample size.  Convergence in log n is slow.
for u in (10.0, 20.0, 50.0, 150.0):
    rep = G.validate_gaussian_limit(rho, u, [2.0], 400_000, 3)
    p = rep.points[0]
    print(f"log n = {u:>5}: frequency {p.empirical:.4f}, limit {p.limit:.4f}, "
          f"relative gap {p.rel_gap:.2f}")

pt = G.wt_model_point(math.log(1e5), rho, 2.0)
print(f"\nexceedance level zeta1 = {pt.zeta1:.4f}, kappa = {pt.kappa:.4f}, L1 = {pt.L1:.4f}")
