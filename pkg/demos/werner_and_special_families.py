"""Correlation measures across one-parameter families of two-qubit states.

Werner states are invariant under U⊗U, so every basis of A is as good as
any other: C1 = Q2 = Q3.  The entanglement of formation starts at zero
(separable region) and then overtakes the MUB correlations.

rho1 = p|psi-><psi-| + (1-p)|psi+><psi+| is perfectly correlated in Z,
so C1 = 1 for every p, while the residual correlation in the unbiased
bases drops to 1 - h(p).
"""

import numpy as np

import mubcorr as mc
from mubcorr import oracles

cfg = mc.OptimizerConfig(seed=1)

print("Werner, d = 2")
print(f"{'alpha':>6} {'C1':>8} {'Q2':>8} {'Q3':>8} {'D':>8} {'E_f':>8}")
for alpha in np.linspace(-1, 1, 9):
    rho = mc.make_werner(2, alpha)
    cv = mc.compute_correlation_vector(rho, cfg)
    D = mc.compute_discord(rho, cfg, c1=cv.entries[0])
    ef = oracles.werner_eof(2, alpha)
    print(f"{alpha:6.2f} " + " ".join(f"{v:8.4f}" for v in (*cv.entries, D, ef)))

# where does E_f overtake Q2?
alphas = np.linspace(0.0, 1.0, 201)
gap = [oracles.werner_eof(2, a) - oracles.werner_chi(2, a) for a in alphas]
cross = alphas[np.argmax(np.array(gap) > 0)]
print(f"\nE_f exceeds Q2 from alpha ~ {cross:.3f} on\n")

print("rho1 and rho2")
print(f"{'p':>5} | {'C1':>7} {'Q2':>7} {'Q3':>7} | {'C1':>7} {'Q2':>7} {'Q3':>7}")
for p in (0.0, 0.1, 0.25, 1 / 3, 0.5, 0.75, 1.0):
    v1 = mc.compute_correlation_vector(mc.make_rho1(p), cfg).entries
    v2 = mc.compute_correlation_vector(mc.make_rho2(p), cfg).entries
    print(f"{p:5.3f} | " + " ".join(f"{v:7.4f}" for v in v1) + " | "
          + " ".join(f"{v:7.4f}" for v in v2))
print("(for rho2 the optimal first axis switches from sigma_x to the tied\n"
      " sigma_y/sigma_z pair at p = 1/3, where both branches give 1 - h(1/3))")
