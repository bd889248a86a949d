"""Discord can be positive while every MUB residual correlation vanishes.

Start from the classical-quantum state (|00><00| + |11><11|)/2, which is
correlated only in the Z basis, and mix in a little of |+><+| ⊗ rho_B.
The admixture is coherent in Z, so the state is no longer
classical-quantum and its discord is positive - yet, measured in any basis
unbiased to Z, Alice's outcome still tells Bob nothing.
"""

import numpy as np

import mubcorr as mc

ket0, ket1 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
plus = np.array([1.0, 1.0]) / np.sqrt(2)
proj = lambda v: np.outer(v, v.conj())
Z = mc.ProjectiveBasis.computational(2)

print(f"{'lambda':>7} {'C1':>8} {'Q2':>10} {'D':>8}")
for lam in (0.1, 0.25, 0.5, 0.75, 0.9, 0.99):
    rho = mc.make_counterexample(lam, Z, proj(plus), [0.5, 0.5], [proj(ket0), proj(ket1)])
    cv = mc.compute_correlation_vector(rho)
    D = mc.compute_discord(rho, c1=cv.entries[0])
    print(f"{lam:7.2f} {cv.entries[0]:8.4f} {cv.entries[1]:10.2e} {D:8.4f}")

print("\nFor comparison, the underlying classical-quantum state:")
cq = mc.classical_example()
print("  vector", np.round(mc.compute_correlation_vector(cq).entries, 6),
      " discord", round(mc.compute_discord(cq), 6))
