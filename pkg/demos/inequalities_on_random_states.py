"""Entropic bounds on random mixed states.

For any pair of mutually unbiased bases on A,

    C1 + Q2 <= H1 + H2 + S(B) - S(AB) - log d     (H_i: outcome entropies)

which follows from the uncertainty relation with quantum memory
S(A1|B) + S(A2|B) >= log d + S(A|B).  Replacing H1 + H2 - log d by log d
gives a weaker, state-independent bound.  The EPR state saturates both.
"""

import mubcorr as mc

cfg = mc.OptimizerConfig(restarts=16)

print(f"{'dims':>5} {'seed':>4} {'C1+Q2':>7} {'bound':>7} {'relaxed':>7} {'EUR slack':>9}")
for dims in ((2, 2), (2, 3), (3, 3)):
    for seed in range(3):
        rho = mc.sample_random_state(*dims, seed=seed)
        cv = mc.compute_correlation_vector(rho, cfg)
        rep = mc.check_inequality_9(rho, cv)
        eur = mc.check_uncertainty_relation(rho, *cv.optimum_bases[:2])
        print(f"{dims[0]}x{dims[1]:<3} {seed:4d} {rep.lhs:7.4f} {rep.rhs:7.4f} "
              f"{rep.relaxed_rhs:7.4f} {eur.slack:9.4f}")

epr = mc.bell_state("psi-")
rep = mc.check_inequality_9(epr, mc.compute_correlation_vector(epr))
print(f"\nEPR: C1 + Q2 = {rep.lhs:.6f}, bound = {rep.rhs:.6f} (slack {rep.slack:.1e})")
