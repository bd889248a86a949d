"""Acceptance criteria, one test per criterion.

Each test records a single ``[PASS]``/``[FAIL]`` line (collected in the
"acceptance criteria" section of the pytest summary) with the measured
worst case, then asserts.  Closed-form references come from
:mod:`mubcorr.oracles`, which is itself checked against direct
evaluation in ``test_oracles.py``; the brute-force grid below is written
out independently of the library kernels.
"""

import numpy as np
import pytest
from scipy.optimize import minimize

from mubcorr import campaigns, oracles, qmath, states
from mubcorr.corrvec import (OptimizerConfig, check_inequality_9, compute_c1,
                             compute_correlation_vector, compute_symmetric_vector)
from mubcorr.measure import ProjectiveBasis
from mubcorr.mub import standard_mub_family

CFG = OptimizerConfig()
# the fuzzing campaign only needs *some* optimiser-chosen MU pair: the
# inequalities hold for every such pair, so fewer restarts suffice
FUZZ_CFG = OptimizerConfig(restarts=8)

KET0, KET1 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
PLUS = np.array([1.0, 1.0]) / np.sqrt(2)


def proj(v):
    return np.outer(v, np.conj(v))


def h(x):
    return qmath.binary_entropy(x)


def column(rows, name):
    return np.array([r[name] for r in rows])


@pytest.fixture(scope="module")
def werner_rows():
    out = {}
    for d in (2, 3):
        spec = campaigns.SweepSpec("werner", -1.0, 1.0, 81, d=d)
        out[d] = campaigns.run_sweep(spec, CFG, workers=0)
    return out


# 1 -------------------------------------------------------------------------

def test_criterion_1_werner_sweeps(werner_rows, report):
    worst_c1 = worst_q2 = worst_ef = worst_d = 0.0
    min_d_gap = np.inf
    for d, rows in werner_rows.items():
        alpha = column(rows, "parameter")
        chi = np.array([oracles.werner_chi(d, a) for a in alpha])
        ef = np.array([oracles.werner_eof(d, a) for a in alpha])
        mi = np.array([states.make_werner(d, a).mutual_information() for a in alpha])
        c1, q2, D = column(rows, "C1"), column(rows, "Q2"), column(rows, "D")
        worst_c1 = max(worst_c1, np.abs(c1 - chi).max())
        worst_q2 = max(worst_q2, np.abs(q2 - chi).max())
        worst_ef = max(worst_ef, np.abs(column(rows, "Ef") - ef).max())
        worst_d = max(worst_d, np.abs(D - np.maximum(mi - c1, 0.0)).max())
        min_d_gap = min(min_d_gap, (D + 1e-6 - q2).min())
        assert np.allclose(column(rows, "C1_closed"), chi, atol=1e-14)
    ok = (worst_c1 <= 1e-4 and worst_q2 <= 1e-4 and worst_ef <= 1e-12
          and worst_d <= 1e-12 and min_d_gap >= 0)
    report("criterion 1: Werner sweeps d=2,3 (81 pts)", ok,
           f"max|C1-chi_w|={worst_c1:.2e} max|Q2-chi_w|={worst_q2:.2e} "
           f"max|Ef-closed|={worst_ef:.1e} min(D+1e-6-Q2)={min_d_gap:.2e}")
    assert ok


def test_criterion_1_ef_crosses_q2(werner_rows, report):
    rows = [r for r in werner_rows[2] if 0.0 < r["parameter"] < 1.0]
    diff = column(rows, "Ef") - column(rows, "Q2")
    crossings = int(np.sum(np.diff(np.sign(diff)) != 0))
    ok = crossings >= 1
    report("criterion 1 (shape): E_f crosses Q2 for d=2, alpha in (0,1)", ok,
           f"{crossings} sign change(s)")
    assert ok


# 2 -------------------------------------------------------------------------

def test_criterion_2_bell_diagonal_oracle(report):
    res = campaigns.run_campaign("oracle-match", 100, seed=2024, cfg=CFG, workers=0)
    ok = res.passed and res.max_deviation <= 1e-4
    report("criterion 2: 100 Bell-diagonal states vs closed form", ok,
           f"max|delta|={res.max_deviation:.2e}, failures={res.failures}")
    assert ok


# 3 -------------------------------------------------------------------------

def test_criterion_3_special_families(report):
    p_grid = np.unique(np.concatenate([np.linspace(0, 1, 81), [1 / 3 - 1e-3, 1 / 3, 1 / 3 + 1e-3]]))
    worst = {"rho1 C1": 0.0, "rho1 Q2": 0.0, "rho1 Q3": 0.0, "rho2 C1": 0.0, "rho2 Q2": 0.0}
    branch_switch = set()
    for p in p_grid:
        cv = compute_correlation_vector(states.make_rho1(p), CFG)
        q = 1 - h(p)
        worst["rho1 C1"] = max(worst["rho1 C1"], abs(cv.entries[0] - 1.0))
        worst["rho1 Q2"] = max(worst["rho1 Q2"], abs(cv.entries[1] - q))
        worst["rho1 Q3"] = max(worst["rho1 Q3"], abs(cv.entries[2] - q))

        cv = compute_correlation_vector(states.make_rho2(p), CFG)
        a, b = 1 - h(p), 1 - h((1 + p) / 2)
        worst["rho2 C1"] = max(worst["rho2 C1"], abs(cv.entries[0] - max(a, b)))
        worst["rho2 Q2"] = max(worst["rho2 Q2"], abs(cv.entries[1] - b))
        if abs(a - b) > 1e-3:
            branch_switch.add(a > b)
    ok = (worst["rho1 C1"] <= 1e-5 and max(worst["rho1 Q2"], worst["rho1 Q3"]) <= 1e-4
          and max(worst["rho2 C1"], worst["rho2 Q2"]) <= 1e-4 and branch_switch == {True, False})
    report("criterion 3: rho1/rho2 sweeps incl. crossover p=1/3", ok,
           " ".join(f"{k}:{v:.1e}" for k, v in worst.items()))
    assert ok


# 4 -------------------------------------------------------------------------

def test_criterion_4_pure_and_cq(report):
    rng = np.random.default_rng(44)
    worst_pure = 0.0
    for k in range(50):
        d = int(rng.choice([2, 3]))
        lam = rng.dirichlet(np.ones(d))
        ua = ProjectiveBasis(states.random_unitary(d, rng))
        ub = ProjectiveBasis(states.random_unitary(d, rng))
        st = states.make_pure_from_schmidt(lam, ua, ub)
        s_b = qmath.shannon_entropy(lam)
        cv = compute_correlation_vector(st, CFG)
        worst_pure = max(worst_pure, np.abs(np.asarray(cv.entries) - s_b).max())

    worst_c1, worst_q = 0.0, 0.0
    for k in range(50):
        dA, dB = int(rng.choice([2, 3])), int(rng.choice([2, 3]))
        q = rng.dirichlet(np.ones(dA))
        basis = ProjectiveBasis(states.random_unitary(dA, rng))
        sigmas = [states.sample_random_state(dB, 2, seed=int(rng.integers(2**31))).marginal("A")
                  for _ in range(dA)]
        st = states.make_cq(q, basis, sigmas)
        cv = compute_correlation_vector(st, CFG)
        chi = oracles.oracle_cq(q, sigmas).vector[0]
        worst_c1 = max(worst_c1, abs(cv.entries[0] - chi))
        worst_q = max(worst_q, max(cv.entries[1:3]))
    ok = worst_pure <= 1e-4 and worst_c1 <= 1e-4 and worst_q <= 1e-6
    report("criterion 4: 50 pure + 50 CQ states", ok,
           f"pure max|C-S_B|={worst_pure:.1e} CQ max|C1-chi|={worst_c1:.1e} "
           f"max(Q2,Q3)={worst_q:.1e}")
    assert ok


# 5 -------------------------------------------------------------------------

def test_criterion_5_counterexample(report):
    st = states.make_counterexample(0.5, ProjectiveBasis.computational(2), proj(PLUS),
                                    [0.5, 0.5], [proj(KET0), proj(KET1)])
    cv = compute_correlation_vector(st, CFG)
    D = st.mutual_information() - cv.entries[0]
    ok = cv.entries[1] <= 1e-6 and D >= 1e-4
    report("criterion 5: coherent admixture has Q2=0 but D>0", ok,
           f"Q2={cv.entries[1]:.1e} D={D:.4f}")
    assert ok


# 6 -------------------------------------------------------------------------

def test_criterion_6_inequality_fuzzing(report):
    results = [campaigns.run_campaign("inequalities", 1000, dims, seed=6, cfg=FUZZ_CFG,
                                      workers=0)
               for dims in ((2, 2), (2, 3), (3, 3))]
    epr = states.bell_state("psi-")
    tight = check_inequality_9(epr, compute_correlation_vector(epr, CFG))
    ok = all(r.passed for r in results) and abs(tight.slack) <= 1e-6
    detail = "; ".join(f"{r.dims}: min slack {r.min_slack:.2e}" for r in results)
    report("criterion 6: 3x1000 Ginibre states, MUB inequality + relaxation + EUR, EPR tight", ok,
           f"{detail}; EPR slack {tight.slack:.1e}")
    assert ok


# 7 -------------------------------------------------------------------------

def test_criterion_7_symmetric_dominance(report):
    res = campaigns.run_campaign("dominance", 200, (2, 2), seed=7, cfg=CFG, workers=0)
    special = {
        "CQ": states.make_cq([0.3, 0.7], ProjectiveBasis.computational(2),
                             [np.diag([0.9, 0.1]), np.diag([0.2, 0.8])]),
        "CQ3": states.make_cq([0.2, 0.5, 0.3], ProjectiveBasis.computational(3),
                              [np.diag([1, 0.0]), np.diag([0.5, 0.5]), np.diag([0.1, 0.9])]),
        "Werner2": states.make_werner(2, 0.6),
        "Werner3": states.make_werner(3, -0.5),
        "Bell": states.make_bell_diagonal([0.4, -0.35, 0.2]),
    }
    worst = 0.0
    for st in special.values():
        sv = compute_symmetric_vector(st, CFG)
        cv = compute_correlation_vector(st, CFG)
        m = min(sv.M, cv.M)  # the symmetric vector is limited by both sides' levels
        worst = max(worst, np.abs(np.asarray(sv.entries[:m]) - np.asarray(cv.entries[:m])).max())
    ok = res.passed and worst <= 2e-4
    report("criterion 7: symmetric <= asymmetric (200 states); equal on CQ/Werner/Bell", ok,
           f"max(sym-asym)={res.max_deviation:.1e} max|sym-asym| special={worst:.1e}")
    assert ok


# 8 -------------------------------------------------------------------------

def test_criterion_8a_local_unitary_invariance(report):
    rng = np.random.default_rng(88)
    worst = 0.0
    for dims, n in (((2, 2), 6), ((2, 3), 4), ((3, 2), 3), ((3, 3), 2)):
        for _ in range(n):
            st = states.sample_random_state(*dims, seed=int(rng.integers(2**31)))
            moved = states.apply_local_unitaries(st, states.random_unitary(dims[0], rng),
                                                 states.random_unitary(dims[1], rng))
            a = compute_correlation_vector(st, CFG).entries
            b = compute_correlation_vector(moved, CFG).entries
            worst = max(worst, np.abs(np.asarray(a) - np.asarray(b)).max())
    ok = worst <= 2e-4
    report("criterion 8a: local-unitary invariance", ok, f"max|delta|={worst:.1e}")
    assert ok


def test_criterion_8b_mub_overlaps(report):
    worst = 0.0
    for d in (2, 3, 5, 7, 11, 13):
        fam = standard_mub_family(d)
        for i, a in enumerate(fam.bases):
            for b in fam.bases[i + 1:]:
                ov = np.abs(a.matrix.conj().T @ b.matrix) ** 2
                worst = max(worst, np.abs(ov - 1.0 / d).max())
    ok = worst <= 1e-9
    report("criterion 8b: MUB family overlaps (primes <= 13)", ok, f"max err={worst:.1e}")
    assert ok


def _grid_holevo(rho, dB, theta, phi):
    """Holevo quantity for qubit bases with first vector at Bloch (theta, phi).

    Independent of the library kernels: builds both basis vectors, the
    unnormalised conditional blocks, and sums eigenvalue entropies.
    """
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    a0 = np.stack([c, e * s], axis=-1)
    a1 = np.stack([-np.conj(e) * s, c + 0 * e], axis=-1)
    r = rho.reshape(2, dB, 2, dB)

    def ent(w):
        w = np.clip(w, 1e-300, None)
        return -np.sum(np.where(w > 1e-15, w * np.log2(w), 0.0), axis=-1)

    rho_b = np.einsum("kbkc->bc", r)
    s_b = ent(np.linalg.eigvalsh(rho_b))
    total = s_b
    for a in (a0, a1):
        blk = np.einsum("...k,...l,kblc->...bc", a.conj(), a, r)
        w = np.linalg.eigvalsh(blk)
        p = w.sum(axis=-1)
        total = total - ent(w) + np.where(p > 1e-15, -p * np.log2(np.clip(p, 1e-300, None)), 0)
    return total


def test_criterion_8c_brute_force_grid(report):
    theta = np.linspace(0, np.pi, 181)
    phi = np.linspace(0, 2 * np.pi, 361)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    worst = 0.0
    for k in range(50):
        dB = 2 if k % 2 == 0 else 3
        st = states.sample_random_state(2, dB, seed=1000 + k)
        grid = _grid_holevo(st.rho, dB, T, P)
        best = []
        for idx in np.argsort(grid.ravel())[::-1][:5]:
            x0 = np.array([T.ravel()[idx], P.ravel()[idx]])
            res = minimize(lambda x: -float(_grid_holevo(st.rho, dB, x[0], x[1])), x0,
                           method="Nelder-Mead",
                           options=dict(xatol=1e-10, fatol=1e-13, maxiter=4000))
            best.append(-res.fun)
        ref = max(max(best), grid.max())
        worst = max(worst, abs(compute_c1(st, CFG).value - ref))
    ok = worst <= 1e-5
    report("criterion 8c: C1 vs brute-force grid (50 states, d_A=2)", ok,
           f"max|delta|={worst:.1e}")
    assert ok


def test_criterion_8d_csv_byte_identical(tmp_path, monkeypatch, report):
    from mubcorr import cli

    outputs = []
    for workers in ("0", "1", "2", "3"):
        monkeypatch.setenv(campaigns.WORKERS_ENV, workers)
        path = tmp_path / f"w{workers}.csv"
        assert cli.main(["--seed", "5", "sweep", "werner", "--lo", "-1", "--hi", "1",
                         "--steps", "9", "--out", str(path)]) == 0
        outputs.append(path.read_bytes())
    ok = all(o == outputs[0] for o in outputs)
    report("criterion 8d: sweep CSV byte-identical for 0/1/2/3 workers", ok,
           f"{len(outputs[0])} bytes each")
    assert ok
