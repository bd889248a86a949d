"""Closed-form correlation vectors for the state families with known answers.

These are used to validate the optimiser and to fill the ``*_closed``
columns of sweeps.  Entanglement of formation for general two-qubit states
comes from the concurrence; for Werner states it uses the dedicated
formula in ``d`` dimensions.
"""

from dataclasses import dataclass, field

import numpy as np
from scipy.special import xlogy

from . import qmath
from .measure import ProjectiveBasis, holevo, measure_side_A
from .states import PAULIS, make_counterexample

__all__ = [
    "OracleResult",
    "werner_chi",
    "werner_eof",
    "werner_mutual_information",
    "bell_chi",
    "concurrence",
    "eof_from_concurrence",
    "eof_two_qubit",
    "oracle_pure",
    "oracle_cq",
    "oracle_werner",
    "oracle_bell_diagonal",
    "oracle_rho1",
    "oracle_rho2",
    "oracle_counterexample",
]

_LN2 = np.log(2.0)


@dataclass
class OracleResult:
    vector: tuple
    extra: dict = field(default_factory=dict)
    validity_domain: str = ""


def _log2_xlogx(x):
    return xlogy(x, x) / _LN2


def werner_chi(d, alpha):
    """``log2(d/(d-a)) + (1-a)/(d-a) log2(1-a)`` (0 log 0 = 0 at a = 1)."""
    return float(np.log2(d / (d - alpha)) + _log2_xlogx(1.0 - alpha) / (d - alpha))


def werner_eof(d, alpha):
    """Entanglement of formation of the d x d Werner state."""
    c = max(0.0, (d * alpha - 1.0) / (d - alpha))
    return qmath.binary_entropy(0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - c * c))))


def werner_mutual_information(d, alpha):
    """``S(A:B)`` from the symmetric/antisymmetric spectrum."""
    n_sym, n_anti = d * (d + 1) // 2, d * (d - 1) // 2
    w_sym = (1.0 - alpha) / (d * (d - alpha))
    w_anti = (1.0 + alpha) / (d * (d - alpha))
    s_ab = -(n_sym * _log2_xlogx(w_sym) + n_anti * _log2_xlogx(w_anti))
    return float(2.0 * np.log2(d) - s_ab)


def bell_chi(r):
    """``1 - h((1 + |r_j|)/2)`` sorted by decreasing ``|r_j|``."""
    mags = sorted((abs(float(x)) for x in r), reverse=True)
    return tuple(1.0 - qmath.binary_entropy(0.5 * (1.0 + min(m, 1.0))) for m in mags)


def concurrence(rho):
    """Wootters concurrence of a two-qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    yy = np.kron(PAULIS[1], PAULIS[1])
    rho_tilde = yy @ rho.conj() @ yy
    ev = np.linalg.eigvals(rho @ rho_tilde)
    lam = np.sort(np.sqrt(np.clip(ev.real, 0.0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def eof_from_concurrence(c):
    c = min(max(c, 0.0), 1.0)
    return qmath.binary_entropy(0.5 * (1.0 + np.sqrt(1.0 - c * c)))


def eof_two_qubit(rho):
    return eof_from_concurrence(concurrence(rho))


def oracle_pure(schmidt, M=3):
    """Pure state: every entry equals the entanglement entropy."""
    s = qmath.shannon_entropy(schmidt)
    return OracleResult((s,) * M, {"S_B": s}, "any bipartite pure state")


def oracle_cq(q, sigmas, M=3):
    """CQ state: ``(chi{q; sigma}, 0, ..., 0)``."""
    q = np.asarray(q, dtype=float)
    avg = sum(qi * np.asarray(s, dtype=complex) for qi, s in zip(q, sigmas))
    chi = qmath.von_neumann_entropy(avg) - sum(
        qi * qmath.von_neumann_entropy(s) for qi, s in zip(q, sigmas))
    chi = max(chi, 0.0)
    return OracleResult((chi,) + (0.0,) * (M - 1), {"chi": chi, "D": 0.0},
                        "classical-quantum states")


def oracle_werner(d, alpha, M=None):
    """Werner state: every entry equals ``chi_w``."""
    from .corrvec import default_levels

    M = default_levels(d) if M is None else M
    chi = werner_chi(d, alpha)
    mi = werner_mutual_information(d, alpha)
    return OracleResult((chi,) * M,
                        {"chi_w": chi, "E_f": werner_eof(d, alpha), "I": mi, "D": mi - chi},
                        "-1 <= alpha <= 1")


def _bell_weights(r):
    r1, r2, r3 = r
    # weights of psi-, phi-, phi+, psi+ (r-coordinates of the Bell states)
    verts = np.array([[-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]], dtype=float)
    return 0.25 * (1.0 + verts @ np.array([r1, r2, r3]))


def oracle_bell_diagonal(r):
    """Bell-diagonal state ``(I + sum r_j sigma_j⊗sigma_j)/4``."""
    r = np.asarray(r, dtype=float)
    chis = bell_chi(r)
    w = _bell_weights(r)
    s_ab = -float(np.sum(_log2_xlogx(np.clip(w, 0.0, None))))
    mi = 2.0 - s_ab
    c = max(0.0, 2.0 * float(w.max()) - 1.0)
    return OracleResult(chis, {"I": mi, "D": mi - chis[0], "E_f": eof_from_concurrence(c),
                               "concurrence": c},
                        "r inside the Bell tetrahedron")


def oracle_rho1(p):
    """``p psi- + (1-p) psi+``: ``(1, 1-h(p), 1-h(p))``."""
    q = 1.0 - qmath.binary_entropy(p)
    res = oracle_bell_diagonal([1 - 2 * p, 1 - 2 * p, -1])
    res.vector = (1.0, q, q)
    return res


def oracle_rho2(p):
    """``p psi- + (1-p)/2 (psi+ + phi+)``: C1 is the larger of
    ``1-h(p)`` and ``1-h((1+p)/2)``."""
    a = 1.0 - qmath.binary_entropy(p)
    b = 1.0 - qmath.binary_entropy(0.5 * (1.0 + p))
    res = oracle_bell_diagonal([1 - 2 * p, -p, -p])
    res.vector = (max(a, b), b, min(a, b))
    return res


def oracle_counterexample(lam, basis, sigma_a, p, sigmas, M=3):
    """Coherent admixture to a CQ state: ``(chi in {|k>}, 0, ..., 0)``.

    ``D`` in ``extra`` is ``S(A:B) - chi_k`` and is only meaningful as a
    positivity witness.
    """
    if not isinstance(basis, ProjectiveBasis):
        basis = ProjectiveBasis(basis)
    state = make_counterexample(lam, basis, sigma_a, p, sigmas)
    chi = holevo(measure_side_A(state, basis))
    return OracleResult((chi,) + (0.0,) * (M - 1),
                        {"chi_k": chi, "D": state.mutual_information() - chi},
                        "0 < lambda < 1, sigma_a coherent in {|k>}")
