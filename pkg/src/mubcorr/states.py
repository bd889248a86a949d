"""Bipartite states: validation, the standard families, random sampling."""

from dataclasses import dataclass

import numpy as np

from . import qmath
from .errors import InvalidInputError, NotPSDError
from .measure import ProjectiveBasis

__all__ = [
    "BipartiteState",
    "validate_density_matrix",
    "swap_operator",
    "swap_subsystems",
    "make_werner",
    "make_cq",
    "make_bell_diagonal",
    "make_two_qubit_correlated",
    "reduce_correlation_matrix",
    "make_counterexample",
    "make_pure_from_schmidt",
    "make_rho1",
    "make_rho2",
    "bell_state",
    "classical_example",
    "sample_random_state",
    "random_unitary",
    "apply_local_unitaries",
    "PAULIS",
]

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-9

PAULIS = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def validate_density_matrix(m, name="rho"):
    """Check Hermiticity, unit trace and positivity; return the
    Hermitian part of ``m``."""
    m = qmath.check_matrix(m, name)
    if m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"{name} must be square")
    herm_err = np.abs(m - m.conj().T).max()
    if herm_err > HERMITIAN_TOL:
        raise InvalidInputError(f"{name} not Hermitian (error {herm_err:.2e})")
    tr = np.trace(m).real
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidInputError(f"{name} has trace {tr!r}")
    h = 0.5 * (m + m.conj().T)
    wmin = np.linalg.eigvalsh(h)[0]
    if wmin < -qmath.PSD_TOL:
        raise NotPSDError(f"{name} has eigenvalue {wmin:.3e}")
    return h


@dataclass(frozen=True, eq=False)
class BipartiteState:
    """Density matrix ``rho`` on ``C^dA ⊗ C^dB`` (A is the first factor)."""

    rho: np.ndarray
    dA: int
    dB: int

    def __post_init__(self):
        dA, dB = int(self.dA), int(self.dB)
        if dA < 2 or dB < 2:
            raise InvalidInputError("both local dimensions must be >= 2")
        rho = validate_density_matrix(self.rho)
        if rho.shape[0] != dA * dB:
            raise InvalidInputError(
                f"rho has dimension {rho.shape[0]}, expected {dA}*{dB}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "dA", dA)
        object.__setattr__(self, "dB", dB)

    @property
    def dims(self):
        return (self.dA, self.dB)

    def marginal(self, keep):
        return qmath.partial_trace(self.rho, self.dims, keep=keep)

    def entropy(self):
        return qmath.von_neumann_entropy(self.rho)

    def mutual_information(self):
        """Quantum mutual information ``S(A) + S(B) - S(AB)``."""
        s = qmath.von_neumann_entropy
        return s(self.marginal("A")) + s(self.marginal("B")) - s(self.rho)


def _ket(*amps):
    return np.asarray(amps, dtype=complex)


def _proj(v):
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def swap_operator(d):
    """``P = sum_ij |i><j| ⊗ |j><i|`` on ``C^d ⊗ C^d``."""
    p = np.zeros((d * d, d * d), dtype=complex)
    for i in range(d):
        for j in range(d):
            p[i * d + j, j * d + i] = 1.0
    return p


def swap_subsystems(state):
    """The same state with the roles of A and B exchanged."""
    dA, dB = state.dims
    t = state.rho.reshape(dA, dB, dA, dB).transpose(1, 0, 3, 2)
    return BipartiteState(t.reshape(dA * dB, dA * dB), dB, dA)


def make_werner(d, alpha):
    """Werner state ``(I - alpha P) / (d (d - alpha))``."""
    d = int(d)
    if d < 2:
        raise InvalidInputError("d must be >= 2")
    if abs(alpha) > 1.0 + 1e-12:
        raise InvalidInputError(f"alpha={alpha} outside [-1, 1]")
    rho = (np.eye(d * d) - alpha * swap_operator(d)) / (d * (d - alpha))
    return BipartiteState(rho, d, d)


def make_cq(q, basis, sigmas):
    """Classical-quantum state ``sum_i q_i |i><i| ⊗ sigma_i``."""
    q = np.asarray(q, dtype=float)
    if not isinstance(basis, ProjectiveBasis):
        basis = ProjectiveBasis(basis)
    sigmas = [validate_density_matrix(s, "sigma") for s in sigmas]
    if len(q) != basis.dim or len(sigmas) != basis.dim:
        raise InvalidInputError("q, basis and sigmas must have matching lengths")
    dB = sigmas[0].shape[0]
    if any(s.shape != (dB, dB) for s in sigmas):
        raise InvalidInputError("all sigma_i must share one dimension")
    qmath.shannon_entropy(q)  # validates q
    proj = basis.projectors()
    rho = sum(q[i] * np.kron(proj[i], sigmas[i]) for i in range(basis.dim))
    return BipartiteState(rho, basis.dim, dB)


def make_bell_diagonal(r):
    """``(I⊗I + sum_j r_j sigma_j⊗sigma_j) / 4``.

    Raises NotPSDError when ``r`` lies outside the tetrahedron of
    physical states.
    """
    r = np.asarray(r, dtype=float)
    if r.shape != (3,):
        raise InvalidInputError("r must be a 3-vector")
    rho = np.eye(4, dtype=complex)
    for rj, s in zip(r, PAULIS):
        rho = rho + rj * np.kron(s, s)
    return BipartiteState(rho / 4.0, 2, 2)


def make_two_qubit_correlated(w):
    """``(I⊗I + sum_jk w_jk sigma_j⊗sigma_k) / 4`` for a real 3x3 ``w``."""
    w = np.asarray(w, dtype=float)
    if w.shape != (3, 3):
        raise InvalidInputError("w must be 3x3")
    rho = np.eye(4, dtype=complex)
    for j in range(3):
        for k in range(3):
            rho = rho + w[j, k] * np.kron(PAULIS[j], PAULIS[k])
    return BipartiteState(rho / 4.0, 2, 2)


def reduce_correlation_matrix(w):
    """Diagonal form ``r`` of a correlation matrix under local rotations.

    ``|r_j|`` are the singular values of ``w``; the sign of ``det w`` is
    carried by the last entry so that ``r`` describes a locally
    equivalent state.
    """
    w = np.asarray(w, dtype=float)
    u, s, vt = np.linalg.svd(w)
    sign = np.sign(np.linalg.det(u) * np.linalg.det(vt))
    r = s.copy()
    r[2] *= sign if sign != 0 else 1.0
    return r


def make_counterexample(lam, basis, sigma_a, p, sigmas, offdiag_tol=1e-8):
    """Mixture ``lam * CQ + (1 - lam) * sigma_a ⊗ sum_k p_k sigma_k``.

    ``sigma_a`` must have coherence in ``basis``; otherwise the state is
    just another CQ state.
    """
    if not 0.0 < lam < 1.0:
        raise InvalidInputError("lambda must lie in (0, 1)")
    if not isinstance(basis, ProjectiveBasis):
        basis = ProjectiveBasis(basis)
    sigma_a = validate_density_matrix(sigma_a, "sigma_a")
    in_basis = basis.matrix.conj().T @ sigma_a @ basis.matrix
    off = in_basis - np.diag(np.diag(in_basis))
    if np.abs(off).max() <= offdiag_tol:
        raise InvalidInputError("sigma_a is diagonal in the given basis")
    cq = make_cq(p, basis, sigmas)
    rho_b = sum(pk * np.asarray(s, dtype=complex) for pk, s in zip(p, sigmas))
    rho = lam * cq.rho + (1.0 - lam) * np.kron(sigma_a, rho_b)
    return BipartiteState(rho, basis.dim, rho_b.shape[0])


def make_pure_from_schmidt(lambdas, basis_A=None, basis_B=None, dB=None):
    """``sum_i sqrt(lambda_i) |a_i>|b_i>`` as a density matrix."""
    lam = np.asarray(lambdas, dtype=float)
    qmath.shannon_entropy(lam)
    n = len(lam)
    ua = np.eye(n) if basis_A is None else basis_A.matrix
    dB = n if dB is None else dB
    ub = np.eye(dB)[:, :n] if basis_B is None else basis_B.matrix
    psi = sum(np.sqrt(max(lam[i], 0.0)) * np.kron(ua[:, i], ub[:, i]) for i in range(n))
    return BipartiteState(_proj(psi), ua.shape[0], ub.shape[0])


_BELL = {
    "psi-": _ket(0, 1, -1, 0) / np.sqrt(2),
    "psi+": _ket(0, 1, 1, 0) / np.sqrt(2),
    "phi+": _ket(1, 0, 0, 1) / np.sqrt(2),
    "phi-": _ket(1, 0, 0, -1) / np.sqrt(2),
}


def bell_state(name="psi-"):
    """One of the four Bell states; ``psi-`` is the singlet (EPR) state."""
    try:
        return BipartiteState(_proj(_BELL[name]), 2, 2)
    except KeyError:
        raise InvalidInputError(f"unknown Bell state {name!r}") from None


def classical_example():
    """``(|00><00| + |11><11|) / 2``: correlated only in the Z basis."""
    return BipartiteState(0.5 * (_proj(_ket(1, 0, 0, 0)) + _proj(_ket(0, 0, 0, 1))), 2, 2)


def make_rho1(p):
    """``p |psi-><psi-| + (1 - p) |psi+><psi+|``."""
    return BipartiteState(p * _proj(_BELL["psi-"]) + (1 - p) * _proj(_BELL["psi+"]), 2, 2)


def make_rho2(p):
    """``p |psi-><psi-| + (1 - p)/2 (|psi+><psi+| + |phi+><phi+|)``."""
    rho = p * _proj(_BELL["psi-"]) + 0.5 * (1 - p) * (
        _proj(_BELL["psi+"]) + _proj(_BELL["phi+"]))
    return BipartiteState(rho, 2, 2)


def random_unitary(d, rng):
    """Haar-random unitary via QR of a complex Ginibre matrix."""
    rng = np.random.default_rng(rng)
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def sample_random_state(dA, dB, kind="mixed-ginibre", seed=None,
                        max_dim=qmath.MAX_TOTAL_DIM):
    """Random bipartite state.

    ``pure-haar`` gives a Haar-random pure state, ``mixed-ginibre`` gives
    ``G G^dag / tr(G G^dag)`` for a square complex Gaussian ``G``.  The
    generator is seeded per call.
    """
    n = dA * dB
    if n > max_dim:
        raise InvalidInputError(f"total dimension {n} exceeds limit {max_dim}")
    rng = np.random.default_rng(seed)
    if kind == "pure-haar":
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        rho = _proj(v)
    elif kind == "mixed-ginibre":
        g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        rho = g @ g.conj().T
        rho /= np.trace(rho).real
    else:
        raise InvalidInputError(f"unknown kind {kind!r}")
    return BipartiteState(rho, dA, dB)


def apply_local_unitaries(state, ua, ub):
    u = np.kron(ua, ub)
    rho = u @ state.rho @ u.conj().T
    return BipartiteState(0.5 * (rho + rho.conj().T), state.dA, state.dB)
