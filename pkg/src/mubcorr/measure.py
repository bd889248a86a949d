"""Local projective measurements, post-measurement ensembles and the
Holevo quantity.

A measurement on side A in basis ``{|a_i>}`` leaves Bob with the ensemble
``{p_i; rho_i^B}``; ``holevo`` scores that ensemble.  The ``*_kernel``
functions are the vectorised fast paths used inside the optimiser: they
take the state already reshaped to ``(dA, dB, dA, dB)`` and a stack of
basis matrices.
"""

from dataclasses import dataclass, field

import numpy as np

from . import qmath
from .errors import InvalidInputError

__all__ = [
    "ProjectiveBasis",
    "MeasurementEnsemble",
    "JointDistribution",
    "measure_side_A",
    "measure_side_B",
    "holevo",
    "measure_joint",
    "classical_mutual_information",
    "outcome_distribution",
    "holevo_kernel",
    "mutual_information_kernel",
]

ZERO_PROB = 1e-12
_ORTHO_TOL = 1e-10

_PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _canonical_phases(u):
    """Rotate each column so that its first non-negligible entry is real
    and positive."""
    u = np.array(u, dtype=complex)
    for k in range(u.shape[1]):
        col = u[:, k]
        idx = int(np.argmax(np.abs(col) > 1e-9))
        ph = col[idx] / abs(col[idx])
        u[:, k] = col / ph
    return u


@dataclass(frozen=True, eq=False)
class ProjectiveBasis:
    """An orthonormal basis stored as the columns of a unitary matrix.

    Only the rank-1 projectors ``|a_i><a_i|`` carry physical meaning, so
    per-vector phases and the vector order are conventions; see
    :meth:`canonical`.
    """

    matrix: np.ndarray
    tol: float = field(default=_ORTHO_TOL, repr=False)

    def __post_init__(self):
        u = qmath.check_matrix(self.matrix, "basis")
        d = u.shape[0]
        if u.shape != (d, d) or d < 1:
            raise InvalidInputError(f"basis matrix must be square, got {u.shape}")
        err = np.abs(u.conj().T @ u - np.eye(d)).max()
        if err > self.tol:
            raise InvalidInputError(f"basis vectors not orthonormal (error {err:.2e})")
        u = u.copy()
        u.setflags(write=False)
        object.__setattr__(self, "matrix", u)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def vectors(self):
        return [self.matrix[:, i] for i in range(self.dim)]

    def projectors(self):
        u = self.matrix
        return np.einsum("ki,li->ikl", u, u.conj())

    @classmethod
    def computational(cls, d):
        return cls(np.eye(d, dtype=complex))

    @classmethod
    def from_vectors(cls, vectors, tol=_ORTHO_TOL):
        return cls(np.column_stack([np.asarray(v, dtype=complex) for v in vectors]), tol=tol)

    @classmethod
    def pauli(cls, axis):
        """Eigenbasis of sigma_x, sigma_y or sigma_z, +1 eigenvector first."""
        w, v = np.linalg.eigh(_PAULI[axis])
        return cls(v[:, ::-1]).canonical()

    @classmethod
    def from_bloch(cls, n):
        """Qubit basis with projectors ``(I +/- n.sigma)/2``."""
        n = np.asarray(n, dtype=float)
        norm = np.linalg.norm(n)
        if norm < 1e-12:
            raise InvalidInputError("Bloch vector must be non-zero")
        n = n / norm
        theta = np.arccos(np.clip(n[2], -1.0, 1.0))
        phi = np.arctan2(n[1], n[0])
        c, s = np.cos(theta / 2), np.sin(theta / 2)
        e = np.exp(1j * phi)
        return cls(np.array([[c, -s * np.conj(e)], [e * s, c]]))

    def bloch_vector(self):
        """Bloch vector of the first projector (qubits only)."""
        if self.dim != 2:
            raise InvalidInputError("bloch_vector is defined for qubits only")
        p = np.outer(self.matrix[:, 0], self.matrix[:, 0].conj())
        return np.real([np.trace(p @ _PAULI[a]) for a in "xyz"])

    def canonical(self, decimals=8):
        """Equivalent basis with fixed phases and ordering.

        Each vector's first non-zero component is made real positive, then
        vectors are sorted in descending lexicographic order of their
        rounded (real, imag) components.
        """
        u = _canonical_phases(self.matrix)
        keys = []
        for k in range(u.shape[1]):
            col = np.round(u[:, k], decimals) + 0.0
            keys.append(tuple(x for z in col for x in (z.real, z.imag)))
        order = sorted(range(len(keys)), key=lambda k: keys[k], reverse=True)
        return ProjectiveBasis(u[:, order], tol=self.tol)

    def overlaps(self, other):
        """Matrix of ``|<a_i|b_j>|^2``."""
        return np.abs(self.matrix.conj().T @ other.matrix) ** 2

    def equivalent(self, other, tol=1e-6):
        """True when both bases define the same set of projectors."""
        if other.dim != self.dim:
            return False
        ov = self.overlaps(other)
        return bool(np.all(np.abs(ov.max(axis=1) - 1.0) <= tol)
                    and np.all(np.abs(ov.max(axis=0) - 1.0) <= tol))

    def transformed(self, w):
        """Basis ``{W|a_i>}``."""
        return ProjectiveBasis(np.asarray(w) @ self.matrix, tol=max(self.tol, 1e-9))


@dataclass(frozen=True, eq=False)
class MeasurementEnsemble:
    """Outcome probabilities and Bob's conditional states.

    Outcomes with ``probs[i] <= 1e-12`` are flagged in ``valid`` and carry
    the maximally mixed state as a placeholder; they drop out of every
    entropy sum.
    """

    probs: np.ndarray
    conditional_states: np.ndarray
    valid: np.ndarray

    @property
    def average_state(self):
        return np.einsum("i,ibc->bc", self.probs, self.conditional_states)


@dataclass(frozen=True, eq=False)
class JointDistribution:
    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 2:
            raise InvalidInputError("joint distribution must be a matrix")
        if p.min() < -1e-12 or abs(p.sum() - 1.0) > 1e-9:
            raise InvalidInputError("joint distribution is not normalised/non-negative")
        object.__setattr__(self, "p", np.clip(p, 0.0, None))

    @property
    def pa(self):
        return self.p.sum(axis=1)

    @property
    def pb(self):
        return self.p.sum(axis=0)


def _check_side(state, basis, side):
    d = state.dA if side == "A" else state.dB
    if basis.dim != d:
        raise InvalidInputError(
            f"basis dimension {basis.dim} does not match d_{side}={d}")


def _blocks_A(rho4, u):
    # unnormalised conditional states <a_i| rho |a_i>, stacked over i
    return np.einsum("...ki,...li,kblc->...ibc", u.conj(), u, rho4)


def measure_side_A(state, basis):
    """Measure subsystem A of ``state`` in ``basis``."""
    _check_side(state, basis, "A")
    rho4 = state.rho.reshape(state.dA, state.dB, state.dA, state.dB)
    blocks = _blocks_A(rho4, basis.matrix)
    probs = np.real(np.einsum("ibb->i", blocks))
    valid = probs > ZERO_PROB
    cond = np.empty_like(blocks)
    eye = np.eye(state.dB) / state.dB
    for i in range(basis.dim):
        if valid[i]:
            c = blocks[i] / probs[i]
            cond[i] = 0.5 * (c + c.conj().T)
        else:
            cond[i] = eye
    probs = np.clip(probs, 0.0, None)
    return MeasurementEnsemble(probs=probs / probs.sum(), conditional_states=cond, valid=valid)


def measure_side_B(state, basis):
    """Measure subsystem B; conditional states live on A."""
    from .states import swap_subsystems

    return measure_side_A(swap_subsystems(state), basis)


def holevo(ensemble):
    """Holevo quantity ``S(sum p_i rho_i) - sum p_i S(rho_i)`` in bits."""
    p = ensemble.probs
    s_avg = qmath.von_neumann_entropy(ensemble.average_state)
    s_cond = sum(p[i] * qmath.von_neumann_entropy(ensemble.conditional_states[i])
                 for i in range(len(p)) if ensemble.valid[i])
    chi = s_avg - s_cond
    if chi < -1e-9:
        raise InvalidInputError(f"negative Holevo quantity {chi:.3e}")
    return max(chi, 0.0)


def outcome_distribution(state, basis):
    """Probabilities ``p_i`` of measuring side A in ``basis``."""
    _check_side(state, basis, "A")
    rho_a = qmath.partial_trace(state.rho, state.dims, keep="A")
    u = basis.matrix
    p = np.real(np.einsum("ki,kl,li->i", u.conj(), rho_a, u))
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def measure_joint(state, basis_A, basis_B):
    """Joint outcome distribution of local measurements on both sides."""
    _check_side(state, basis_A, "A")
    _check_side(state, basis_B, "B")
    rho4 = state.rho.reshape(state.dA, state.dB, state.dA, state.dB)
    p = _joint_kernel(rho4, basis_A.matrix, basis_B.matrix)
    return JointDistribution(p / p.sum())


def classical_mutual_information(j):
    """``H(p^a) + H(p^b) - H(p_ij)`` in bits, clamped at zero."""
    mi = (qmath.entropy_of_spectrum(j.pa) + qmath.entropy_of_spectrum(j.pb)
          - qmath.entropy_of_spectrum(j.p.ravel()))
    return max(float(mi), 0.0)


# --- vectorised kernels --------------------------------------------------

def _eigvals_stack(m):
    return np.linalg.eigvalsh(m)


def holevo_kernel(rho4, u, s_b):
    """Holevo quantity for a stack of A-side basis matrices ``u``.

    Uses ``chi = S(rho_B) - sum_i [H(eig M_i) - eta(p_i)]`` with
    ``M_i`` the unnormalised conditional state, which needs no division
    by ``p_i``.
    """
    blocks = _blocks_A(rho4, u)
    w = _eigvals_stack(blocks)
    p = np.sum(w, axis=-1)
    return s_b - np.sum(qmath.entropy_of_spectrum(w), axis=-1) \
        + qmath.entropy_of_spectrum(p)


def _joint_kernel(rho4, ua, ub):
    dA, dB = ua.shape[-1], ub.shape[-1]
    v = (ua[..., :, None, :, None] * ub[..., None, :, None, :])
    v = v.reshape(v.shape[:-4] + (dA * dB, dA * dB))
    rho = rho4.reshape(dA * dB, dA * dB)
    p = np.real(np.sum(v.conj() * (rho @ v), axis=-2))
    return p.reshape(p.shape[:-1] + (dA, dB))


def mutual_information_kernel(rho4, ua, ub):
    """Classical mutual information for stacks of basis pairs."""
    p = np.clip(_joint_kernel(rho4, ua, ub), 0.0, None)
    h = qmath.entropy_of_spectrum
    return (h(p.sum(axis=-1)) + h(p.sum(axis=-2))
            - h(p.reshape(p.shape[:-2] + (-1,))))
