"""Dense linear algebra and entropy kernels.

All entropies are in bits.  Matrices are plain complex ``numpy`` arrays;
validation happens at the boundaries (constructors in ``states`` and
``measure``), the kernels here assume finite input.
"""

import numpy as np
from scipy.special import entr

from .errors import InvalidInputError, NotPSDError

__all__ = [
    "MAX_TOTAL_DIM",
    "PSD_TOL",
    "check_matrix",
    "tensor_product",
    "partial_trace",
    "eigh",
    "von_neumann_entropy",
    "shannon_entropy",
    "binary_entropy",
    "entropy_of_spectrum",
    "dagger",
]

#: default cap on the total dimension d_A * d_B
MAX_TOTAL_DIM = 64

#: eigenvalues in [-PSD_TOL, 0) are treated as numerical zeros
PSD_TOL = 1e-10

_LN2 = np.log(2.0)


def dagger(m):
    return np.conj(np.swapaxes(m, -1, -2))


def check_matrix(m, name="matrix"):
    """Return ``m`` as a 2-D complex array, rejecting NaN/Inf entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise InvalidInputError(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{name} has non-finite entries")
    return a


def tensor_product(a, b, max_dim=MAX_TOTAL_DIM):
    """Kronecker product ``a ⊗ b``.

    Raises
    ------
    InvalidInputError
        If either factor is malformed or the result exceeds
        ``max_dim`` rows or columns.
    """
    a = check_matrix(a, "a")
    b = check_matrix(b, "b")
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if rows > max_dim or cols > max_dim:
        raise InvalidInputError(
            f"product dimension {rows}x{cols} exceeds limit {max_dim}")
    return np.kron(a, b)


def partial_trace(m, dims, keep="B"):
    """Trace out one factor of a bipartite operator.

    Parameters
    ----------
    m : array_like, shape (dA*dB, dA*dB)
    dims : (int, int)
        Local dimensions ``(dA, dB)``.
    keep : {'A', 'B'}
        Subsystem that survives.
    """
    m = check_matrix(m)
    dA, dB = (int(d) for d in dims)
    if m.shape != (dA * dB, dA * dB):
        raise InvalidInputError(
            f"matrix shape {m.shape} does not match dims {(dA, dB)}")
    t = m.reshape(dA, dB, dA, dB)
    if keep == "A":
        return np.einsum("ibjb->ij", t)
    if keep == "B":
        return np.einsum("aiaj->ij", t)
    raise InvalidInputError(f"keep must be 'A' or 'B', got {keep!r}")


def eigh(m):
    """Hermitian eigendecomposition with ascending eigenvalues.

    The input is symmetrised first so that round-off asymmetry in
    caller-built matrices does not leak into the spectrum.
    """
    m = np.asarray(m, dtype=complex)
    h = 0.5 * (m + dagger(m))
    return np.linalg.eigh(h)


def entropy_of_spectrum(w, axis=-1):
    """``-sum w log2 w`` with the 0 log 0 = 0 convention.

    Works on stacked spectra; negative round-off is treated as zero.
    """
    w = np.maximum(np.asarray(w, dtype=float), 0.0)
    return np.sum(entr(w), axis=axis) / _LN2


def von_neumann_entropy(rho, tol=PSD_TOL):
    """Von Neumann entropy ``S(rho)`` in bits.

    Raises
    ------
    NotPSDError
        If an eigenvalue is below ``-tol``.
    """
    rho = check_matrix(rho, "rho")
    w = np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))
    if w[0] < -tol:
        raise NotPSDError(f"smallest eigenvalue {w[0]:.3e} < -{tol:g}")
    s = float(entropy_of_spectrum(np.clip(w, 0.0, None)))
    return max(s, 0.0)


def shannon_entropy(p):
    """Shannon entropy of a probability vector, in bits."""
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0 or not np.all(np.isfinite(p)):
        raise InvalidInputError("probability vector must be finite, non-empty")
    if p.min() < -1e-12 or abs(p.sum() - 1.0) > 1e-9:
        raise InvalidInputError("not a probability vector")
    return max(float(entropy_of_spectrum(np.clip(p, 0.0, 1.0))), 0.0)


def binary_entropy(x):
    """``h(x) = -x log2 x - (1-x) log2 (1-x)``."""
    x = float(x)
    if x < -1e-12 or x > 1.0 + 1e-12:
        raise InvalidInputError(f"binary_entropy argument {x} outside [0, 1]")
    x = min(max(x, 0.0), 1.0)
    return float(entropy_of_spectrum([x, 1.0 - x]))
