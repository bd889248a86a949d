"""Mutually unbiased bases and charts over bases unbiased to fixed anchors.

A basis unbiased to an anchor ``A`` (stored as a unitary) has the form
``A D H / sqrt(d)`` with ``D`` a diagonal phase matrix and ``H`` a complex
Hadamard matrix.  :func:`chart_mu_to_one` parameterises that set by the
phases in ``D`` (plus the affine parameter of the order-4 Hadamard family).
For d = 2 and d = 3 every complex Hadamard is equivalent to the Fourier
matrix, so the chart is complete there; for d >= 4 it is a subset.

Bases unbiased to two or more anchors are enumerated, not parameterised:
the anchors are mapped onto the standard (computational, Fourier) pair and
the remaining Weyl-Heisenberg bases are pulled back.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError, UnsupportedDimensionError
from .measure import ProjectiveBasis

__all__ = [
    "MAX_PRIME",
    "MubFamily",
    "MuChart",
    "is_prime",
    "is_unbiased",
    "fourier_matrix",
    "standard_mub_family",
    "chart_mu_to_one",
    "chart_mu_to_many",
    "max_levels",
]

MAX_PRIME = 13


def is_prime(n):
    n = int(n)
    if n < 2:
        return False
    return all(n % k for k in range(2, int(n ** 0.5) + 1))


def is_unbiased(a, b, tol=1e-9):
    """True iff ``max_ij | |<a_i|b_j>|^2 - 1/d | <= tol``."""
    if a.dim != b.dim:
        raise InvalidInputError("bases have different dimensions")
    return bool(np.abs(a.overlaps(b) - 1.0 / a.dim).max() <= tol)


def fourier_matrix(d):
    """Unitary DFT matrix ``omega^{jk} / sqrt(d)``."""
    j = np.arange(d)
    return np.exp(2j * np.pi * np.outer(j, j) / d) / np.sqrt(d)


def _wh_basis(p, a):
    """Weyl-Heisenberg basis ``a`` (``a = 0`` is the Fourier basis)."""
    j = np.arange(p)[:, None]
    b = np.arange(p)[None, :]
    if p == 2:
        return (1j ** (a * j)) * (-1.0) ** (b * j) / np.sqrt(2)
    return np.exp(2j * np.pi * (a * j * j + b * j) / p) / np.sqrt(p)


@dataclass(frozen=True)
class MubFamily:
    dim: int
    bases: tuple

    def max_overlap_error(self):
        """Largest deviation of ``|<a_i|b_j>|^2`` from ``1/d`` over all pairs."""
        err = 0.0
        for i, a in enumerate(self.bases):
            for b in self.bases[i + 1:]:
                err = max(err, float(np.abs(a.overlaps(b) - 1.0 / self.dim).max()))
        return err


def standard_mub_family(d):
    """Complete set of ``d + 1`` MUBs for prime ``d <= 13``.

    The computational basis comes first, followed by the ``d``
    Weyl-Heisenberg bases.  For ``d = 2`` this is the Z, X, Y triple.
    """
    d = int(d)
    if not is_prime(d) or d > MAX_PRIME:
        raise UnsupportedDimensionError(
            f"standard MUB family only for primes <= {MAX_PRIME}, got {d}")
    bases = [ProjectiveBasis.computational(d)]
    bases += [ProjectiveBasis(_wh_basis(d, a)).canonical() for a in range(d)]
    return MubFamily(d, tuple(bases))


def _hadamard_core(d, extra):
    if d == 4:
        (a,) = extra
        e = 1j * np.exp(1j * a)
        return np.array([[1, 1, 1, 1],
                         [1, e, -1, -e],
                         [1, -1, 1, -1],
                         [1, -e, -1, e]]) / 2.0
    return fourier_matrix(d)


@dataclass(frozen=True, eq=False)
class MuChart:
    """Search space of bases unbiased to every basis in ``anchors``.

    A continuous chart maps ``n_params`` real parameters to a unitary via
    :meth:`matrix`; a finite chart lists its members in ``candidates``.
    ``complete`` records whether the chart covers the full solution set.
    """

    anchors: tuple
    n_params: int = 0
    candidates: tuple = ()
    complete: bool = True
    _matrix_fn: object = field(default=None, repr=False)

    @property
    def finite(self):
        return self._matrix_fn is None

    def matrix(self, x):
        """Unitary (columns = basis vectors) at parameter vector ``x``."""
        return self._matrix_fn(np.asarray(x, dtype=float))

    def basis(self, x):
        return ProjectiveBasis(self.matrix(x), tol=1e-9)

    def members(self):
        """The finite member list (empty for continuous charts)."""
        return list(self.candidates)


def chart_mu_to_one(anchor):
    """Chart over bases unbiased to a single anchor basis.

    Parameters are ``d - 1`` row phases (plus one affine parameter for
    ``d = 4``).  For qubits the single phase sweeps the great circle of
    Bloch vectors orthogonal to the anchor axis.
    """
    d = anchor.dim
    a = np.array(anchor.matrix)
    n_extra = 1 if d == 4 else 0

    def fn(x):
        phases = np.concatenate(([0.0], x[: d - 1]))
        core = _hadamard_core(d, x[d - 1:])
        return (a * np.exp(1j * phases)[None, :]) @ core

    return MuChart(anchors=(anchor,), n_params=d - 1 + n_extra,
                   complete=d <= 3, _matrix_fn=fn)


def _check_pairwise_unbiased(anchors, tol):
    for i, a in enumerate(anchors):
        for b in anchors[i + 1:]:
            if a.dim != b.dim or not is_unbiased(a, b, tol):
                raise InvalidInputError("anchor bases are not mutually unbiased")


def _standard_frame(a1, a2, tol=1e-6):
    """Unitary ``W`` with ``W Z ~ a1`` and ``W F ~ a2`` (as projector sets).

    Raises UnsupportedDimensionError when ``a1^dag a2`` is not equivalent
    to the Fourier matrix.
    """
    d = a1.dim
    h = np.sqrt(d) * (a1.matrix.conj().T @ a2.matrix)
    dr = h[:, 0] / np.abs(h[:, 0])
    dc = h[0, :] / np.abs(h[0, :])
    hp = h / (dr[:, None] * dc[None, :] / dc[0])
    expo = np.angle(hp) * d / (2 * np.pi)
    e = np.mod(np.rint(expo), d).astype(int)
    if np.abs(expo - np.rint(expo)).max() > tol * d:
        raise UnsupportedDimensionError("anchor pair is not Fourier-equivalent")
    col = e[:, 1]
    if sorted(col) != list(range(d)):
        raise UnsupportedDimensionError("anchor pair is not Fourier-equivalent")
    # reorder rows so that column 1 reads 0, 1, ..., d-1
    order = np.argsort(col)
    ep = e[order]
    m = np.arange(d)[:, None]
    if np.any(np.mod(m * ep[1][None, :], d) != ep):
        raise UnsupportedDimensionError("anchor pair is not Fourier-equivalent")
    return (a1.matrix * dr[None, :])[:, order]


def chart_mu_to_many(anchors):
    """Finite chart of bases unbiased to two or more anchors.

    Qubits: the single Bloch axis orthogonal to both anchor axes.
    Prime ``d >= 3``: the Weyl-Heisenberg bases not used by the anchors,
    mapped through the frame that sends (computational, Fourier) to the
    first two anchors.  The latter is flagged incomplete.
    """
    anchors = tuple(anchors)
    if len(anchors) < 2:
        raise InvalidInputError("need at least two anchors")
    d = anchors[0].dim
    _check_pairwise_unbiased(anchors, 1e-6)
    if len(anchors) >= d + 1:
        raise UnsupportedDimensionError(
            f"no basis can be unbiased to {len(anchors)} bases in dimension {d}")
    if d == 2:
        n = np.cross(anchors[0].bloch_vector(), anchors[1].bloch_vector())
        cands = (ProjectiveBasis.from_bloch(n).canonical(),)
        return MuChart(anchors=anchors, candidates=cands, complete=True)
    if not is_prime(d) or d > MAX_PRIME:
        raise UnsupportedDimensionError(
            f"no multi-anchor chart for dimension {d}")
    w = _standard_frame(anchors[0], anchors[1])
    cands = []
    for a in range(1, d):
        b = ProjectiveBasis(w @ _wh_basis(d, a), tol=1e-8)
        if all(is_unbiased(b, x, 1e-6) for x in anchors):
            cands.append(b.canonical())
    if not cands:
        raise UnsupportedDimensionError("no remaining unbiased basis in chart")
    return MuChart(anchors=anchors, candidates=tuple(cands), complete=False)


def max_levels(d):
    """Deepest correlation level reachable with the available charts."""
    if d == 2:
        return 3
    if is_prime(d) and d <= MAX_PRIME:
        return d + 1
    return 2
