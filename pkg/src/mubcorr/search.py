"""Multi-start Nelder-Mead over spaces of bases.

A *space* turns a real parameter vector into a unitary whose columns are
the basis vectors.  Three kinds are used:

* :class:`UnconstrainedSpace` - every basis of ``C^d``.  Qubits use Bloch
  angles; ``d >= 3`` uses a local exponential chart ``U0 exp(iH(x))``
  around a Haar-random ``U0`` drawn per restart, ``H`` Hermitian with zero
  diagonal (``d(d-1)`` real parameters, matching the dimension of the
  space of bases).
* :class:`ChartSpace` - a continuous :class:`~mubcorr.mub.MuChart`.
* :class:`ProductSpace` - independent spaces for A and B, for the
  symmetric (two-sided) measures.

Restart ``k`` draws its start from ``default_rng([seed, *tag, k])`` so the
result never depends on evaluation order.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .states import random_unitary

__all__ = [
    "UnconstrainedSpace",
    "ChartSpace",
    "ProductSpace",
    "LocalOptimum",
    "multistart_maximize",
    "bloch_unitary",
]


def bloch_unitary(theta, phi):
    c, s = np.cos(0.5 * theta), np.sin(0.5 * theta)
    e = np.exp(1j * phi)
    return np.array([[c, -s * e.conjugate()], [e * s, c]])


class UnconstrainedSpace:
    def __init__(self, d):
        self.d = d
        if d == 2:
            self.n_params = 2
        else:
            self.n_params = d * (d - 1)
            self._iu = np.triu_indices(d, 1)

    def start(self, rng):
        if self.d == 2:
            theta = np.arccos(rng.uniform(-1.0, 1.0))
            return np.array([theta, rng.uniform(0.0, 2 * np.pi)]), None
        return np.zeros(self.n_params), random_unitary(self.d, rng)

    def matrix(self, x, ctx):
        if self.d == 2:
            return bloch_unitary(x[0], x[1])
        m = len(self._iu[0])
        h = np.zeros((self.d, self.d), dtype=complex)
        h[self._iu] = x[:m] + 1j * x[m:]
        h = h + h.conj().T
        w, v = np.linalg.eigh(h)
        return ctx @ ((v * np.exp(1j * w)) @ v.conj().T)


class ChartSpace:
    def __init__(self, chart):
        self.chart = chart
        self.n_params = chart.n_params

    def start(self, rng):
        return rng.uniform(0.0, 2 * np.pi, self.n_params), None

    def matrix(self, x, ctx):
        return self.chart.matrix(x)


class ProductSpace:
    """Pair of spaces; ``matrix`` returns ``(U_A, U_B)``."""

    def __init__(self, space_a, space_b):
        self.a, self.b = space_a, space_b
        self.n_params = space_a.n_params + space_b.n_params

    def start(self, rng):
        xa, ca = self.a.start(rng)
        xb, cb = self.b.start(rng)
        return np.concatenate([xa, xb]), (ca, cb)

    def matrix(self, x, ctx):
        k = self.a.n_params
        return self.a.matrix(x[:k], ctx[0]), self.b.matrix(x[k:], ctx[1])


@dataclass
class LocalOptimum:
    value: float
    matrix: object
    converged: bool
    nfev: int


def _same_point(ma, mb, tol):
    if isinstance(ma, tuple):
        return all(_same_point(a, b, tol) for a, b in zip(ma, mb))
    ov = np.abs(ma.conj().T @ mb) ** 2
    return bool(np.all(ov.max(axis=0) >= 1.0 - tol) and np.all(ov.max(axis=1) >= 1.0 - tol))


def _nelder_mead(f, x0, step, xtol, ftol, max_iterations):
    n = len(x0)
    simplex = np.vstack([x0, x0 + step * np.eye(n)])
    return minimize(f, x0, method="Nelder-Mead",
                    options=dict(initial_simplex=simplex, xatol=xtol, fatol=ftol,
                                 maxiter=max_iterations, maxfev=4 * max_iterations))


def multistart_maximize(objective, space, restarts, seed, tag=(), max_iterations=2000,
                        objective_tol=1e-8, xtol=1e-7, step=0.4, coarse_xtol=1e-3,
                        coarse_ftol=1e-7, polish_window=1e-4, max_polish=8):
    """Maximise ``objective(space.matrix(x))`` from ``restarts`` random starts.

    Every start gets a coarse Nelder-Mead run; the distinct coarse optima
    within ``polish_window`` of the best (at most ``max_polish`` of them)
    are then refined to ``xtol`` / ``objective_tol``.  Returns the refined
    optima, best first.
    """
    coarse = []
    for k in range(restarts):
        rng = np.random.default_rng([int(seed), *tag, k])
        x0, ctx = space.start(rng)

        def f(x, ctx=ctx):
            return -objective(space.matrix(x, ctx))

        res = _nelder_mead(f, x0, step, coarse_xtol, coarse_ftol, max_iterations)
        coarse.append((-float(res.fun), res.x, ctx, f, int(res.nfev)))
    coarse.sort(key=lambda t: -t[0])

    picked = []
    for cand in coarse:
        if cand[0] < coarse[0][0] - polish_window or len(picked) >= max_polish:
            break
        m = space.matrix(cand[1], cand[2])
        if any(_same_point(m, space.matrix(p[1], p[2]), 1e-3) for p in picked):
            continue
        picked.append(cand)

    results = []
    for value, x, ctx, f, nfev in picked:
        res = _nelder_mead(f, x, 1e-2, xtol, objective_tol * 1e-2, max_iterations)
        if -res.fun >= value:
            value, x = -float(res.fun), res.x
        results.append(LocalOptimum(value, space.matrix(x, ctx), bool(res.success),
                                    nfev + int(res.nfev)))
    results.sort(key=lambda r: -r.value)
    return results
