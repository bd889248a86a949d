"""Correlation vectors, discord and the entropic inequality checks.

The correlation vector of ``rho_AB`` is ``(C1, Q2, ..., QM)``:

* ``C1`` - Holevo quantity of Bob's ensemble, maximised over Alice's
  projective bases;
* ``Q_gamma`` - the same maximum restricted to bases unbiased to every
  earlier optimum basis.

The symmetric variant replaces the Holevo quantity by the classical mutual
information of local measurements on both sides.
"""

import logging
from dataclasses import dataclass, field

import numpy as np

from . import mub, qmath
from .errors import InvalidInputError, UnsupportedDimensionError
from .measure import (ProjectiveBasis, holevo_kernel, measure_side_A,
                      mutual_information_kernel, outcome_distribution)
from .search import ChartSpace, ProductSpace, UnconstrainedSpace, multistart_maximize

__all__ = [
    "OptimizerConfig",
    "Optimum",
    "CorrelationVector",
    "SymmetricCorrelationVector",
    "InequalityReport",
    "default_levels",
    "compute_c1",
    "compute_q_next",
    "compute_correlation_vector",
    "compute_symmetric_vector",
    "compute_discord",
    "check_inequality_9",
    "check_uncertainty_relation",
]

log = logging.getLogger(__name__)

_EQUIV_TOL = 1e-5

# seed-stream tags
_C1, _QN, _SYM = 1, 2, 3


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs of the multi-start search.

    ``restarts=None`` picks 32 for ``d <= 3`` and 128 above.  ``levels``
    caps the vector length ``M`` (``None``: deepest supported level).
    """

    restarts: int = None
    max_iterations: int = 2000
    objective_tol: float = 1e-8
    xtol: float = 1e-7
    degeneracy_window: float = 1e-6
    seed: int = 0
    two_stage_degenerate: bool = True
    levels: int = None
    max_degenerate_candidates: int = 8

    def __post_init__(self):
        if self.restarts is not None and self.restarts < 1:
            raise InvalidInputError("restarts must be >= 1")
        if self.objective_tol <= 0 or self.degeneracy_window <= 0 or self.xtol <= 0:
            raise InvalidInputError("tolerances must be positive")
        if self.levels is not None and self.levels < 1:
            raise InvalidInputError("levels must be >= 1")

    def restarts_for(self, d):
        if self.restarts is not None:
            return self.restarts
        return 32 if d <= 3 else 128


@dataclass
class Optimum:
    """Best value found, the basis achieving it, and search diagnostics.

    ``alternatives`` holds inequivalent bases whose value is within the
    degeneracy window of ``value``.
    """

    value: float
    basis: ProjectiveBasis
    degenerate: bool = False
    converged: bool = True
    alternatives: tuple = ()
    complete: bool = True

    def __iter__(self):
        return iter((self.value, self.basis, self.degenerate))


@dataclass
class CorrelationVector:
    entries: tuple
    optimum_bases: tuple
    degeneracy_flags: tuple
    converged: tuple = ()
    complete_charts: tuple = ()
    requested_levels: int = 0
    truncated: bool = False
    notes: tuple = ()

    @property
    def M(self):
        return len(self.entries)

    @property
    def warnings(self):
        out = list(self.notes)
        if not all(self.converged):
            out.append("optimizer hit max_iterations before converging")
        return out


@dataclass
class SymmetricCorrelationVector:
    entries: tuple
    optimum_base_pairs: tuple
    complete_charts: tuple = ()

    @property
    def M(self):
        return len(self.entries)


@dataclass
class InequalityReport:
    """Both sides of an entropic inequality, in bits.

    ``slack`` is oriented so that the inequality holds iff ``slack >= 0``
    (up to 1e-9).  ``relaxed_*`` carry the weaker bound obtained with
    ``H_gamma <= log2 dA`` where that applies.
    """

    lhs: float
    rhs: float
    slack: float
    H1: float
    H2: float
    relaxed_rhs: float = None
    relaxed_slack: float = None
    extra: dict = field(default_factory=dict)

    @property
    def holds(self):
        return self.slack >= -1e-9

    @property
    def relaxed_holds(self):
        return self.relaxed_slack is None or self.relaxed_slack >= -1e-9


def default_levels(d):
    """Default ``M``: 3 for qubits, ``d + 1`` for primes up to 7, else the
    deepest level with a chart."""
    if d == 2:
        return 3
    if mub.is_prime(d) and d <= 7:
        return d + 1
    return mub.max_levels(d)


class _Prepared:
    """Per-state cached quantities for the objective kernels."""

    def __init__(self, state):
        self.state = state
        self.dA, self.dB = state.dims
        self.rho4 = np.ascontiguousarray(state.rho.reshape(self.dA, self.dB, self.dA, self.dB))
        self.s_b = qmath.von_neumann_entropy(state.marginal("B"))

    def holevo(self, u):
        return float(max(holevo_kernel(self.rho4, u, self.s_b), 0.0))

    def mutual_info(self, uu):
        return float(max(mutual_information_kernel(self.rho4, uu[0], uu[1]), 0.0))


def _search(objective, space, d, cfg, tag):
    return multistart_maximize(objective, space, cfg.restarts_for(d), cfg.seed, tag,
                               max_iterations=cfg.max_iterations,
                               objective_tol=cfg.objective_tol, xtol=cfg.xtol)


def _distinct(bases, tol=_EQUIV_TOL):
    out = []
    for b in bases:
        if not any(b.equivalent(o, tol) for o in out):
            out.append(b)
    return out


def _optimum_from_results(results, cfg, complete=True):
    best = results[0]
    basis = ProjectiveBasis(best.matrix, tol=1e-8).canonical()
    near = [ProjectiveBasis(r.matrix, tol=1e-8).canonical() for r in results[1:]
            if r.value >= best.value - cfg.degeneracy_window]
    alts = [b for b in _distinct(near) if not b.equivalent(basis, _EQUIV_TOL)]
    return Optimum(value=best.value, basis=basis, degenerate=bool(alts),
                   converged=all(r.converged for r in results), alternatives=tuple(alts),
                   complete=complete)


def compute_c1(state, cfg=OptimizerConfig(), _prep=None):
    """Classical correlation: Holevo quantity maximised over A's bases."""
    prep = _prep or _Prepared(state)
    results = _search(prep.holevo, UnconstrainedSpace(prep.dA), prep.dA, cfg, (_C1,))
    opt = _optimum_from_results(results, cfg)
    if not opt.converged:
        log.warning("C1 search did not converge within %d iterations", cfg.max_iterations)
    return opt


def _best_of_finite(objective, candidates, cfg, complete):
    scored = sorted(((objective(b.matrix), i) for i, b in enumerate(candidates)),
                    key=lambda t: (-t[0], t[1]))
    best_val, best_i = scored[0]
    alts = tuple(candidates[i] for v, i in scored[1:]
                 if v >= best_val - cfg.degeneracy_window)
    return Optimum(value=float(best_val), basis=candidates[best_i], degenerate=bool(alts),
                   alternatives=alts, complete=complete)


def _chart_for(prior_bases):
    if len(prior_bases) == 1:
        return mub.chart_mu_to_one(prior_bases[0])
    return mub.chart_mu_to_many(prior_bases)


def compute_q_next(state, prior_bases, cfg=OptimizerConfig(), _prep=None, _tag=()):
    """Residual correlation in a basis unbiased to all of ``prior_bases``.

    Raises UnsupportedDimensionError when no chart exists for this level.
    """
    prep = _prep or _Prepared(state)
    prior_bases = tuple(prior_bases)
    if not prior_bases:
        raise InvalidInputError("prior_bases must not be empty")
    if any(b.dim != prep.dA for b in prior_bases):
        raise InvalidInputError("prior bases must act on subsystem A")
    chart = _chart_for(prior_bases)
    if chart.finite:
        return _best_of_finite(prep.holevo, chart.members(), cfg, chart.complete)
    results = _search(prep.holevo, ChartSpace(chart), prep.dA, cfg,
                      (_QN, len(prior_bases), *_tag))
    return _optimum_from_results(results, cfg, complete=chart.complete)


def _chain(state, prep, first, levels, cfg, tag):
    opts = [first]
    notes = []
    for gamma in range(2, levels + 1):
        try:
            opts.append(compute_q_next(state, [o.basis for o in opts], cfg, prep, tag))
        except UnsupportedDimensionError as exc:
            notes.append(f"truncated at level {gamma - 1}: {exc}")
            break
    return opts, notes


def _chain_key(opts, eps):
    # lexicographic on (Q2, Q3, ...) with values within eps treated as equal
    return tuple(round(o.value / eps) for o in opts[1:])


def compute_correlation_vector(state, cfg=OptimizerConfig()):
    """``(C1, Q2, ..., QM)`` with the optimum basis of every entry.

    When the C1 optimum is degenerate and ``cfg.two_stage_degenerate`` is
    set, the remaining chain is computed from each inequivalent
    near-optimal first basis and the chain with the largest ``Q2`` (then
    ``Q3``, ...) wins.
    """
    prep = _Prepared(state)
    requested = cfg.levels or default_levels(prep.dA)
    supported = mub.max_levels(prep.dA)
    levels = min(requested, supported)
    notes = []
    if levels < requested:
        notes.append(f"requested M={requested} but only {supported} levels are "
                     f"supported for d_A={prep.dA}")

    c1 = compute_c1(state, cfg, prep)
    firsts = [c1]
    if cfg.two_stage_degenerate and c1.degenerate:
        for k, alt in enumerate(c1.alternatives[: cfg.max_degenerate_candidates - 1]):
            firsts.append(Optimum(value=c1.value, basis=alt, degenerate=True))
    best = None
    for k, first in enumerate(firsts):
        opts, chain_notes = _chain(state, prep, first, levels, cfg, (k,))
        if best is None or (len(opts) >= len(best[0])
                            and _chain_key(opts, cfg.degeneracy_window)
                            > _chain_key(best[0], cfg.degeneracy_window)):
            best = (opts, chain_notes)
        # every entry of a chain is bounded by C1, so a chain that attains
        # C1 at every level cannot be beaten
        if (len(best[0]) == levels
                and min(o.value for o in best[0]) >= c1.value - cfg.degeneracy_window):
            break
    opts, chain_notes = best
    opts[0] = Optimum(value=c1.value, basis=opts[0].basis, degenerate=c1.degenerate,
                      converged=c1.converged)
    notes += chain_notes
    if any(not o.complete for o in opts):
        notes.append("some levels searched an incomplete chart (lower bound)")
    return CorrelationVector(
        entries=tuple(o.value for o in opts),
        optimum_bases=tuple(o.basis for o in opts),
        degeneracy_flags=tuple(o.degenerate for o in opts),
        converged=tuple(o.converged for o in opts),
        complete_charts=tuple(o.complete for o in opts),
        requested_levels=requested,
        truncated=len(opts) < requested,
        notes=tuple(notes),
    )


def _side_space(anchors, d):
    if not anchors:
        return UnconstrainedSpace(d), None
    chart = _chart_for(anchors)
    if chart.finite:
        return None, chart
    return ChartSpace(chart), chart


def compute_symmetric_vector(state, cfg=OptimizerConfig()):
    """``(C1s, Q2s, ...)`` from the classical mutual information of local
    measurements on both sides."""
    prep = _Prepared(state)
    dA, dB = state.dims
    requested = cfg.levels or min(default_levels(dA), default_levels(dB))
    levels = min(requested, mub.max_levels(dA), mub.max_levels(dB))
    entries, pairs, complete = [], [], []
    for gamma in range(1, levels + 1):
        anchors_a = [p[0] for p in pairs]
        anchors_b = [p[1] for p in pairs]
        try:
            space_a, chart_a = _side_space(anchors_a, dA)
            space_b, chart_b = _side_space(anchors_b, dB)
        except UnsupportedDimensionError:
            break
        value, ua, ub = _symmetric_level(prep, space_a, chart_a, space_b, chart_b, cfg, gamma)
        entries.append(value)
        pairs.append((ProjectiveBasis(ua, tol=1e-8).canonical(),
                      ProjectiveBasis(ub, tol=1e-8).canonical()))
        complete.append((chart_a is None or chart_a.complete)
                        and (chart_b is None or chart_b.complete))
    return SymmetricCorrelationVector(tuple(entries), tuple(pairs), tuple(complete))


def _symmetric_level(prep, space_a, chart_a, space_b, chart_b, cfg, gamma):
    d = max(prep.dA, prep.dB)
    if space_a is None and space_b is None:
        best = max(((prep.mutual_info((a.matrix, b.matrix)), a.matrix, b.matrix)
                    for a in chart_a.members() for b in chart_b.members()),
                   key=lambda t: t[0])
        return best
    if space_a is None or space_b is None:
        # one side finite: optimise the other side for each member
        finite, free, a_is_finite = ((chart_a, space_b, True) if space_a is None
                                     else (chart_b, space_a, False))
        best = None
        for k, member in enumerate(finite.members()):
            m = member.matrix
            if a_is_finite:
                obj = lambda u, m=m: prep.mutual_info((m, u))
            else:
                obj = lambda u, m=m: prep.mutual_info((u, m))
            r = _search(obj, free, d, cfg, (_SYM, gamma, k))[0]
            cand = (r.value, m, r.matrix) if a_is_finite else (r.value, r.matrix, m)
            if best is None or cand[0] > best[0]:
                best = cand
        return best
    r = _search(prep.mutual_info, ProductSpace(space_a, space_b), d, cfg, (_SYM, gamma))[0]
    return r.value, r.matrix[0], r.matrix[1]


def compute_discord(state, cfg=OptimizerConfig(), c1=None):
    """Quantum discord ``S(A:B) - C1`` (projective measurements on A)."""
    if c1 is None:
        c1 = compute_c1(state, cfg).value
    d = state.mutual_information() - c1
    if d < -1e-9:
        raise InvalidInputError(f"negative discord {d:.3e}: C1 exceeds mutual information")
    return max(d, 0.0)


def check_inequality_9(state, cv):
    """``C1 + Q2 <= H1 + H2 + S(B) - S(AB) - log2 dA`` and its relaxation
    ``C1 + Q2 <= S(B) - S(AB) + log2 dA``.

    ``H_gamma`` is the Shannon entropy of A's outcomes in the optimum basis
    of entry ``gamma``.
    """
    if cv.M < 2:
        raise InvalidInputError("correlation vector needs at least two entries")
    b1, b2 = cv.optimum_bases[:2]
    h1 = qmath.shannon_entropy(outcome_distribution(state, b1))
    h2 = qmath.shannon_entropy(outcome_distribution(state, b2))
    s_b = qmath.von_neumann_entropy(state.marginal("B"))
    s_ab = state.entropy()
    log_d = np.log2(state.dA)
    lhs = cv.entries[0] + cv.entries[1]
    rhs = h1 + h2 + s_b - s_ab - log_d
    relaxed = s_b - s_ab + log_d
    return InequalityReport(lhs=lhs, rhs=rhs, slack=rhs - lhs, H1=h1, H2=h2,
                            relaxed_rhs=relaxed, relaxed_slack=relaxed - lhs)


def dephased_state(state, basis):
    """``sum_i |a_i><a_i| ⊗ <a_i| rho |a_i>``: A measured, record kept."""
    ens = measure_side_A(state, basis)
    proj = basis.projectors()
    return sum(ens.probs[i] * np.kron(proj[i], ens.conditional_states[i])
               for i in range(basis.dim) if ens.valid[i])


def check_uncertainty_relation(state, b1, b2):
    """Entropic uncertainty relation with quantum memory B:
    ``S(A1|B) + S(A2|B) >= log2 dA + S(A|B)`` for unbiased ``b1``, ``b2``.
    """
    if not mub.is_unbiased(b1, b2, 1e-6):
        raise InvalidInputError("bases must be mutually unbiased")
    s_b = qmath.von_neumann_entropy(state.marginal("B"))
    s1 = qmath.von_neumann_entropy(dephased_state(state, b1))
    s2 = qmath.von_neumann_entropy(dephased_state(state, b2))
    h1 = qmath.shannon_entropy(outcome_distribution(state, b1))
    h2 = qmath.shannon_entropy(outcome_distribution(state, b2))
    lhs = (s1 - s_b) + (s2 - s_b)
    rhs = np.log2(state.dA) + state.entropy() - s_b
    return InequalityReport(lhs=lhs, rhs=rhs, slack=lhs - rhs, H1=h1, H2=h2,
                            extra={"S(A1|B)": s1 - s_b, "S(A2|B)": s2 - s_b,
                                   "S(A|B)": state.entropy() - s_b})
