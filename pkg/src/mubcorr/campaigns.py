"""Parameter sweeps over the one-parameter families and randomized
verification campaigns.

Sweep points and campaign samples are independent; they are evaluated in a
process pool whose size comes from ``MUBCORR_WORKERS`` (default: CPU count,
``0`` = run in-process).  Results are always returned in input order, and
every random draw is seeded from ``(seed, index)``, so output does not
depend on the worker count.
"""

import csv
import io
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import oracles, states
from .corrvec import (OptimizerConfig, check_inequality_9, check_uncertainty_relation,
                      compute_correlation_vector, compute_symmetric_vector)
from .errors import InvalidInputError

__all__ = [
    "SWEEP_FAMILIES",
    "MEASURES",
    "SweepSpec",
    "worker_count",
    "run_sweep",
    "sweep_csv",
    "CampaignResult",
    "CAMPAIGNS",
    "TOLERANCES",
    "sample_seed",
    "random_tetrahedron_point",
    "run_campaign",
]

SWEEP_FAMILIES = ("werner", "rho1", "rho2", "bell-diagonal-line")
MEASURES = ("C1", "Q2", "Q3", "D", "Ef", "symmetric")
CSV_COLUMNS = ("parameter", "C1", "Q2", "Q3", "D", "Ef", "C1_closed", "Q2_closed")
SYMMETRIC_COLUMNS = ("C1s", "Q2s", "Q3s")

WORKERS_ENV = "MUBCORR_WORKERS"


def worker_count():
    raw = os.environ.get(WORKERS_ENV)
    if raw is None or raw == "":
        return os.cpu_count() or 1
    n = int(raw)
    if n < 0:
        raise InvalidInputError(f"{WORKERS_ENV} must be >= 0")
    return n


def _pmap(fn, items, workers=None):
    workers = worker_count() if workers is None else workers
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * workers))))


@dataclass(frozen=True)
class SweepSpec:
    """One-parameter sweep.

    ``d`` is used by the Werner family, ``r`` is the direction of the
    Bell-diagonal line ``t * r``.
    """

    family: str
    lo: float
    hi: float
    steps: int = 81
    measures: tuple = ("C1", "Q2", "Q3", "D", "Ef")
    d: int = 2
    r: tuple = (1.0, 1.0, -1.0)

    def __post_init__(self):
        if self.family not in SWEEP_FAMILIES:
            raise InvalidInputError(f"unknown sweep family {self.family!r}")
        if not self.lo <= self.hi:
            raise InvalidInputError("need lo <= hi")
        if self.steps < 2:
            raise InvalidInputError("need at least 2 steps")
        bad = set(self.measures) - set(MEASURES)
        if bad:
            raise InvalidInputError(f"unknown measures {sorted(bad)}")

    def parameters(self):
        return np.linspace(self.lo, self.hi, self.steps)

    def state(self, t):
        if self.family == "werner":
            return states.make_werner(self.d, t)
        if self.family == "rho1":
            return states.make_rho1(t)
        if self.family == "rho2":
            return states.make_rho2(t)
        return states.make_bell_diagonal(t * np.asarray(self.r, dtype=float))

    def oracle(self, t):
        if self.family == "werner":
            return oracles.oracle_werner(self.d, t)
        if self.family == "rho1":
            return oracles.oracle_rho1(t)
        if self.family == "rho2":
            return oracles.oracle_rho2(t)
        return oracles.oracle_bell_diagonal(t * np.asarray(self.r, dtype=float))


def _sweep_point(job):
    spec, cfg, t = job
    st = spec.state(t)
    ora = spec.oracle(t)
    row = {"parameter": float(t), "C1_closed": ora.vector[0], "Q2_closed": ora.vector[1]}
    want = set(spec.measures)
    if want & {"C1", "Q2", "Q3", "D"}:
        cv = compute_correlation_vector(st, cfg)
        for name, k in (("C1", 0), ("Q2", 1), ("Q3", 2)):
            if name in want and cv.M > k:
                row[name] = cv.entries[k]
        if "D" in want:
            row["D"] = max(st.mutual_information() - cv.entries[0], 0.0)
    if "Ef" in want:
        if spec.family == "werner" and spec.d != 2:
            row["Ef"] = oracles.werner_eof(spec.d, t)
        elif spec.family == "werner":
            row["Ef"] = oracles.werner_eof(2, t)
        else:
            row["Ef"] = oracles.eof_two_qubit(st.rho)
    if "symmetric" in want:
        sv = compute_symmetric_vector(st, cfg)
        for name, v in zip(SYMMETRIC_COLUMNS, sv.entries):
            row[name] = v
    return row


def run_sweep(spec, cfg=OptimizerConfig(), workers=None):
    """Evaluate every sweep point; rows come back in parameter order."""
    return _pmap(_sweep_point, [(spec, cfg, float(t)) for t in spec.parameters()], workers)


def _fmt(v):
    return "" if v is None else f"{v:.12g}"


def sweep_csv(rows, spec):
    """Render sweep rows as CSV text (12 significant digits)."""
    cols = list(CSV_COLUMNS)
    if "symmetric" in spec.measures:
        cols += SYMMETRIC_COLUMNS
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(cols)
    for row in rows:
        w.writerow([_fmt(row.get(c)) for c in cols])
    return buf.getvalue()


# --- verification campaigns ------------------------------------------------

TOLERANCES = {
    "inequalities": 1e-6,   # minimum slack allowed: -tol
    "uncertainty": 1e-6,
    "dominance": 1e-6,      # symmetric - asymmetric allowed up to +tol
    "oracle-match": 1e-4,   # |optimizer - closed form|
}
CAMPAIGNS = tuple(TOLERANCES)


@dataclass
class CampaignResult:
    campaign: str
    dims: tuple
    n_samples: int
    min_slack: float = np.inf
    max_deviation: float = -np.inf
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.campaign} dims={self.dims[0]}x{self.dims[1]} "
                f"n={self.n_samples} min_slack={self.min_slack:.3e} "
                f"max_deviation={self.max_deviation:.3e} failures={len(self.failures)}")


def sample_seed(seed, index):
    """Per-sample seed derived from the campaign seed and sample index."""
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1)[0])


def random_tetrahedron_point(rng):
    """Uniform point of the Bell tetrahedron."""
    verts = np.array([[-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]], dtype=float)
    return rng.dirichlet(np.ones(4)) @ verts


def _campaign_sample(job):
    campaign, dims, s, cfg = job
    dA, dB = dims
    if campaign == "oracle-match":
        r = random_tetrahedron_point(np.random.default_rng(s))
        cv = compute_correlation_vector(states.make_bell_diagonal(r), cfg)
        dev = max(abs(a - b) for a, b in zip(cv.entries, oracles.bell_chi(r)))
        return {"deviation": dev}
    st = states.sample_random_state(dA, dB, "mixed-ginibre", s)
    cv = compute_correlation_vector(st, cfg)
    if campaign == "dominance":
        sv = compute_symmetric_vector(st, cfg)
        return {"deviation": max(b - a for a, b in zip(cv.entries, sv.entries))}
    b1, b2 = cv.optimum_bases[:2]
    unc = check_uncertainty_relation(st, b1, b2).slack
    if campaign == "uncertainty":
        return {"slack": unc}
    rep = check_inequality_9(st, cv)
    return {"slack": min(rep.slack, rep.relaxed_slack, unc)}


def run_campaign(campaign, n_samples, dims=(2, 2), seed=0, cfg=OptimizerConfig(),
                 workers=None):
    """Run ``n_samples`` random states through one family of checks."""
    if campaign not in TOLERANCES:
        raise InvalidInputError(f"unknown campaign {campaign!r}")
    if campaign == "oracle-match":
        dims = (2, 2)
    tol = TOLERANCES[campaign]
    seeds = [sample_seed(seed, i) for i in range(n_samples)]
    outs = _pmap(_campaign_sample, [(campaign, tuple(dims), s, cfg) for s in seeds], workers)
    res = CampaignResult(campaign, tuple(dims), n_samples)
    for i, (s, out) in enumerate(zip(seeds, outs)):
        if "slack" in out:
            res.min_slack = min(res.min_slack, out["slack"])
            if out["slack"] < -tol:
                res.failures.append((i, s, out["slack"]))
        else:
            res.max_deviation = max(res.max_deviation, out["deviation"])
            if out["deviation"] > tol:
                res.failures.append((i, s, out["deviation"]))
    return res
