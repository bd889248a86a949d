"""JSON state files and MUB basis-set files.

State file::

    {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}

or a family descriptor::

    {"family": "werner", "params": {"d": 2, "alpha": 0.5}}

Giving both ``matrix`` and ``family`` is rejected as ambiguous.
"""

import json

import numpy as np

from . import states
from .errors import InvalidInputError
from .measure import ProjectiveBasis

__all__ = [
    "ParseError",
    "FAMILIES",
    "state_from_dict",
    "state_to_dict",
    "read_state",
    "write_state",
    "family_state",
    "bases_to_dict",
    "bases_from_dict",
    "read_bases",
    "write_bases",
]


class ParseError(InvalidInputError):
    """Unreadable or malformed input document."""


def _encode_matrix(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def _decode_matrix(rows):
    try:
        a = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"matrix entries must be [re, im] pairs: {exc}") from None
    if a.ndim != 2:
        raise ParseError("matrix must be a nested list of rows")
    return a


def _counterexample(lam=0.5):
    z = ProjectiveBasis.computational(2)
    plus = np.full((2, 2), 0.5)
    return states.make_counterexample(lam, z, plus, [0.5, 0.5], [np.diag([1.0, 0.0]),
                                                               np.diag([0.0, 1.0])])


FAMILIES = {
    "werner": lambda d, alpha: states.make_werner(d, alpha),
    "bell-diagonal": lambda r: states.make_bell_diagonal(r),
    "rho1": lambda p: states.make_rho1(p),
    "rho2": lambda p: states.make_rho2(p),
    "bell": lambda name="psi-": states.bell_state(name),
    "epr": lambda: states.bell_state("psi-"),
    "classical": lambda: states.classical_example(),
    "pure-schmidt": lambda lambdas: states.make_pure_from_schmidt(lambdas),
    "counterexample": _counterexample,
    "random": lambda dA, dB, kind="mixed-ginibre", seed=0:
        states.sample_random_state(dA, dB, kind, seed),
}


def family_state(name, params=None):
    if name not in FAMILIES:
        raise ParseError(f"unknown family {name!r}; known: {sorted(FAMILIES)}")
    try:
        return FAMILIES[name](**(params or {}))
    except TypeError as exc:
        raise ParseError(f"bad parameters for family {name!r}: {exc}") from None


def state_from_dict(doc):
    if not isinstance(doc, dict):
        raise ParseError("state document must be a JSON object")
    has_matrix, has_family = "matrix" in doc, "family" in doc
    if has_matrix and has_family:
        raise ParseError("state document has both 'matrix' and 'family'")
    if has_family:
        return family_state(doc["family"], doc.get("params"))
    if not has_matrix or "dims" not in doc:
        raise ParseError("state document needs 'dims' and 'matrix' (or 'family')")
    try:
        dA, dB = (int(x) for x in doc["dims"])
    except (TypeError, ValueError):
        raise ParseError("'dims' must be a pair of integers") from None
    return states.BipartiteState(_decode_matrix(doc["matrix"]), dA, dB)


def state_to_dict(state):
    return {"dims": [state.dA, state.dB], "matrix": _encode_matrix(state.rho)}


def read_state(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None
    return state_from_dict(doc)


def write_state(state, path):
    with open(path, "w") as fh:
        json.dump(state_to_dict(state), fh)


def bases_to_dict(bases, overlap_report=None):
    doc = {"dim": bases[0].dim,
           "bases": [_encode_matrix(b.matrix.T) for b in bases]}
    if overlap_report is not None:
        doc["overlap_report"] = overlap_report
    return doc


def bases_from_dict(doc):
    """Inverse of :func:`bases_to_dict`; each basis is a list of vectors."""
    try:
        vecs = [_decode_matrix(b) for b in doc["bases"]]
        d = int(doc["dim"])
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed basis file: {exc}") from None
    out = []
    for v in vecs:
        if v.shape != (d, d):
            raise ParseError(f"basis has shape {v.shape}, expected {(d, d)}")
        out.append(ProjectiveBasis(v.T, tol=1e-9))
    return out


def read_bases(path):
    with open(path) as fh:
        try:
            return bases_from_dict(json.load(fh))
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON ({exc})") from None


def write_bases(bases, path, overlap_report=None):
    with open(path, "w") as fh:
        json.dump(bases_to_dict(bases, overlap_report), fh, indent=1)
