"""Closed forms checked against direct evaluation in a fixed basis."""

import numpy as np
import pytest
from numpy.testing import assert_allclose

from mubcorr import oracles, qmath, states
from mubcorr.measure import ProjectiveBasis, holevo, measure_side_A

KET0, KET1 = np.array([1.0, 0.0]), np.array([0.0, 1.0])
PLUS = np.array([1.0, 1.0]) / np.sqrt(2)


def proj(v):
    return np.outer(v, np.conj(v))


def h(x):
    return 0.0 if x in (0.0, 1.0) else float(-x * np.log2(x) - (1 - x) * np.log2(1 - x))


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("alpha", [-1.0, -0.3, 0.0, 0.5, 0.9, 1.0])
def test_werner_chi_equals_holevo_in_computational_basis(d, alpha):
    st = states.make_werner(d, alpha)
    direct = holevo(measure_side_A(st, ProjectiveBasis.computational(d)))
    assert oracles.werner_chi(d, alpha) == pytest.approx(direct, abs=1e-12)


def test_werner_chi_values():
    assert oracles.werner_chi(2, 1.0) == pytest.approx(1.0)
    assert oracles.werner_chi(3, 0.0) == pytest.approx(0.0, abs=1e-15)
    expected = np.log2(4 / 3) + (1 / 3) * np.log2(0.5)
    assert oracles.werner_chi(2, 0.5) == pytest.approx(expected)
    assert oracles.werner_chi(2, 0.5) == pytest.approx(0.0817, abs=1e-4)


@pytest.mark.parametrize("d,alpha", [(2, 0.4), (3, -0.7), (3, 0.95), (4, 0.2)])
def test_werner_mutual_information(d, alpha):
    st = states.make_werner(d, alpha)
    assert oracles.werner_mutual_information(d, alpha) == pytest.approx(
        st.mutual_information(), abs=1e-12)


@pytest.mark.parametrize("alpha", np.linspace(-1, 1, 9))
def test_werner_eof_matches_wootters_for_qubits(alpha):
    st = states.make_werner(2, alpha)
    assert oracles.werner_eof(2, alpha) == pytest.approx(oracles.eof_two_qubit(st.rho),
                                                         abs=1e-10)


def test_werner_eof_values():
    assert oracles.werner_eof(2, 1.0) == pytest.approx(1.0)
    assert oracles.werner_eof(2, 0.5) == 0.0
    assert oracles.werner_eof(3, 0.1) == 0.0


def test_concurrence_examples():
    assert oracles.concurrence(states.bell_state("phi+").rho) == pytest.approx(1.0)
    prod = np.kron(proj(KET0), proj(PLUS))
    assert oracles.concurrence(prod) == pytest.approx(0.0, abs=1e-7)
    assert oracles.concurrence(np.eye(4) / 4) == 0.0


@pytest.mark.parametrize("seed", range(5))
def test_bell_chi_equals_holevo_in_pauli_bases(seed):
    rng = np.random.default_rng(seed)
    w = rng.dirichlet(np.ones(4))
    verts = np.array([[-1, -1, -1], [-1, 1, 1], [1, -1, 1], [1, 1, -1]])
    r = w @ verts
    st = states.make_bell_diagonal(r)
    direct = sorted((holevo(measure_side_A(st, ProjectiveBasis.pauli(a))) for a in "xyz"),
                    reverse=True)
    assert_allclose(oracles.bell_chi(r), direct, atol=1e-12)
    res = oracles.oracle_bell_diagonal(r)
    assert res.extra["I"] == pytest.approx(st.mutual_information(), abs=1e-12)
    assert res.extra["E_f"] == pytest.approx(oracles.eof_two_qubit(st.rho), abs=1e-7)


def test_bell_diagonal_origin():
    assert oracles.oracle_bell_diagonal([0, 0, 0]).vector == (0.0, 0.0, 0.0)


def test_pure_oracle():
    assert oracles.oracle_pure([0.5, 0.5]).vector == pytest.approx((1, 1, 1))
    assert oracles.oracle_pure([1.0, 0.0]).vector == (0.0, 0.0, 0.0)
    assert oracles.oracle_pure([0.75, 0.25]).vector == pytest.approx((h(0.25),) * 3)


def test_cq_oracle():
    assert oracles.oracle_cq([0.5, 0.5], [proj(KET0), proj(KET1)]).vector == \
        pytest.approx((1, 0, 0))
    assert oracles.oracle_cq([0.5, 0.5], [proj(PLUS)] * 2).vector == \
        pytest.approx((0, 0, 0), abs=1e-12)
    lam = np.array([1 + 1 / np.sqrt(2), 1 - 1 / np.sqrt(2)]) / 2
    chi = float(-np.sum(lam * np.log2(lam)))
    v = oracles.oracle_cq([0.5, 0.5], [proj(KET0), proj(PLUS)]).vector
    assert v == pytest.approx((chi, 0, 0))


@pytest.mark.parametrize("p", [0.0, 0.1, 0.5, 0.8, 1.0])
def test_rho1_oracle(p):
    assert oracles.oracle_rho1(p).vector == pytest.approx((1.0, 1 - h(p), 1 - h(p)))
    st = states.make_rho1(p)
    # the Bell-diagonal formula must agree up to ordering
    assert sorted(oracles.bell_chi([1 - 2 * p, 1 - 2 * p, -1]), reverse=True) == \
        pytest.approx(sorted(oracles.oracle_rho1(p).vector, reverse=True))
    assert oracles.oracle_rho1(p).extra["I"] == pytest.approx(st.mutual_information())


@pytest.mark.parametrize("p", [0.0, 0.2, 1 / 3, 0.6, 1.0])
def test_rho2_oracle(p):
    a, b = 1 - h(p), 1 - h((1 + p) / 2)
    assert oracles.oracle_rho2(p).vector == pytest.approx((max(a, b), b, min(a, b)))
    assert sorted(oracles.bell_chi([1 - 2 * p, -p, -p]), reverse=True) == \
        pytest.approx(sorted(oracles.oracle_rho2(p).vector, reverse=True))


def test_counterexample_oracle():
    z = ProjectiveBasis.computational(2)
    res = oracles.oracle_counterexample(0.5, z, proj(PLUS), [0.5, 0.5],
                                        [proj(KET0), proj(KET1)])
    assert res.vector[1:] == (0.0, 0.0)
    assert res.extra["D"] > 1e-4


def test_counterexample_oracle_cq_limit():
    z = ProjectiveBasis.computational(2)
    sig = [proj(KET0), proj(PLUS)]
    near = oracles.oracle_counterexample(1 - 1e-9, z, proj(PLUS), [0.5, 0.5], sig)
    cq = oracles.oracle_cq([0.5, 0.5], sig)
    assert_allclose(near.vector, cq.vector, atol=1e-6)


def test_eof_from_concurrence_endpoints():
    assert oracles.eof_from_concurrence(0.0) == 0.0
    assert oracles.eof_from_concurrence(1.0) == pytest.approx(1.0)
    assert qmath.binary_entropy(0.5) == pytest.approx(1.0)
