"""Randomised invariants of the building blocks."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.testing import assert_allclose

from mubcorr import measure, mub, qmath, states
from mubcorr.measure import ProjectiveBasis

dims = st.sampled_from([(2, 2), (2, 3), (3, 2), (3, 3)])
seeds = st.integers(0, 2**32 - 1)
SETTINGS = settings(max_examples=40, deadline=None)


@SETTINGS
@given(dims, seeds)
def test_partial_traces_preserve_trace(d, seed):
    rho = states.sample_random_state(*d, seed=seed).rho
    for keep in "AB":
        assert abs(np.trace(qmath.partial_trace(rho, d, keep=keep)) - 1.0) < 1e-12


@SETTINGS
@given(dims, seeds)
def test_entropy_bounds_and_subadditivity(d, seed):
    s = states.sample_random_state(*d, seed=seed)
    sa = qmath.von_neumann_entropy(s.marginal("A"))
    sb = qmath.von_neumann_entropy(s.marginal("B"))
    sab = s.entropy()
    assert -1e-12 <= sa <= np.log2(d[0]) + 1e-12
    assert sab <= sa + sb + 1e-10          # subadditivity
    assert abs(sa - sb) <= sab + 1e-10     # Araki-Lieb


@SETTINGS
@given(dims, seeds, seeds)
def test_holevo_bounds(d, seed, useed):
    s = states.sample_random_state(*d, seed=seed)
    u = ProjectiveBasis(states.random_unitary(d[0], np.random.default_rng(useed)))
    chi = measure.holevo(measure.measure_side_A(s, u))
    sb = qmath.von_neumann_entropy(s.marginal("B"))
    assert -1e-12 <= chi <= min(sb, np.log2(d[0])) + 1e-10
    # accessible information never beats the Holevo bound on the same side
    ub = ProjectiveBasis(states.random_unitary(d[1], np.random.default_rng(useed + 1)))
    mi = measure.classical_mutual_information(measure.measure_joint(s, u, ub))
    assert mi <= chi + 1e-10


@SETTINGS
@given(dims, seeds)
def test_pure_state_holevo_equals_entanglement(d, seed):
    s = states.sample_random_state(*d, kind="pure-haar", seed=seed)
    sb = qmath.von_neumann_entropy(s.marginal("B"))
    # for a pure state the Schmidt basis of A attains S(B)
    w, v = np.linalg.eigh(s.marginal("A"))
    chi = measure.holevo(measure.measure_side_A(s, ProjectiveBasis(v)))
    assert abs(chi - sb) < 1e-9


@SETTINGS
@given(st.sampled_from([2, 3, 4, 5]), seeds)
def test_canonical_idempotent(d, seed):
    b = ProjectiveBasis(states.random_unitary(d, np.random.default_rng(seed)))
    c = b.canonical()
    assert_allclose(c.canonical().matrix, c.matrix, atol=1e-12)
    assert c.equivalent(b, 1e-9)


@SETTINGS
@given(st.sampled_from([2, 3, 4, 5, 7]), seeds)
def test_chart_members_unbiased(d, seed):
    rng = np.random.default_rng(seed)
    anchor = ProjectiveBasis(states.random_unitary(d, rng))
    chart = mub.chart_mu_to_one(anchor)
    b = chart.basis(rng.uniform(0, 2 * np.pi, chart.n_params))
    assert mub.is_unbiased(anchor, b, 1e-9)


@SETTINGS
@given(st.sampled_from([3, 5, 7]), seeds)
def test_multi_anchor_chart_members_unbiased(d, seed):
    rng = np.random.default_rng(seed)
    w = states.random_unitary(d, rng)
    fam = mub.standard_mub_family(d)
    i, j = rng.choice(d + 1, size=2, replace=False)
    anchors = [fam.bases[i].transformed(w), fam.bases[j].transformed(w)]
    chart = mub.chart_mu_to_many(anchors)
    assert len(chart.members()) == d - 1
    for m in chart.members():
        for a in anchors:
            assert mub.is_unbiased(m, a, 1e-8)


@SETTINGS
@given(seeds)
def test_local_unitary_invariance_of_holevo(seed):
    rng = np.random.default_rng(seed)
    s = states.sample_random_state(2, 3, seed=seed)
    ua, ub = states.random_unitary(2, rng), states.random_unitary(3, rng)
    t = states.apply_local_unitaries(s, ua, ub)
    b = ProjectiveBasis(states.random_unitary(2, rng))
    chi_s = measure.holevo(measure.measure_side_A(s, b))
    chi_t = measure.holevo(measure.measure_side_A(t, b.transformed(ua)))
    assert abs(chi_s - chi_t) < 1e-10
