import json

import numpy as np
import pytest

import tensormp as t
from tensormp import EntryDistribution, NumericalError
from tensormp.simulation import estimate_gram_bytes, histogram_rows, trial_rng


def test_entry_distribution_parse():
    assert EntryDistribution.parse("phase").label == "phase"
    assert EntryDistribution.parse("rademacher").label == "rademacher"
    d = EntryDistribution.parse("roots:5")
    assert d.label == "roots:5" and d.q == 5
    with pytest.raises(ValueError):
        EntryDistribution.parse("gaussian")
    with pytest.raises(ValueError):
        EntryDistribution.parse("roots:1")


def test_samples_have_unit_modulus():
    rng = trial_rng(0, 0)
    for spec in ("phase", "rademacher", "roots:3", "roots:8"):
        d = EntryDistribution.parse(spec)
        z = d.sample(rng, (64,))
        assert np.allclose(np.abs(z), 1.0, atol=1e-14)


def test_rademacher_and_roots_land_on_their_alphabet():
    rng = trial_rng(1, 0)
    z = EntryDistribution.parse("rademacher").sample(rng, (256,))
    assert set(np.round(z.real).astype(int)) == {-1, 1}
    assert np.all(z.imag == 0)
    z = EntryDistribution.parse("roots:4").sample(rng, (256,))
    angles = np.angle(z) % (2 * np.pi)
    steps = np.round(angles / (np.pi / 2)).astype(int) % 4
    assert set(steps) == {0, 1, 2, 3}


def test_base_vector_scaling():
    vecs = t.sample_base_vectors(5, 3, 7, t.PHASE, seed=9)
    assert vecs.shape == (7, 3, 5)
    assert np.allclose(np.abs(vecs), 1 / np.sqrt(5), atol=1e-14)


def test_gram_matches_dense_spectrum():
    for spec in ("phase", "rademacher", "roots:3"):
        d = EntryDistribution.parse(spec)
        vecs = t.sample_base_vectors(2, 3, 5, d, seed=3)
        tau = np.array([1.0, 2.0, 0.5, 1.0, 3.0])
        G = t.gram_matrix(vecs)
        s = t.esd(G, tau, 8, seed=3, dims=(2, 3, 5))
        dense = t.hermitian_eigenvalues(t.dense_matrix(vecs, tau))
        red = np.sort(
            np.concatenate([np.zeros(s.zero_multiplicity), s.nonzero_eigenvalues])
        )
        assert red.shape == dense.shape
        assert np.max(np.abs(red - dense)) < 1e-10


def test_trace_moments_match_dense_powers():
    d = EntryDistribution.parse("phase")
    vecs = t.sample_base_vectors(3, 2, 6, d, seed=11)
    tau = np.linspace(0.5, 2.0, 6)
    G = t.gram_matrix(vecs)
    lam = t.hermitian_eigenvalues(t.dense_matrix(vecs, tau))
    got = t.trace_moments(G, tau, 5, 9)
    for p in range(1, 6):
        assert got[p - 1] == pytest.approx(float(np.sum(lam**p)) / 9, abs=1e-12)


def test_trace_moments_zero_tau():
    d = EntryDistribution.parse("phase")
    vecs = t.sample_base_vectors(3, 1, 4, d, seed=2)
    G = t.gram_matrix(vecs)
    got = t.trace_moments(G, np.zeros(4), 3, 3)
    assert got == [0.0, 0.0, 0.0]


def test_esd_single_projector():
    # m = 1, tau = 1: one eigenvalue equal to |y|^2 = 1, rest zero
    vecs = t.sample_base_vectors(4, 2, 1, t.PHASE, seed=5)
    G = t.gram_matrix(vecs)
    s = t.esd(G, np.ones(1), 16, seed=5, dims=(4, 2, 1))
    assert s.zero_multiplicity == 15
    assert s.nonzero_eigenvalues.shape == (1,)
    assert s.nonzero_eigenvalues[0] == pytest.approx(1.0, abs=1e-12)


def test_esd_eigenvalue_sum_matches_weighted_diagonal():
    vecs = t.sample_base_vectors(3, 2, 5, t.RADEMACHER, seed=8)
    tau = np.array([1.0, -1.0, 2.0, 0.5, 1.5])  # negative weights allowed
    G = t.gram_matrix(vecs)
    s = t.esd(G, tau, 9, seed=8, dims=(3, 2, 5))
    assert float(np.sum(s.nonzero_eigenvalues)) == pytest.approx(
        float(np.sum(tau * np.diag(G).real)), abs=1e-10
    )


def test_hermitian_eigenvalues_known_matrices():
    lam = t.hermitian_eigenvalues(np.eye(3, dtype=complex))
    assert np.allclose(lam, 1.0)
    H = np.array([[2.0, 1j], [-1j, 2.0]])
    assert np.allclose(t.hermitian_eigenvalues(H), [1.0, 3.0], atol=1e-12)
    H = np.array([[2.0, 1.0], [1.0, 3.0]], dtype=complex)
    expect = [(5 - np.sqrt(5)) / 2, (5 + np.sqrt(5)) / 2]
    assert np.allclose(t.hermitian_eigenvalues(H), expect, atol=1e-12)


def test_hermitian_eigenvalues_rejects_non_hermitian():
    with pytest.raises(NumericalError):
        t.hermitian_eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_run_trials_deterministic():
    args = (3, 2, 4, t.PHASE, (1.0,) * 4, 4, 3, 42)
    r1 = t.run_trials(*args)
    r2 = t.run_trials(*args)
    assert json.dumps(r1.to_json_dict(), sort_keys=True) == json.dumps(
        r2.to_json_dict(), sort_keys=True
    )


def test_run_trials_threads_do_not_change_results():
    r1 = t.run_trials(3, 2, 4, t.PHASE, (1.0,) * 4, 3, 4, 7, threads=1)
    r2 = t.run_trials(3, 2, 4, t.PHASE, (1.0,) * 4, 3, 4, 7, threads=2)
    assert json.dumps(r1.to_json_dict(), sort_keys=True) == json.dumps(
        r2.to_json_dict(), sort_keys=True
    )


def test_run_trials_seed_and_trial_independence():
    # different seeds give different draws; same seed, disjoint trials too
    r1 = t.run_trials(3, 2, 4, t.PHASE, (1.0,) * 4, 2, 1, 0)
    r2 = t.run_trials(3, 2, 4, t.PHASE, (1.0,) * 4, 2, 1, 1)
    assert r1.outcomes[0].sample.trace_moments != r2.outcomes[0].sample.trace_moments
    r3 = t.run_trials(3, 2, 4, t.PHASE, (1.0,) * 4, 2, 2, 0)
    assert (
        r3.outcomes[0].sample.trace_moments != r3.outcomes[1].sample.trace_moments
    )
    # trial 0 of the 2-trial run reproduces the 1-trial run
    assert r3.outcomes[0].sample.trace_moments == r1.outcomes[0].sample.trace_moments


def test_run_trials_single_trial_se_is_zero():
    r = t.run_trials(3, 2, 4, t.PHASE, (1.0,) * 4, 2, 1, 5)
    assert r.moment_ses == [0.0, 0.0]


def test_report_json_has_no_clock_fields():
    r = t.run_trials(3, 2, 4, t.PHASE, (1.0,) * 4, 2, 2, 5)
    payload = r.to_json_dict()
    flat = json.dumps(payload)
    assert "runtime" not in flat and "time" not in flat
    assert payload["config"]["seed"] == 5
    assert len(payload["ks"]["per_trial"]) == 2
    assert [row["p"] for row in payload["moments"]] == [1, 2]


def test_histogram_rows_mass_and_atom():
    r = t.run_trials(3, 2, 4, t.PHASE, (1.0,) * 4, 2, 3, 5)
    rows = histogram_rows([o.sample for o in r.outcomes], bins=16)
    left, right, mass = rows[0]
    assert (left, right) == (0.0, 0.0)  # dedicated zero-atom row
    total_zero = sum(o.sample.zero_multiplicity for o in r.outcomes)
    total = sum(o.sample.total_dimension for o in r.outcomes)
    assert mass == pytest.approx(total_zero / total, abs=1e-14)
    assert sum(m for _, _, m in rows) == pytest.approx(1.0, abs=1e-12)


def test_estimate_gram_bytes():
    assert estimate_gram_bytes(2048) == 16 * 2048 * 2048 * 4


def test_phase_rotation_invariance_of_gram_moments():
    # multiplying one base vector by a global phase leaves G's moments alone
    d = EntryDistribution.parse("phase")
    vecs = t.sample_base_vectors(3, 2, 4, d, seed=13)
    tau = np.ones(4)
    G1 = t.gram_matrix(vecs)
    rotated = vecs.copy()
    rotated[2, 0] *= np.exp(0.7j)
    G2 = t.gram_matrix(rotated)
    m1 = t.trace_moments(G1, tau, 4, 9)
    m2 = t.trace_moments(G2, tau, 4, 9)
    assert m1 == pytest.approx(m2, abs=1e-12)
