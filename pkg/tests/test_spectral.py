import numpy as np
import pytest

import magnon_ep_lab as lab
from oracles import dense_eigenvalues, pairing_distance, random_params


def _spectrum(params):
    return lab.eigenvalues(lab.build_hamiltonian(params))


def test_hermitian_corner_has_known_spectrum():
    # theta=0, gamma=0 on resonance: 25 (twice) and 25 +- sqrt(5)
    s = _spectrum(lab.SystemParams(24.0, 26.0, 25.0, 0.0, 0.0))
    want = np.array([25.0 - np.sqrt(5.0), 25.0, 25.0, 25.0 + np.sqrt(5.0)])
    np.testing.assert_allclose(np.sort(s.eigenvalues.real), want, atol=1e-5)
    assert (s.eigenvalues.imag == 0.0).all()
    assert s.classification is lab.Classification.ALL_REAL


def test_matches_dense_oracle():
    rng = np.random.default_rng(31)
    worst = 0.0
    for _ in range(500):
        H = lab.build_hamiltonian(random_params(rng))
        worst = max(worst, pairing_distance(
            lab.eigenvalues(H).eigenvalues, dense_eigenvalues(H)))
    assert worst < 1e-8


def test_trace_and_determinant_identities():
    rng = np.random.default_rng(32)
    for _ in range(300):
        H = lab.build_hamiltonian(random_params(rng))
        e = lab.eigenvalues(H).eigenvalues
        scale = np.abs(np.trace(H))
        assert abs(e.sum() - np.trace(H)) / scale < 1e-10
        det = np.linalg.det(H)
        assert abs(e.prod() - det) / abs(det) < 1e-8


def test_conjugate_closure_is_bitwise():
    rng = np.random.default_rng(33)
    for _ in range(500):
        e = _spectrum(random_params(rng)).eigenvalues
        assert np.array_equal(np.sort_complex(e), np.sort_complex(e.conj()))


def test_eigenvalues_sorted_by_real_then_imag():
    rng = np.random.default_rng(34)
    for _ in range(100):
        e = _spectrum(random_params(rng)).eigenvalues
        assert (np.diff(e.real) >= 0.0).all()
        same = np.diff(e.real) == 0.0
        assert (np.diff(e.imag)[same] >= 0.0).all()


def test_classification_respects_threshold():
    # resonance at theta=0 is complex for any positive loss
    p = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0)
    H = lab.build_hamiltonian(p)
    assert lab.eigenvalues(H).classification is lab.Classification.COMPLEX
    loose = lab.eigenvalues(H, eps_real=1.0)
    assert loose.classification is lab.Classification.ALL_REAL


def test_classify_spectrum_boundary():
    eigs = np.array([1.0, 2.0, 3.0, 4.0 + 5e-8j])
    assert lab.classify_spectrum(eigs) is lab.Classification.ALL_REAL
    assert (lab.classify_spectrum(eigs, eps_real=1e-9)
            is lab.Classification.COMPLEX)


def test_coalescence_small_at_exceptional_point():
    s = _spectrum(lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.5053577))
    assert s.coalescence < 1e-2
    far = _spectrum(lab.SystemParams(24.0, 26.0, 25.0, 0.5, np.pi))
    assert far.coalescence > 0.5


def test_batch_matches_single_calls():
    rng = np.random.default_rng(35)
    stack = np.stack([lab.build_hamiltonian(random_params(rng))
                      for _ in range(25)])
    roots, all_real = lab.eigenvalues_batch(stack)
    for i in range(25):
        s = lab.eigenvalues(stack[i])
        assert np.array_equal(roots[i], s.eigenvalues)
        assert all_real[i] == (
            s.classification is lab.Classification.ALL_REAL)


# ── branch tracking ──────────────────────────────────────────────────────

def test_branches_are_permutations_and_continuous():
    base = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0)
    values = np.linspace(20.0, 30.0, 501)
    sweep = lab.track_branches(
        [base.with_value("omega_m", v) for v in values])
    assert sweep.knob == "omega_m"
    assert sweep.branches.shape == (4, 501)
    for i, v in enumerate(values):
        point = _spectrum(base.with_value("omega_m", v)).eigenvalues
        assert np.array_equal(np.sort_complex(sweep.branches[:, i]),
                              np.sort_complex(point))
    assert np.abs(np.diff(sweep.branches, axis=1)).max() < 0.5


def test_branch_tracking_crosses_sorted_order():
    # inside the attractive region sorted order swaps partners; tracked
    # branches must not inherit that discontinuity
    base = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0)
    values = np.linspace(24.5, 25.5, 201)
    sweep = lab.track_branches(
        [base.with_value("omega_m", v) for v in values])
    steps = np.abs(np.diff(sweep.branches, axis=1)).max()
    assert steps < 0.1


def test_track_branches_validation():
    base = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0)
    with pytest.raises(ValueError):
        lab.track_branches([base])
    with pytest.raises(ValueError):
        lab.track_branches([base, base])  # nothing varies
    two = base.with_value("omega_m", 26.0).with_value("gamma", 1.0)
    with pytest.raises(ValueError):
        lab.track_branches([base, two])  # two knobs at once
    mixed = [base, base.with_value("omega_m", 26.0),
             base.with_value("omega_m", 26.0).with_value("gamma", 1.0)]
    with pytest.raises(ValueError):
        lab.track_branches(mixed)


def test_track_branches_tolerates_repeated_point():
    base = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0)
    chain = [base.with_value("theta", t) for t in (0.0, 0.5, 0.5, 1.0)]
    sweep = lab.track_branches(chain)
    assert sweep.knob == "theta"
    assert np.array_equal(sweep.branches[:, 1], sweep.branches[:, 2])
