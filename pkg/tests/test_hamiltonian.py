import numpy as np
import pytest

import magnon_ep_lab as lab
from magnon_ep_lab.hamiltonian import TWO_PI, _eta_candidate
from oracles import charpoly_by_interpolation, random_params


def test_matrix_entries_written_out():
    p = lab.SystemParams(24.0, 26.0, 25.3, 0.7, 1.1)
    H = lab.build_hamiltonian(p)
    ph = np.exp(-1j * 1.1)
    expected = np.array([
        [24.0, 0.0, 1.0, 1.0],
        [0.0, 26.0, 1.0, ph],
        [1.0, 1.0, 25.3 - 0.7j, 0.0],
        [1.0, np.conj(ph), 0.0, 25.3 + 0.7j],
    ])
    np.testing.assert_allclose(H, expected, rtol=0, atol=1e-15)


def test_coupling_scales_with_g():
    p = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.3, g=2.5)
    H = lab.build_hamiltonian(p)
    assert H[0, 2] == 2.5
    assert H[3, 1] == 2.5 * np.exp(1j * 0.3)


def test_theta_stored_mod_two_pi():
    p = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.3 + TWO_PI)
    assert abs(p.theta - 0.3) < 1e-12
    q = lab.SystemParams(24.0, 26.0, 25.0, 0.5, -0.3)
    assert abs(q.theta - (TWO_PI - 0.3)) < 1e-12


def test_derived_frequencies():
    p = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0)
    assert p.omega_c == 25.0
    assert p.delta_c == 1.0


def test_parameter_validation():
    with pytest.raises(ValueError):
        lab.SystemParams(24.0, 26.0, 25.0, -0.1, 0.0)
    with pytest.raises(ValueError):
        lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0, g=0.0)
    with pytest.raises(ValueError):
        lab.SystemParams(np.nan, 26.0, 25.0, 0.5, 0.0)


def test_normalized_rescales_to_unit_coupling():
    p = lab.SystemParams(48.0, 52.0, 50.0, 1.0, 0.4, g=2.0)
    q = p.normalized()
    assert q.g == 1.0
    np.testing.assert_allclose(lab.build_hamiltonian(q),
                               lab.build_hamiltonian(p) / 2.0, rtol=1e-15)


def test_with_value_replaces_one_knob():
    p = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0)
    q = p.with_value("gamma", 1.3)
    assert q.gamma == 1.3 and q.omega_m == p.omega_m
    with pytest.raises(ValueError):
        p.with_value("coupling", 1.0)


@pytest.mark.parametrize("knob", lab.SWEEPABLE)
def test_stack_matches_individual_builds(knob):
    p = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.8)
    values = np.linspace(0.1, 5.9, 23)
    stack = lab.hamiltonian_stack(p, knob, values)
    for i, v in enumerate(values):
        H = lab.build_hamiltonian(p.with_value(knob, v))
        assert np.array_equal(stack[i], H)


def test_stack_rejects_unknown_knob():
    p = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0)
    with pytest.raises(ValueError):
        lab.hamiltonian_stack(p, "beta", np.array([1.0, 2.0]))


def test_stack_from_arrays_broadcasts_scalars():
    wm = np.array([24.5, 25.0, 25.5])
    stack = lab.stack_from_arrays(24.0, 26.0, wm, 0.5, 0.2)
    assert stack.shape == (3, 4, 4)
    for i, v in enumerate(wm):
        H = lab.build_hamiltonian(
            lab.SystemParams(24.0, 26.0, v, 0.5, 0.2))
        assert np.array_equal(stack[i], H)


# ── characteristic polynomial ────────────────────────────────────────────

def test_charpoly_of_diagonal_matrix():
    # (x-1)(x-2)(x-3)(x-4) expanded by hand
    cp = lab.characteristic_polynomial(np.diag([1.0, 2.0, 3.0, 4.0]))
    np.testing.assert_allclose(cp, [24.0, -50.0, 35.0, -10.0, 1.0],
                               rtol=0, atol=1e-12)


def test_charpoly_matches_determinant_interpolation():
    rng = np.random.default_rng(101)
    worst = 0.0
    for _ in range(100):
        H = lab.build_hamiltonian(random_params(rng))
        mine = lab.characteristic_polynomial(H)
        ref = charpoly_by_interpolation(H)
        worst = max(worst, np.abs(mine - ref).max() / np.abs(ref).max())
    assert worst < 1e-9


def test_charpoly_on_arbitrary_complex_matrices():
    rng = np.random.default_rng(102)
    for _ in range(50):
        H = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        mine = lab.characteristic_polynomial(H)
        ref = charpoly_by_interpolation(H)
        assert np.abs(mine - ref).max() / np.abs(ref).max() < 1e-9


def test_charpoly_real_for_model_family():
    rng = np.random.default_rng(103)
    worst = 0.0
    for _ in range(500):
        cp = lab.characteristic_polynomial(
            lab.build_hamiltonian(random_params(rng)))
        worst = max(worst, np.abs(cp.imag).max() / np.abs(cp).max())
    assert worst < 1e-12


def test_charpoly_mirror_phase_identity():
    # the loop phases theta and 2*pi - theta share one secular polynomial
    rng = np.random.default_rng(104)
    for _ in range(50):
        p = random_params(rng)
        q = p.with_value("theta", TWO_PI - p.theta)
        a = lab.characteristic_polynomial(lab.build_hamiltonian(p))
        b = lab.characteristic_polynomial(lab.build_hamiltonian(q))
        assert np.abs(a - b).max() / np.abs(a).max() < 1e-13


def test_charpoly_input_validation():
    with pytest.raises(ValueError):
        lab.characteristic_polynomial(np.eye(3))
    bad = np.eye(4, dtype=complex)
    bad[0, 0] = np.inf
    with pytest.raises(ValueError):
        lab.characteristic_polynomial(bad)


def test_charpoly_batch_matches_single():
    rng = np.random.default_rng(105)
    stack = np.stack([lab.build_hamiltonian(random_params(rng))
                      for _ in range(17)])
    batch = lab.characteristic_polynomial_batch(stack)
    for i in range(17):
        assert np.array_equal(batch[i],
                              lab.characteristic_polynomial(stack[i]))


# ── intertwiner ──────────────────────────────────────────────────────────

def test_eta_intertwines_conjugate():
    rng = np.random.default_rng(106)
    worst = 0.0
    for _ in range(300):
        p = random_params(rng)
        H = lab.build_hamiltonian(p)
        eta = lab.build_eta(p.theta)
        r = lab.pseudo_hermiticity_residual(H, eta)
        worst = max(worst, r / np.linalg.norm(H))
    assert worst < 1e-12


def test_eta_sign_choice_matters():
    # away from theta in {0, pi} only one phase sign intertwines
    p = lab.SystemParams(24.0, 26.0, 25.3, 0.7, 0.7)
    H = lab.build_hamiltonian(p)
    res = sorted(lab.pseudo_hermiticity_residual(H, _eta_candidate(0.7, s))
                 for s in (+1, -1))
    assert res[0] < 1e-12 * np.linalg.norm(H)
    assert res[1] > 0.1


def test_eta_is_a_unit_modulus_permutation():
    eta = lab.build_eta(1.234)
    nonzero = np.abs(eta) > 0
    assert nonzero.sum() == 4
    assert (nonzero.sum(axis=0) == 1).all()
    assert (nonzero.sum(axis=1) == 1).all()
    np.testing.assert_allclose(np.abs(eta[nonzero]), 1.0, rtol=1e-15)
    assert abs(abs(np.linalg.det(eta)) - 1.0) < 1e-12


def test_singular_eta_rejected():
    H = lab.build_hamiltonian(lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0))
    with pytest.raises(lab.SingularEtaError):
        lab.pseudo_hermiticity_residual(H, np.zeros((4, 4)))
