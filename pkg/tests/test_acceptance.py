"""Acceptance gate: one test per release criterion.

Each test prints a single PASS/FAIL line with the measured number next to
its threshold, then asserts. Thresholds live inline so the file reads as
the contract it enforces. Criteria that rely on values no analytic source
provides use regression pins frozen on the first verified run; those are
marked "pinned" where they appear.
"""

import json
import time

import numpy as np
import pytest

import magnon_ep_lab as lab
from magnon_ep_lab.cli import execute, parse_config
from oracles import (dense_eigenvalues, pairing_distance, random_params,
                     s21_langevin)

BASE = lab.SystemParams(24.0, 26.0, 25.0, 0.5, 0.0)

_CAPTURE = None


@pytest.fixture(autouse=True)
def _route_past_capture(capfd):
    # the PASS/FAIL line must reach the terminal even for passing tests,
    # which pytest's capture would otherwise swallow
    global _CAPTURE
    _CAPTURE = capfd
    yield
    _CAPTURE = None


def _check(label, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] {label}: {detail}"
    if _CAPTURE is not None:
        with _CAPTURE.disabled():
            print(line)
    else:
        print(line)
    assert ok, f"{label}: {detail}"


def test_c01_critical_loss_rate_in_band():
    t0 = time.perf_counter()
    p = lab.critical_gamma(BASE, threads=1)
    dt = time.perf_counter() - t0
    ok = 1.45 <= p <= 1.49 and dt < 10.0
    _check("c01 critical loss rate",
           ok, f"P={p:.6f} in [1.45, 1.49], {dt:.2f}s < 10s")


def test_c02_transition_count_table():
    table = [
        (0.5, 0.0, 4), (1.0, 0.0, 4), (1.47, 0.0, 4), (1.6, 0.0, 0),
        (0.5, np.pi / 4, 2), (1.4, np.pi / 4, 4), (0.5, np.pi / 2, 2),
    ]
    t0 = time.perf_counter()
    got = []
    for gamma, theta, want in table:
        r = lab.scan_line(lab.SystemParams(24.0, 26.0, 25.0, gamma, theta),
                          "omega_m", 20.0, 30.0, 2001, refine=False)
        got.append((r.transition_count, want))
    dt = time.perf_counter() - t0
    ok = all(g == w for g, w in got) and dt < 5.0
    _check("c02 transition counts", ok,
           f"{[g for g, _ in got]} == {[w for _, w in got]}, "
           f"{dt:.2f}s < 5s")


def test_c03_pseudo_hermiticity_residual():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(1000):
        p = random_params(rng)
        H = lab.build_hamiltonian(p)
        r = lab.pseudo_hermiticity_residual(H, lab.build_eta(p.theta))
        worst = max(worst, r / np.linalg.norm(H))
    _check("c03 pseudo-hermiticity", worst < 1e-10,
           f"max residual {worst:.3e} < 1e-10 of |H| over 1000 draws")


def test_c04_real_coefficients_and_conjugate_closure():
    rng = np.random.default_rng(2025)
    stack = np.stack([lab.build_hamiltonian(random_params(rng))
                      for _ in range(1000)])
    coeffs = lab.characteristic_polynomial_batch(stack)
    im_rel = (np.abs(coeffs.imag).max(axis=1)
              / np.abs(coeffs).max(axis=1)).max()
    roots, _ = lab.eigenvalues_batch(stack)
    closure = max(
        np.abs(np.sort_complex(row) - np.sort_complex(row.conj())).max()
        for row in roots)
    ok = im_rel < 1e-10 and closure < 1e-8
    _check("c04 real secular polynomial", ok,
           f"imag {im_rel:.3e} < 1e-10, closure {closure:.3e} < 1e-8")


def test_c05_eigensolver_against_dense_oracle():
    rng = np.random.default_rng(2026)
    worst_pair = worst_tr = worst_det = 0.0
    for _ in range(1000):
        H = lab.build_hamiltonian(random_params(rng))
        e = lab.eigenvalues(H).eigenvalues
        worst_pair = max(worst_pair,
                         pairing_distance(e, dense_eigenvalues(H)))
        tr = np.trace(H)
        worst_tr = max(worst_tr, abs(e.sum() - tr) / abs(tr))
        det = np.linalg.det(H)
        worst_det = max(worst_det, abs(e.prod() - det) / abs(det))
    ok = worst_pair < 1e-8 and worst_tr < 1e-10 and worst_det < 1e-8
    _check("c05 eigensolver oracle", ok,
           f"pairing {worst_pair:.3e} < 1e-8, trace {worst_tr:.3e} "
           f"< 1e-10, det {worst_det:.3e} < 1e-8")


def test_c06_gap_phase_law():
    thetas = np.append(np.arange(0.0, np.pi, 0.01), np.pi)
    gaps = np.array([lab.resonance_gap(BASE.with_value("theta", t))
                     for t in thetas])
    opening = int(np.flatnonzero(gaps > 0.0)[0])
    ep1 = thetas[opening]
    flat_below = bool((gaps[:opening] == 0.0).all())
    rising = bool((np.diff(gaps[opening:]) > 0.0).all())
    peak_at_pi = abs(gaps[-1] - 2.0) < 1e-9           # pinned, first run
    pin_ok = abs(ep1 - 0.51) < 0.02                   # pinned, first run
    xs = np.arange(0.01, np.pi - 0.01, 0.01)
    mirror = max(
        abs(lab.resonance_gap(BASE.with_value("theta", np.pi - x))
            - lab.resonance_gap(BASE.with_value("theta", np.pi + x)))
        for x in xs)
    ok = flat_below and rising and peak_at_pi and pin_ok and mirror < 1e-8
    _check("c06 gap-phase law", ok,
           f"zero below EP1={ep1:.2f}, strictly rising to 2.0 at pi, "
           f"mirror defect {mirror:.3e} < 1e-8")


def test_c07_gap_map_matches_classification():
    gm = lab.gap_map(BASE, (0.0, 2.0 * np.pi, 181), (0.01, 1.5, 141))
    grid = lab.scan_plane(BASE, "theta", (0.0, 2.0 * np.pi, 181),
                          "gamma", (0.01, 1.5, 141))
    agree = int((np.array(gm.delta_omega == 0.0)
                 == ~grid.all_real).sum())
    total = grid.all_real.size
    _check("c07 gap map vs classification", agree == total,
           f"{agree}/{total} cells agree on 181x141 grid")


def test_c08_transmission_against_langevin():
    rng = np.random.default_rng(2027)
    worst = 0.0
    n = 0
    while n < 1000:
        p = random_params(rng)
        beta = rng.uniform(0.02, 0.5)
        omega = rng.uniform(20.0, 30.0)
        try:
            a = lab.s21_point(lab.TransmissionParams(p, beta), omega)
        except lab.PoleAtInputError:
            continue
        b = s21_langevin(p, beta, omega)
        worst = max(worst, abs(a - b) / max(abs(b), 1e-300))
        n += 1
    _check("c08 transmission vs steady state", worst < 1e-8,
           f"max relative gap {worst:.3e} < 1e-8 over 1000 samples")


def test_c09_qualitative_spectrum_signatures():
    # (a) zero phase: inner branches attract, imaginary parts split
    s = lab.eigenvalues(lab.build_hamiltonian(BASE))
    inner = s.eigenvalues[np.argsort(-np.abs(s.eigenvalues.imag))[:2]]
    attract = (abs(inner[0].real - inner[1].real) < 1e-9
               and np.abs(inner.imag).min() > 1e-3
               and s.classification is lab.Classification.COMPLEX)
    # (b) 45 degrees: all-real with an open inner gap
    p45 = BASE.with_value("theta", np.pi / 4)
    s45 = lab.eigenvalues(lab.build_hamiltonian(p45))
    gap45 = lab.resonance_gap(p45)
    real_gapped = (s45.classification is lab.Classification.ALL_REAL
                   and gap45 > 1e-3)
    # (c) stronger phase, wider gap
    gap90 = lab.resonance_gap(BASE.with_value("theta", np.pi / 2))
    ordered = gap90 > gap45
    ok = attract and real_gapped and ordered
    _check("c09 qualitative signatures", ok,
           f"attraction at 0, real gap {gap45:.3f} at 45deg, "
           f"{gap90:.3f} > {gap45:.3f} at 90deg")


def test_c10_reruns_byte_identical(tmp_path):
    configs = {
        "spectrum": {"sweep": {"knob": "omega_m", "lo": 20.0, "hi": 30.0,
                               "n": 2001}},
        "phase-diagram": {"x": {"knob": "theta", "lo": 0.0, "hi": 360.0,
                                "n": 181},
                          "y": {"knob": "gamma", "lo": 0.01, "hi": 1.5,
                                "n": 141}},
        "transmission": {"theta_deg": 90.0,
                         "omega_m_window": {"lo": 20.0, "hi": 30.0,
                                            "n": 41},
                         "omega_window": {"lo": 20.0, "hi": 30.0,
                                          "n": 201}},
        "line-cut": {"theta_deg": 180.0, "deltas": [-2.0, 0.0, 2.0],
                     "omega_window": {"lo": 21.0, "hi": 29.0, "n": 401}},
        "gap-map": {"theta_window": {"lo": 0.0, "hi": 360.0, "n": 61},
                    "gamma_window": {"lo": 0.01, "hi": 1.5, "n": 41}},
        "critical-gamma": {},
        "verify": {"trials": 1000},
    }
    mismatched = []
    for command, data in configs.items():
        path = tmp_path / f"{command}.json"
        path.write_text(json.dumps(data), encoding="utf-8")
        cfg = parse_config(str(path), command=command)
        execute(cfg, tmp_path / command / "a")
        execute(cfg, tmp_path / command / "b")
        for name in (cfg.output, "manifest.json"):
            a = (tmp_path / command / "a" / name).read_bytes()
            b = (tmp_path / command / "b" / name).read_bytes()
            if a != b:
                mismatched.append(f"{command}/{name}")
    _check("c10 determinism", not mismatched,
           f"byte-identical reruns for {len(configs)} configs"
           + (f", mismatches: {mismatched}" if mismatched else ""))
