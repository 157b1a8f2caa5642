"""Eigenvalue extraction, spectrum classification and branch tracking.

Spectra are computed from the characteristic polynomial, never from a
general dense eigensolver, so the reality structure certified at the
Hamiltonian level is preserved all the way into the classification: real
eigenvalues come back with an exactly-zero imaginary part and complex ones
as exact conjugate pairs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import permutations

import numpy as np

from .hamiltonian import build_hamiltonian, characteristic_polynomial_batch
from .quartic import ConvergenceFailure, solve_quartic_batch

__all__ = [
    "EPSILON_REAL", "Classification", "Spectrum", "BranchSweep",
    "ConvergenceFailure", "eigenvalues", "eigenvalues_batch",
    "classify_spectrum", "coalescence_measure", "track_branches",
]

#: an eigenvalue counts as real when |Im| is below this, in units of g
EPSILON_REAL = 1e-7

_PERMS = np.array(list(permutations(range(4))))


class Classification(Enum):
    """Spectrum class; the value doubles as the CSV label."""
    ALL_REAL = "real"
    COMPLEX = "complex"


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues of one parameter point plus derived summaries.

    ``eigenvalues`` is a (4,) complex array sorted ascending by real part,
    ties broken by imaginary part. ``coalescence`` is the minimum pairwise
    eigenvalue distance; it dips toward zero at exceptional points.
    """
    eigenvalues: np.ndarray
    classification: Classification
    coalescence: float


@dataclass(frozen=True)
class BranchSweep:
    """Continuously tracked eigenvalue branches along a one-knob sweep.

    ``branches[b, i]`` is branch b at sweep point i; every column is a
    permutation of the pointwise eigenvalues, with consecutive columns
    matched by minimal total displacement in the complex plane.
    """
    knob: str
    parameter_values: np.ndarray
    branches: np.ndarray


def classify_spectrum(eigs: np.ndarray,
                      eps_real: float = EPSILON_REAL) -> Classification:
    """All-real versus complex decision at threshold ``eps_real``."""
    eigs = np.asarray(eigs, dtype=complex)
    if np.abs(eigs.imag).max() < eps_real:
        return Classification.ALL_REAL
    return Classification.COMPLEX


def coalescence_measure(eigs: np.ndarray) -> float:
    """Minimum pairwise distance of the four eigenvalues."""
    eigs = np.asarray(eigs, dtype=complex)
    d = np.abs(eigs[:, None] - eigs[None, :])
    d[np.arange(len(eigs)), np.arange(len(eigs))] = np.inf
    return float(d.min())


def eigenvalues(H: np.ndarray, eps_real: float = EPSILON_REAL) -> Spectrum:
    """Solve one 4x4 mode matrix and classify its spectrum.

    Raises :class:`ConvergenceFailure` if the root polish cannot reach the
    residual target (does not happen for matrices of the model family).
    """
    H = np.asarray(H, dtype=complex)
    coeffs = characteristic_polynomial_batch(H[None, :, :])
    roots, _ = solve_quartic_batch(coeffs)
    eigs = roots[0]
    return Spectrum(eigs, classify_spectrum(eigs, eps_real),
                    coalescence_measure(eigs))


def eigenvalues_batch(Hs: np.ndarray, eps_real: float = EPSILON_REAL):
    """Vectorized spectra for an (n, 4, 4) stack.

    Returns ``(roots, all_real)`` where ``roots`` is (n, 4) complex sorted
    per row and ``all_real`` is a boolean row mask. This is the workhorse
    behind line scans and plane grids.
    """
    coeffs = characteristic_polynomial_batch(Hs)
    roots, _ = solve_quartic_batch(coeffs)
    all_real = np.abs(roots.imag).max(axis=1) < eps_real
    return roots, all_real


def track_branches(params_list) -> BranchSweep:
    """Match eigenvalues into continuous branches along a sweep.

    ``params_list`` must hold at least two :class:`SystemParams` where each
    consecutive pair differs in at most one parameter, the same parameter
    wherever it does differ. The first point is taken in sorted order;
    every later point gets the permutation of its eigenvalues minimizing the
    summed complex-plane displacement from the previous column, searched
    exhaustively over all 24 permutations.
    """
    params_list = list(params_list)
    if len(params_list) < 2:
        raise ValueError("a branch sweep needs at least 2 points")
    knob = _sweep_knob(params_list)
    values = np.array([getattr(p, knob) for p in params_list])
    stack = np.stack([build_hamiltonian(p) for p in params_list])
    roots, _ = eigenvalues_batch(stack)
    n = len(params_list)
    branches = np.empty((4, n), dtype=complex)
    branches[:, 0] = roots[0]
    for i in range(1, n):
        prev = branches[:, i - 1]
        new = roots[i]
        cost = np.abs(new[_PERMS] - prev[None, :]).sum(axis=1)
        branches[:, i] = new[_PERMS[int(cost.argmin())]]
    return BranchSweep(knob, values, branches)


def _sweep_knob(params_list) -> str:
    # repeated points are tolerated (a closed phase loop revisits theta=0)
    field_names = ("omega_c1", "omega_c2", "omega_m", "gamma", "theta", "g")
    knob = None
    for a, b in zip(params_list[:-1], params_list[1:]):
        diff = [f for f in field_names if getattr(a, f) != getattr(b, f)]
        if len(diff) > 1:
            raise ValueError(
                f"consecutive sweep points must differ in at most one "
                f"parameter, got {diff}")
        if diff:
            if knob is None:
                knob = diff[0]
            elif diff[0] != knob:
                raise ValueError(
                    f"sweep varies both {knob!r} and {diff[0]!r}")
    if knob is None:
        raise ValueError("sweep does not vary any parameter")
    return knob
