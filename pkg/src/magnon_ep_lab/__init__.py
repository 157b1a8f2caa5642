"""Spectra, exceptional points and transmission of a driven two-cavity,
two-magnon gain-loss system.

The model is a 4x4 non-Hermitian mode matrix for two microwave cavities
coupled to a balanced gain/loss magnon pair through a phase-bearing
coupling loop. Everything is expressed in units of the coherent coupling
rate, so the spectra here are dimensionless; multiply by a physical
coupling to get laboratory frequencies.

Numerical backbone: characteristic polynomials via a trace recursion and
a quartic solver that certifies real-coefficient cases, keeping real
spectra exactly real. That certification is what makes the real/complex
phase maps flicker-free near their boundaries.

The command line tool (``magnon-ep-lab``) wraps the same functions and
writes CSV tables plus a manifest; see the README for schemas.
"""

__version__ = "0.1.0"

from .hamiltonian import (SWEEPABLE, SingularEtaError, SystemParams,
                          build_eta, build_hamiltonian,
                          characteristic_polynomial,
                          characteristic_polynomial_batch,
                          hamiltonian_stack, pseudo_hermiticity_residual,
                          stack_from_arrays)
from .phase_diagram import (GapMap, LineScanResult, NoRealRegionError,
                            PhaseDiagramGrid, critical_gamma, default_threads,
                            gap_map, resonance_gap, scan_line, scan_plane)
from .quartic import ConvergenceFailure, solve_quartic, solve_quartic_batch
from .spectral import (EPSILON_REAL, BranchSweep, Classification, Spectrum,
                       classify_spectrum, coalescence_measure, eigenvalues,
                       eigenvalues_batch, track_branches)
from .transmission import (LineCut, PoleAtInputError, TransmissionGrid,
                           TransmissionParams, line_cut, s21_point,
                           transmission_map)

__all__ = [
    "__version__",
    "SWEEPABLE", "SystemParams", "SingularEtaError",
    "build_hamiltonian", "hamiltonian_stack", "stack_from_arrays",
    "build_eta", "pseudo_hermiticity_residual",
    "characteristic_polynomial", "characteristic_polynomial_batch",
    "ConvergenceFailure", "solve_quartic", "solve_quartic_batch",
    "EPSILON_REAL", "Classification", "Spectrum", "BranchSweep",
    "classify_spectrum", "coalescence_measure", "eigenvalues",
    "eigenvalues_batch", "track_branches",
    "LineScanResult", "PhaseDiagramGrid", "GapMap", "NoRealRegionError",
    "scan_line", "scan_plane", "critical_gamma", "resonance_gap", "gap_map",
    "default_threads",
    "PoleAtInputError", "TransmissionParams", "TransmissionGrid", "LineCut",
    "s21_point", "transmission_map", "line_cut",
]
