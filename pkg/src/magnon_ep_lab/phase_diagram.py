"""Real/complex phase structure: line scans, plane grids, gap maps.

Classification grids are the expensive part of the workflow, so everything
here runs on stacked matrices through the batch polynomial path. Results
are bit-identical for any thread count because each grid row is solved
independently of every other row.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .hamiltonian import (SWEEPABLE, TWO_PI, SystemParams, build_hamiltonian,
                          hamiltonian_stack, stack_from_arrays)
from .spectral import (EPSILON_REAL, Classification, classify_spectrum,
                       eigenvalues, eigenvalues_batch)

__all__ = [
    "LineScanResult", "PhaseDiagramGrid", "GapMap", "NoRealRegionError",
    "scan_line", "scan_plane", "critical_gamma", "resonance_gap", "gap_map",
    "default_threads",
]

#: environment variable overriding the worker thread count
THREADS_ENV_VAR = "MAGNON_EP_LAB_THREADS"


class NoRealRegionError(RuntimeError):
    """The scanned window contains no all-real point even at zero loss."""


@dataclass(frozen=True)
class LineScanResult:
    """One-parameter classification scan.

    ``transition_count`` is the number of sign changes of the all-real
    indicator along the grid; ``ep_locations`` are the bisection-refined
    boundary positions, one per transition, in sweep order.
    """
    knob: str
    values: np.ndarray
    all_real: np.ndarray
    transition_count: int
    ep_locations: tuple


@dataclass(frozen=True)
class PhaseDiagramGrid:
    """Two-parameter classification grid, x-major layout."""
    x_knob: str
    y_knob: str
    x_values: np.ndarray
    y_values: np.ndarray
    all_real: np.ndarray


@dataclass(frozen=True)
class GapMap:
    """Central eigenvalue splitting on resonance over (theta, gamma).

    ``delta_omega[i, j]`` is the distance between the two middle
    eigenvalue real parts at ``theta_values[i]``, ``gamma_values[j]``,
    and exactly 0.0 wherever the spectrum is complex.
    """
    theta_values: np.ndarray
    gamma_values: np.ndarray
    delta_omega: np.ndarray
    all_real: np.ndarray


def default_threads() -> int:
    """Worker count: env override if set, else the machine's CPU count."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is not None:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(
                f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
        if n < 1:
            raise ValueError(
                f"{THREADS_ENV_VAR} must be a positive integer, got {raw!r}")
        return n
    return os.cpu_count() or 1


def _classify_stack(stack: np.ndarray, eps_real: float, threads: int):
    # row-independent solves, so chunked execution cannot change results
    n = stack.shape[0]
    if threads <= 1 or n < 256:
        return eigenvalues_batch(stack, eps_real)
    roots = np.empty((n, 4), dtype=complex)
    all_real = np.empty(n, dtype=bool)
    bounds = np.linspace(0, n, threads + 1).astype(int)

    def work(a: int, b: int) -> None:
        roots[a:b], all_real[a:b] = eigenvalues_batch(stack[a:b], eps_real)

    with ThreadPoolExecutor(max_workers=threads) as pool:
        futs = [pool.submit(work, a, b)
                for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
        for f in futs:
            f.result()
    return roots, all_real


def scan_line(params: SystemParams, knob: str, lo: float, hi: float, n: int,
              *, eps_real: float = EPSILON_REAL,
              refine: bool = True) -> LineScanResult:
    """Classify the spectrum along one swept parameter.

    The sweep grid is ``linspace(lo, hi, n)``. Each real/complex boundary
    crossed by the grid is refined by bisection down to a bracket of
    ``(hi - lo) * 1e-6`` and reported at the bracket midpoint.
    """
    if n < 2:
        raise ValueError("scan needs at least 2 points")
    if not hi > lo:
        raise ValueError("scan window must satisfy lo < hi")
    values = np.linspace(lo, hi, n)
    stack = hamiltonian_stack(params, knob, values)
    _, all_real = eigenvalues_batch(stack, eps_real)
    flips = np.flatnonzero(all_real[1:] != all_real[:-1])
    eps = []
    if refine:
        width = (hi - lo) * 1e-6
        for i in flips:
            eps.append(_bisect_boundary(params, knob, values[i],
                                        values[i + 1], width, eps_real))
    return LineScanResult(knob, values, all_real, int(flips.size),
                          tuple(eps))


def _bisect_boundary(params: SystemParams, knob: str, a: float, b: float,
                     width: float, eps_real: float) -> float:
    cls_a = _classify_point(params, knob, a, eps_real)
    while (b - a) > width:
        mid = 0.5 * (a + b)
        if _classify_point(params, knob, mid, eps_real) == cls_a:
            a = mid
        else:
            b = mid
    return 0.5 * (a + b)


def _classify_point(params: SystemParams, knob: str, value: float,
                    eps_real: float) -> Classification:
    H = build_hamiltonian(params.with_value(knob, value))
    return eigenvalues(H, eps_real).classification


def scan_plane(params: SystemParams, x_knob: str, x_window, y_knob: str,
               y_window, *, eps_real: float = EPSILON_REAL,
               threads: int = 1) -> PhaseDiagramGrid:
    """Classification over a two-parameter grid.

    ``x_window`` and ``y_window`` are ``(lo, hi, n)`` triples; the grid is
    laid out x-major, matching the row order of the CSV export.
    """
    if x_knob not in SWEEPABLE or y_knob not in SWEEPABLE:
        raise ValueError(f"sweep knobs must be among {SWEEPABLE}")
    if x_knob == y_knob:
        raise ValueError("plane scan needs two distinct knobs")
    xs = _window_values(x_window, "x")
    ys = _window_values(y_window, "y")
    stack = _plane_stack(params, x_knob, np.repeat(xs, ys.size),
                         y_knob, np.tile(ys, xs.size))
    _, flat = _classify_stack(stack, eps_real, threads)
    return PhaseDiagramGrid(x_knob, y_knob, xs, ys,
                            flat.reshape(xs.size, ys.size))


def _window_values(window, label: str) -> np.ndarray:
    lo, hi, n = window
    n = int(n)
    if n < 2:
        raise ValueError(f"{label} window needs at least 2 points")
    if not hi > lo:
        raise ValueError(f"{label} window must satisfy lo < hi")
    return np.linspace(float(lo), float(hi), n)


def _plane_stack(params: SystemParams, x_knob: str, x_flat: np.ndarray,
                 y_knob: str, y_flat: np.ndarray) -> np.ndarray:
    fields = {
        "omega_c1": params.omega_c1,
        "omega_c2": params.omega_c2,
        "omega_m": params.omega_m,
        "gamma": params.gamma,
        "theta": params.theta,
    }
    fields[x_knob] = x_flat % TWO_PI if x_knob == "theta" else x_flat
    fields[y_knob] = y_flat % TWO_PI if y_knob == "theta" else y_flat
    return stack_from_arrays(g=params.g, **fields)


def critical_gamma(params: SystemParams, *, omega_m_lo: float = 20.0,
                   omega_m_hi: float = 30.0, n: int = 2001,
                   bracket: float = 1e-4, eps_real: float = EPSILON_REAL,
                   threads: int = 1) -> float:
    """Loss rate at which the last all-real sliver leaves the sweep window.

    Operational definition: for a given loop phase, scan the magnon
    frequency over ``[omega_m_lo, omega_m_hi]`` on an ``n``-point grid and
    ask whether any grid point is all-real. The threshold is located by
    doubling until the window goes fully complex, then bisecting the loss
    rate until the bracket is narrower than ``bracket``; the midpoint is
    returned. The answer is grid-quantized by construction, which keeps it
    deterministic across runs and platforms.
    """
    if bracket <= 0.0:
        raise ValueError("bracket width must be positive")
    omega_ms = np.linspace(omega_m_lo, omega_m_hi, int(n))

    def any_real(gam: float) -> bool:
        stack = hamiltonian_stack(params.with_value("gamma", gam),
                                  "omega_m", omega_ms)
        _, all_real = _classify_stack(stack, eps_real, threads)
        return bool(all_real.any())

    if not any_real(0.0):
        raise NoRealRegionError(
            "window is fully complex already at zero loss")
    lo, hi = 0.0, 1.0
    while any_real(hi):
        lo = hi
        hi *= 2.0
        if hi > 64.0:
            raise NoRealRegionError(
                "real region persists beyond gamma = 64, no threshold")
    while (hi - lo) > bracket:
        mid = 0.5 * (lo + hi)
        if any_real(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def resonance_gap(params: SystemParams, *,
                  eps_real: float = EPSILON_REAL) -> float:
    """Distance between the two middle eigenvalues on resonance.

    Zero whenever the spectrum is complex, which makes the gap a sharp
    order parameter for the phase boundary. Requires the magnon frequency
    to sit at the cavity average.
    """
    if abs(params.omega_m - params.omega_c) > 1e-9:
        raise ValueError(
            "resonance gap is defined at omega_m == (omega_c1+omega_c2)/2")
    spec = eigenvalues(build_hamiltonian(params), eps_real)
    if spec.classification is Classification.COMPLEX:
        return 0.0
    r = spec.eigenvalues.real
    return float(r[2] - r[1])


def gap_map(params: SystemParams, theta_window, gamma_window, *,
            eps_real: float = EPSILON_REAL, threads: int = 1) -> GapMap:
    """Resonance gap over a (theta, gamma) grid, theta-major.

    The zero set of the returned map coincides cell-for-cell with the
    complex region of a classification scan over the same grid, since both
    derive from the same certified root layout.
    """
    if abs(params.omega_m - params.omega_c) > 1e-9:
        raise ValueError(
            "gap map is defined at omega_m == (omega_c1+omega_c2)/2")
    ths = _window_values(theta_window, "theta")
    gams = _window_values(gamma_window, "gamma")
    if gams[0] < 0.0:
        raise ValueError("gamma window must be non-negative")
    stack = _plane_stack(params, "theta", np.repeat(ths, gams.size),
                         "gamma", np.tile(gams, ths.size))
    roots, all_real = _classify_stack(stack, eps_real, threads)
    delta = np.where(all_real, roots[:, 2].real - roots[:, 1].real, 0.0)
    shape = (ths.size, gams.size)
    return GapMap(ths, gams, delta.reshape(shape), all_real.reshape(shape))
