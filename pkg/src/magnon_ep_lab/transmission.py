"""Two-port transmission through the cavity pair.

Closed-form steady-state amplitude for a probe entering cavity 1 and
leaving cavity 2, with both cavities loaded at the same external rate.
The magnon pair enters through the two self-energy-like terms ``1/E`` and
``1/F`` carrying the gain and loss poles; the loop phase shows up both in
the cross coupling and in the numerator interference factor.

All frequencies are in units of the coherent coupling, matching
:class:`~magnon_ep_lab.hamiltonian.SystemParams`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hamiltonian import SystemParams

__all__ = [
    "POLE_TOL", "POLE_CAP", "PoleAtInputError", "TransmissionParams",
    "TransmissionGrid", "LineCut", "s21_point", "transmission_map",
    "line_cut",
]

#: |E|, |F| or |f| below this absolute size counts as a pole hit
POLE_TOL = 1e-14

#: magnitude assigned to pole cells in map mode
POLE_CAP = 1e6


class PoleAtInputError(ArithmeticError):
    """A single-point evaluation landed on a pole of the response."""


@dataclass(frozen=True)
class TransmissionParams:
    """System parameters plus the external cavity loading rate."""
    system: SystemParams
    beta: float = 0.1

    def __post_init__(self):
        if not np.isfinite(self.beta) or self.beta < 0.0:
            raise ValueError("cavity loading beta must be finite and >= 0")


@dataclass(frozen=True)
class TransmissionGrid:
    """|S21| over (omega_m, omega), omega_m-major, column max of 1.

    ``pole_mask`` marks cells that hit a response pole; those cells carry
    the cap magnitude and take part in the normalization as-is.
    """
    omega_m_values: np.ndarray
    omega_values: np.ndarray
    s21_abs: np.ndarray
    pole_mask: np.ndarray


@dataclass(frozen=True)
class LineCut:
    """Normalized |S21| versus probe frequency at fixed detuning."""
    delta: float
    omega_values: np.ndarray
    s21_norm: np.ndarray
    pole_mask: np.ndarray


def _s21_fields(p: SystemParams, beta: float, omega_m, omega):
    """Complex amplitude and pole mask, broadcasting over the inputs."""
    om = np.asarray(omega, dtype=float)
    wm = np.asarray(omega_m, dtype=float)
    E = om - wm + 1j * p.gamma
    F = om - wm - 1j * p.gamma
    pole = (np.abs(E) < POLE_TOL) | (np.abs(F) < POLE_TOL)
    cth = np.cos(p.theta)
    sth = np.sin(p.theta)
    with np.errstate(divide="ignore", invalid="ignore"):
        invE = 1.0 / E
        invF = 1.0 / F
        self_e = 1j * beta - invE - invF
        f = (((om - p.omega_c1) + self_e) * ((om - p.omega_c2) + self_e)
             - (1j * beta - invE - cth * invF) ** 2
             - (sth * invF) ** 2)
        num = ((2.0 - 2.0 * cth) * invF - 2.0 * om
               + p.omega_c1 + p.omega_c2) * (1j * beta)
        s = num / f
    pole = pole | (np.abs(f) < POLE_TOL) | ~np.isfinite(s)
    return s, pole


def s21_point(tp: TransmissionParams, omega: float) -> complex:
    """Complex transmission amplitude at one probe frequency.

    Raises :class:`PoleAtInputError` when the point sits on a pole of the
    response within :data:`POLE_TOL`; callers scanning grids should use
    :func:`transmission_map`, which caps and flags instead.
    """
    s, pole = _s21_fields(tp.system, tp.beta, tp.system.omega_m,
                          float(omega))
    if bool(pole):
        raise PoleAtInputError(
            f"response pole within {POLE_TOL:g} of the requested point")
    return complex(s)


def transmission_map(tp: TransmissionParams, omega_m_values: np.ndarray,
                     omega_values: np.ndarray, *,
                     normalize: bool = True) -> TransmissionGrid:
    """|S21| over a (omega_m, omega) grid.

    Pole cells are capped at :data:`POLE_CAP` and flagged. With
    ``normalize`` each fixed-omega_m column is scaled to a maximum of 1,
    which is how the maps are meant to be plotted.
    """
    wm = np.asarray(omega_m_values, dtype=float)[:, None]
    om = np.asarray(omega_values, dtype=float)[None, :]
    s, pole = _s21_fields(tp.system, tp.beta, wm, om)
    mag = np.where(pole, POLE_CAP, np.abs(s))
    mag = np.minimum(mag, POLE_CAP)
    if normalize:
        peak = mag.max(axis=1, keepdims=True)
        mag = np.where(peak > 0.0, mag / np.where(peak > 0.0, peak, 1.0),
                       mag)
    return TransmissionGrid(wm[:, 0], om[0], mag, pole)


def line_cut(tp: TransmissionParams, delta: float,
             omega_values: np.ndarray) -> LineCut:
    """Normalized |S21| versus probe frequency at fixed magnon detuning.

    ``delta`` is the offset of the magnon frequency from the cavity
    average; the curve is scaled to peak at 1.
    """
    p = tp.system.with_value("omega_m", tp.system.omega_c + float(delta))
    om = np.asarray(omega_values, dtype=float)
    s, pole = _s21_fields(p, tp.beta, p.omega_m, om)
    mag = np.where(pole, POLE_CAP, np.abs(s))
    mag = np.minimum(mag, POLE_CAP)
    peak = mag.max()
    if peak > 0.0:
        mag = mag / peak
    return LineCut(float(delta), om, mag, pole)
