#!/usr/bin/env python3
"""Map the real/complex phase structure of the model.

Scans the phase angle and loss rate, prints an ASCII phase diagram, and
follows the critical loss rate P(theta) that closes the all-real window.

Run with no arguments; takes a few seconds.
"""

import numpy as np

from magnon_ep_lab import (
    SystemParams,
    critical_gamma,
    resonance_gap,
    scan_line,
    scan_plane,
)


def main():
    base = SystemParams(omega_c1=24.0, omega_c2=26.0, omega_m=25.0,
                        gamma=0.5, theta=0.0)

    # ── transition counts along the magnon frequency ─────────────────────
    print("Real/complex transitions while sweeping the magnon frequency "
          "across the cavities (theta=0):")
    for gamma in (0.5, 1.0, 1.47, 1.6):
        scan = scan_line(base.with_value("gamma", gamma),
                         "omega_m", 20.0, 30.0, 1001)
        print(f"  gamma={gamma:4.2f}: {scan.transition_count} transitions")
    print("two detuned all-real windows (4 crossings) shrink as loss "
          "grows and vanish past the critical rate near 1.49.")

    # ── ASCII phase diagram ──────────────────────────────────────────────
    nx, ny = 72, 24
    grid = scan_plane(base,
                      "theta", (0.0, 2.0 * np.pi, nx),
                      "gamma", (0.01, 2.4, ny))
    print("\nphase diagram, theta (left to right, 0..2pi) vs gamma "
          "(bottom 0.01 .. top 2.4):")
    print("  '#' all-real spectrum, '.' complex pairs present")
    mask = grid.all_real.reshape(nx, ny)
    for j in range(ny - 1, -1, -1):
        print("  " + "".join("#" if mask[i, j] else "." for i in range(nx)))

    # ── critical loss rate ───────────────────────────────────────────────
    print("\ncritical loss rate P(theta): the gamma where real eigenvalues "
          "first vanish for every magnon detuning")
    for theta_deg in (0.0, 45.0, 90.0, 180.0):
        p = critical_gamma(base.with_value(
            "theta", np.radians(theta_deg)))
        print(f"  theta={theta_deg:5.1f}deg  P = {p:.6f}")
    print("P grows with theta: the phase angle protects the real spectrum "
          "against loss.")

    # ── resonant gap law ─────────────────────────────────────────────────
    print("\nreal-eigenvalue gap at resonance (gamma=0.5):")
    for theta_deg in (10.0, 30.0, 45.0, 90.0, 135.0, 180.0):
        gap = resonance_gap(base.with_value(
            "theta", np.radians(theta_deg)))
        bar = "*" * int(round(gap * 20))
        print(f"  theta={theta_deg:5.1f}deg  gap = {gap:.4f}  {bar}")
    print("zero below the opening angle, then monotone up to 2 at "
          "theta=pi.")


if __name__ == "__main__":
    main()
