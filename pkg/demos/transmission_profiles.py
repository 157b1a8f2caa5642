#!/usr/bin/env python3
"""Probe the two-port transmission of the driven system.

Renders a coarse |S21| map as ASCII shading, then compares line cuts at
opposite magnon detunings to show the asymmetry of the response.

Run with no arguments; output is plain text.
"""

import numpy as np

from magnon_ep_lab import (
    SystemParams,
    TransmissionParams,
    line_cut,
    transmission_map,
)

SHADES = " .:-=+*#%@"


def shade(x):
    return SHADES[min(int(x * (len(SHADES) - 1)), len(SHADES) - 1)]


def main():
    base = SystemParams(omega_c1=24.0, omega_c2=26.0, omega_m=25.0,
                        gamma=0.5, theta=0.0)

    # ── |S21| maps at two phase angles ───────────────────────────────────
    wms = np.linspace(21.0, 29.0, 33)
    oms = np.linspace(21.0, 29.0, 66)
    for theta_deg in (0.0, 180.0):
        tp = TransmissionParams(
            base.with_value("theta", np.radians(theta_deg)), beta=0.1)
        grid = transmission_map(tp, wms, oms)
        print(f"|S21| map at theta={theta_deg:.0f}deg "
              "(rows: magnon frequency 29 down to 21; "
              "columns: probe frequency 21..29):")
        for i in range(len(wms) - 1, -1, -1):
            print("  " + "".join(shade(v) for v in grid.s21_abs[i]))
        anti = "anticrossing (levels repel)" if theta_deg == 0.0 else \
            "crossing pattern (branches attract and merge)"
        print(f"  -> {anti}\n")

    # ── line cuts at opposite detunings ──────────────────────────────────
    print("line cuts at fixed magnon detuning from the cavity average:")
    oms = np.linspace(22.0, 28.0, 481)
    tp = TransmissionParams(base.with_value("theta", np.pi), beta=0.1)
    for delta in (-1.5, 0.0, +1.5):
        cut = line_cut(tp, delta, oms)
        peak = oms[np.argmax(cut.s21_norm)]
        print(f"  delta={delta:+.1f}: peak at omega = {peak:.3f}")
    print("the peak does not mirror under delta -> -delta: the two "
          "cavities sit at different frequencies, so the response is "
          "asymmetric in the detuning.")


if __name__ == "__main__":
    main()
