"""Batch quartic root finder used by the spectral layer.

The pipeline is: shift to the depressed quartic (kills the cubic term and
centers the roots, which conditions everything that follows), run a
simultaneous Durand-Kerner iteration, polish each root with Newton steps,
and, when the coefficients are certified real, re-derive the roots from two
real quadratic factors refined by a Bairstow-style Newton on the division
remainder. The last stage is what makes the real/complex decision crisp:
each quadratic commits through the sign of its discriminant, so real roots
carry an exactly-zero imaginary part and complex roots form exact conjugate
pairs instead of drifting by root-polish noise near coalescence points.

Every per-row trajectory is independent of how rows are batched, so results
are bit-identical no matter how callers chunk their grids.
"""

from __future__ import annotations

import numpy as np

DK_MAX_SWEEPS = 120
DK_TOL = 1e-13
NEWTON_MAX = 50
#: stop polish once |p| drops below this times the coefficient scale
POLISH_STOP = 1e-13
#: a returned root must satisfy |p(root)| below this times the scale
FAIL_TOL = 1e-8
BAIRSTOW_MAX = 32
#: coefficients count as real when relative imaginary dust is below this
REAL_COEFF_TOL = 1e-10

_SPIRAL = 0.4 + 0.9j
_PAIRINGS = np.array([[[0, 1], [2, 3]],
                      [[0, 2], [1, 3]],
                      [[0, 3], [1, 2]]])


class ConvergenceFailure(RuntimeError):
    """A quartic root failed to reach the required residual."""


def _horner(x: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    # coeffs ascending (n, 5); x (n, 4)
    acc = np.broadcast_to(coeffs[:, 4:5], x.shape).astype(complex).copy()
    for k in (3, 2, 1, 0):
        acc = acc * x + coeffs[:, k:k + 1]
    return acc


def _depress(coeffs: np.ndarray):
    # monic ascending (n, 5) -> (B, C, D, shift) of u^4 + B u^2 + C u + D
    c0, c1, c2, c3 = coeffs[:, 0], coeffs[:, 1], coeffs[:, 2], coeffs[:, 3]
    s = -c3 / 4.0
    B = c2 - 3.0 * c3 ** 2 / 8.0
    C = c1 - c3 * c2 / 2.0 + c3 ** 3 / 8.0
    D = c0 - c3 * c1 / 4.0 + c3 ** 2 * c2 / 16.0 - 3.0 * c3 ** 4 / 256.0
    return B, C, D, s


def _dep_eval(u, B, C, D):
    u2 = u * u
    return u2 * u2 + B[:, None] * u2 + C[:, None] * u + D[:, None]


def _durand_kerner(B, C, D):
    n = B.shape[0]
    # Fujiwara-style bound keeps the circle at root scale even when the
    # coefficients span many orders of magnitude.
    radius = 2.0 * np.maximum(
        np.sqrt(np.abs(B)),
        np.maximum(np.cbrt(np.abs(C)), np.abs(D) ** 0.25),
    )
    powers = _SPIRAL ** np.arange(4)
    u = radius[:, None] * powers[None, :]
    tol = DK_TOL * radius
    active = np.arange(n)
    diag = np.arange(4)
    for _ in range(DK_MAX_SWEEPS):
        if active.size == 0:
            break
        ua = u[active]
        pu = _dep_eval(ua, B[active], C[active], D[active])
        diff = ua[:, :, None] - ua[:, None, :]
        diff[:, diag, diag] = 1.0
        den = diff.prod(axis=2)
        den[den == 0] = 1.0
        delta = pu / den
        u[active] = ua - delta
        err = np.abs(delta).max(axis=1)
        active = active[err > tol[active]]
    return u


def _newton_polish(u, B, C, D, scale):
    stop = POLISH_STOP * scale
    n = u.shape[0]
    rows = np.repeat(np.arange(n), 4)
    cols = np.tile(np.arange(4), n)
    for _ in range(NEWTON_MAX):
        if rows.size == 0:
            break
        x = u[rows, cols]
        Br, Cr = B[rows], C[rows]
        x2 = x * x
        p = x2 * x2 + Br * x2 + Cr * x + D[rows]
        dp = 4.0 * x * x2 + 2.0 * Br * x + Cr
        ok = dp != 0
        step = np.where(ok, p / np.where(ok, dp, 1.0), 0.0)
        u[rows, cols] = x - step
        keep = (np.abs(p) > stop[rows]) & ok & (np.abs(step) > 5e-16 * (1.0 + np.abs(x)))
        rows, cols = rows[keep], cols[keep]
    return u


def _bairstow_refine(s, q, B, C, D, scale):
    # Newton on the remainder of dividing u^4 + B u^2 + C u + D
    # by u^2 - s u + q; all arrays real, rows refined independently
    best_s, best_q = s.copy(), q.copy()
    f = B + s * s - q
    best_res = np.abs(C + s * (f - q)) + np.abs(D - q * f)
    active = np.arange(s.shape[0])
    tol = 1e-14 * scale
    for _ in range(BAIRSTOW_MAX):
        if active.size == 0:
            break
        sa, qa = s[active], q[active]
        Ba, Ca, Da = B[active], C[active], D[active]
        fa = Ba + sa * sa - qa
        R1 = Ca + sa * (fa - qa)
        R0 = Da - qa * fa
        res = np.abs(R1) + np.abs(R0)
        better = res < best_res[active]
        idx = active[better]
        best_s[idx], best_q[idx] = sa[better], qa[better]
        best_res[idx] = res[better]
        J11 = fa - qa + 2.0 * sa * sa
        J12 = -2.0 * sa
        J21 = -2.0 * qa * sa
        J22 = qa - fa
        det = J11 * J22 - J12 * J21
        solvable = (np.abs(det) > 1e-300) & (res > tol[active])
        det_safe = np.where(solvable, det, 1.0)
        ds = (R1 * J22 - R0 * J12) / det_safe
        dq = (R0 * J11 - R1 * J21) / det_safe
        s[active] = np.where(solvable, sa - ds, sa)
        q[active] = np.where(solvable, qa - dq, qa)
        active = active[solvable]
    return best_s, best_q


def _quadratic_roots(s, q):
    # roots of u^2 - s u + q with an exact real/complex commit
    disc = s * s - 4.0 * q
    real = disc >= 0
    sq = np.sqrt(np.abs(disc))
    r1 = np.where(real, (s + sq) / 2.0 + 0j, s / 2.0 + 0.5j * sq)
    r2 = np.where(real, (s - sq) / 2.0 + 0j, s / 2.0 - 0.5j * sq)
    return r1, r2


def _refactor_real(u, B, C, D, scale):
    """Rebuild roots of certified-real depressed quartics from two real
    quadratic factors seeded by the polished root pairing."""
    sorted_u = np.sort(u, axis=1)
    a = sorted_u[:, _PAIRINGS[:, :, 0]]   # (n, 3, 2)
    b = sorted_u[:, _PAIRINGS[:, :, 1]]
    sums = a + b
    prods = a * b
    defect = (np.abs(sums.imag) + np.abs(prods.imag)).sum(axis=2)
    choice = defect.argmin(axis=1)
    rows = np.arange(u.shape[0])
    s1 = sums.real[rows, choice, 0]
    q1 = prods.real[rows, choice, 0]
    s1, q1 = _bairstow_refine(s1, q1, B, C, D, scale)
    # complementary factor comes from the exact division quotient
    s2 = -s1
    q2 = B + s1 * s1 - q1
    s2, q2 = _bairstow_refine(s2, q2, B, C, D, scale)
    r1, r2 = _quadratic_roots(s1, q1)
    r3, r4 = _quadratic_roots(s2, q2)
    return np.stack([r1, r2, r3, r4], axis=1)


def solve_quartic_batch(coeffs: np.ndarray):
    """Roots of a batch of quartics given ascending coefficients (n, 5).

    Returns ``(roots, residual)`` where ``roots`` is (n, 4) complex sorted
    ascending by real part then imaginary part and ``residual`` is the worst
    relative polynomial residual per row. Raises :class:`ConvergenceFailure`
    if any row exceeds the acceptance residual.
    """
    coeffs = np.atleast_2d(np.asarray(coeffs, dtype=complex))
    if coeffs.shape[1] != 5:
        raise ValueError("expected 5 ascending quartic coefficients per row")
    if not np.all(np.isfinite(coeffs)):
        raise ValueError("coefficients must be finite")
    lead = coeffs[:, 4]
    if np.any(lead == 0):
        raise ValueError("leading coefficient must be nonzero")
    monic = coeffs / lead[:, None]
    scale = np.abs(monic).max(axis=1)
    real_rows = np.abs(monic.imag).max(axis=1) <= REAL_COEFF_TOL * scale

    B, C, D, shift = _depress(monic)
    dep_scale = np.maximum(1.0, np.maximum(np.abs(B), np.maximum(np.abs(C), np.abs(D))))
    u = _durand_kerner(B, C, D)
    u = _newton_polish(u, B, C, D, dep_scale)

    if np.any(real_rows):
        rb, rc, rd = B.real[real_rows], C.real[real_rows], D.real[real_rows]
        refined = _refactor_real(u[real_rows], rb, rc, rd, dep_scale[real_rows])
        # keep the factored form unless it is clearly worse than the polish
        res_dk = np.abs(_dep_eval(u[real_rows], rb + 0j, rc + 0j, rd + 0j)).max(axis=1)
        res_f = np.abs(_dep_eval(refined, rb + 0j, rc + 0j, rd + 0j)).max(axis=1)
        use = res_f <= 8.0 * res_dk + 1e-12 * dep_scale[real_rows]
        merged = np.where(use[:, None], refined, u[real_rows])
        u = u.copy()
        u[real_rows] = merged

    roots = u + shift[:, None]
    # real rows keep exactly-zero imaginary parts: the shift is real there
    roots[real_rows] = u[real_rows] + shift.real[real_rows, None]
    roots = np.sort(roots, axis=1)
    residual = np.abs(_horner(roots, monic)).max(axis=1) / scale
    bad = residual > FAIL_TOL
    if np.any(bad):
        i = int(np.argmax(residual))
        raise ConvergenceFailure(
            f"root residual {residual[i]:.3e} exceeds {FAIL_TOL:.0e} "
            f"(row {i} of {coeffs.shape[0]})")
    return roots, residual


def solve_quartic(coeffs: np.ndarray):
    """Single-polynomial convenience wrapper around the batch solver."""
    roots, residual = solve_quartic_batch(np.asarray(coeffs)[None, :])
    return roots[0], float(residual[0])
