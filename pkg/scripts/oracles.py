#!/usr/bin/env python3
"""Independent oracle computations for the frozen expected values in tests/.

Everything here deliberately avoids the package's own quadrature and kernel
code paths: fixed-step Simpson grids (vectorized numpy), composite fixed-order
Gauss-Legendre, mpmath extended precision, and closed forms.  Run it to
regenerate the numbers embedded in tests/frozen.py:

    python scripts/oracles.py

The nested two-line oracles take a couple of minutes; everything else is
seconds.
"""
from __future__ import annotations

import math

import mpmath as mp
import numpy as np

# ---------------------------------------------------------------------------
# weights (naive formulas on purpose; domains keep cosh well below overflow)


def weight(gamma: float, k: np.ndarray) -> np.ndarray:
    inv = 2.0 / gamma
    return np.pi * (2 * np.exp(-(2 - inv) * k) + np.exp(-inv * k)
                    - np.exp(-(4 - inv) * k))


def weight_inf(k: np.ndarray) -> np.ndarray:
    return np.pi * (2 * np.exp(-2 * k) + 1 - np.exp(-4 * k))


def simpson(values: np.ndarray, h: float) -> float:
    n = len(values) - 1
    assert n % 2 == 0
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return float(w @ values) * h / 3.0


def phase_integrand_re(gamma, k, x, y):
    """Naive Re-theta integrand (pre -1/pi), limit value spliced at k=0."""
    g = weight_inf(k) if gamma is None else weight(gamma, k)
    out = np.empty_like(k)
    tiny = k < 1e-8
    out[tiny] = (2 * np.pi) * y * (y * y - 3 * x * x) / 12.0
    kk = k[~tiny]
    out[~tiny] = (g[~tiny] * (np.cos(x * kk) * np.sinh(y * kk) - y * kk)
                  / (kk * (np.cosh(2 * kk) - 1.0)))
    return out


def phase_integrand_im(gamma, k, x, y):
    g = weight_inf(k) if gamma is None else weight(gamma, k)
    out = np.empty_like(k)
    tiny = k < 1e-8
    out[tiny] = (2 * np.pi) * x * (3 * y * y - x * x) / 12.0
    kk = k[~tiny]
    out[~tiny] = (g[~tiny] * (np.sin(x * kk) * np.cosh(y * kk) - x * kk)
                  / (kk * (np.cosh(2 * kk) - 1.0)))
    return out


def re_theta_simpson(gamma, x, y, L=80.0, h=1e-5):
    """Simpson phase oracle on [0, L] at step h."""
    k = np.arange(0.0, L + h / 2, h)
    return -simpson(phase_integrand_re(gamma, k, x, y), h) / np.pi


def im_theta_simpson(gamma, x, y, L=80.0, h=1e-5):
    k = np.arange(0.0, L + h / 2, h)
    return simpson(phase_integrand_im(gamma, k, x, y), h) / np.pi


# ---------------------------------------------------------------------------
# nested line integrals: outer Simpson over x, inner Simpson phase values
# evaluated for the whole x-grid at once through the cosine-transform form
# g*sinh(|y|k)*cos(xk) (valid on [1, L]; the [0, 1] head keeps the combined
# cancellation-free integrand, chunked over x).


def re_theta_grid(gamma, xs, y, L=80.0, h_head=1e-5, h_tail=2e-4):
    ay = abs(y)
    assert y < 0
    # head [0, 1]: combined integrand per x chunk
    kh = np.arange(0.0, 1.0 + h_head / 2, h_head)
    head = np.empty_like(xs)
    for i0 in range(0, len(xs), 16):
        chunk = xs[i0:i0 + 16]
        K = kh[None, :]
        X = chunk[:, None]
        g = weight_inf(K) if gamma is None else weight(gamma, K)
        num = np.cos(X * K) * np.sinh(y * K) - y * K
        den = K * (np.cosh(2 * K) - 1.0)
        F = np.where(K < 1e-8, (2 * np.pi) * y * (y * y - 3 * X * X) / 12.0,
                     np.divide(g * num, den, out=np.zeros_like(num),
                               where=K >= 1e-8))
        w = np.ones_like(kh)
        w[1:-1:2] = 4.0
        w[2:-1:2] = 2.0
        head[i0:i0 + 16] = (F @ w) * h_head / 3.0
    # tail [1, L]: split into the cos(xk) transform part and the -yk part
    kt = np.arange(1.0, L + h_tail / 2, h_tail)
    g = weight_inf(kt) if gamma is None else weight(gamma, kt)
    den = kt * (np.cosh(2 * kt) - 1.0)
    a_part = g * np.sinh(y * kt) / den          # multiplies cos(x k)
    b_part = g * y * kt / den                   # constant in x
    w = np.ones_like(kt)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    wa = w * a_part * h_tail / 3.0
    b_int = simpson(b_part, h_tail)
    tail = np.empty_like(xs)
    for i0 in range(0, len(xs), 16):
        chunk = xs[i0:i0 + 16]
        tail[i0:i0 + 16] = np.cos(chunk[:, None] * kt[None, :]) @ wa
    return -(head + tail - b_int) / np.pi


def l2_line_oracle(gamma, L_outer=25.0, h_outer=1e-3):
    inv = 2.0 / gamma
    xs = np.arange(0.0, L_outer + h_outer / 2, h_outer)
    rt = re_theta_grid(gamma, xs, -1.0)
    f = (xs ** 2 + (3 - inv) ** 2) / (xs ** 2 + (1 - inv) ** 2) * np.exp(2 * rt)
    return 2.0 * simpson(f, h_outer)


def m0_line_oracle(gamma, beta, L_outer=25.0, h_outer=1e-3):
    inv = 2.0 / gamma
    a = 2.0 - inv
    xs = np.arange(0.0, L_outer + h_outer / 2, h_outer)
    rt = re_theta_grid(gamma, xs, -2.0)
    mod_b = np.sqrt((xs ** 2 + (a + 2) ** 2) / (xs ** 2 + (a - 2) ** 2))
    f = mod_b * np.exp(rt)
    return 2.0 * beta * simpson(f, h_outer)


# ---------------------------------------------------------------------------
# extended-precision kernel value (mpmath)


def re_kernel_mpmath(gamma, k, x, y, dps=50):
    with mp.workdps(dps):
        g = mp.mpf(gamma)
        kk, xx, yy = mp.mpf(k), mp.mpf(x), mp.mpf(y)
        inv = 2 / g
        gk = mp.pi * (2 * mp.e ** (-(2 - inv) * kk) + mp.e ** (-inv * kk)
                      - mp.e ** (-(4 - inv) * kk))
        num = mp.cos(xx * kk) * mp.sinh(yy * kk) - yy * kk
        den = kk * (mp.cosh(2 * kk) - 1)
        return float(gk * num / den)


def semi_infinite_gl_oracle():
    """Composite fixed-order Gauss-Legendre for exp(-k)/(1+k^2) on [0, 80]."""
    xg, wg = np.polynomial.legendre.leggauss(50)
    total = 0.0
    for i in range(80):
        t = (xg + 1) / 2 + i
        total += float(wg @ (np.exp(-t) / (1 + t * t))) / 2
    return total


def even_line_simpson_oracle():
    """Fixed-step Simpson for (x^2+9)/(x^2+1) exp(-2|x|) on [0,40], doubled."""
    h = 1e-4
    x = np.arange(0.0, 40.0 + h / 2, h)
    f = (x * x + 9) / (x * x + 1) * np.exp(-2 * x)
    return 2.0 * simpson(f, h)


def finite_closed_form():
    """int_0^10 exp(-2k) sin(3k) dk from the antiderivative."""
    return 3.0 / 13.0 - math.exp(-20.0) * (2 * math.sin(30.0) + 3 * math.cos(30.0)) / 13.0


def main():
    print("# quadrature module")
    print(f"FINITE_EXP_SIN = {finite_closed_form()!r}")
    print(f"SEMI_INF_EXP_LORENTZ = {semi_infinite_gl_oracle()!r}")
    print(f"EVEN_LINE_RATIONAL_EXP = {even_line_simpson_oracle()!r}")

    print("# phase module")
    print(f"G_GAMMA_3_AT_1 = {math.pi * (2 * math.exp(-4 / 3) + math.exp(-2 / 3) - math.exp(-10 / 3))!r}")
    print(f"G_INF_AT_HALF = {math.pi * (2 * math.exp(-1) + 1 - math.exp(-2))!r}")
    print(f"RE_KERNEL_3_07_1_M1 = {re_kernel_mpmath(3.0, 0.7, 1.0, -1.0)!r}")
    print(f"RE_THETA_3_0_M1 = {re_theta_simpson(3.0, 0.0, -1.0)!r}")
    print(f"IM_THETA_4_2_M2 = {im_theta_simpson(4.0, 2.0, -2.0)!r}")
    th_beta = re_theta_simpson(3.0, 0.0, -(2 - 2 / 3))
    print(f"THETA_3_AT_MINUS_4I3 = {th_beta!r}")
    print(f"RE_THETA_INF_0 = {re_theta_simpson(None, 0.0, -1.0)!r}")
    for x in (0.0, 1.0, 3.0):
        d = re_theta_simpson(1e5, x, -1.0) - re_theta_simpson(None, x, -1.0)
        print(f"# gamma=1e5 vs limit at x={x}: diff = {d:.3e}")

    print("# optimizer module")
    rt_sup3 = re_theta_simpson(3.0, 0.0, -2 / 3)
    print(f"RE_THETA_3_SUP_POINT = {rt_sup3!r}")
    print(f"SUP_NORM_3 = {math.exp(rt_sup3) / (1 - 2 / 3)!r}")
    print(f"H_3_AT_MINUS_2I3 = {-3.0 * math.exp(rt_sup3)!r}")
    beta3 = math.exp(-th_beta) / (4 * math.pi * (2 - 2 / 3))
    print(f"BETA_3 = {beta3!r}")
    print(f"F_GAMMA_3_AT_1 = {2 * math.atan(4 / 3) + math.atan(2 / 3) - math.atan(10 / 3)!r}")
    l2_4 = l2_line_oracle(4.0)
    print(f"L2_LINE_SQ_4 = {l2_4!r}")
    th_beta4 = re_theta_simpson(4.0, 0.0, -1.5)
    beta4 = math.exp(-th_beta4) / (4 * math.pi * 1.5)
    print(f"BETA_4 = {beta4!r}")
    print(f"M0_L1_4 = {m0_line_oracle(4.0, beta4)!r}")
    print(f"M1_L2SQ_4 = {beta4 ** 2 * l2_4!r}")


if __name__ == "__main__":
    main()
