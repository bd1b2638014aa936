"""Pure-Python (numpy) kernel backend.

Vectorized mirror of the scalar formulas in `detector`/`machine`/`numerics`,
used for sweep grids and the verification suite when the compiled extension is
unavailable. Same call signatures and column order as `_kernels`.
"""

from __future__ import annotations

import numpy as np

# column order of eval_cycle's value block; backend.py re-exports this
COLUMNS = (
    "mean_work",
    "mean_heat_hot",
    "mean_heat_cold",
    "var_work",
    "var_heat_hot",
    "var_heat_cold",
    "entropy_production",
    "snr",
    "classical_rhs",
    "shifted_rhs",
    "generalized_rhs",
    "ratio_R",
)

_BOUNDARY_RTOL = 1e-12
_V_SERIES_CUTOFF = 1e-5
_X_ASYMPTOTIC = 500.0
_COTH_SERIES_CUTOFF = 1e-4
# 64 halvings of the initial bracket put the root far below double precision
_BISECT_STEPS = 64


def x_coth_half_x(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)
    small = np.abs(x) < _COTH_SERIES_CUTOFF
    xs = x[small]
    x2 = xs * xs
    out[small] = 2.0 + x2 / 6.0 - x2 * x2 / 360.0
    xl = x[~small]
    out[~small] = xl / np.tanh(0.5 * xl)
    return out


def inverse_x_tanh_x(y: np.ndarray) -> np.ndarray:
    """Vectorized bracketed bisection for x*tanh(x) = y, y >= 0."""
    y = np.asarray(y, dtype=np.float64)
    lo = np.zeros_like(y)
    hi = np.maximum(np.sqrt(y), y) + 1.0
    for _ in range(_BISECT_STEPS):
        mid = 0.5 * (lo + hi)
        above = mid * np.tanh(mid) > y
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    out = 0.5 * (lo + hi)
    return np.where(y == 0.0, 0.0, out)


def generalized_tur_rhs(sigma: np.ndarray) -> np.ndarray:
    """csch^2(g(sigma/2)) elementwise; sigma must be positive."""
    sigma = np.asarray(sigma, dtype=np.float64)
    g = inverse_x_tanh_x(0.5 * sigma)
    out = np.empty_like(g)
    big = g > 350.0
    out[big] = 4.0 * np.exp(-2.0 * g[big])
    s = np.sinh(g[~big])
    out[~big] = 1.0 / (s * s)
    return out


def beta_eff_products(products: np.ndarray, speeds: np.ndarray) -> np.ndarray:
    """beta_eff * omega from rest-frame products beta * omega (> 0) and speeds.

    Elementwise mirror of detector.effective_inverse_temperature.
    """
    p = np.asarray(products, dtype=np.float64)
    v = np.broadcast_to(np.asarray(speeds, dtype=np.float64), p.shape).copy()
    out = np.empty_like(p)

    gamma = 1.0 / np.sqrt((1.0 - v) * (1.0 + v))
    u = p * gamma

    static = v == 0.0
    out[static] = p[static]

    series = (~static) & (v < _V_SERIES_CUTOFF)
    if np.any(series):
        us, vs = u[series], v[series]
        res = np.empty_like(us)
        huge = us > _X_ASYMPTOTIC
        res[huge] = us[huge]
        n = 1.0 / np.expm1(us[~huge])
        t = n + (us[~huge] * vs[~huge]) ** 2 * n * (1.0 + n) * (1.0 + 2.0 * n) / 6.0
        res[~huge] = np.log1p(1.0 / t)
        out[series] = res

    moving = v >= _V_SERIES_CUTOFF
    if np.any(moving):
        um, vm = u[moving], v[moving]
        xm = um * (1.0 - vm)
        delta = 2.0 * um * vm
        res = np.empty_like(um)
        tail = xm > _X_ASYMPTOTIC
        res[tail] = np.log(delta[tail]) + xm[tail] - np.log1p(-np.exp(-delta[tail]))
        xm_b, d_b = xm[~tail], delta[~tail]
        # stable Doppler log bracket: every factor keeps full relative precision
        bracket = np.log1p(np.exp(-xm_b) * np.expm1(-d_b) / np.expm1(-xm_b))
        res[~tail] = np.log1p(d_b / bracket)
        out[moving] = res

    return out


def eval_cycle(omega_A, omega_B, a, b):
    """Per-point cycle statistics and bounds.

    Returns (values, regimes): values has one row per point in COLUMNS order,
    regimes holds codes 0=idle, 1=refrigerator, 2=engine, 3=accelerator.
    Ratio columns are NaN where undefined (degenerate points).
    """
    wA = np.asarray(omega_A, dtype=np.float64)
    wB = np.asarray(omega_B, dtype=np.float64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    wA, wB, a, b = np.broadcast_arrays(wA, wB, a, b)
    n = a.shape[0]
    values = np.empty((n, len(COLUMNS)), dtype=np.float64)

    cha = np.cosh(0.5 * a)
    chb = np.cosh(0.5 * b)
    # tanh(b/2) - tanh(a/2) in its cancellation-free sinh/cosh form
    diff = np.sinh(0.5 * (b - a)) / (cha * chb)
    mean_w = 0.5 * (wB - wA) * diff
    mean_qh = 0.5 * wA * diff
    mean_qc = -0.5 * wB * diff
    sech2a = 1.0 / (cha * cha)
    sech2b = 1.0 / (chb * chb)
    var_qh = 0.25 * wA * wA * (sech2a + sech2b)
    var_qc = 0.25 * wB * wB * (sech2a + sech2b)
    var_w = (wA - wB) ** 2 * (2.0 + np.cosh(a) + np.cosh(b)) * sech2a * sech2b / 8.0
    half = 0.5 * (a - b)
    sigma = half * np.sinh(half) / (cha * chb)

    live = (sigma > 0.0) & (mean_qh != 0.0)
    snr = np.full(n, np.nan)
    classical = np.full(n, np.nan)
    generalized = np.full(n, np.nan)
    snr[live] = var_qh[live] / (mean_qh[live] * mean_qh[live])
    classical[live] = 2.0 / sigma[live]
    generalized[live] = generalized_tur_rhs(sigma[live])

    values[:, 0] = mean_w
    values[:, 1] = mean_qh
    values[:, 2] = mean_qc
    values[:, 3] = var_w
    values[:, 4] = var_qh
    values[:, 5] = var_qc
    values[:, 6] = sigma
    values[:, 7] = snr
    values[:, 8] = classical
    values[:, 9] = classical - 1.0
    values[:, 10] = generalized
    values[:, 11] = sigma * snr

    scale = np.maximum(np.abs(a), np.abs(b))
    ratio = wB / wA
    idle = (np.abs(a - b) <= _BOUNDARY_RTOL * scale) | (np.abs(ratio - 1.0) <= _BOUNDARY_RTOL)
    regimes = np.where(idle, 0,
                       np.where(b < a, 1, np.where(ratio < 1.0, 2, 3)))
    return values, regimes.astype(np.int64)
