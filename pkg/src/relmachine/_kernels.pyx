# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend: same contract and column order as _kernels_py.

Hot loops run without the GIL so chunked sweeps scale across threads.
"""

from libc.math cimport (cosh, exp, expm1, fabs, log, log1p, sinh, sqrt, tanh,
                        NAN)
# kernels mirror _kernels_py exactly; keep both in sync

import numpy as np

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

cdef double _BOUNDARY_RTOL = 1e-12
cdef double _V_SERIES_CUTOFF = 1e-5
cdef double _X_ASYMPTOTIC = 500.0
cdef double _COTH_SERIES_CUTOFF = 1e-4


cdef double _x_coth_half(double x) nogil:
    cdef double x2
    if fabs(x) < _COTH_SERIES_CUTOFF:
        x2 = x * x
        return 2.0 + x2 / 6.0 - x2 * x2 / 360.0
    return x / tanh(0.5 * x)


cdef double _inv_x_tanh_x(double y) nogil:
    # bracketed Newton with bisection fallback; y >= 0
    cdef double lo = 0.0
    cdef double hi
    cdef double x, f, df, t
    cdef int i
    if y == 0.0:
        return 0.0
    hi = sqrt(y)
    if y > hi:
        hi = y
    hi = hi + 1.0
    x = 0.5 * hi
    for i in range(200):
        t = tanh(x)
        f = x * t - y
        if f > 0.0:
            hi = x
        else:
            lo = x
        if hi - lo <= 1e-15 * hi:
            break
        df = t + x * (1.0 - t * t)
        if df > 0.0:
            x = x - f / df
        else:
            x = 0.5 * (lo + hi)
        if x <= lo or x >= hi:
            x = 0.5 * (lo + hi)
    return 0.5 * (lo + hi)


cdef double _gen_tur_rhs(double sigma) nogil:
    cdef double g = _inv_x_tanh_x(0.5 * sigma)
    cdef double s
    if g > 350.0:
        return 4.0 * exp(-2.0 * g)
    s = sinh(g)
    return 1.0 / (s * s)


cdef double _beta_eff_product(double p, double v) nogil:
    # beta_eff * omega from the rest-frame product p = beta * omega > 0
    cdef double gamma, u, n, t, xm, delta, bracket
    if v == 0.0:
        return p
    gamma = 1.0 / sqrt((1.0 - v) * (1.0 + v))
    u = p * gamma
    if v < _V_SERIES_CUTOFF:
        if u > _X_ASYMPTOTIC:
            return u
        n = 1.0 / expm1(u)
        t = n + (u * v) * (u * v) * n * (1.0 + n) * (1.0 + 2.0 * n) / 6.0
        return log1p(1.0 / t)
    xm = u * (1.0 - v)
    delta = 2.0 * u * v
    if xm > _X_ASYMPTOTIC:
        return log(delta) + xm - log1p(-exp(-delta))
    bracket = log1p(exp(-xm) * expm1(-delta) / expm1(-xm))
    return log1p(delta / bracket)


def _owned(arr):
    """Contiguous, writable float64 view (memoryviews reject read-only buffers)."""
    out = np.ascontiguousarray(arr, dtype=np.float64)
    if not out.flags.writeable:
        out = out.copy()
    return out


def beta_eff_products(products, speeds):
    """Vectorized beta_eff * omega; see _kernels_py.beta_eff_products."""
    p_arr = _owned(products)
    v_arr = _owned(np.broadcast_to(np.asarray(speeds, dtype=np.float64),
                                   p_arr.shape))
    out = np.empty_like(p_arr)
    cdef double[::1] p = p_arr
    cdef double[::1] v = v_arr
    cdef double[::1] o = out
    cdef Py_ssize_t i, n = p.shape[0]
    with nogil:
        for i in range(n):
            o[i] = _beta_eff_product(p[i], v[i])
    return out


def x_coth_half_x(x):
    x_arr = _owned(x)
    out = np.empty_like(x_arr)
    cdef double[::1] xv = x_arr
    cdef double[::1] o = out
    cdef Py_ssize_t i, n = xv.shape[0]
    with nogil:
        for i in range(n):
            o[i] = _x_coth_half(xv[i])
    return out


def inverse_x_tanh_x(y):
    y_arr = _owned(y)
    out = np.empty_like(y_arr)
    cdef double[::1] yv = y_arr
    cdef double[::1] o = out
    cdef Py_ssize_t i, n = yv.shape[0]
    with nogil:
        for i in range(n):
            o[i] = _inv_x_tanh_x(yv[i])
    return out


def generalized_tur_rhs(sigma):
    s_arr = _owned(sigma)
    out = np.empty_like(s_arr)
    cdef double[::1] sv = s_arr
    cdef double[::1] o = out
    cdef Py_ssize_t i, n = sv.shape[0]
    with nogil:
        for i in range(n):
            o[i] = _gen_tur_rhs(sv[i])
    return out


def eval_cycle(omega_A, omega_B, a, b):
    """Per-point cycle statistics; see _kernels_py.eval_cycle."""
    shape = np.broadcast_shapes(np.shape(omega_A), np.shape(omega_B),
                                np.shape(a), np.shape(b))
    wA_arr = _owned(np.broadcast_to(np.asarray(omega_A, dtype=np.float64), shape))
    wB_arr = _owned(np.broadcast_to(np.asarray(omega_B, dtype=np.float64), shape))
    a_arr = _owned(np.broadcast_to(np.asarray(a, dtype=np.float64), shape))
    b_arr = _owned(np.broadcast_to(np.asarray(b, dtype=np.float64), shape))
    n_pts = a_arr.shape[0]
    values = np.empty((n_pts, len(COLUMNS)), dtype=np.float64)
    regimes = np.empty(n_pts, dtype=np.int64)

    cdef double[::1] wA = wA_arr
    cdef double[::1] wB = wB_arr
    cdef double[::1] av = a_arr
    cdef double[::1] bv = b_arr
    cdef double[:, ::1] val = values
    cdef long[::1] reg = regimes
    cdef Py_ssize_t i, n = n_pts
    cdef double ai, bi, wa, wb, diff, half, cha, chb, s2a, s2b
    cdef double mean_w, mean_qh, mean_qc, var_w, var_qh, var_qc, sigma
    cdef double snr, classical, generalized, scale, ratio

    with nogil:
        for i in range(n):
            ai = av[i]; bi = bv[i]; wa = wA[i]; wb = wB[i]
            cha = cosh(0.5 * ai)
            chb = cosh(0.5 * bi)
            # tanh(b/2) - tanh(a/2) in its cancellation-free sinh/cosh form
            diff = sinh(0.5 * (bi - ai)) / (cha * chb)
            mean_w = 0.5 * (wb - wa) * diff
            mean_qh = 0.5 * wa * diff
            mean_qc = -0.5 * wb * diff
            s2a = 1.0 / (cha * cha)
            s2b = 1.0 / (chb * chb)
            var_qh = 0.25 * wa * wa * (s2a + s2b)
            var_qc = 0.25 * wb * wb * (s2a + s2b)
            var_w = (wa - wb) * (wa - wb) * (2.0 + cosh(ai) + cosh(bi)) * s2a * s2b / 8.0
            half = 0.5 * (ai - bi)
            sigma = half * sinh(half) / (cha * chb)
            if sigma > 0.0 and mean_qh != 0.0:
                snr = var_qh / (mean_qh * mean_qh)
                classical = 2.0 / sigma
                generalized = _gen_tur_rhs(sigma)
            else:
                snr = NAN
                classical = NAN
                generalized = NAN
            val[i, 0] = mean_w
            val[i, 1] = mean_qh
            val[i, 2] = mean_qc
            val[i, 3] = var_w
            val[i, 4] = var_qh
            val[i, 5] = var_qc
            val[i, 6] = sigma
            val[i, 7] = snr
            val[i, 8] = classical
            val[i, 9] = classical - 1.0
            val[i, 10] = generalized
            val[i, 11] = sigma * snr

            scale = fabs(ai)
            if fabs(bi) > scale:
                scale = fabs(bi)
            ratio = wb / wa
            if fabs(ai - bi) <= _BOUNDARY_RTOL * scale or fabs(ratio - 1.0) <= _BOUNDARY_RTOL:
                reg[i] = 0
            elif bi < ai:
                reg[i] = 1
            elif ratio < 1.0:
                reg[i] = 2
            else:
                reg[i] = 3
    return values, regimes
