"""Hot numerical kernels.

Scalar primitives are plain Python decorated with the ``njit`` shim, so they
are compiled when numba is active and run as ordinary Python otherwise.
Array kernels come in pairs: ``*_nb`` (explicit loops over the scalar
primitives, meant to be compiled) and ``*_np`` (vectorised numpy).  The
un-suffixed public name points at whichever backend is active.
"""
from __future__ import annotations

import cmath
import math

import numpy as np

from ._accel import USE_NUMBA, njit
from .constants import ZETA2, bernoulli_even, dilog_coefficients

DILOG_C = dilog_coefficients(16)
PSI_B = bernoulli_even(8)
PSI_BK = PSI_B / (2.0 * np.arange(1, 9))  # B_2k / (2k)
PSI_SHIFT = 10
HERGLOTZ_SERIES_W = 1e-3
# 1/w + 1/log(1-w) = sum HERGLOTZ_BRACKET[k] w^k
HERGLOTZ_BRACKET = np.array([1 / 2, 1 / 12, 1 / 24, 19 / 720, 3 / 160, 863 / 60480])
SMALL_POWER = -0.7  # below this Re(x log t), |t^x| < 1/2 and log1p is used


# ---------------------------------------------------------------------------
# scalar primitives

@njit
def clog(z):
    """Principal log with arg in (-pi, pi]; a negative zero imaginary part is treated as +0."""
    return cmath.log(complex(z.real, z.imag + 0.0))


@njit
def clog1p(z):
    a = z.real
    b = z.imag + 0.0
    s = a * (2.0 + a) + b * b
    if abs(s) < 0.5:
        re = 0.5 * math.log1p(s)
    else:
        re = math.log(math.hypot(1.0 + a, b))
    return complex(re, math.atan2(b, 1.0 + a))


@njit
def cexpm1(z):
    a = z.real
    b = z.imag
    if b == 0.0:
        return complex(math.expm1(a), 0.0)
    sh = math.sin(0.5 * b)
    return complex(math.expm1(a) * math.cos(b) - 2.0 * sh * sh, math.exp(a) * math.sin(b))


@njit
def _dilog_series(u):
    u2 = u * u
    acc = 0j
    for k in range(DILOG_C.shape[0] - 1, -1, -1):
        acc = acc * u2 + DILOG_C[k]
    return u - 0.25 * u2 + u * u2 * acc


@njit
def dilog_scalar(z):
    """Principal Li2(z).  Returns nan on the cut (1, inf)."""
    x = z.real
    y = z.imag
    if y == 0.0:
        if x > 1.0:
            return complex(math.nan, math.nan)
        if x == 1.0:
            return complex(ZETA2, 0.0)
        if x == 0.0:
            return 0j
    r2 = x * x + y * y
    if x <= 0.5:
        if r2 <= 1.0:
            return _dilog_series(-clog1p(-z))
    elif r2 <= 2.0 * x:
        # |z - 1| <= 1: reflection z -> 1 - z
        lz = clog1p(z - 1.0)
        return -_dilog_series(-lz) + ZETA2 - lz * clog1p(-z)
    # inversion z -> 1/z
    lmz = clog(-z)
    return -_dilog_series(-clog1p(-1.0 / z)) - ZETA2 - 0.5 * lmz * lmz


@njit
def _psi_asym_minus_log(z):
    """psi(z) - log z from the asymptotic series; needs |z| >= 10, Re z > 0."""
    zi2 = 1.0 / (z * z)
    acc = 0j
    for k in range(PSI_BK.shape[0] - 1, -1, -1):
        acc = acc * zi2 + PSI_BK[k]
    return -0.5 / z - acc * zi2


@njit
def _pi_cot_pi(z):
    """pi cot(pi z), stable for large |Im z| and after shifting Re z by an integer."""
    z = z - round(z.real)
    w = math.pi * z
    if w.imag == 0.0:
        return complex(math.pi / math.tan(w.real), 0.0)
    if w.imag >= 0.0:
        em = cexpm1(2j * w)
        return math.pi * 1j * (2.0 + em) / em
    em = cexpm1(-2j * w)
    return -math.pi * 1j * (2.0 + em) / em


@njit
def _psi_right(z):
    """psi(z) - log z for Re z >= 1/2."""
    acc = 0j
    w = z
    while abs(w) < PSI_SHIFT:
        acc -= 1.0 / w
        w += 1.0
    if w != z:
        acc += clog1p((w - z) / z)
    return acc + _psi_asym_minus_log(w)


@njit
def digamma_scalar(z):
    """psi(z); nan at the poles 0, -1, -2, ..."""
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        return complex(math.nan, math.nan)
    if z.real < 0.5:
        w = 1.0 - z
        return _psi_right(w) + clog(w) - _pi_cot_pi(z)
    return _psi_right(z) + clog(z)


@njit
def digamma_minus_log_scalar(z):
    """psi(z) - log z without the cancellation for large |z|."""
    if z.real < 0.5:
        return digamma_scalar(z) - clog(z)
    return _psi_right(z)


# ---------------------------------------------------------------------------
# numpy counterparts of the scalar primitives

def clog_np(z):
    z = np.asarray(z, dtype=np.complex128)
    return np.log(z.real + 1j * (z.imag + 0.0))


def clog1p_np(z):
    z = np.asarray(z, dtype=np.complex128)
    a = z.real
    b = z.imag + 0.0
    s = a * (2.0 + a) + b * b
    with np.errstate(divide="ignore", invalid="ignore"):
        re = np.where(np.abs(s) < 0.5, 0.5 * np.log1p(np.where(np.abs(s) < 0.5, s, 0.0)),
                      np.log(np.hypot(1.0 + a, b)))
    return re + 1j * np.arctan2(b, 1.0 + a)


def cexpm1_np(z):
    z = np.asarray(z, dtype=np.complex128)
    a = z.real
    b = z.imag
    sh = np.sin(0.5 * b)
    return (np.expm1(a) * np.cos(b) - 2.0 * sh * sh) + 1j * (np.exp(a) * np.sin(b))


def _dilog_series_np(u):
    u2 = u * u
    acc = np.zeros_like(u)
    for c in DILOG_C[::-1]:
        acc = acc * u2 + c
    return u - 0.25 * u2 + u * u2 * acc


def dilog_np(z):
    z = np.asarray(z, dtype=np.complex128)
    x = z.real
    y = z.imag
    r2 = x * x + y * y
    out = np.empty_like(z)
    direct = (x <= 0.5) & (r2 <= 1.0)
    refl = (x > 0.5) & (r2 <= 2.0 * x)
    inv = ~(direct | refl)
    if direct.any():
        out[direct] = _dilog_series_np(-clog1p_np(-z[direct]))
    if refl.any():
        zr = z[refl]
        lz = clog1p_np(zr - 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            out[refl] = -_dilog_series_np(-lz) + ZETA2 - lz * clog1p_np(-zr)
    if inv.any():
        zi = z[inv]
        lmz = clog_np(-zi)
        out[inv] = -_dilog_series_np(-clog1p_np(-1.0 / zi)) - ZETA2 - 0.5 * lmz * lmz
    on_real = y == 0.0
    out[on_real & (x == 1.0)] = ZETA2
    out[on_real & (x == 0.0)] = 0.0
    out[on_real & (x > 1.0)] = complex(np.nan, np.nan)
    return out


def _psi_asym_minus_log_np(z):
    zi2 = 1.0 / (z * z)
    acc = np.zeros_like(z)
    for c in PSI_BK[::-1]:
        acc = acc * zi2 + c
    return -0.5 / z - acc * zi2


def _pi_cot_pi_np(z):
    z = z - np.round(z.real)
    w = np.pi * z
    upper = w.imag >= 0.0
    em = cexpm1_np(np.where(upper, 2j * w, -2j * w))
    with np.errstate(divide="ignore", invalid="ignore"):
        val = np.pi * 1j * (2.0 + em) / em
        on_axis = np.pi / np.tan(w.real) + 0j
    return np.where(w.imag == 0.0, on_axis, np.where(upper, val, -val))


def _psi_right_np(z):
    small = np.abs(z) < PSI_SHIFT
    acc = np.zeros_like(z)
    for k in range(PSI_SHIFT):
        acc -= np.where(small, 1.0 / (z + k), 0.0)
    w = np.where(small, z + PSI_SHIFT, z)
    acc += np.where(small, clog1p_np(PSI_SHIFT / z), 0.0)
    return acc + _psi_asym_minus_log_np(w)


def digamma_np(z):
    z = np.asarray(z, dtype=np.complex128)
    left = z.real < 0.5
    w = np.where(left, 1.0 - z, z)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = _psi_right_np(w) + clog_np(w)
        out = np.where(left, out - _pi_cot_pi_np(z), out)
    pole = (z.imag == 0.0) & (z.real <= 0.0) & (z.real == np.floor(z.real))
    out[pole] = complex(np.nan, np.nan)
    return out


def digamma_minus_log_np(z):
    z = np.asarray(z, dtype=np.complex128)
    left = z.real < 0.5
    with np.errstate(divide="ignore", invalid="ignore"):
        right = _psi_right_np(np.where(left, 1.0, z))
    if not left.any():
        return right
    zl = z[left]
    out = right.copy()
    out[left] = digamma_np(zl) - clog_np(zl)
    return out


# ---------------------------------------------------------------------------
# array kernels: dilog / digamma

@njit
def dilog_nb(z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = dilog_scalar(z[i])
    return out


@njit
def digamma_minus_log_nb(z):
    out = np.empty(z.shape[0], dtype=np.complex128)
    for i in range(z.shape[0]):
        out[i] = digamma_minus_log_scalar(z[i])
    return out


@njit
def herglotz_partial_nb(x, n_terms):
    """sum_{n=1}^{N} (psi(n x) - log(n x)) / n."""
    acc = 0j
    for n in range(n_terms, 0, -1):
        acc += digamma_minus_log_scalar(n * x) / n
    return acc


def herglotz_partial_np(x, n_terms):
    n = np.arange(n_terms, 0, -1, dtype=np.float64)
    return complex(np.sum(digamma_minus_log_np(n * x) / n))


# ---------------------------------------------------------------------------
# integrands on (0, 1); t and w = 1 - t are passed separately

@njit
def _hzn_point(t, w, x, u, one_m_u, vinv, vinv_m1):
    lt = math.log(t) if t < 0.5 else math.log1p(-w)
    xl = x * lt
    if xl.real < SMALL_POWER:
        num = clog1p(-u * cmath.exp(xl))
    else:
        num = clog(one_m_u - u * cexpm1(xl))
    den = (vinv - t) if t < 0.5 else (vinv_m1 + w)
    return num / den


@njit
def hzn_integrand_nb(t, w, x, u, v):
    """log(1 - u t^x) / (1/v - t) at the nodes."""
    out = np.empty(t.shape[0], dtype=np.complex128)
    vinv = 1.0 / v
    vinv_m1 = (1.0 - v) / v
    for i in range(t.shape[0]):
        out[i] = _hzn_point(t[i], w[i], x, u, 1.0 - u, vinv, vinv_m1)
    return out


def _log_t_np(t, w):
    with np.errstate(divide="ignore"):
        return np.where(t < 0.5, np.log(t), np.log1p(-w))


def hzn_integrand_np(t, w, x, u, v):
    lt = _log_t_np(t, w)
    xl = x * lt
    small = xl.real < SMALL_POWER
    # both branches are evaluated everywhere; the discarded one may hit log(0) when u = 1
    with np.errstate(divide="ignore", invalid="ignore"):
        num = np.where(small, clog1p_np(-u * np.exp(np.where(small, xl, 0.0))),
                       clog_np((1.0 - u) - u * cexpm1_np(np.where(small, 0.0, xl))))
    den = np.where(t < 0.5, 1.0 / v - t, (1.0 - v) / v + w)
    return num / den


@njit
def _log_one_minus_tx(xl):
    if xl.real < SMALL_POWER:
        return clog1p(-cmath.exp(xl))
    return clog(-cexpm1(xl))


@njit
def herglotz_integrand_nb(t, w, x):
    """(1/(1-t) + 1/log t) log(1 - t^x) / t."""
    out = np.empty(t.shape[0], dtype=np.complex128)
    nb = HERGLOTZ_BRACKET.shape[0]
    for i in range(t.shape[0]):
        ti = t[i]
        wi = w[i]
        lt = math.log(ti) if ti < 0.5 else math.log1p(-wi)
        if wi < HERGLOTZ_SERIES_W:
            br = 0.0
            for k in range(nb - 1, -1, -1):
                br = br * wi + HERGLOTZ_BRACKET[k]
        else:
            br = 1.0 / wi + 1.0 / lt
        out[i] = br * _log_one_minus_tx(x * lt) / ti
    return out


def _log_one_minus_tx_np(xl):
    small = xl.real < SMALL_POWER
    return np.where(small, clog1p_np(-np.exp(np.where(small, xl, 0.0))),
                    clog_np(-cexpm1_np(np.where(small, -1.0, xl))))


def herglotz_integrand_np(t, w, x):
    lt = _log_t_np(t, w)
    near = w < HERGLOTZ_SERIES_W
    ser = np.polynomial.polynomial.polyval(w, HERGLOTZ_BRACKET)
    with np.errstate(divide="ignore"):
        br = np.where(near, ser, 1.0 / w + 1.0 / lt)
    return br * _log_one_minus_tx_np(x * lt) / t


@njit
def j_integrand_nb(t, w, x):
    """log(1 + t^x) / (1 + t)."""
    out = np.empty(t.shape[0], dtype=np.complex128)
    for i in range(t.shape[0]):
        lt = math.log(t[i]) if t[i] < 0.5 else math.log1p(-w[i])
        xl = x * lt
        if xl.real < SMALL_POWER:
            num = clog1p(cmath.exp(xl))
        else:
            num = clog(2.0 + cexpm1(xl))
        out[i] = num / (1.0 + t[i])
    return out


def j_integrand_np(t, w, x):
    xl = x * _log_t_np(t, w)
    small = xl.real < SMALL_POWER
    num = np.where(small, clog1p_np(np.exp(np.where(small, xl, 0.0))),
                   clog_np(2.0 + cexpm1_np(np.where(small, 0.0, xl))))
    return num / (1.0 + t)


@njit
def t_integrand_nb(t, w, x):
    """arctan(t^x) / (1 + t^2)."""
    out = np.empty(t.shape[0], dtype=np.complex128)
    for i in range(t.shape[0]):
        lt = math.log(t[i]) if t[i] < 0.5 else math.log1p(-w[i])
        out[i] = cmath.atan(cmath.exp(x * lt)) / (1.0 + t[i] * t[i])
    return out


def t_integrand_np(t, w, x):
    tx = np.exp(x * _log_t_np(t, w))
    return np.arctan(tx) / (1.0 + t * t)


# ---------------------------------------------------------------------------
# double series  -sum_{m,n>=1} u^m v^n / (m (m x + n))

@njit
def hzn_series_nb(x, u, v, m_max, inner_tol):
    au = abs(u)
    av = abs(v)
    total = 0j
    um = 1.0 + 0j
    for m in range(1, m_max + 1):
        um *= u
        mx = m * x
        s = 0j
        vn = 1.0 + 0j
        n = 0
        while True:
            n += 1
            vn *= v
            s += vn / (mx + n)
            d = max(m * abs(x.imag), n + 1 + m * x.real)
            if av ** (n + 1) / ((1.0 - av) * d) < inner_tol or vn == 0:
                break
        total += um * s / m
        if au ** (m + 1) == 0.0:
            break
    return -total


def hzn_series_np(x, u, v, m_max, inner_tol):
    av = abs(v)
    total = 0j
    chunk = 256
    for m0 in range(1, m_max + 1, chunk):
        m = np.arange(m0, min(m0 + chunk, m_max + 1), dtype=np.float64)
        n_max = max(_inner_terms(x, av, mi, inner_tol) for mi in m)
        n = np.arange(1, n_max + 1, dtype=np.float64)
        vn = v ** n
        blk = (vn[None, :] / (m[:, None] * x + n[None, :])).sum(axis=1)
        total += np.sum(u ** m * blk / m)
    return -total


def _inner_terms(x, av, m, tol):
    if av == 0.0:
        return 1
    n = 1
    while True:
        d = max(m * abs(x.imag), n + 1 + m * x.real)
        if d > 0 and av ** (n + 1) / ((1.0 - av) * d) < tol:
            return n
        n = int(n * 1.25) + 1


# ---------------------------------------------------------------------------
# d/ds Li_s(u) at s = 1:  -sum_{n>=2} u^n log n / n

@njit
def polylog_ds_nb(u, tol):
    au = abs(u)
    acc = 0j
    un = u
    n = 1
    while True:
        n += 1
        un *= u
        acc -= un * math.log(n) / n
        if n > 3 and au ** (n + 1) * math.log(n + 1) / ((n + 1) * (1.0 - au)) < tol:
            break
        if un == 0:
            break
    return acc


def polylog_ds_np(u, tol):
    au = abs(u)
    acc = 0j
    start = 2
    chunk = 4096
    while True:
        n = np.arange(start, start + chunk, dtype=np.float64)
        acc -= np.sum(u ** n * np.log(n) / n)
        last = start + chunk - 1
        if au ** (last + 1) * math.log(last + 1) / ((last + 1) * (1.0 - au)) < tol:
            return acc
        start += chunk


# ---------------------------------------------------------------------------
# backend selection

if USE_NUMBA:
    dilog_array = dilog_nb
    digamma_minus_log_array = digamma_minus_log_nb
    herglotz_partial = herglotz_partial_nb
    hzn_integrand = hzn_integrand_nb
    herglotz_integrand = herglotz_integrand_nb
    j_integrand = j_integrand_nb
    t_integrand = t_integrand_nb
    hzn_series_sum = hzn_series_nb
    polylog_ds_sum = polylog_ds_nb
else:
    dilog_array = dilog_np
    digamma_minus_log_array = digamma_minus_log_np
    herglotz_partial = herglotz_partial_np
    hzn_integrand = hzn_integrand_np
    herglotz_integrand = herglotz_integrand_np
    j_integrand = j_integrand_np
    t_integrand = t_integrand_np
    hzn_series_sum = hzn_series_np
    polylog_ds_sum = polylog_ds_np
