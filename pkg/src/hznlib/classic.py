"""The Herglotz function F(x), J(x), T(x), their normalised forms and closed-form values."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .constants import EULER_GAMMA, LOG2, STIELTJES_GAMMA1, bernoulli_even, hurwitz_tail
from .errors import ConvergenceError, DomainError
from .hzn import hzn_eval, hzn_integral
from .numkernel import dilog, polylog_ds_at1, plog, unit_root
from .quad import QuadratureConfig, integrate_01

# log 2 as head (32 significant bits, so small integer multiples are exact) + tail
LOG2_HEAD = math.ldexp(math.floor(math.ldexp(LOG2, 32)), -32)
LOG2_TAIL = (LOG2 - LOG2_HEAD) + 2.3190468138462996e-17
PI2 = math.pi ** 2
L2SQ = LOG2 ** 2
# F(1) = -(gamma^2/2 + pi^2/12 + gamma_1)
HERGLOTZ_AT_1 = -(0.5 * EULER_GAMMA ** 2 + PI2 / 12 + STIELTJES_GAMMA1)

SERIES_SWITCH = 0.1     # herglotz_eval uses the series for Re x below this
ASYMPTOTIC_RADIUS = 40.0
TAIL_TERMS = 8
LIMIT_CFG = QuadratureConfig(target_abs_tol=1e-11, max_level=12)


def _herglotz_arg(x) -> complex:
    x = complex(x)
    if not (math.isfinite(x.real) and math.isfinite(x.imag)):
        raise DomainError("x must be finite")
    if x.imag == 0 and x.real <= 0:
        raise DomainError(f"x = {x.real} lies on (-inf, 0]")
    return x


def _right_half(x) -> complex:
    x = _herglotz_arg(x)
    if x.real <= 0:
        raise DomainError("integral representation needs Re x > 0")
    return x


# ---------------------------------------------------------------------------
# Herglotz function

def herglotz_integral(x, cfg: QuadratureConfig | None = None) -> complex:
    """int_0^1 (1/(1-t) + 1/log t) log(1 - t^x) dt / t."""
    x = _right_half(x)
    res = integrate_01(lambda t, w: kernels.herglotz_integrand(t, w, x), cfg, pass_complement=True)
    return res.require("F(x) integral")


def herglotz_series(x, tol: float = 1e-14) -> complex:
    """sum_n (psi(n x) - log(n x)) / n with an asymptotic tail correction.

    The partial sum runs until |N x| >= 40; the remainder uses
    psi(z) - log z ~ -1/(2z) - sum_k B_2k / (2k z^2k) summed against Hurwitz tails.
    ``tol`` only guards the request: the method delivers close to double precision.
    """
    x = _herglotz_arg(x)
    if tol < 1e-15:
        raise DomainError("herglotz_series cannot deliver tol below 1e-15")
    n_terms = max(8, math.ceil(ASYMPTOTIC_RADIUS / abs(x)))
    partial = complex(kernels.herglotz_partial(x, n_terms))
    b = bernoulli_even(TAIL_TERMS)
    tail = -hurwitz_tail(2.0, n_terms + 1) / (2 * x)
    for k in range(1, TAIL_TERMS + 1):
        tail -= b[k - 1] / (2 * k * x ** (2 * k)) * hurwitz_tail(2.0 * k + 1, n_terms + 1)
    return partial + tail


def herglotz_eval(x, cfg: QuadratureConfig | None = None) -> complex:
    """Integral for Re x >= 0.1, series otherwise or if the quadrature does not converge."""
    x = _herglotz_arg(x)
    if x.real >= SERIES_SWITCH:
        try:
            return herglotz_integral(x, cfg)
        except ConvergenceError:
            pass
    return herglotz_series(x)


# ---------------------------------------------------------------------------
# J

def j_integral(x, cfg: QuadratureConfig | None = None) -> complex:
    """int_0^1 log(1 + t^x) / (1 + t) dt."""
    x = _right_half(x)
    res = integrate_01(lambda t, w: kernels.j_integrand(t, w, x), cfg, pass_complement=True)
    return res.require("J(x) integral")


def j_eval(x, cfg: QuadratureConfig | None = None) -> complex:
    """J through the two-parameter function at u = v = -1."""
    return -hzn_eval(x, -1, -1, cfg)


def j_normalized(x, cfg: QuadratureConfig | None = None) -> complex:
    """J(x) - log^2(2)/2 + (pi^2/24)(x - 1/x); odd under x -> 1/x."""
    x = _right_half(x)
    return j_integral(x, cfg) - 0.5 * L2SQ + PI2 / 24 * (x - 1 / x)


def _check_n(n) -> int:
    if int(n) != n or n < 1:
        raise DomainError(f"expected a positive integer, got {n!r}")
    return int(n)


def _j_dilog_sum(n: int) -> complex:
    return sum(dilog(0.5 * (1 + unit_root(2 * j + 1, 2 * n))) for j in range(1, n + 1))


def j_at_n(n: int) -> complex:
    n = _check_n(n)
    return PI2 / 12 * (1 / n - n) + 0.5 * n * L2SQ + _j_dilog_sum(n)


def j_inv_n(n: int) -> complex:
    n = _check_n(n)
    return PI2 / 12 * (n - 1 / n) + (1 - 0.5 * n) * L2SQ - _j_dilog_sum(n)


def _sin_cos_log_sum(m: int) -> float:
    ang = math.pi * (2 * np.arange(m) + 1) / (4 * m)
    return float(np.sum(np.log(np.sin(ang)) * np.log(np.cos(ang))))


def j_even(m: int) -> float:
    """J(2m) through log-sine / log-cosine products."""
    m = _check_n(m)
    return PI2 / 48 * (1 / m - 2 * m) + m * L2SQ - _sin_cos_log_sum(m)


def j_even_inv(m: int) -> float:
    """J(1/(2m))."""
    m = _check_n(m)
    return PI2 / 48 * (2 * m - 1 / m) + (1 - m) * L2SQ + _sin_cos_log_sum(m)


@dataclass(frozen=True)
class LogSinSums:
    """Direct finite sums and their closed forms."""
    s1: float
    s2: float
    s2_cos: float
    s3: float
    s1_closed: float
    s2_closed: float
    s3_closed: float

    residuals: tuple[float, ...] = ()

    def max_error(self) -> float:
        return max(abs(r) for r in self.residuals)


def _log_sin_pi_frac(k: np.ndarray, den: int) -> np.ndarray:
    """log sin(pi k / den) for 0 < k < den, reflecting the angle into (0, pi/2] first."""
    k = np.minimum(k, den - k)
    return np.log(np.sin(math.pi * k / den))


def _residual(terms: np.ndarray, coeff: float) -> float:
    """fsum(terms) - coeff * log 2 without rounding either side first."""
    return math.fsum([*terms, -coeff * LOG2_HEAD, -coeff * LOG2_TAIL])


def logsin_sums(m: int) -> LogSinSums:
    m = _check_n(m)
    j = np.arange(m)
    k = 2 * j + 1
    half = _log_sin_pi_frac(k, 2 * m)
    quarter_sin = _log_sin_pi_frac(k, 4 * m)
    quarter_cos = _log_sin_pi_frac(2 * m - k, 4 * m)
    weighted = j * half
    c1, c2, c3 = 1 - m, 0.5 - m, -0.5 * (m - 1) ** 2
    return LogSinSums(
        s1=math.fsum(half),
        s2=math.fsum(quarter_sin),
        s2_cos=math.fsum(quarter_cos),
        s3=math.fsum(weighted),
        s1_closed=c1 * LOG2,
        s2_closed=c2 * LOG2,
        s3_closed=c3 * LOG2,
        residuals=(_residual(half, c1), _residual(quarter_sin, c2),
                   _residual(quarter_cos, c2), _residual(weighted, c3)),
    )


# ---------------------------------------------------------------------------
# T

def t_integral(x, cfg: QuadratureConfig | None = None) -> complex:
    """int_0^1 arctan(t^x) / (1 + t^2) dt."""
    x = _right_half(x)
    res = integrate_01(lambda t, w: kernels.t_integrand(t, w, x), cfg, pass_complement=True)
    return res.require("T(x) integral")


def t_from_hzn(x, cfg: QuadratureConfig | None = None) -> complex:
    x = _right_half(x)
    i = 1j
    return 0.25 * (hzn_integral(x, i, i, cfg) + hzn_integral(x, -i, -i, cfg)
                   - hzn_integral(x, i, -i, cfg) - hzn_integral(x, -i, i, cfg))


def t_normalized(x, cfg: QuadratureConfig | None = None) -> complex:
    """T(x) - pi^2/32; odd under x -> 1/x."""
    return t_integral(x, cfg) - PI2 / 32


def t_at_n(n: int) -> complex:
    n = _check_n(n)
    p, m = (1 + 1j) / 2, (1 - 1j) / 2
    total = 0j
    for j in range(1, n + 1):
        a = unit_root(4 * j + n + 1, 4 * n)
        b = unit_root(4 * j + n - 1, 4 * n)
        total += (dilog(p * (1 - a)) + dilog(m * (1 + b))
                  - dilog(m * (1 + a)) - dilog(p * (1 - b)))
    return 0.25 * total


def t_inv_n(n: int) -> complex:
    return PI2 / 16 - t_at_n(n)


# ---------------------------------------------------------------------------
# relations between F, J and F(x; u, v)

def herglotz_two_term_residual(x, cfg: QuadratureConfig | None = None) -> complex:
    x = _herglotz_arg(x)
    lx = plog(x)
    rhs = 2 * HERGLOTZ_AT_1 + 0.5 * lx * lx - PI2 / (6 * x) * (x - 1) ** 2
    return herglotz_eval(x, cfg) + herglotz_eval(1 / x, cfg) - rhs


def herglotz_three_term_residual(x, cfg: QuadratureConfig | None = None) -> complex:
    x = _herglotz_arg(x)
    lhs = herglotz_eval(x, cfg) - herglotz_eval(x + 1, cfg) - herglotz_eval(x / (x + 1), cfg)
    return lhs - (-HERGLOTZ_AT_1 + dilog(1 / (1 + x)))


def conn_u1_vm1(x, cfg: QuadratureConfig | None = None) -> complex:
    """F(x; 1, -1) - F(x/2) + F(x) - pi^2/(6x)."""
    x = _right_half(x)
    return (hzn_eval(x, 1, -1, cfg) - herglotz_eval(x / 2, cfg) + herglotz_eval(x, cfg)
            - PI2 / (6 * x))


def j_herglotz_residual(x, cfg: QuadratureConfig | None = None) -> complex:
    """J(x) - (F(2x) - 2F(x) + F(x/2) + pi^2/(12x))."""
    x = _right_half(x)
    rhs = (herglotz_eval(2 * x, cfg) - 2 * herglotz_eval(x, cfg) + herglotz_eval(x / 2, cfg)
           + PI2 / (12 * x))
    return j_integral(x, cfg) - rhs


def j_three_term_residuals(x, cfg: QuadratureConfig | None = None) -> tuple[complex, complex, complex]:
    """Residuals of J(x) through F, and of J(x) - J(x-1) + J(x/(x-1)) in its F and F(.;1,-1) forms."""
    x = _herglotz_arg(x)
    if x.real <= 1:
        raise DomainError("three-term J relations need Re x > 1")
    F = lambda y: herglotz_eval(y, cfg)  # noqa: E731
    g2 = 0.5 * EULER_GAMMA ** 2 + STIELTJES_GAMMA1
    li_inv = dilog(1 / x)
    li_ratio = dilog((x - 1) / x)
    r1 = j_integral(x, cfg) - (F(x) - F((x - 1) / 2) + F((x - 1) / (2 * x))
                               + PI2 * (2 * x + 1) / (12 * x) + g2 + 0.5 * L2SQ + li_inv)
    c = 0.5 * (L2SQ + plog(2 * x) ** 2 + plog(x / (x - 1)) ** 2 - plog(2 * (x - 1)) ** 2)
    lhs = j_integral(x, cfg) - j_integral(x - 1, cfg) + j_integral(x / (x - 1), cfg)
    r2 = lhs - (F(x / 2) + F((x - 1) / x) - F((x - 1) / 2) + 2 * li_inv + li_ratio
                - PI2 * (x * x + 1) / (12 * x * (x - 1)) + g2 + c)
    r3 = lhs - (hzn_eval(x, 1, -1, cfg) - hzn_eval(x - 1, 1, -1, cfg) + li_inv + li_ratio
                - PI2 * (2 * x + 1) / (12 * x) + c)
    return r1, r2, r3


def t_j_relation_residual(x, cfg: QuadratureConfig | None = None) -> complex:
    """4T(x) + J(x) + 2F(x; i, -i) + 2F(x; -i, i)."""
    x = _right_half(x)
    return (4 * t_integral(x, cfg) + j_integral(x, cfg)
            + 2 * hzn_integral(x, 1j, -1j, cfg) + 2 * hzn_integral(x, -1j, 1j, cfg))


# ---------------------------------------------------------------------------
# boundary limits u, v -> 1

def limit_uv_path(eps: float) -> tuple[float, float]:
    """(u, v) along which the joint limit u, v -> 1 is taken; v reaches 1 much faster than u."""
    return 1.0 - eps, 1.0 - 1e-3 * eps ** 3


def limit_uv_residual(x, eps: float, cfg: QuadratureConfig | None = None,
                         f_value: complex | None = None) -> complex:
    x = _right_half(x)
    u, v = limit_uv_path(eps)
    lu, lv = math.log1p(-u), math.log(1e-3 * eps ** 3)
    val = (hzn_integral(x, u, v, cfg or LIMIT_CFG) - dilog(u) / x
           + lu * (lv + EULER_GAMMA + plog(x)) + polylog_ds_at1(u))
    return val - (herglotz_eval(x) if f_value is None else f_value)


def limit_v_residual(x, eps: float, cfg: QuadratureConfig | None = None,
                         rhs: complex | None = None) -> complex:
    x = _right_half(x)
    if rhs is None:
        rhs = (herglotz_eval(2 * x) - herglotz_eval(x) - 0.5 * LOG2 * plog(2 * x * x)
               - PI2 / (12 * x))
    return hzn_integral(x, -1, 1 - eps, cfg or LIMIT_CFG) + LOG2 * math.log(eps) - rhs


@dataclass
class LimitReport:
    x: complex
    which: str
    eps: list[float]
    residuals: list[complex]
    decay: list[float] = field(default_factory=list)
    min_factor: float = 5.0

    @property
    def monotone(self) -> bool:
        a = [abs(r) for r in self.residuals]
        return all(b < c for b, c in zip(a[1:], a))

    @property
    def passed(self) -> bool:
        return bool(self.decay) and min(self.decay) >= self.min_factor


def conn_limits(x, eps_sequence=(1e-1, 1e-2, 1e-3), which: str = "uv",
                cfg: QuadratureConfig | None = None, min_factor: float = 5.0) -> LimitReport:
    """Residuals of a boundary limit along ``eps_sequence`` and their decay factors.

    ``which="uv"``: u, v -> 1 jointly, compared with the Herglotz function at x.
    ``which="v"``: v -> 1 with u = -1.
    """
    x = _right_half(x)
    eps = [float(e) for e in eps_sequence]
    if any(e <= 0 for e in eps) or any(b >= a for a, b in zip(eps, eps[1:])):
        raise DomainError("eps_sequence must be positive and strictly decreasing")
    if which == "uv":
        fx = herglotz_eval(x)
        res = [limit_uv_residual(x, e, cfg, fx) for e in eps]
    elif which == "v":
        rhs = (herglotz_eval(2 * x) - herglotz_eval(x) - 0.5 * LOG2 * plog(2 * x * x)
               - PI2 / (12 * x))
        res = [limit_v_residual(x, e, cfg, rhs) for e in eps]
    else:
        raise DomainError("which must be 'uv' or 'v'")
    decay = [abs(a) / abs(b) if b != 0 else math.inf for a, b in zip(res, res[1:])]
    return LimitReport(x, which, eps, res, decay, min_factor)


@dataclass
class SpecialValueRecord:
    fn_tag: str
    argument: str
    closed_form: complex
    direct: complex

    @property
    def abs_err(self) -> float:
        return abs(self.closed_form - self.direct)
