"""F(x; u, v) = int_0^1 log(1 - u t^x) / (1/v - t) dt and its double-series continuation.

Public functions take the three parameters as plain scalars; ``HznPoint``
validates them and decides which representation applies.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import BranchCrossingError, ConvergenceError, CutError, DomainError
from .numkernel import dilog, plog, proot, roots_of_unity
from .quad import QuadratureConfig, QuadratureResult, integrate_01

UNIT_TOL = 1e-12
DEFAULT_SERIES_TOL = 1e-14


def _complex(z, name: str) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{name} must be finite, got {z!r}")
    return z


def set_memberships(z: complex) -> frozenset[str]:
    """Which of D = {0<|z|<=1}, D' = D minus {1}, D1 = unit circle, D1' = D1 minus {1} contain z."""
    r = abs(z)
    out = set()
    is_one = z == 1
    if 0 < r <= 1 + UNIT_TOL:
        out.add("D")
        if not is_one:
            out.add("D'")
    if abs(r - 1) <= UNIT_TOL:
        out.add("D1")
        if not is_one:
            out.add("D1'")
    return frozenset(out)


def in_disk(z: complex, *, allow_one: bool = True) -> bool:
    return ("D" if allow_one else "D'") in set_memberships(z)


def curve_crosses_cut(x: complex, u: complex) -> bool:
    """Does {u t^x : 0 < t < 1} meet [1, inf)?  Only possible when |u| > 1."""
    au = abs(u)
    if au <= 1:
        return False
    # |u t^x| >= 1 exactly for log t in [lam0, 0]
    lam0 = -math.log(au) / x.real
    theta0 = math.atan2(u.imag, u.real)
    a, b = sorted((theta0, theta0 + x.imag * lam0))
    return math.floor(b / (2 * math.pi)) >= math.ceil(a / (2 * math.pi))


@dataclass(frozen=True)
class DomainClass:
    integral_valid: bool
    series_valid: bool
    u_sets: frozenset = field(default_factory=frozenset)
    v_sets: frozenset = field(default_factory=frozenset)
    note: str = ""


@dataclass(frozen=True)
class HznPoint:
    x: complex
    u: complex
    v: complex

    def __post_init__(self):
        x = _complex(self.x, "x")
        u = _complex(self.u, "u")
        v = _complex(self.v, "v")
        if x.imag == 0 and x.real <= 0:
            raise DomainError(f"x = {x.real} lies on (-inf, 0]")
        if u == 0 or v == 0:
            raise DomainError("u and v must be non-zero")
        if u.imag == 0 and u.real > 1:
            raise DomainError(f"u = {u.real} lies on (1, inf)")
        if v.imag == 0 and v.real >= 1:
            raise DomainError(f"v = {v.real} lies on [1, inf)")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    def classify(self) -> DomainClass:
        note = ""
        integral = self.x.real > 0
        if not integral:
            note = "Re x <= 0"
        elif curve_crosses_cut(self.x, self.u):
            integral = False
            note = "path u t^x crosses [1, inf)"
        series = abs(self.u) < 1 and abs(self.v) < 1
        return DomainClass(integral, series, set_memberships(self.u), set_memberships(self.v), note)


# ---------------------------------------------------------------------------

def hzn_integral_result(x, u, v, cfg: QuadratureConfig | None = None) -> QuadratureResult:
    p = HznPoint(x, u, v)
    if p.x.real <= 0:
        raise DomainError("integral representation needs Re x > 0")
    if curve_crosses_cut(p.x, p.u):
        raise BranchCrossingError(f"u t^x crosses [1, inf) for x={p.x}, u={p.u}")
    return integrate_01(lambda t, w: kernels.hzn_integrand(t, w, p.x, p.u, p.v), cfg,
                        pass_complement=True)


def hzn_integral(x, u, v, cfg: QuadratureConfig | None = None) -> complex:
    return hzn_integral_result(x, u, v, cfg).require("F(x;u,v) integral")


def hzn_series(x, u, v, tol: float = DEFAULT_SERIES_TOL) -> complex:
    """-sum_{m,n>=1} u^m v^n / (m (m x + n)), for |u|, |v| < 1."""
    p = HznPoint(x, u, v)
    au, av = abs(p.u), abs(p.v)
    if au >= 1 or av >= 1:
        raise DomainError("series needs |u| < 1 and |v| < 1")
    d_min = 1.0 if p.x.real >= 0 else abs(p.x.imag)
    bound_inner = av / ((1 - av) * d_min)
    m_max = 1
    while au ** (m_max + 1) / ((m_max + 1) * (1 - au)) * bound_inner > tol / 2:
        m_max += 1
    inner_tol = tol / (2 * max(1.0, -math.log1p(-au)))
    return complex(kernels.hzn_series_sum(p.x, p.u, p.v, m_max, inner_tol))


def hzn_eval(x, u, v, cfg: QuadratureConfig | None = None, *, cross_check: bool = False) -> complex:
    """Integral where it is valid, otherwise the double series."""
    p = HznPoint(x, u, v)
    dc = p.classify()
    if not (dc.integral_valid or dc.series_valid):
        raise DomainError(f"no valid representation at {p} ({dc.note})")
    if dc.integral_valid:
        res = hzn_integral_result(p.x, p.u, p.v, cfg)
        val = res.require("F(x;u,v) integral")
        if cross_check and dc.series_valid:
            ser = hzn_series(p.x, p.u, p.v)
            if abs(ser - val) > 10 * max(res.err_estimate, (cfg or QuadratureConfig()).target_abs_tol) + 1e-12:
                raise ConvergenceError(f"integral {val} and series {ser} disagree at {p}", res)
        return val
    return hzn_series(p.x, p.u, p.v)


def _check_disk(name: str, z: complex, allow_one: bool) -> complex:
    z = _complex(z, name)
    if not in_disk(z, allow_one=allow_one):
        raise DomainError(f"{name} = {z} must satisfy 0 < |{name}| <= 1" + ("" if allow_one else f", {name} != 1"))
    return z


def hzn_rational(p: int, q: int, u, v) -> complex:
    """F(p/q; u, v) from roots of unity and dilogarithms, for u in D and v in D'."""
    if p < 1 or q < 1 or int(p) != p or int(q) != q:
        raise DomainError("p and q must be positive integers")
    u = _check_disk("u", u, True)
    v = _check_disk("v", v, False)
    up = proot(u, p)
    vq = proot(v, q)
    total = (q / p) * dilog(u)
    for jb, beta in enumerate(roots_of_unity(q), 1):
        bv = beta * vq
        total += p * dilog(bv / (bv - 1))
        for ja, alpha in enumerate(roots_of_unity(p), 1):
            try:
                total -= dilog((alpha * up - bv) / (1 - bv))
            except CutError as exc:
                raise CutError(f"dilog cut hit at alpha index {ja}, beta index {jb}") from exc
    return total


def hzn_at_n(n: int, u, v) -> complex:
    """F(n; u, v) for u in D, v in D'."""
    if n < 1 or int(n) != n:
        raise DomainError("n must be a positive integer")
    u = _check_disk("u", u, True)
    v = _check_disk("v", v, False)
    un = proot(u, n)
    total = n * dilog(v / (v - 1)) + dilog(u) / n
    for j, om in enumerate(roots_of_unity(n), 1):
        try:
            total -= dilog((un * om - v) / (1 - v))
        except CutError as exc:
            raise CutError(f"dilog cut hit at root index {j}") from exc
    return total


def hzn_inv_n(n: int, v) -> complex:
    """F(1/n; 1, v) for v in D'."""
    if n < 1 or int(n) != n:
        raise DomainError("n must be a positive integer")
    v = _check_disk("v", v, False)
    vn = proot(v, n)
    total = -dilog(v) / n
    for om in roots_of_unity(n):
        lg = plog(1 - vn * om)
        total -= 0.5 * lg * lg
    return total


def hzn_antisym(x, u, v, cfg: QuadratureConfig | None = None) -> complex:
    """F(x;u,v) + log(1-u) log(1-v) / 2, antisymmetric under (x,u,v) -> (1/x,v,u)."""
    u = _complex(u, "u")
    v = _complex(v, "v")
    if u == 1 or v == 1:
        raise DomainError("u = 1 or v = 1 makes the log factor infinite")
    return hzn_eval(x, u, v, cfg) + 0.5 * plog(1 - u) * plog(1 - v)


def log_kernel_integral(alpha, beta, cfg: QuadratureConfig | None = None) -> tuple[complex, complex]:
    """int_0^1 log(1 - alpha t) / (t (1 - beta t)) dt: (dilog closed form, quadrature)."""
    alpha = _check_disk("alpha", alpha, True)
    beta = _check_disk("beta", beta, False)
    closed = dilog(beta / (beta - 1)) - dilog((alpha - beta) / (1 - beta))

    def f(t, w):
        num = np.where(t < 0.5, kernels.clog1p_np(-alpha * t),
                       kernels.clog_np((1 - alpha) + alpha * w))
        den = t * np.where(t < 0.5, 1 - beta * t, (1 - beta) + beta * w)
        return num / den

    quad = integrate_01(f, cfg, pass_complement=True).require("log-kernel integral")
    return closed, quad
