"""Registry of numerically checkable identities and a seeded runner.

Each identity has a sampler that draws parameters satisfying its hypotheses
(returning ``None`` to reject a draw) and an evaluator returning ``(lhs, rhs)``.
Limit identities return a :class:`~hznlib.classic.LimitReport` instead.
"""
from __future__ import annotations

import hashlib
import json
import math
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

import numpy as np

from . import classic as C
from .constants import LOG2
from .errors import DomainError, HznError
from .hzn import (
    HznPoint,
    hzn_antisym,
    hzn_at_n,
    hzn_eval,
    hzn_integral,
    hzn_inv_n,
    hzn_rational,
    hzn_series,
    log_kernel_integral,
)
from .numkernel import dilog, plog, proot, roots_of_unity
from .slash import GENERATORS, act_point, slash

PI2 = math.pi ** 2
MARGIN = 1e-3
CUT_EPS = 1e-8
POLE_MARGIN = 0.02
DEFAULT_TOL = 1e-9
MAX_ATTEMPTS_PER_SAMPLE = 200
LIMIT_MIN_DECAY = 5.0

Params = dict


@dataclass(frozen=True)
class Identity:
    id: str
    name: str
    anchor: str
    sample: Callable[[np.random.Generator], Params | None]
    evaluate: Callable[[Params], object]
    kind: str = "exact"
    tol: float = DEFAULT_TOL
    corners: tuple = ()


REGISTRY: dict[str, Identity] = {}


def register(**kw) -> Callable:
    def deco(fn):
        ident = Identity(evaluate=fn, **kw)
        if ident.id in REGISTRY:
            raise ValueError(f"duplicate identity id {ident.id}")
        REGISTRY[ident.id] = ident
        return fn
    return deco


# ---------------------------------------------------------------------------
# sampling helpers

def _rx(rng, lo=0.2, hi=4.0, im=1.5, p_real=0.25) -> complex:
    re = rng.uniform(lo, hi)
    if rng.random() < p_real:
        return complex(re, 0.0)
    return complex(re, rng.uniform(-im, im))


def _ok(z: complex) -> bool:
    return abs(z) >= MARGIN and abs(z - 1) >= MARGIN


def _disk(rng, rmax=1.0, p_circle=0.25) -> complex | None:
    th = rng.uniform(-math.pi, math.pi)
    r = rmax if rng.random() < p_circle else rmax * math.sqrt(rng.random())
    z = r * complex(math.cos(th), math.sin(th))
    return z if _ok(z) else None


def _circle(rng) -> complex | None:
    th = rng.uniform(-math.pi, math.pi)
    z = complex(math.cos(th), math.sin(th))
    return z if _ok(z) else None


def _away_from_ray(z: complex, start: float) -> bool:
    """Distance from z to [start, inf) is at least MARGIN."""
    if z.real >= start:
        return abs(z.imag) >= MARGIN
    return abs(z - start) >= MARGIN


def _cut_safe(*zs) -> bool:
    return all(not (z.real > 1 and abs(z.imag) < CUT_EPS) for z in zs)


def _points_ok(*triples) -> bool:
    for x, u, v in triples:
        try:
            dc = HznPoint(x, u, v).classify()
        except DomainError:
            return False
        if not (dc.integral_valid or dc.series_valid):
            return False
        if not (_away_from_ray(complex(u), 1.0) and _away_from_ray(complex(v), 1.0)):
            return False
    return True


def _choice(rng, seq):
    return seq[int(rng.integers(len(seq)))]


# ---------------------------------------------------------------------------
# dilogarithm

def _z_plane(rng) -> Params | None:
    z = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
    return {"z": z} if _away_from_ray(z, 1.0) and abs(z) > MARGIN else None


@register(id="dilog_reflection", name="dilogarithm reflection in z/(z-1)",
          anchor="Li2(z) + Li2(z/(z-1)) = -1/2 log^2(1-z), z off [1,inf)",
          sample=_z_plane, tol=1e-12, corners=({"z": -1 + 0j}, {"z": 0.5j}))
def _dilog_reflection(p):
    z = p["z"]
    lg = plog(1 - z)
    return dilog(z) + dilog(z / (z - 1)), -0.5 * lg * lg


def _z_strip(rng) -> Params | None:
    z = complex(rng.uniform(MARGIN, 1 - MARGIN), rng.uniform(-3, 3))
    return {"z": z}


@register(id="dilog_euler", name="Euler reflection",
          anchor="Li2(z) + Li2(1-z) = pi^2/6 - log(z) log(1-z), 0 < Re z < 1",
          sample=_z_strip, tol=1e-12, corners=({"z": 0.5 + 0j},))
def _dilog_euler(p):
    z = p["z"]
    return dilog(z) + dilog(1 - z), PI2 / 6 - plog(z) * plog(1 - z)


def _z_left(rng) -> Params | None:
    z = complex(rng.uniform(-4, -MARGIN), rng.uniform(-4, 4))
    return {"z": z}


@register(id="dilog_inversion", name="inversion through 1/(1-z)",
          anchor="Li2(z) - Li2(1/(1-z)) - 1/2 log(1-z) log((1-z)/z^2) + pi^2/6 = 0, Re z < 0",
          sample=_z_left, tol=1e-12, corners=({"z": -1 + 0j}, {"z": -2 + 1j}))
def _dilog_inversion(p):
    z = p["z"]
    return dilog(z) - dilog(1 / (1 - z)) - 0.5 * plog(1 - z) * plog((1 - z) / (z * z)) + PI2 / 6, 0.0


# ---------------------------------------------------------------------------
# functional equations of F(x; u, v)

def _x_uv_disk(rng) -> Params | None:
    u, v = _disk(rng), _disk(rng)
    if u is None or v is None:
        return None
    return {"x": _rx(rng), "u": u, "v": v}


@register(id="two_term_fe", name="two-term functional equation",
          anchor="F(x;u,v) + F(1/x;v,u) = -log(1-u) log(1-v), u,v in closed unit disk minus {0,1}",
          sample=_x_uv_disk,
          corners=({"x": 1 + 0j, "u": -1 + 0j, "v": -1 + 0j}, {"x": 2 + 0j, "u": 1j, "v": -1j},
                   {"x": 0.5 + 2j, "u": 0.5 + 0j, "v": -0.3 + 0.2j}))
def _two_term(p):
    x, u, v = p["x"], p["u"], p["v"]
    return hzn_eval(x, u, v) + hzn_eval(1 / x, v, u), -plog(1 - u) * plog(1 - v)


@register(id="hzn_antisymmetry", name="antisymmetry of the log-shifted function",
          anchor="G(x;u,v) + G(1/x;v,u) = 0 with G = F + 1/2 log(1-u) log(1-v)",
          sample=_x_uv_disk, corners=({"x": 2 + 0j, "u": -0.5 + 0j, "v": 1 / 3 + 0j},))
def _antisym(p):
    x, u, v = p["x"], p["u"], p["v"]
    return hzn_antisym(x, u, v) + hzn_antisym(1 / x, v, u), 0.0


def _sqrt_terms(u, v):
    r = proot(u * v, 2)
    return [(u + s * r) / (u - 1) for s in (-1, 1)], [(v + s * r) / (v - 1) for s in (-1, 1)]


def _three_term_sample(rng) -> Params | None:
    u, v = _disk(rng), _disk(rng)
    if u is None or v is None or not _ok(u * v):
        return None
    a, b = _sqrt_terms(u, v)
    if not _cut_safe(*a, *b, (u - v) / (1 - v)):
        return None
    return {"x": _rx(rng), "u": u, "v": v}


def three_term_points(x, u, v) -> list[tuple[complex, complex, complex]]:
    """Arguments of the three-term equation, written out as (x,u,v), (x+1,uv,v), (x/(x+1),u,uv)."""
    x, u, v = complex(x), complex(u), complex(v)
    return [(x, u, v), (x + 1, u * v, v), (x / (x + 1), u, u * v)]


def six_term_points(x, u, v) -> list[tuple[complex, complex, complex]]:
    """Three-term arguments at (u, v) followed by those at (1/u, 1/v)."""
    return three_term_points(x, u, v) + three_term_points(x, 1 / complex(u), 1 / complex(v))


def _three_term_lhs(x, u, v):
    (p0, p1, p2) = three_term_points(x, u, v)
    return hzn_eval(*p0) - hzn_eval(*p1) - hzn_eval(*p2)


@register(id="three_term_fe", name="three-term functional equation (dilogarithm form)",
          anchor="F(x;u,v) - F(x+1;uv,v) - F(x/(x+1);u,uv) = log(1-u)log(1-uv) + Li2(u) - Li2(v/(v-1)) "
                 "+ 2Li2(u/(u-1)) - Li2((u-v)/(1-v)) - (1/(x+1)-1/2)Li2(uv) "
                 "- sum_{s=+-1} [Li2((u+s sqrt(uv))/(u-1)) - Li2((v+s sqrt(uv))/(v-1))], u,v,uv in D'",
          sample=_three_term_sample, tol=1e-8,
          corners=({"x": 1 + 0j, "u": 0.5 + 0j, "v": -0.5 + 0j}, {"x": 2 + 1j, "u": 1j, "v": -1 + 0j}))
def _three_term(p):
    x, u, v = p["x"], p["u"], p["v"]
    a, b = _sqrt_terms(u, v)
    rhs = (plog(1 - u) * plog(1 - u * v) + dilog(u) - dilog(v / (v - 1)) + 2 * dilog(u / (u - 1))
           - dilog((u - v) / (1 - v)) - (1 / (x + 1) - 0.5) * dilog(u * v)
           - sum(dilog(za) - dilog(zb) for za, zb in zip(a, b)))
    return _three_term_lhs(x, u, v), rhs


def _six_term_args(u, v):
    r = proot(u * v, 2)
    ruv = proot(u / v, 2)
    rvu = proot(v / u, 2)
    out = []
    for s in (-1, 1):
        out.append(((u + s * r) / (u - 1), (v + s * r) / (v - 1),
                    (1 + s * ruv) / (1 - u), (1 + s * rvu) / (1 - v)))
    return out


def _six_term_sample(rng) -> Params | None:
    u, v = _circle(rng), _circle(rng)
    if u is None or v is None or not _ok(u * v):
        return None
    flat = [z for grp in _six_term_args(u, v) for z in grp]
    if not _cut_safe(*flat, (u - v) / (1 - v), (u - v) / (u * (1 - v))):
        return None
    return {"x": _rx(rng), "u": u, "v": v}


@register(id="six_term_fe", name="six-term functional equation on the unit circle",
          anchor="sum over {I,T,T'} x {(u,v),(1/u,1/v)} of signed F values = logs, log^2(-u), "
                 "(1/(x+1)-1/2)(1/2 log^2(-uv) + pi^2/6) and Li2 terms with sqrt(uv), sqrt(u/v), sqrt(v/u); u,v in D1'",
          sample=_six_term_sample, tol=1e-8,
          corners=({"x": 1 + 0j, "u": 1j, "v": -1 + 0j}, {"x": 2 + 0.5j, "u": -1 + 0j, "v": 1j}))
def _six_term(p):
    x, u, v = p["x"], p["u"], p["v"]
    ui, vi, uvi = 1 / u, 1 / v, 1 / (u * v)
    lhs = _three_term_lhs(x, u, v) + _three_term_lhs(x, ui, vi)
    lmuv = plog(-u * v)
    lmu = plog(-u)
    rhs = (plog(1 - u) * plog(1 - u * v) + plog(1 - ui) * plog(1 - uvi)
           + 2 * plog(u / (u - 1)) * plog(1 - u) - 0.5 * lmu * lmu
           - plog(v / (v - 1)) * plog(1 - v)
           + (1 / (x + 1) - 0.5) * (0.5 * lmuv * lmuv + PI2 / 6)
           - dilog((u - v) / (1 - v)) - dilog((u - v) / (u * (1 - v))))
    for a, b, c, d in _six_term_args(u, v):
        rhs -= dilog(a) - dilog(b) + dilog(c) - dilog(d)
    return lhs, rhs


def _general_sample(rng) -> Params | None:
    u = _disk(rng, rmax=1.2, p_circle=0.2)
    v = _disk(rng)
    x = _rx(rng)
    if u is None or v is None:
        return None
    uv = u * v
    if not (_away_from_ray(uv, 1.0) and _cut_safe(uv)):
        return None
    if not _points_ok((x, u, v), (x + 1, uv, v), (x / (x + 1), u, uv), (2, uv, v), (1, u, v), (0.5, u, uv)):
        return None
    return {"x": x, "u": u, "v": v}


@register(id="general_fe", name="three-term functional equation (general parameters)",
          anchor="F(x;u,v) - F(x+1;uv,v) - F(x/(x+1);u,uv) = (1/2 - 1/(x+1))Li2(uv) - F(2;uv,v) + F(1;u,v) - F(1/2;u,uv)",
          sample=_general_sample,
          corners=({"x": 1 + 0j, "u": -1 + 0j, "v": 1j}, {"x": 0.5 + 0.5j, "u": 1.1j, "v": 0.4 + 0j}))
def _general(p):
    x, u, v = p["x"], p["u"], p["v"]
    uv = u * v
    rhs = ((0.5 - 1 / (x + 1)) * dilog(uv) - hzn_eval(2, uv, v) + hzn_eval(1, u, v)
           - hzn_eval(0.5, u, uv))
    return _three_term_lhs(x, u, v), rhs


def _dup1_sample(rng) -> Params | None:
    u, v = _disk(rng), _disk(rng)
    if u is None or v is None or not _ok(v * v) or not _ok(-u):
        return None
    return {"x": _rx(rng), "u": u, "v": v}


@register(id="duplication_u", name="duplication in u",
          anchor="F(2x;u^2,v) = F(x;u,v) + F(x;-u,v), u in D, v,v^2 in D'",
          sample=_dup1_sample, corners=({"x": 1 + 0j, "u": 1 + 0j, "v": -1 + 0j}, {"x": 1 + 0j, "u": 1j, "v": 0.5 + 0j}))
def _dup1(p):
    x, u, v = p["x"], p["u"], p["v"]
    return hzn_eval(2 * x, u * u, v), hzn_eval(x, u, v) + hzn_eval(x, -u, v)


def _dup2_sample(rng) -> Params | None:
    u, v = _disk(rng), _disk(rng)
    if u is None or v is None or not _ok(v * v) or not _ok(-v):
        return None
    return {"x": _rx(rng), "u": u, "v": v}


@register(id="duplication_v", name="duplication in v",
          anchor="F(x/2;u,v^2) = F(x;u,v) + F(x;u,-v), u in D, v,v^2 in D'",
          sample=_dup2_sample, corners=({"x": 2 + 0j, "u": 1 + 0j, "v": 1j},))
def _dup2(p):
    x, u, v = p["x"], p["u"], p["v"]
    return hzn_eval(x / 2, u, v * v), hzn_eval(x, u, v) + hzn_eval(x, u, -v)


def _series_sample(rng) -> Params | None:
    u, v = _disk(rng, 0.9, 0.2), _disk(rng, 0.9, 0.2)
    if u is None or v is None:
        return None
    return {"x": _rx(rng, 0.1, 4.0), "u": u, "v": v}


@register(id="series_integral", name="double series equals the integral",
          anchor="int_0^1 log(1-u t^x)/(1/v - t) dt = -sum_{m,n>=1} u^m v^n / (m(mx+n)), |u|,|v| < 1",
          sample=_series_sample, corners=({"x": 1 + 0j, "u": 0.5 + 0j, "v": 0.5 + 0j},))
def _series_integral(p):
    x, u, v = p["x"], p["u"], p["v"]
    return hzn_series(x, u, v), hzn_integral(x, u, v)


# ---------------------------------------------------------------------------
# rational arguments

RATIONAL_PQ = ((1, 1), (1, 2), (2, 1), (2, 3), (3, 2), (5, 3))


def _rational_sample(rng) -> Params | None:
    u, v = _disk(rng), _disk(rng)
    if u is None or v is None:
        return None
    p, q = _choice(rng, RATIONAL_PQ)
    return {"p": p, "q": q, "u": u, "v": v}


@register(id="rational_values", name="values at rational x",
          anchor="F(p/q;u,v) = (q/p)Li2(u) + sum_{a^p=1} sum_{b^q=1} [Li2(b v^(1/q)/(b v^(1/q)-1)) "
                 "- Li2((a u^(1/p) - b v^(1/q))/(1 - b v^(1/q)))]",
          sample=_rational_sample, corners=({"p": 3, "q": 2, "u": 0.5 + 0j, "v": -0.5 + 0j},
                                            {"p": 1, "q": 1, "u": 1 + 0j, "v": -1 + 0j}))
def _rational(p):
    return hzn_rational(p["p"], p["q"], p["u"], p["v"]), hzn_integral(p["p"] / p["q"], p["u"], p["v"])


def _n_uv_sample(rng) -> Params | None:
    u, v = _disk(rng), _disk(rng)
    if u is None or v is None:
        return None
    return {"n": int(rng.integers(1, 7)), "u": u, "v": v}


@register(id="value_at_n", name="values at positive integers",
          anchor="F(n;u,v) = n Li2(v/(v-1)) + Li2(u)/n - sum_j Li2((u^(1/n) e^(2 pi i j/n) - v)/(1-v))",
          sample=_n_uv_sample, corners=({"n": 2, "u": -1 + 0j, "v": -1 + 0j}, {"n": 3, "u": 0.4 + 0j, "v": 0.3j}))
def _at_n(p):
    return hzn_at_n(p["n"], p["u"], p["v"]), hzn_integral(p["n"], p["u"], p["v"])


def _n_v_sample(rng) -> Params | None:
    v = _disk(rng)
    return None if v is None else {"n": int(rng.integers(1, 7)), "v": v}


@register(id="value_at_inv_n", name="values at 1/n with u = 1",
          anchor="F(1/n;1,v) = -Li2(v)/n - 1/2 sum_j log^2(1 - v^(1/n) e^(2 pi i j/n))",
          sample=_n_v_sample, corners=({"n": 1, "v": 0.5 + 0j}, {"n": 2, "v": 0.5 + 0j}))
def _inv_n(p):
    return hzn_inv_n(p["n"], p["v"]), hzn_integral(1 / p["n"], 1, p["v"])


def _root_log_sq_sum(n: int, w: complex, sign: int = 1) -> complex:
    root = proot(w, n)
    if sign < 0:
        root = 1 / root
    return sum(plog(1 - root * om) ** 2 for om in roots_of_unity(n))


def _G(n: int, v: complex) -> complex:
    return hzn_integral(1 / n, 1, v)


ROOT_ORDERS = (1, 2, 3, 5)


def _u1_pair1_sample(rng) -> Params | None:
    v = _disk(rng)
    if v is None or v.real > 0.5 - MARGIN:
        return None
    return {"n": _choice(rng, ROOT_ORDERS), "v": v}


@register(id="u1_v_and_v_over_v_minus_1", name="u = 1 combination with v/(v-1)",
          anchor="G(v) + G(v/(v-1)) = log^2(1-v)/(2n) - 1/2 [S(v) + S(v/(v-1))], G(w) = F(1/n;1,w), "
                 "S(w) = sum_j log^2(1 - w^(1/n) e^(2 pi i j/n))",
          sample=_u1_pair1_sample, corners=({"n": 2, "v": -1 + 0j},))
def _u1_pair1(p):
    n, v = p["n"], p["v"]
    w = v / (v - 1)
    return (_G(n, v) + _G(n, w),
            plog(1 - v) ** 2 / (2 * n) - 0.5 * (_root_log_sq_sum(n, v) + _root_log_sq_sum(n, w)))


def _strip_disk_sample(rng, re_max=1.0) -> Params | None:
    v = complex(rng.uniform(MARGIN, re_max - MARGIN), rng.uniform(-0.9, 0.9))
    if abs(v) > 1 or abs(1 - v) > 1 or not _ok(v):
        return None
    return {"n": _choice(rng, ROOT_ORDERS), "v": v}


@register(id="u1_v_and_1_minus_v", name="u = 1 combination with 1-v",
          anchor="G(v) + G(1-v) = log(1-v)log(v)/n - pi^2/(6n) - 1/2 [S(v) + S(1-v)], 0 < Re v < 1",
          sample=_strip_disk_sample, corners=({"n": 3, "v": 0.5 + 0j},))
def _u1_pair2a(p):
    n, v = p["n"], p["v"]
    return (_G(n, v) + _G(n, 1 - v),
            plog(1 - v) * plog(v) / n - PI2 / (6 * n)
            - 0.5 * (_root_log_sq_sum(n, v) + _root_log_sq_sum(n, 1 - v)))


@register(id="u1_v_over_v_minus_1_and_1_minus_v", name="u = 1 combination of v/(v-1) and 1-v",
          anchor="G(v/(v-1)) - G(1-v) = pi^2/(6n) + log^2(1-v)/(2n) - log(1-v)log(v)/n "
                 "+ 1/2 [S(1-v) - S(v/(v-1))], 0 < Re v <= 1/2",
          sample=lambda rng: _strip_disk_sample(rng, 0.5), corners=({"n": 2, "v": 0.4 + 0.3j},))
def _u1_pair2b(p):
    n, v = p["n"], p["v"]
    w = v / (v - 1)
    return (_G(n, w) - _G(n, 1 - v),
            PI2 / (6 * n) + plog(1 - v) ** 2 / (2 * n) - plog(1 - v) * plog(v) / n
            + 0.5 * (_root_log_sq_sum(n, 1 - v) - _root_log_sq_sum(n, w)))


def _left_sample(rng) -> Params | None:
    v = _disk(rng)
    if v is None or v.real > -MARGIN or abs(v.imag) < MARGIN:
        return None
    return {"n": _choice(rng, ROOT_ORDERS), "v": v}


@register(id="u1_v_and_inverse_of_1_minus_v", name="u = 1 combination with 1/(1-v)",
          anchor="G(v) - G(1/(1-v)) = pi^2/(6n) - log(1-v)log((1-v)/v^2)/(2n) - 1/2 [S(v) - S^-(1-v)], "
                 "S^-(w) = sum_j log^2(1 - w^(-1/n) e^(2 pi i j/n)), Re v < 0",
          sample=_left_sample, corners=({"n": 1, "v": -0.5 + 0.5j},))
def _u1_pair3a(p):
    n, v = p["n"], p["v"]
    return (_G(n, v) - _G(n, 1 / (1 - v)),
            PI2 / (6 * n) - plog(1 - v) * plog((1 - v) / (v * v)) / (2 * n)
            - 0.5 * (_root_log_sq_sum(n, v) - _root_log_sq_sum(n, 1 - v, -1)))


def _left_sample_pole_safe(rng) -> Params | None:
    # F(1/n;1,1-v) has its pole at 1/(1-v); keep it off the integration path
    p = _left_sample(rng)
    if p is None or abs((1 / (1 - p["v"])).imag) < POLE_MARGIN:
        return None
    return p


@register(id="u1_1_minus_v_and_its_inverse", name="u = 1 combination of 1-v and 1/(1-v)",
          anchor="G(1-v) + G(1/(1-v)) = -pi^2/(3n) + log(1-v)log((1-v)/v^2)/(2n) + log(1-v)log(v)/n "
                 "- 1/2 [S(1-v) + S^-(1-v)], Re v < 0",
          sample=_left_sample_pole_safe, corners=({"n": 2, "v": -0.5 + 0.5j},))
def _u1_pair3b(p):
    n, v = p["n"], p["v"]
    return (_G(n, 1 - v) + _G(n, 1 / (1 - v)),
            -PI2 / (3 * n) + plog(1 - v) * plog((1 - v) / (v * v)) / (2 * n) + plog(1 - v) * plog(v) / n
            - 0.5 * (_root_log_sq_sum(n, 1 - v) + _root_log_sq_sum(n, 1 - v, -1)))


@register(id="elementary_integral", name="int_0^1 log(1 - t^(1/n))/(2 - t) dt",
          anchor="F(1/n;1,1/2) = log^2(2)/(2n) - pi^2/(12n) - 1/2 sum_j log^2(1 - 2^(-1/n) e^(2 pi i j/n))",
          sample=lambda rng: {"n": _choice(rng, ROOT_ORDERS)}, corners=({"n": 1},))
def _elementary(p):
    n = p["n"]
    closed = LOG2 ** 2 / (2 * n) - PI2 / (12 * n) - 0.5 * _root_log_sq_sum(n, 0.5 + 0j)
    return _G(n, 0.5 + 0j), closed


def _log_kernel_sample(rng) -> Params | None:
    a, b = _disk(rng), _disk(rng)
    return None if a is None or b is None else {"alpha": a, "beta": b}


@register(id="log_kernel_integral", name="log integral against 1/(t(1 - beta t))",
          anchor="int_0^1 log(1 - a t)/(t(1 - b t)) dt = Li2(b/(b-1)) - Li2((a-b)/(1-b)), a,b in D'",
          sample=_log_kernel_sample, corners=({"alpha": 1 + 0j, "beta": 0.5 + 0j}, {"alpha": -1 + 0j, "beta": 0.5j}))
def _log_kernel(p):
    return log_kernel_integral(p["alpha"], p["beta"])


def _golden_sample(rng) -> Params:
    return {"which": int(rng.integers(3))}


_GOLDEN = (
    ((1, 1, -1), PI2 / 12 - 0.5 * LOG2 ** 2),
    ((2, -1, -1), (PI2 - 36 * LOG2 ** 2) / 48),
    ((0.5, 1, -1), 5 * PI2 / 48 - 0.25 * LOG2 ** 2),
)


@register(id="hzn_constants", name="closed-form constants",
          anchor="F(1;1,-1) = pi^2/12 - log^2(2)/2, F(2;-1,-1) = (pi^2 - 36 log^2 2)/48, F(1/2;1,-1) = 5pi^2/48 - log^2(2)/4",
          sample=_golden_sample, tol=1e-10, corners=({"which": 0}, {"which": 1}, {"which": 2}))
def _golden(p):
    args, val = _GOLDEN[p["which"]]
    return hzn_integral(*args), val


# ---------------------------------------------------------------------------
# J, T and F

def _xr_sample(rng) -> Params:
    return {"x": _rx(rng, 0.1, 5.0)}


@register(id="j_fe", name="J reciprocity", anchor="J(x) + J(1/x) = log^2(2)",
          sample=_xr_sample, corners=({"x": complex(math.pi)},))
def _j_fe(p):
    x = p["x"]
    return C.j_integral(x) + C.j_integral(1 / x), LOG2 ** 2


@register(id="j_normalized_odd", name="normalised J is odd under x -> 1/x",
          anchor="JJ(x) + JJ(1/x) = 0, JJ(x) = J(x) - log^2(2)/2 + pi^2/24 (x - 1/x)",
          sample=_xr_sample, corners=({"x": complex(math.e)},))
def _j_normalized(p):
    return C.j_normalized(p["x"]) + C.j_normalized(1 / p["x"]), 0.0


@register(id="j_as_hzn", name="J as a special case", anchor="J(x) = -F(x;-1,-1)",
          sample=_xr_sample, corners=({"x": 2 + 0j},))
def _j_hzn(p):
    return C.j_integral(p["x"]), C.j_eval(p["x"])


@register(id="j_herglotz", name="J through the Herglotz function",
          anchor="J(x) = F(2x) - 2F(x) + F(x/2) + pi^2/(12x)",
          sample=_xr_sample, tol=1e-8, corners=({"x": 1 + 0j}, {"x": 2 + 0j}, {"x": 0.3 + 0j}))
def _j_herglotz(p):
    return C.j_herglotz_residual(p["x"]), 0.0


def _x_gt1_sample(rng) -> Params:
    return {"x": _rx(rng, 1.2, 5.0, 1.0), "form": int(rng.integers(3))}


@register(id="j_three_term", name="three-term relations of J",
          anchor="J(x) - J(x-1) + J(x/(x-1)) in terms of F(x/2), F((x-1)/x), F((x-1)/2), Li2(1/x), Li2((x-1)/x) "
                 "and in terms of F(.;1,-1); and J(x) through F(x), F((x-1)/2), F((x-1)/(2x)), Re x > 1",
          sample=_x_gt1_sample, tol=1e-8,
          corners=tuple({"x": x, "form": f} for x in (2 + 0j, 3.5 + 0j, 2 + 0.5j) for f in range(3)))
def _j_three(p):
    return C.j_three_term_residuals(p["x"])[p["form"]], 0.0


def _n6(rng) -> Params:
    return {"n": int(rng.integers(1, 7))}


@register(id="j_at_n", name="J at integers", anchor="J(n) = pi^2/12 (1/n - n) + n log^2(2)/2 + sum_j Li2((1 + e^(pi i (2j+1)/n))/2)",
          sample=_n6, tol=1e-8, corners=({"n": 1}, {"n": 2}))
def _j_at_n(p):
    return C.j_at_n(p["n"]), C.j_integral(p["n"])


@register(id="j_inv_n", name="J at reciprocals of integers",
          anchor="J(1/n) = pi^2/12 (n - 1/n) + (1 - n/2) log^2(2) - sum_j Li2((1 + e^(pi i (2j+1)/n))/2)",
          sample=_n6, tol=1e-8, corners=({"n": 2},))
def _j_inv_n(p):
    return C.j_inv_n(p["n"]), C.j_integral(1 / p["n"])


def _m4(rng) -> Params:
    return {"m": int(rng.integers(1, 5)), "inv": bool(rng.integers(2))}


@register(id="j_even", name="J at even integers and their reciprocals",
          anchor="J(2m) = pi^2/48 (1/m - 2m) + m log^2(2) - sum_{j<m} log sin(pi(2j+1)/(4m)) log cos(pi(2j+1)/(4m))",
          sample=_m4, tol=1e-10, corners=({"m": 1, "inv": False}, {"m": 1, "inv": True}))
def _j_even(p):
    m = p["m"]
    if p["inv"]:
        return C.j_even_inv(m), C.j_inv_n(2 * m)
    return C.j_even(m), C.j_at_n(2 * m)


@register(id="logsin_sums", name="finite log-sine sums",
          anchor="sum_{j<m} log sin(pi(2j+1)/(2m)) = (1-m) log 2; quarter-angle sin and cos sums = (1/2-m) log 2; "
                 "j-weighted sum = -(m-1)^2 log(2)/2",
          sample=lambda rng: {"m": int(rng.integers(1, 51))}, tol=1e-13, corners=({"m": 1}, {"m": 2}, {"m": 50}))
def _logsin(p):
    return C.logsin_sums(p["m"]).max_error(), 0.0


@register(id="t_fe", name="T reciprocity", anchor="T(x) + T(1/x) = pi^2/16",
          sample=_xr_sample, corners=({"x": complex(math.sqrt(2))},))
def _t_fe(p):
    x = p["x"]
    return C.t_integral(x) + C.t_integral(1 / x), PI2 / 16


@register(id="t_normalized_odd", name="normalised T is odd under x -> 1/x",
          anchor="TT(x) + TT(1/x) = 0, TT(x) = T(x) - pi^2/32",
          sample=_xr_sample, corners=({"x": 3 + 0j},))
def _t_normalized(p):
    return C.t_normalized(p["x"]) + C.t_normalized(1 / p["x"]), 0.0


@register(id="t_representation", name="T from four values of F(x;u,v)",
          anchor="T(x) = 1/4 [F(x;i,i) + F(x;-i,-i) - F(x;i,-i) - F(x;-i,i)]",
          sample=_xr_sample, corners=tuple({"x": complex(x)} for x in (1, 2, 0.5, math.pi)))
def _t_rep(p):
    return C.t_from_hzn(p["x"]), C.t_integral(p["x"])


@register(id="t_j_relation", name="T, J and F(x; +-i, -+i)",
          anchor="4T(x) + J(x) + 2F(x;i,-i) + 2F(x;-i,i) = 0",
          sample=_xr_sample, corners=({"x": 1.7 + 0j},))
def _tj(p):
    return C.t_j_relation_residual(p["x"]), 0.0


@register(id="t_at_n", name="T at integers and their reciprocals",
          anchor="T(n) = 1/4 sum_j [Li2(p(1-a_j)) + Li2(q(1+b_j)) - Li2(q(1+a_j)) - Li2(p(1-b_j))], "
                 "p = (1+i)/2, q = (1-i)/2, a_j = e^(pi i(4j+n+1)/(2n)), b_j = e^(pi i(4j+n-1)/(2n)); T(1/n) = pi^2/16 - T(n)",
          sample=lambda rng: {"n": int(rng.integers(1, 7)), "inv": bool(rng.integers(2))}, tol=1e-8,
          corners=({"n": 1, "inv": False}, {"n": 2, "inv": False}, {"n": 3, "inv": True}))
def _t_at_n(p):
    n = p["n"]
    if p["inv"]:
        return C.t_inv_n(n), C.t_integral(1 / n)
    return C.t_at_n(n), C.t_integral(n)


def _herglotz_x(rng) -> Params:
    if rng.random() < 0.2:
        re = rng.uniform(-2.0, 0.0)
        im = rng.uniform(0.3, 2.0) * (1 if rng.random() < 0.5 else -1)
        return {"x": complex(re, im)}
    return {"x": _rx(rng, 0.2, 5.0, 1.0)}


@register(id="herglotz_two_term", name="two-term equation of the Herglotz function",
          anchor="F(x) + F(1/x) = -2(gamma^2/2 + pi^2/12 + gamma_1) + log^2(x)/2 - pi^2 (x-1)^2/(6x)",
          sample=_herglotz_x, tol=1e-8, corners=({"x": 1 + 0j}, {"x": 3 + 0j}))
def _z2(p):
    return C.herglotz_two_term_residual(p["x"]), 0.0


@register(id="herglotz_three_term", name="three-term equation of the Herglotz function",
          anchor="F(x) - F(x+1) - F(x/(x+1)) = gamma^2/2 + pi^2/12 + gamma_1 + Li2(1/(1+x))",
          sample=_herglotz_x, tol=1e-8, corners=({"x": 1 + 0j},))
def _z3(p):
    return C.herglotz_three_term_residual(p["x"]), 0.0


@register(id="herglotz_series_integral", name="Herglotz series equals the integral",
          anchor="int_0^1 (1/(1-t) + 1/log t) log(1-t^x) dt/t = sum_n (psi(nx) - log(nx))/n",
          sample=lambda rng: {"x": _rx(rng, 0.1, 5.0, 3.0)}, corners=({"x": 1 + 0j}, {"x": 2 + 1j}))
def _her_si(p):
    return C.herglotz_integral(p["x"]), C.herglotz_series(p["x"])


@register(id="connection_u1_vm1", name="F(x;1,-1) through the Herglotz function",
          anchor="F(x;1,-1) = F(x/2) - F(x) + pi^2/(6x)",
          sample=_xr_sample, corners=({"x": 1 + 0j}, {"x": 2 + 0j}, {"x": 0.5 + 0j}))
def _conn2(p):
    return C.conn_u1_vm1(p["x"]), 0.0


def _limit_x(rng) -> Params:
    return {"x": _rx(rng, 0.3, 2.5, 0.7)}


@register(id="connection_limit_uv", name="boundary limit u, v -> 1",
          anchor="lim [F(x;u,v) - Li2(u)/x + log(1-u)(log(1-v) + gamma + log x) + Li_s'(u)|_{s=1}] = F(x), "
                 "taken with v -> 1 faster than u",
          sample=_limit_x, kind="limit", corners=({"x": 2 + 0j},))
def _lim1(p):
    return C.conn_limits(p["x"], which="uv")


@register(id="connection_limit_v", name="boundary limit v -> 1 at u = -1",
          anchor="lim_{v->1} [F(x;-1,v) + log(2) log(1-v)] = F(2x) - F(x) - log(2) log(2x^2)/2 - pi^2/(12x)",
          sample=_limit_x, kind="limit", corners=({"x": 1.5 + 0j},))
def _lim3(p):
    return C.conn_limits(p["x"], which="v")


# ---------------------------------------------------------------------------
# modular group

def _slash_sample(rng) -> Params | None:
    m1 = _choice(rng, "STU")
    m2 = _choice(rng, "STU")
    u, v = _circle(rng), _circle(rng)
    if u is None or v is None:
        return None
    x = _rx(rng, -3.0, 3.0, 3.0, p_real=0.0)
    g = GENERATORS[m1] @ GENERATORS[m2]
    try:
        x2, u2, v2 = act_point(g, x, u, v)
    except DomainError:
        return None
    if x2.real < 0.1 or not (_ok(u2) and _ok(v2)):
        return None
    return {"M": m1, "N": m2, "x": x, "u": u, "v": v}


@register(id="slash_composition", name="slash action composes",
          anchor="(f|M)|N = f|(MN) for f = F(x;u,v) and M, N in {S, T, U}",
          sample=_slash_sample, tol=1e-12,
          corners=({"M": "S", "N": "S", "x": 1 + 1j, "u": 1j, "v": -1j},))
def _slash(p):
    M, N = GENERATORS[p["M"]], GENERATORS[p["N"]]
    x, u, v = p["x"], p["u"], p["v"]
    return slash(slash(hzn_integral, M), N)(x, u, v), slash(hzn_integral, M @ N)(x, u, v)


# ---------------------------------------------------------------------------
# runner

@dataclass
class IdentityResult:
    id: str
    name: str
    anchor: str
    kind: str
    tol: float
    samples: int
    corner_cases: int
    rejected_samples: int
    max_abs_err: float
    mean_abs_err: float
    passed: bool
    min_decay: float | None = None
    discrepancy: dict | None = None
    worst_params: dict | None = None
    errors: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = {
            "id": self.id, "name": self.name, "anchor": self.anchor, "kind": self.kind,
            "tolerance": self.tol, "samples": self.samples, "corner_cases": self.corner_cases,
            "rejected_samples": self.rejected_samples,
            "rejection_rate": _rate(self.rejected_samples, self.samples),
            "max_abs_err": self.max_abs_err, "mean_abs_err": self.mean_abs_err, "pass": self.passed,
        }
        if self.min_decay is not None:
            d["min_decay_factor"] = self.min_decay
        if self.discrepancy is not None:
            d["discrepancy"] = self.discrepancy
        if self.worst_params is not None:
            d["worst_params"] = self.worst_params
        if self.errors:
            d["errors"] = self.errors
        return d


def _rate(rej: int, acc: int) -> float:
    return rej / (rej + acc) if rej + acc else 0.0


@dataclass
class Report:
    seed: int
    tolerance: float | None
    samples_per_identity: int
    identities: list[IdentityResult]
    tables: list[dict] = field(default_factory=list)

    @property
    def run_id(self) -> str:
        key = json.dumps([self.seed, self.tolerance, self.samples_per_identity,
                          [r.id for r in self.identities], bool(self.tables)])
        return hashlib.sha256(key.encode()).hexdigest()[:16]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.identities) and all(t.get("pass", True) for t in self.tables)

    def summary(self) -> dict:
        passed = sum(r.passed for r in self.identities)
        out = {
            "total": len(self.identities), "passed": passed, "failed": len(self.identities) - passed,
            "total_samples": sum(r.samples + r.corner_cases for r in self.identities),
        }
        if self.tables:
            tp = sum(bool(t.get("pass")) for t in self.tables)
            out["tables"] = {"total": len(self.tables), "passed": tp, "failed": len(self.tables) - tp}
        return out

    def to_dict(self, timestamp: str | None = None) -> dict:
        d = {"run_id": self.run_id}
        if timestamp is not None:
            d["timestamp"] = timestamp
        d.update({
            "seed": self.seed,
            "tolerance": self.tolerance,
            "samples_per_identity": self.samples_per_identity,
            "identities": [r.to_dict() for r in self.identities],
            "tables": self.tables,
            "summary": self.summary(),
        })
        return d


def _jsonable(params: Params) -> dict:
    out = {}
    for k, v in params.items():
        if isinstance(v, complex):
            out[k] = [v.real, v.imag]
        elif isinstance(v, (np.integer,)):
            out[k] = int(v)
        else:
            out[k] = v
    return out


def identity_rng(seed: int, ident_id: str) -> np.random.Generator:
    return np.random.default_rng([int(seed), zlib.crc32(ident_id.encode())])


def draw_samples(ident: Identity, n: int, seed: int) -> tuple[list[Params], int]:
    rng = identity_rng(seed, ident.id)
    out, rejected = [], 0
    while len(out) < n:
        p = ident.sample(rng)
        if p is None:
            rejected += 1
            if rejected > MAX_ATTEMPTS_PER_SAMPLE * max(n, 1):
                raise HznError(f"sampler for {ident.id} rejects almost everything")
            continue
        out.append(p)
    return out, rejected


def _fit_discrepancy(pairs: list[tuple[complex, complex]], tol: float) -> dict:
    lhs = np.array([a for a, _ in pairs], dtype=complex)
    rhs = np.array([b for _, b in pairs], dtype=complex)
    res = lhs - rhs
    if np.all(np.abs(lhs + rhs) <= tol):
        return {"kind": "sign_flip"}
    mean = res.mean()
    if len(res) > 1 and np.max(np.abs(res - mean)) <= max(tol, 1e-6 * abs(mean)):
        return {"kind": "constant_offset", "value": [float(mean.real), float(mean.imag)]}
    return {"kind": "unstructured"}


@dataclass(frozen=True)
class CheckResult:
    identity_id: str
    params: dict
    lhs: complex
    rhs: complex
    abs_err: float
    rel_err: float
    passed: bool


def check(ident: Identity, params: Params, tol: float | None = None) -> CheckResult:
    """Evaluate one exact identity at one parameter tuple; pass iff abs or rel error <= tol."""
    tol = ident.tol if tol is None else tol
    lhs, rhs = (complex(z) for z in ident.evaluate(params))
    abs_err = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_err = abs_err / scale if scale > 0 else (0.0 if abs_err == 0 else math.inf)
    ok = math.isfinite(abs_err) and (abs_err <= tol or rel_err <= tol)
    return CheckResult(ident.id, params, lhs, rhs, abs_err, rel_err, ok)


def _evaluate_case(ident: Identity, p: Params, tol: float):
    # evaluation failures are recorded, never raised
    try:
        if ident.kind == "limit":
            return ident.evaluate(p), None
        return check(ident, p, tol), None
    except (HznError, ArithmeticError, ValueError) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def run_identity(ident: Identity, samples: int, seed: int, tol: float | None = None,
                 workers: int = 1) -> IdentityResult:
    if samples < 1:
        raise DomainError("samples per identity must be >= 1")
    tol = ident.tol if tol is None else tol
    params, rejected = draw_samples(ident, samples, seed)
    cases = list(params) + [dict(c) for c in ident.corners]

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            outcomes = list(ex.map(lambda p: _evaluate_case(ident, p, tol), cases))
    else:
        outcomes = [_evaluate_case(ident, p, tol) for p in cases]

    errs, pairs, decays, messages = [], [], [], []
    all_ok = True
    worst, worst_err = None, -1.0
    for p, (out, msg) in zip(cases, outcomes):
        if msg is not None:
            messages.append(msg)
            err = math.inf
            all_ok = False
        elif ident.kind == "limit":
            err = abs(out.residuals[-1])
            decays.append(min(out.decay))
        else:
            err = out.abs_err
            all_ok &= out.passed
            pairs.append((out.lhs, out.rhs))
        errs.append(err)
        if err > worst_err:
            worst, worst_err = p, err

    finite = [e for e in errs if math.isfinite(e)]
    if ident.kind == "limit":
        min_decay = min(decays) if decays else 0.0
        passed = all_ok and min_decay >= LIMIT_MIN_DECAY
    else:
        min_decay = None
        passed = all_ok
    disc = None
    if not passed and ident.kind == "exact" and pairs:
        disc = _fit_discrepancy(pairs, tol)
    return IdentityResult(
        id=ident.id, name=ident.name, anchor=ident.anchor, kind=ident.kind, tol=tol,
        samples=len(params), corner_cases=len(ident.corners), rejected_samples=rejected,
        max_abs_err=max(errs) if errs else 0.0,
        mean_abs_err=float(np.mean(finite)) if finite else math.inf,
        passed=passed, min_decay=min_decay, discrepancy=disc,
        worst_params=_jsonable(worst) if worst is not None else None,
        errors=messages[:5],
    )


def run_all(seed: int = 0, samples: int = 20, tol: float | None = None,
            ids: Iterable[str] | None = None, workers: int = 1) -> Report:
    """Run the selected identities (all by default) with per-identity seeded samplers."""
    if ids is None:
        selected = list(REGISTRY.values())
    else:
        ids = list(ids)
        unknown = [i for i in ids if i not in REGISTRY]
        if unknown:
            raise DomainError(f"unknown identity id(s): {', '.join(unknown)}")
        selected = [REGISTRY[i] for i in dict.fromkeys(ids)]
    selected.sort(key=lambda ident: ident.id)
    results = [run_identity(ident, samples, seed, tol, workers) for ident in selected]
    return Report(seed=seed, tolerance=tol, samples_per_identity=samples, identities=results)
