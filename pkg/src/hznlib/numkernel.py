"""Scalar special-function layer: principal logs and roots, Li2, psi, Li'_s at s = 1."""
from __future__ import annotations

import cmath
import math
from fractions import Fraction

import numpy as np

from . import kernels
from .constants import (
    CONSTANTS,
    EULER_GAMMA,
    LOG2,
    STIELTJES_GAMMA1,
    ZETA2,
    Constants,
    bernoulli_even,
    hurwitz_tail,
    zeta_odd,
)
from .errors import CutError, DomainError

__all__ = [
    "CONSTANTS", "Constants", "EULER_GAMMA", "LOG2", "STIELTJES_GAMMA1", "ZETA2",
    "bernoulli_even", "hurwitz_tail", "zeta_odd",
    "plog", "proot", "roots_of_unity", "dilog", "dilog_array", "digamma",
    "digamma_minus_log", "polylog_ds_at1", "stieltjes_gamma1",
]

_QUARTER = (1 + 0j, 1j, -1 + 0j, -1j)


def _as_complex(z) -> complex:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite argument {z!r}")
    return z


def plog(z) -> complex:
    """Principal logarithm, Im in (-pi, pi]."""
    z = _as_complex(z)
    if z == 0:
        raise DomainError("log(0)")
    return kernels.clog(z)


def proot(z, n: int) -> complex:
    """Principal n-th root exp(plog(z)/n)."""
    if int(n) != n or n < 1:
        raise DomainError(f"root order must be a positive integer, got {n!r}")
    z = _as_complex(z)
    if z == 0:
        raise DomainError("root of 0")
    if n == 1:
        return z
    return cmath.exp(plog(z) / n)


def unit_root(num: int, den: int) -> complex:
    """exp(2 pi i num/den), exact at multiples of a quarter turn."""
    frac = Fraction(num, den) % 1
    q = frac * 4
    if q.denominator == 1:
        return _QUARTER[int(q)]
    ang = 2 * math.pi * float(frac)
    return complex(math.cos(ang), math.sin(ang))


def roots_of_unity(n: int) -> list[complex]:
    """[exp(2 pi i j/n) for j = 1..n]."""
    if int(n) != n or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    return [unit_root(j, n) for j in range(1, n + 1)]


def dilog(z) -> complex:
    """Principal-branch dilogarithm Li2(z), cut along (1, inf)."""
    z = _as_complex(z)
    if z.imag == 0.0 and z.real > 1.0:
        raise CutError(f"Li2 argument {z.real} lies on the cut (1, inf)")
    return complex(kernels.dilog_scalar(z))


def dilog_array(z) -> np.ndarray:
    """Vectorised Li2; cut points give nan."""
    z = np.ascontiguousarray(np.atleast_1d(z), dtype=np.complex128)
    return kernels.dilog_array(z.ravel()).reshape(z.shape)


def digamma(z) -> complex:
    z = _as_complex(z)
    if z.imag == 0.0 and z.real <= 0 and z.real == math.floor(z.real):
        raise DomainError(f"digamma pole at {z.real}")
    return complex(kernels.digamma_scalar(z))


def digamma_minus_log(z) -> complex:
    """psi(z) - log z, accurate for large |z|."""
    z = _as_complex(z)
    if z.imag == 0.0 and z.real <= 0:
        raise DomainError("psi(z) - log z needs z off (-inf, 0]")
    return complex(kernels.digamma_minus_log_scalar(z))


def polylog_ds_at1(u, tol: float = 1e-16) -> complex:
    """d/ds Li_s(u) at s = 1, i.e. -sum_{n>=2} u^n log(n)/n, for |u| < 1."""
    u = _as_complex(u)
    if abs(u) >= 1:
        raise DomainError("polylog_ds_at1 needs |u| < 1")
    return complex(kernels.polylog_ds_sum(u, tol))


def stieltjes_gamma1() -> float:
    return STIELTJES_GAMMA1
