"""Mathematical constants, even Bernoulli numbers and Hurwitz zeta tails."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

EULER_GAMMA = 0.57721566490153286060651209008240243
# first Stieltjes constant
STIELTJES_GAMMA1 = -0.07281584548367672486058637587490131914
LOG2 = 0.69314718055994530941723212145817657
ZETA2 = math.pi ** 2 / 6


@lru_cache(maxsize=None)
def bernoulli_fractions(n: int) -> tuple[Fraction, ...]:
    """Exact B_0..B_n (with B_1 = -1/2) via the Akiyama-Tanigawa algorithm."""
    out = []
    a = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    if n >= 1:
        out[1] = -out[1]
    return tuple(out)


def bernoulli_even(k: int) -> np.ndarray:
    """Float array [B_2, B_4, ..., B_2k]."""
    b = bernoulli_fractions(2 * k)
    return np.array([float(b[2 * j]) for j in range(1, k + 1)])


def dilog_coefficients(k: int) -> np.ndarray:
    """c_j = B_2j / (2j+1)! for j = 1..k (series of Li2 in u = -log(1-z))."""
    b = bernoulli_fractions(2 * k)
    return np.array([float(b[2 * j] / math.factorial(2 * j + 1)) for j in range(1, k + 1)])


def hurwitz_tail(s: float, a: int, terms: int = 8) -> float:
    """sum_{n >= a} n^-s for real s > 1 and integer a >= 1, by Euler-Maclaurin.

    Accurate to double precision once a >= 10.
    """
    if s <= 1:
        raise ValueError("hurwitz_tail needs s > 1")
    if a < 10:
        head = sum(float(n) ** -s for n in range(a, 10))
        return head + hurwitz_tail(s, 10, terms)
    b = bernoulli_fractions(2 * terms)
    total = a ** (1 - s) / (s - 1) + 0.5 * a ** -s
    rising = s  # s (s+1) ... (s+2j-2)
    for j in range(1, terms + 1):
        total += float(b[2 * j]) / math.factorial(2 * j) * rising * a ** (-s - 2 * j + 1)
        rising *= (s + 2 * j - 1) * (s + 2 * j)
    return total


def zeta(s: float) -> float:
    return hurwitz_tail(s, 1)


def zeta_odd(k: int) -> float:
    """zeta(2k+1)."""
    return zeta(2 * k + 1)


@dataclass(frozen=True)
class Constants:
    pi: float = math.pi
    zeta2: float = ZETA2
    log2: float = LOG2
    euler_gamma: float = EULER_GAMMA
    stieltjes_gamma1: float = STIELTJES_GAMMA1

    @staticmethod
    def bernoulli_even(k: int) -> np.ndarray:
        return bernoulli_even(k)

    @staticmethod
    def zeta_odd(k: int) -> float:
        return zeta_odd(k)


CONSTANTS = Constants()
