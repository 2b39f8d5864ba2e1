"""Integer 2x2 matrices acting on (x, (u, v)) by Moebius maps and monomials."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import DomainError


@dataclass(frozen=True)
class IntMatrix2:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        for name in "abcd":
            val = getattr(self, name)
            if int(val) != val:
                raise DomainError(f"matrix entry {name} must be an integer")
            object.__setattr__(self, name, int(val))
        if self.det == 0:
            raise DomainError("matrix must be invertible")

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def __matmul__(self, other: "IntMatrix2") -> "IntMatrix2":
        return IntMatrix2(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                          self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def __neg__(self) -> "IntMatrix2":
        return IntMatrix2(-self.a, -self.b, -self.c, -self.d)

    def __pow__(self, k: int) -> "IntMatrix2":
        if k < 0:
            raise ValueError("only non-negative powers")
        out = IDENTITY
        for _ in range(k):
            out = out @ self
        return out

    def projectively_equal(self, other: "IntMatrix2") -> bool:
        return self == other or self == -other


IDENTITY = IntMatrix2(1, 0, 0, 1)
S = IntMatrix2(0, -1, 1, 0)
U = IntMatrix2(1, -1, 1, 0)
T = IntMatrix2(1, 1, 0, 1)
T_PRIME = IntMatrix2(1, 0, 1, 1)
GENERATORS = {"S": S, "T": T, "U": U}


def ipow(z: complex, k: int) -> complex:
    """z**k for integer k by repeated squaring; negative k inverts first."""
    if k < 0:
        if z == 0:
            raise DomainError("0 to a negative power")
        z, k = 1 / z, -k
    out = 1 + 0j
    base = complex(z)
    while k:
        if k & 1:
            out *= base
        base *= base
        k >>= 1
    return out


def act_point(g: IntMatrix2, x, u, v) -> tuple[complex, complex, complex]:
    """g o [x, (u, v)] = [(ax+b)/(cx+d), (u^a v^b, u^c v^d)]."""
    x = complex(x)
    den = g.c * x + g.d
    if den == 0:
        raise DomainError("Moebius image is infinite")
    return ((g.a * x + g.b) / den,
            ipow(u, g.a) * ipow(v, g.b),
            ipow(u, g.c) * ipow(v, g.d))


def slash(f: Callable, g: IntMatrix2) -> Callable:
    """(f|g)(x, u, v) = f(g o (x, u, v))."""
    def sl(x, u, v):
        return f(*act_point(g, x, u, v))
    return sl
