import cmath
import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from hznlib import CutError, DomainError
from hznlib.constants import (
    EULER_GAMMA, LOG2, STIELTJES_GAMMA1, ZETA2, bernoulli_fractions, dilog_coefficients,
    hurwitz_tail, zeta, zeta_odd,
)
from hznlib.numkernel import (
    digamma, digamma_minus_log, dilog, dilog_array, plog, polylog_ds_at1, proot,
    roots_of_unity, unit_root,
)

PI2 = math.pi ** 2

# mpmath.polylog(2, z) at 30 digits
DILOG_ORACLE = [
    (0.3 + 0.4j, complex(0.26659686674274041589, 0.46136289181910899428)),
    (-2.5 + 1j, complex(-1.7409767233914817562, 0.49524978889226031961)),
    (1.2 + 0.01j, complex(2.1032541966191404382, 0.58629618860201250529)),
    (0.9 - 0.9j, complex(0.61151020731241485336, -1.3006011903521028352)),
    (5 + 5j, complex(-0.88184952521544037521, 4.7139639093533477317)),
    (-10 - 0.1j, complex(-4.1983523250135202034, -0.023978594213996471751)),
    (1 + 1j, complex(0.61685027506808491368, 1.4603621167531195477)),
    (-0.99 + 0j, complex(-0.81552588147733974292, 0.0)),
    (1.5 - 1e-12j, complex(2.3743952702703858056, -1.2738062049200626291)),
]

# mpmath.digamma at 30 digits
DIGAMMA_ORACLE = [
    (0.1 + 0j, complex(-10.423754940411076232, 0.0)),
    (3.7 - 2j, complex(1.329330525014791422, -0.55599769248211786935)),
    (-2.5 + 0.5j, complex(1.1165080219699073014, 2.7175825969005915157)),
    (25 + 30j, complex(3.6566879738403827675, 0.8859478664343522303)),
    (0.5 + 0.001j, complex(-1.9635016116552459946, 0.0049347859657602661019)),
    (-7.3 + 0j, complex(4.3373073055100501422, 0.0)),
    (0.001 + 0.001j, complex(-500.57557073299517705, 500.00164253211767391)),
]


def test_golden_dilog_values():
    assert abs(dilog(1) - PI2 / 6) < 1e-13
    assert abs(dilog(-1) + PI2 / 12) < 1e-13
    assert abs(dilog(0.5) - (PI2 / 12 - 0.5 * LOG2 ** 2)) < 1e-13
    assert dilog(0) == 0


@pytest.mark.parametrize("z, expected", DILOG_ORACLE)
def test_dilog_matches_oracle(z, expected):
    assert abs(dilog(z) - expected) <= 1e-14 * max(1.0, abs(expected))


def test_dilog_cut_and_limits():
    with pytest.raises(CutError):
        dilog(2.0)
    above, below = dilog(2 + 1e-14j), dilog(2 - 1e-14j)
    # jump across the cut is 2 pi i log 2
    assert abs((above - below) - 2j * math.pi * LOG2) < 1e-12
    with pytest.raises(CutError):
        dilog(complex(2.0, -0.0))


def test_dilog_array_nan_on_cut_and_agrees():
    z = np.array([0.3 + 0.1j, 2.0, -4 + 0j, 1.0, 3 - 2j])
    out = dilog_array(z)
    assert np.isnan(out[1])
    for k in (0, 2, 3, 4):
        assert abs(out[k] - dilog(z[k])) < 1e-15 * max(1, abs(out[k]))


@given(st.complex_numbers(max_magnitude=30, allow_nan=False, allow_infinity=False))
def test_dilog_conjugate_symmetry(z):
    if z.imag == 0 and z.real > 1:
        return
    assert abs(dilog(z.conjugate()) - dilog(z).conjugate()) <= 1e-14 * max(1, abs(dilog(z)))


def test_dilog_against_mpmath_random():
    rng = np.random.default_rng(11)
    for _ in range(200):
        z = complex(rng.uniform(-6, 6), rng.uniform(-6, 6))
        ref = complex(mp.polylog(2, z))
        assert abs(dilog(z) - ref) <= 2e-15 * max(1, abs(ref))


@pytest.mark.parametrize("z, expected", DIGAMMA_ORACLE)
def test_digamma_matches_oracle(z, expected):
    assert abs(digamma(z) - expected) <= 4e-15 * max(1.0, abs(expected))


def test_digamma_special_values_and_poles():
    assert abs(digamma(1) + EULER_GAMMA) < 1e-15
    assert abs(digamma(0.5) - (-EULER_GAMMA - 2 * LOG2)) < 1e-15
    for pole in (0, -1, -5):
        with pytest.raises(DomainError):
            digamma(pole)
    assert digamma(-7.3).imag == 0.0
    assert digamma(0.02).imag == 0.0


@given(st.floats(0.05, 40), st.floats(-40, 40))
def test_digamma_recurrence(a, b):
    z = complex(a, b)
    lhs = digamma(z + 1) - digamma(z)
    assert abs(lhs - 1 / z) <= 1e-13 * max(1, abs(1 / z))


def test_digamma_minus_log_large_argument():
    z = 1e6 + 3e5j
    expected = -1 / (2 * z) - 1 / (12 * z * z)
    assert abs(digamma_minus_log(z) - expected) < 1e-24
    with pytest.raises(DomainError):
        digamma_minus_log(-2.0)


def test_principal_branch_conventions():
    assert plog(-1) == 1j * math.pi
    assert plog(complex(-1, -0.0)) == 1j * math.pi   # signed zero normalised
    assert abs(plog(-1 - 1e-300j).imag + math.pi) < 1e-15
    assert proot(-1, 2) == pytest.approx(1j)
    assert proot(-8, 3) == pytest.approx(cmath.exp(1j * math.pi / 3) * 2)
    with pytest.raises(DomainError):
        plog(0)
    with pytest.raises(DomainError):
        proot(0, 3)
    with pytest.raises(DomainError):
        proot(2, 0)


def test_unit_roots_exact_on_quarter_turns():
    assert unit_root(1, 4) == 1j
    assert unit_root(2, 4) == -1
    assert unit_root(3, 4) == -1j
    assert unit_root(5, 4) == 1j
    roots = roots_of_unity(6)
    assert roots[-1] == 1
    assert all(abs(r ** 6 - 1) < 1e-14 for r in roots)
    assert abs(sum(roots)) < 1e-14


def test_bernoulli_numbers_exact():
    b = bernoulli_fractions(12)
    assert b[:5] == (Fraction(1), Fraction(-1, 2), Fraction(1, 6), Fraction(0), Fraction(-1, 30))
    assert b[12] == Fraction(-691, 2730)
    assert all(b[k] == 0 for k in range(3, 13, 2))
    c = dilog_coefficients(3)
    assert c[0] == pytest.approx(1 / 36)


def test_zeta_and_constants():
    assert zeta(2) == pytest.approx(ZETA2, rel=1e-15)
    assert zeta_odd(1) == pytest.approx(1.2020569031595942854, rel=1e-15)
    assert hurwitz_tail(3.0, 5) == pytest.approx(float(mp.zeta(3, 5)), rel=1e-15)
    assert STIELTJES_GAMMA1 == pytest.approx(float(mp.stieltjes(1)), abs=1e-17)
    with pytest.raises(ValueError):
        hurwitz_tail(1.0, 3)


@pytest.mark.parametrize("u, expected", [
    (0.5, complex(-0.17289680030426475956, 0.0)),
    (-0.9 + 0.1j, complex(-0.13724095518208008796, 0.022141539076720361143)),
    (0.3j, complex(0.028586279732073071364, 0.0091616713341084245781)),
])
def test_polylog_order_derivative(u, expected):
    assert abs(polylog_ds_at1(u) - expected) < 2e-15
    with pytest.raises(DomainError):
        polylog_ds_at1(1.0)
