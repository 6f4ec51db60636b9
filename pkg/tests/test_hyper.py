import math

import numpy as np
import pytest

from extappell.errors import ConvergenceError, DomainError, PoleError
from extappell.hyper import (
    AppellParams,
    ConvergenceClass,
    PFQParams,
    appell_f1_integral,
    appell_f1_series,
    f1_diagonal_coefficients,
    gauss_2f1,
    pfq,
    pfq_unit_circle_class,
)
from extappell.scalar import pochhammer

# 2F1(1/2, 1/2; 3/2; 0.7) by a 1e5-term sum at 30 digits
#  (= arcsin(sqrt 0.7)/sqrt 0.7)
GAUSS_HALF_07 = 1.18465870843277873
# F1(1,1,1;2;0.3,0.5) by a brute-force 400x400 double sum at 30 digits
F1_ORACLE = 1.68236118310606465


def test_pfq_binomial_collapse():
    for a in (0.7, -1.3, 2.2):
        val = gauss_2f1(a, 1.3, 1.3, 0.4)
        assert abs(val - (1.0 - 0.4) ** (-a)) <= 1e-13 * abs(val)


def test_pfq_at_origin():
    assert pfq(PFQParams((0.3, 1.9, 2.2), (1.1, 0.7), 0.0)) == 1.0


def test_pfq_derived_oracle():
    val = gauss_2f1(0.5, 0.5, 1.5, 0.7)
    assert abs(val - GAUSS_HALF_07) <= 1e-13 * GAUSS_HALF_07


def test_pfq_term_recursion_matches_pochhammer_ratio():
    # the recursion t_{n+1} = t_n prod(a+n)/prod(b+n) z/(n+1) must track
    # the direct Pochhammer-ratio terms of the defining series
    a, b, z = (0.4, 1.7), (2.3,), 0.35
    term = 1.0 + 0.0j
    for n in range(20):
        term = term * (a[0] + n) * (a[1] + n) / (b[0] + n) * z / (n + 1)
        direct = (
            pochhammer(a[0], n + 1) * pochhammer(a[1], n + 1)
            / pochhammer(b[0], n + 1) * z ** (n + 1) / math.factorial(n + 1)
        )
        assert abs(term - direct) <= 1e-13 * abs(direct)
    full = pfq(PFQParams(a, b, z))
    by_ratio = sum(
        pochhammer(a[0], n) * pochhammer(a[1], n) / pochhammer(b[0], n)
        * z**n / math.factorial(n)
        for n in range(60)
    )
    assert abs(full - by_ratio) <= 1e-13 * abs(full)


def test_pfq_domain_errors():
    with pytest.raises(DomainError):
        pfq(PFQParams((1.0, 1.0, 1.0), (2.0,), 0.5))  # p > q+1
    with pytest.raises(DomainError):
        pfq(PFQParams((1.0, 1.0), (3.0,), 1.2))  # |z| >= 1 at p = q+1
    with pytest.raises(PoleError):
        PFQParams((1.0,), (-2.0,), 0.5)
    # terminating numerator lifts the |z| < 1 restriction
    val = pfq(PFQParams((-3.0, 1.0), (2.0,), 2.5))
    assert np.isfinite(abs(val))


def test_unit_circle_classification():
    assert pfq_unit_circle_class(PFQParams((1, 1), (3,), 1.0)) is ConvergenceClass.ABSOLUTE
    assert (
        pfq_unit_circle_class(PFQParams((1, 1), (2,), -1.0))
        is ConvergenceClass.CONDITIONAL
    )
    assert pfq_unit_circle_class(PFQParams((2, 2), (1,), 1j)) is ConvergenceClass.DIVERGENT
    # omega in (-1, 0] at z = 1 diverges
    assert pfq_unit_circle_class(PFQParams((1, 1), (2,), 1.0)) is ConvergenceClass.DIVERGENT
    with pytest.raises(DomainError):
        pfq_unit_circle_class(PFQParams((1,), (2,), 1.0))  # wrong shape
    with pytest.raises(DomainError):
        pfq_unit_circle_class(PFQParams((1, 1), (2,), 0.5))  # off the circle


def test_appell_series_trivial_cases():
    assert appell_f1_series(AppellParams(1.3, 0.8, -0.4, 2.6, 0.0, 0.0)) == 1.0
    # b2 = 0 kills the x series
    val = appell_f1_series(AppellParams(0.9, 0.0, 1.4, 2.2, 0.7, 0.25))
    ref = gauss_2f1(0.9, 1.4, 2.2, 0.25)
    assert abs(val - ref) <= 1e-12 * abs(ref)


def test_appell_series_oracle():
    val = appell_f1_series(AppellParams(1, 1, 1, 2, 0.3, 0.5))
    assert abs(val - F1_ORACLE) <= 1e-13 * F1_ORACLE


def test_appell_forms_agree():
    p = AppellParams(1.4, -0.8, 2.1, 3.0, 0.45, -0.3)
    a = appell_f1_series(p)
    b = appell_f1_series(p, form="beta_ratio")
    assert abs(a - b) <= 1e-12 * abs(a)
    with pytest.raises(DomainError):
        appell_f1_series(p, form="chebyshev")


def test_appell_integral_matches_series():
    cases = [
        (2.0, 1.0, 1.0, 4.0, 0.0, 0.0),
        (1.0, 1.0, 1.0, 2.0, 0.3, 0.5),
        (0.7, -1.4, 2.2, 2.9, -0.55, 0.35),
    ]
    for tup in cases:
        p = AppellParams(*tup)
        s = appell_f1_series(p)
        i = appell_f1_integral(p)
        assert abs(s - i) <= 1e-9 * (1.0 + abs(s))


def test_appell_equal_arguments_collapse_to_2f1():
    # x = y merges the power factors: F1 -> 2F1(b1, b2+b3; c1; x)
    p = AppellParams(1.2, 0.7, 1.1, 3.0, 0.4, 0.4)
    val = appell_f1_integral(p)
    ref = gauss_2f1(1.2, 1.8, 3.0, 0.4)
    assert abs(val - ref) <= 1e-10 * abs(ref)


def test_appell_series_integral_random_domain():
    rng = np.random.default_rng(21)
    for _ in range(60):
        b1 = rng.uniform(0.5, 3.0)
        c1 = b1 + rng.uniform(0.5, 3.0)
        b2, b3 = rng.uniform(-2.0, 2.0, 2)
        x, y = rng.uniform(-0.8, 0.8, 2)
        p = AppellParams(b1, b2, b3, c1, x, y)
        s = appell_f1_series(p)
        i = appell_f1_integral(p)
        assert abs(s - i) <= 1e-8 * (1.0 + abs(s))


def test_appell_symmetry_property():
    rng = np.random.default_rng(22)
    for _ in range(100):
        p = AppellParams(
            rng.uniform(0.3, 3.0),
            rng.uniform(-2.0, 2.0),
            rng.uniform(-2.0, 2.0),
            rng.uniform(3.2, 6.0),
            rng.uniform(-0.8, 0.8),
            rng.uniform(-0.8, 0.8),
        )
        a = appell_f1_series(p)
        b = appell_f1_series(p.swapped())
        assert abs(a - b) <= 1e-12 * (1.0 + abs(a))


def test_appell_polynomial_termination():
    # negative-integer b2 terminates the x index: any |x| is fine
    p = AppellParams(1.5, -3.0, 0.5, 2.5, 1.7, 0.2)
    val = appell_f1_series(p)
    # mpmath appellf1(1.5, -3, 0.5, 2.5, 1.7, 0.2) at 25 digits
    assert abs(val - 0.0137573766170518736) < 1e-15


def test_appell_domain_errors():
    with pytest.raises(DomainError):
        appell_f1_series(AppellParams(1.0, 1.0, 1.0, 2.0, 1.2, 0.1))
    with pytest.raises(DomainError):
        appell_f1_integral(AppellParams(3.0, 1.0, 1.0, 2.0, 0.1, 0.1))  # c1 < b1
    with pytest.raises(DomainError):
        appell_f1_integral(AppellParams(1.0, 1.0, 1.0, 2.0, 1.5, 0.1))  # x on cut
    with pytest.raises(PoleError):
        AppellParams(1.0, 1.0, 1.0, -2.0, 0.1, 0.1)


def test_diagonal_coefficients_collapse():
    b2, b3, x, y = 0.8, -1.1, 0.35, 0.55
    ck = f1_diagonal_coefficients(b2, b3, x, y, 160)
    diag = np.empty(161, dtype=complex)
    diag[0] = 1.0
    for k in range(1, 161):
        diag[k] = diag[k - 1] * (1.3 + k - 1) / (2.9 + k - 1)
    collapsed = complex((ck * diag).sum())
    direct = appell_f1_series(AppellParams(1.3, b2, b3, 2.9, x, y))
    assert abs(collapsed - direct) <= 1e-12 * abs(direct)
