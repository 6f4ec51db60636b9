import math

import numpy as np
import pytest

from extappell.errors import DomainError
from extappell.extbeta import ExtensionParams, extended_beta
from extappell.f1pv import ExtendedAppellInput, f1pv_series
from extappell.hyper import AppellParams
from extappell.mellin import (
    InversionContour,
    check_mellin_point,
    mellin_forward_closed,
    mellin_forward_numeric,
    mellin_inverse_numeric,
    verify_mellin_pair,
)
from extappell.scalar import beta, gamma

AP = AppellParams(1, 1, 1, 3, 0.3, 0.4)


def test_mellin_point_constraints():
    check_mellin_point(1.5, 0.5, 3.0)
    with pytest.raises(DomainError):
        check_mellin_point(0.5, 0.5, 3.0)  # Re(s - nu) = 0
    with pytest.raises(DomainError):
        check_mellin_point(complex(0.2, 1.0), 0.9, 3.0)
    with pytest.raises(DomainError):
        check_mellin_point(1.0, 0.5, -4.0)  # c1 + s at a pole
    with pytest.raises(DomainError):
        # nu in (-1, 0) would allow tiny s; Re(s) > 0 still binds
        check_mellin_point(-0.1, -0.5, 3.0)


def test_forward_pair_generic():
    rec = verify_mellin_pair(AP, 0.5, 1.5)
    assert rec.status == "pass"
    assert rec.rel_err <= 1e-6


def test_forward_pair_origin_case():
    # x = y = 0, nu = 0, b1 = 1, c1 = 2: both routes, plus the explicit
    # extended-Beta reduction of the closed form
    ap0 = AppellParams(1.0, 1.0, 1.0, 2.0, 0.0, 0.0)
    s, nu = 1.25, 0.0
    num = mellin_forward_numeric(ap0, nu, s)
    clo = mellin_forward_closed(ap0, nu, s)
    assert abs(num - clo) <= 1e-6 * (1.0 + abs(clo))
    explicit = (
        2.0 ** (s - 1.0) / math.sqrt(math.pi)
        * gamma((s - nu) / 2.0).real * gamma((s + nu + 1.0) / 2.0).real
        * beta(1.0 + s, 1.0 + s).real / beta(1.0, 1.0).real
    )
    assert abs(clo - explicit) <= 1e-12 * abs(explicit)


def test_forward_closed_complex_s():
    s = complex(1.4, 0.8)
    val = mellin_forward_closed(AP, 0.5, s)
    conj = mellin_forward_closed(AP, 0.5, s.conjugate())
    assert abs(val - conj.conjugate()) <= 1e-10 * abs(val)


def test_inverse_reconstructs():
    direct = f1pv_series(ExtendedAppellInput(AP, ExtensionParams(1.0, 0.5)))
    rec = mellin_inverse_numeric(AP, 0.5, 1.0)
    assert abs(rec - direct) <= 1e-5 * (1.0 + abs(direct))


def test_inverse_origin_case():
    ap0 = AppellParams(1.3, 0.6, -0.4, 2.8, 0.0, 0.0)
    nu, p = 0.7, 1.6
    rec = mellin_inverse_numeric(ap0, nu, p)
    ref = extended_beta(1.3, 1.5, ExtensionParams(p, nu)) / beta(1.3, 1.5)
    assert abs(rec - ref) <= 1e-5 * (1.0 + abs(ref))


def test_inverse_abscissa_independence():
    a = mellin_inverse_numeric(AP, 0.5, 1.0, InversionContour(c=1.5))
    b = mellin_inverse_numeric(AP, 0.5, 1.0, InversionContour(c=2.0))
    assert abs(a - b) <= 1e-6 * (1.0 + abs(a))


def test_inverse_fixed_contour_override():
    direct = f1pv_series(ExtendedAppellInput(AP, ExtensionParams(1.0, 0.5)))
    rec = mellin_inverse_numeric(
        AP, 0.5, 1.0, InversionContour(c=1.5, truncation=40.0, step=0.125)
    )
    assert abs(rec - direct) <= 1e-5 * (1.0 + abs(direct))


def test_inverse_contour_validation():
    with pytest.raises(DomainError):
        mellin_inverse_numeric(AP, 0.5, -1.0)
    with pytest.raises(DomainError):
        mellin_inverse_numeric(AP, 0.5, 1.0, InversionContour(c=0.4))
    with pytest.raises(DomainError):
        InversionContour(c=1.0, truncation=-3.0)


def test_integrand_gamma_pair_decay_rate():
    # |Gamma-pair integrand| should decay at least like e^{-pi |tau|/2};
    # measure the empirical rate over a tau window
    from extappell.mellin import _inversion_integrand

    f = _inversion_integrand(AP, 0.5, 1.0, 1.5)
    taus = np.array([4.0, 8.0, 12.0, 16.0])
    mags = np.abs(f(taus))
    rates = np.log(mags[:-1] / mags[1:]) / 4.0
    assert np.all(rates >= math.pi / 2.0 - 0.15)


def test_series_domain_required():
    wide = AppellParams(1.0, 1.0, 1.0, 3.0, 1.2, 0.1)
    with pytest.raises(DomainError):
        mellin_forward_closed(wide, 0.5, 1.5)
    with pytest.raises(DomainError):
        mellin_inverse_numeric(wide, 0.5, 1.0)
