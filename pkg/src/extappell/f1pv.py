"""The (p, nu)-extended Appell function F_{1,p,nu}.

Series route (|x| < 1, |y| < 1):

    F_{1,p,nu}(b1,b2,b3;c1;x,y) =
        sum_{m,n} (b2)_m (b3)_n B_{p,nu}(b1+m+n, c1-b1) / B(b1, c1-b1)
                  * x^m y^n / (m! n!),

where the extended-Beta factor depends on (m, n) only through the
diagonal k = m + n and is computed once per k.  Integral route
(Re(c1) > Re(b1) > 0):

    Gamma(c1)/(Gamma(b1) Gamma(c1-b1)) * sqrt(2p/pi) *
    int_0^1 t^(b1-3/2) (1-t)^(c1-b1-3/2) (1-xt)^(-b2) (1-yt)^(-b3)
            K_{nu+1/2}(p/(t(1-t))) dt.

The power factors pair (b2 with x) and (b3 with y) so that binomial
expansion of the integrand reproduces the series exactly; the
``swap_power_pairing`` flag exposes the variant with the exponents
interchanged for documentation purposes.

On top of the two routes: the Moebius transformation identity in
(x, y), derivatives of any order via parameter shifts, recursions in
b2/b3, and a strict upper bound for real parameters.
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError
from .extbeta import ExtendedBetaFamily, ExtendedBetaKernel, ExtensionParams, _fused_kernel_integrand
from .hyper import (
    AppellParams,
    appell_f1_integral,
    appell_f1_series,
    block_double_sum,
    default_max_terms,
)
from .quadrature import QuadratureConfig, default_config, integrate_unit_interval
from .scalar import beta, gamma, log_gamma, pochhammer

_AUTO_SERIES_LIMIT = 0.9


@dataclass(frozen=True)
class ExtendedAppellInput:
    """Appell parameters plus the (p, nu) extension."""

    appell: AppellParams
    ext: ExtensionParams


@dataclass(frozen=True)
class EvaluationMethod:
    """Route selection and budgets: route in {series, integral, auto}."""

    route: str = "auto"
    tol: float = 1e-12
    max_terms: int | None = None

    def __post_init__(self):
        if self.route not in ("series", "integral", "auto"):
            raise DomainError(f"unknown route {self.route!r}")

    def resolve(self, inp: ExtendedAppellInput) -> str:
        if self.route != "auto":
            return self.route
        a = inp.appell
        if abs(a.x) <= _AUTO_SERIES_LIMIT and abs(a.y) <= _AUTO_SERIES_LIMIT:
            try:
                if beta(a.b1, a.c1 - a.b1) != 0:
                    return "series"
            except PoleError:
                pass
        return "integral"


def _series_prefactor(a: AppellParams) -> complex:
    b0 = beta(a.b1, a.c1 - a.b1)
    if b0 == 0:
        raise PoleError("B(b1, c1-b1) vanishes; series prefactor pole", (a.b1, a.c1))
    return b0


def f1pv_series(
    inp: ExtendedAppellInput,
    method: EvaluationMethod | None = None,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """Series route; needs |x| < 1 and |y| < 1."""
    a = inp.appell
    if abs(a.x) >= 1.0:
        raise DomainError(f"series route needs |x| < 1, got {abs(a.x):g}")
    if abs(a.y) >= 1.0:
        raise DomainError(f"series route needs |y| < 1, got {abs(a.y):g}")
    method = method or EvaluationMethod()
    b0 = _series_prefactor(a)
    fam = ExtendedBetaFamily(a.b1, a.c1 - a.b1, inp.ext, cfg)
    return block_double_sum(
        lambda k: fam.value(k) / b0,
        a.b2,
        a.b3,
        a.x,
        a.y,
        method.tol,
        method.max_terms or default_max_terms(),
    )


def _check_cut(v: complex, name: str):
    v = complex(v)
    if v.imag == 0.0 and v.real >= 1.0:
        raise DomainError(f"{name} on the branch cut [1, inf): {v}")


def f1pv_integral(
    inp: ExtendedAppellInput,
    cfg: QuadratureConfig | None = None,
    kernel: ExtendedBetaKernel | None = None,
    swap_power_pairing: bool = False,
) -> complex:
    """Integral route; needs Re(c1) > Re(b1) > 0 and x, y off [1, inf).

    ``swap_power_pairing`` evaluates the variant with (1-xt)^(-b3)
    (1-yt)^(-b2) instead; it does not match the series route unless
    b2 = b3 and exists only to document the alternative convention.
    """
    a, ext = inp.appell, inp.ext
    if not (a.c1.real > a.b1.real > 0.0):
        raise DomainError(
            f"integral route needs Re(c1) > Re(b1) > 0, got b1={a.b1}, c1={a.c1}"
        )
    _check_cut(a.x, "x")
    _check_cut(a.y, "y")
    cfg = cfg or default_config()
    kernel = kernel or ExtendedBetaKernel(ext, cfg)
    e2, e3 = (a.b3, a.b2) if swap_power_pairing else (a.b2, a.b3)

    real_case = all(
        v.imag == 0.0 for v in (a.b1, a.c1, e2, e3, a.x, a.y)
    ) and kernel._p_is_real
    if real_case:
        xt, yt = a.b1.real - 1.5, (a.c1 - a.b1).real - 1.5
        p2, p3, xv, yv = e2.real, e3.real, a.x.real, a.y.real
    else:
        xt, yt = a.b1 - 1.5, a.c1 - a.b1 - 1.5
        p2, p3, xv, yv = e2, e3, a.x, a.y

    def power_terms(t, tc):
        return -p2 * np.log((1.0 - xv) + xv * tc) - p3 * np.log((1.0 - yv) + yv * tc)

    res = integrate_unit_interval(_fused_kernel_integrand(xt, yt, kernel, power_terms), cfg)
    if not res.converged:
        raise ConvergenceError(
            f"extended Appell integral stalled at error {res.abs_error_estimate:g}"
        )
    pref = cmath.exp(log_gamma(a.c1) - log_gamma(a.b1) - log_gamma(a.c1 - a.b1))
    return pref * cmath.sqrt(2.0 * ext.p / cmath.pi) * complex(res.value)


def f1pv(
    inp: ExtendedAppellInput,
    method: EvaluationMethod | None = None,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """Route dispatcher: series, integral, or automatic selection."""
    method = method or EvaluationMethod()
    if method.resolve(inp) == "series":
        return f1pv_series(inp, method, cfg)
    return f1pv_integral(inp, cfg)


def f1pv_transform(
    inp: ExtendedAppellInput, cfg: QuadratureConfig | None = None
) -> complex:
    """Right-hand side of the Moebius transformation identity:

    (1-x)^(-b2) (1-y)^(-b3) F_{1,p,nu}(c1-b1, b2, b3; c1; x/(x-1), y/(y-1)).

    Agrees with ``f1pv_integral`` on the common domain; both sides need
    Re(b1) > 0 and Re(c1 - b1) > 0 (the transformed first parameter).
    """
    a = inp.appell
    if not (a.c1 - a.b1).real > 0.0:
        raise DomainError(
            f"transformed first parameter needs Re(c1 - b1) > 0, got b1={a.b1}, c1={a.c1}"
        )
    if not a.b1.real > 0.0:
        raise DomainError(f"needs Re(b1) > 0, got b1={a.b1}")
    _check_cut(a.x, "x")
    _check_cut(a.y, "y")
    xi = a.x / (a.x - 1.0)
    eta = a.y / (a.y - 1.0)
    flipped = ExtendedAppellInput(
        AppellParams(a.c1 - a.b1, a.b2, a.b3, a.c1, xi, eta), inp.ext
    )
    pref = cmath.exp(-a.b2 * cmath.log(1.0 - a.x) - a.b3 * cmath.log(1.0 - a.y))
    return pref * f1pv_integral(flipped, cfg)


def f1pv_derivative(
    inp: ExtendedAppellInput,
    m_order: int,
    n_order: int,
    method: EvaluationMethod | None = None,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """d^(M+N) F / dx^M dy^N via the parameter-shift identity:

    (b1)_{M+N} (b2)_M (b3)_N / (c1)_{M+N} *
    F_{1,p,nu}(b1+M+N, b2+M, b3+N; c1+M+N; x, y).
    """
    if m_order < 0 or n_order < 0:
        raise DomainError("derivative orders must be non-negative")
    a = inp.appell
    k = m_order + n_order
    pref = (
        pochhammer(a.b1, k)
        * pochhammer(a.b2, m_order)
        * pochhammer(a.b3, n_order)
        / pochhammer(a.c1, k)
    )
    shifted = ExtendedAppellInput(
        AppellParams(a.b1 + k, a.b2 + m_order, a.b3 + n_order, a.c1 + k, a.x, a.y),
        inp.ext,
    )
    return pref * f1pv(shifted, method, cfg)


def _recursion(inp: ExtendedAppellInput, n: int, on_b2: bool, method, cfg) -> complex:
    if n < 1:
        raise DomainError(f"recursion step count must be >= 1, got {n}")
    a = inp.appell
    method = method or EvaluationMethod()
    base = f1pv_series(inp, method, cfg)
    var = a.x if on_b2 else a.y
    if var == 0:
        return base
    # all shifted terms share (b1+1, c1+1): reuse one extended-Beta family
    b0 = beta(a.b1 + 1.0, a.c1 - a.b1)
    fam = ExtendedBetaFamily(a.b1 + 1.0, a.c1 - a.b1, inp.ext, cfg)
    total = 0.0 + 0.0j
    for ell in range(1, n + 1):
        if on_b2:
            shifted = AppellParams(a.b1 + 1, a.b2 + ell, a.b3, a.c1 + 1, a.x, a.y)
        else:
            shifted = AppellParams(a.b1 + 1, a.b2, a.b3 + ell, a.c1 + 1, a.x, a.y)
        total += block_double_sum(
            lambda k: fam.value(k) / b0,
            shifted.b2,
            shifted.b3,
            shifted.x,
            shifted.y,
            method.tol,
            method.max_terms or default_max_terms(),
        )
    return base + a.b1 * var / a.c1 * total


def f1pv_recursion_b2(
    inp: ExtendedAppellInput,
    n: int,
    method: EvaluationMethod | None = None,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """F_{1,p,nu} with b2 raised by n, assembled from the recursion:

    F(b2+n) = F(b2) + (b1 x / c1) sum_{l=1..n} F(b1+1, b2+l, b3; c1+1).
    """
    return _recursion(inp, n, True, method, cfg)


def f1pv_recursion_b3(
    inp: ExtendedAppellInput,
    n: int,
    method: EvaluationMethod | None = None,
    cfg: QuadratureConfig | None = None,
) -> complex:
    """Mirror of ``f1pv_recursion_b2`` acting on (b3, y)."""
    return _recursion(inp, n, False, method, cfg)


def _require_real(inp: ExtendedAppellInput) -> tuple:
    a = inp.appell
    vals = (a.b1, a.b2, a.b3, a.c1, a.x, a.y)
    if any(v.imag != 0.0 for v in vals):
        raise DomainError("bound holds for real parameters and variables only")
    return tuple(v.real for v in vals)


def _bound_prefactor(inp: ExtendedAppellInput) -> float:
    b1, _b2, _b3, c1, _x, _y = _require_real(inp)
    nu, p = inp.ext.nu, inp.ext.p
    if not (b1 > 0.0 and c1 - b1 > 0.0):
        raise DomainError(
            f"bound needs b1 > 0 and c1 - b1 > 0, got b1={b1}, c1={c1}"
        )
    return (
        2.0**nu
        * abs(p) ** (nu + 1.0)
        / (math.sqrt(math.pi) * p.real ** (2.0 * nu + 1.0))
        * gamma(nu + 0.5).real
        * beta(b1 + nu, c1 - b1 + nu).real
        / beta(b1, c1 - b1).real
    )


def f1pv_bound(inp: ExtendedAppellInput, cfg: QuadratureConfig | None = None) -> float:
    """Strict upper bound for |F_{1,p,nu}| (real parameters, x, y < 1):

    2^nu |p|^(nu+1) / (sqrt(pi) Re(p)^(2nu+1)) * Gamma(nu+1/2)
    * B(b1+nu, c1-b1+nu)/B(b1, c1-b1) * F1(b1+nu, b2, b3; c1+2nu; x, y).
    """
    b1, b2, b3, c1, x, y = _require_real(inp)
    if x >= 1.0 or y >= 1.0:
        raise DomainError("bound needs x < 1 and y < 1")
    nu = inp.ext.nu
    f1 = AppellParams(b1 + nu, b2, b3, c1 + 2.0 * nu, x, y)
    if abs(x) < _AUTO_SERIES_LIMIT and abs(y) < _AUTO_SERIES_LIMIT:
        factor = appell_f1_series(f1)
    else:
        factor = appell_f1_integral(f1, cfg)
    return _bound_prefactor(inp) * factor.real


def f1pv_bound_simple(inp: ExtendedAppellInput) -> float:
    """The bound without the F1 factor, on its sign-restricted subdomain:

    x < 0, y < 0 with b2, b3 > 0 (or x, y > 0 with b2, b3 < 0).
    """
    _b1, b2, b3, _c1, x, y = _require_real(inp)
    neg_case = x < 0.0 and y < 0.0 and b2 > 0.0 and b3 > 0.0
    pos_case = x > 0.0 and y > 0.0 and b2 < 0.0 and b3 < 0.0
    if not (neg_case or pos_case):
        raise DomainError(
            "simple bound needs x,y < 0 with b2,b3 > 0, or x,y > 0 with b2,b3 < 0"
        )
    return _bound_prefactor(inp)
