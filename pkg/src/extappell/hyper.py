"""Classical hypergeometric layer.

Generalized pFq series with unit-circle convergence classification, Gauss
2F1 as a thin wrapper, and the first Appell two-variable function F1 both
as a double power series and as its Euler-type integral.

The double series is summed over square blocks: block M adds the terms
with max(m, n) = M, and summation stops once the largest term on that
boundary stays below tolerance for three consecutive blocks (guards
against accidental zeros when parameters make individual terms vanish).
"""

from __future__ import annotations

import cmath
import math
import os
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConvergenceError, DomainError, PoleError
from .quadrature import QuadratureConfig, default_config, integrate_unit_interval
from .scalar import beta, is_nonpositive_integer, log_gamma

_ENV_MAX_TERMS = "APPELL_MAX_TERMS"


def default_max_terms() -> int:
    return int(os.environ.get(_ENV_MAX_TERMS, "4000"))


def _terminating_index(a: complex) -> int | None:
    """n such that (a)_k = 0 for all k > n, when a is a non-positive integer."""
    if is_nonpositive_integer(a):
        return int(-complex(a).real)
    return None


@dataclass(frozen=True)
class PFQParams:
    """Numerator/denominator parameter lists and argument of pFq."""

    numerator: tuple
    denominator: tuple
    z: complex

    def __post_init__(self):
        object.__setattr__(self, "numerator", tuple(complex(a) for a in self.numerator))
        object.__setattr__(
            self, "denominator", tuple(complex(b) for b in self.denominator)
        )
        object.__setattr__(self, "z", complex(self.z))
        for b in self.denominator:
            if is_nonpositive_integer(b):
                raise PoleError("pFq denominator parameter at a pole", b)


class ConvergenceClass(Enum):
    ABSOLUTE = "absolute"
    CONDITIONAL = "conditional"
    DIVERGENT = "divergent"


def pfq(params: PFQParams, max_terms: int | None = None, tol: float = 1e-14) -> complex:
    """Sum of the pFq series by term recursion.

    t_{n+1} = t_n * prod(a_j + n) / prod(b_j + n) * z / (n + 1); stops
    when |t_n| <= tol * |partial sum| for three consecutive terms.
    """
    max_terms = max_terms or default_max_terms()
    a, b, z = params.numerator, params.denominator, params.z
    if len(a) > len(b) + 1:
        raise DomainError(f"pFq needs p <= q+1 for convergence, got p={len(a)}, q={len(b)}")
    if z == 0:
        return 1.0 + 0.0j
    stops = [n for n in (_terminating_index(aj) for aj in a) if n is not None]
    n_stop = min(stops) if stops else None
    if n_stop is None and len(a) == len(b) + 1 and abs(z) >= 1.0:
        raise DomainError(
            f"series for {len(a)}F{len(b)} diverges at |z| = {abs(z):g} >= 1"
        )
    term = 1.0 + 0.0j
    total = term
    small = 0
    limit = max_terms if n_stop is None else min(max_terms, n_stop + 1)
    for n in range(limit):
        num = 1.0 + 0.0j
        for aj in a:
            num *= aj + n
        den = 1.0 + 0.0j
        for bj in b:
            den *= bj + n
        term = term * num / den * z / (n + 1)
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    if n_stop is not None and limit >= n_stop + 1:
        return total  # polynomial case: summed exactly
    raise ConvergenceError(f"pFq did not converge within {max_terms} terms")


def gauss_2f1(a: complex, b: complex, c: complex, z: complex, **kw) -> complex:
    return pfq(PFQParams((a, b), (c,), z), **kw)


def pfq_unit_circle_class(params: PFQParams) -> ConvergenceClass:
    """Convergence class of a (q+1)Fq series on the unit circle.

    Uses omega = sum(denominator) - sum(numerator): absolute for
    Re(omega) > 0, conditional for -1 < Re(omega) <= 0 away from z = 1,
    divergent otherwise.
    """
    a, b, z = params.numerator, params.denominator, params.z
    if len(a) != len(b) + 1:
        raise DomainError(
            f"unit-circle classification needs p = q+1, got p={len(a)}, q={len(b)}"
        )
    if abs(abs(z) - 1.0) > 1e-9:
        raise DomainError(f"|z| must be 1, got {abs(z)!r}")
    omega = sum(b) - sum(a)
    if omega.real > 0.0:
        return ConvergenceClass.ABSOLUTE
    if -1.0 < omega.real <= 0.0 and abs(z - 1.0) > 1e-12:
        return ConvergenceClass.CONDITIONAL
    return ConvergenceClass.DIVERGENT


@dataclass(frozen=True)
class AppellParams:
    """Parameters (b1, b2, b3; c1) and variables (x, y) of Appell F1."""

    b1: complex
    b2: complex
    b3: complex
    c1: complex
    x: complex
    y: complex

    def __post_init__(self):
        for name in ("b1", "b2", "b3", "c1", "x", "y"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if is_nonpositive_integer(self.c1):
            raise PoleError("Appell denominator parameter c1 at a pole", self.c1)

    def swapped(self) -> "AppellParams":
        """The (b2, x) <-> (b3, y) mirror, under which F1 is symmetric."""
        return AppellParams(self.b1, self.b3, self.b2, self.c1, self.y, self.x)


class _PowerLadder:
    """Growing table of (b)_m * x^m / m! values."""

    def __init__(self, b: complex, x: complex):
        self.b = complex(b)
        self.x = complex(x)
        self.vals = [1.0 + 0.0j]

    def upto(self, m: int) -> np.ndarray:
        v = self.vals
        while len(v) <= m:
            k = len(v)
            v.append(v[k - 1] * (self.b + k - 1) * self.x / k)
        return np.asarray(v[: m + 1])


def block_double_sum(diag, b2, b3, x, y, tol: float, max_blocks: int) -> complex:
    """Square-block summation of sum_{m,n} diag(m+n) (b2)_m (b3)_n x^m y^n / (m! n!).

    ``diag(k)`` supplies the diagonal coefficient; it is called with
    consecutive k as blocks grow, so callers can memoize cheaply.
    """
    r2 = _PowerLadder(b2, x)
    r3 = _PowerLadder(b3, y)
    dvals = [complex(diag(0))]
    total = dvals[0]
    small = 0
    for M in range(1, max_blocks + 1):
        while len(dvals) <= 2 * M:
            dvals.append(complex(diag(len(dvals))))
        d = np.asarray(dvals)
        a2 = r2.upto(M)
        a3 = r3.upto(M)
        row = a2[M] * a3[: M + 1] * d[M : 2 * M + 1]
        col = a2[:M] * a3[M] * d[M : 2 * M]
        boundary_max = max(float(np.max(np.abs(row))), float(np.max(np.abs(col))))
        total += complex(row.sum() + col.sum())
        if boundary_max <= tol * max(abs(total), 1e-300):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
    raise ConvergenceError(
        f"double series did not converge within {max_blocks}^2 terms"
    )


def _check_series_domain(params: AppellParams):
    if abs(params.x) >= 1.0 and _terminating_index(params.b2) is None:
        raise DomainError(f"F1 series needs |x| < 1, got |x| = {abs(params.x):g}")
    if abs(params.y) >= 1.0 and _terminating_index(params.b3) is None:
        raise DomainError(f"F1 series needs |y| < 1, got |y| = {abs(params.y):g}")


def appell_f1_series(
    params: AppellParams,
    max_terms: int | None = None,
    tol: float = 1e-14,
    form: str = "pochhammer",
) -> complex:
    """Appell F1 by its double power series (|x| < 1, |y| < 1).

    ``form="pochhammer"`` uses the diagonal factor (b1)_k / (c1)_k;
    ``form="beta_ratio"`` uses B(b1+k, c1-b1) / B(b1, c1-b1), the shape
    shared with the extended function, as an internal cross-check.
    """
    _check_series_domain(params)
    max_terms = max_terms or default_max_terms()
    b1, c1 = params.b1, params.c1
    if form == "pochhammer":
        dvals = [1.0 + 0.0j]

        def diag(k: int) -> complex:
            while len(dvals) <= k:
                j = len(dvals)
                dvals.append(dvals[j - 1] * (b1 + j - 1) / (c1 + j - 1))
            return dvals[k]

    elif form == "beta_ratio":
        norm = beta(b1, c1 - b1)
        if norm == 0:
            raise PoleError("B(b1, c1-b1) vanishes; prefactor pole", (b1, c1 - b1))

        def diag(k: int) -> complex:
            return beta(b1 + k, c1 - b1) / norm

    else:
        raise DomainError(f"unknown form {form!r}")
    return block_double_sum(
        diag, params.b2, params.b3, params.x, params.y, tol, max_terms
    )


def _check_cut(v: complex, name: str):
    v = complex(v)
    if v.imag == 0.0 and v.real >= 1.0:
        raise DomainError(f"{name} on the branch cut [1, inf): {v}")


def appell_f1_integral(params: AppellParams, cfg: QuadratureConfig | None = None) -> complex:
    """Appell F1 by the Euler integral (Re(c1) > Re(b1) > 0, x,y off [1, inf))."""
    b1, b2, b3, c1, x, y = (
        params.b1,
        params.b2,
        params.b3,
        params.c1,
        params.x,
        params.y,
    )
    if not (c1.real > b1.real > 0.0):
        raise DomainError(
            f"Euler integral needs Re(c1) > Re(b1) > 0, got b1={b1}, c1={c1}"
        )
    _check_cut(x, "x")
    _check_cut(y, "y")
    cfg = cfg or default_config()

    def integrand(t, tc):
        one_m_xt = (1.0 - x) + x * tc
        one_m_yt = (1.0 - y) + y * tc
        return np.exp(
            (b1 - 1.0) * np.log(t)
            + (c1 - b1 - 1.0) * np.log(tc)
            - b2 * np.log(one_m_xt)
            - b3 * np.log(one_m_yt)
        )

    res = integrate_unit_interval(integrand, cfg)
    if not res.converged:
        raise ConvergenceError(
            f"F1 Euler integral stalled at error {res.abs_error_estimate:g}"
        )
    pref = cmath.exp(log_gamma(c1) - log_gamma(b1) - log_gamma(c1 - b1))
    return pref * res.value


def f1_diagonal_coefficients(b2, b3, x, y, kmax: int) -> np.ndarray:
    """c_k = sum_{m+n=k} (b2)_m (b3)_n x^m y^n / (m! n!) for k = 0..kmax.

    Lets F1-type series collapse to a single sum over the diagonal:
    F1 = sum_k diag(k) c_k, for any diagonal factor depending on m+n only.
    """
    r2 = _PowerLadder(b2, x).upto(kmax)
    r3 = _PowerLadder(b3, y).upto(kmax)
    return np.convolve(r2, r3)[: kmax + 1]
