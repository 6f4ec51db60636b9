"""The (p, nu)-extended Beta function.

B_{p,nu}(x, y) = sqrt(2p/pi) * int_0^1 t^(x-3/2) (1-t)^(y-3/2)
                 K_{nu+1/2}(p / (t(1-t))) dt,      Re(p) > 0, nu >= 0,

together with the single-parameter extension
B(x, y; p) = int_0^1 t^(x-1) (1-t)^(y-1) exp(-p/(t(1-t))) dt, which the
nu = 0 case reproduces.

The Bessel kernel suppresses both endpoints faster than any power, so x
and y are unrestricted.  Integrands are evaluated in one fused log-domain
expression with the exponential part of K folded in (the scaled Bessel
variant), and are treated as exactly zero once the governing exponent
drops below the quadrature config's ``endpoint_cutoff``.

``ExtendedBetaFamily`` evaluates B_{p,nu}(a + k, b) for consecutive k
while computing kernel values on the quadrature nodes only once; the
extended Appell series leans on it, since its double series needs one
extended-Beta value per diagonal m + n = k.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .bessel import bessel_k_scaled_many
from .errors import ConvergenceError, DomainError
from .quadrature import QuadratureConfig, default_config, integrate_unit_interval

# kernel values are cached for Re(w) up to cutoff + this slack; nodes beyond
# it only matter for extreme parameter magnitudes and are filled on demand
_KERNEL_SLACK = 400.0


@dataclass(frozen=True)
class ExtensionParams:
    """The extension pair (p, nu): Re(p) > 0, nu >= 0."""

    p: complex
    nu: float

    def __post_init__(self):
        object.__setattr__(self, "p", complex(self.p))
        object.__setattr__(self, "nu", float(self.nu))
        if not self.p.real > 0.0:
            raise DomainError(f"extension needs Re(p) > 0, got p = {self.p}")
        if not self.nu >= 0.0:
            raise DomainError(f"extension needs nu >= 0, got nu = {self.nu}")

    @property
    def order(self) -> float:
        """Order nu + 1/2 of the Bessel kernel."""
        return self.nu + 0.5


class ExtendedBetaKernel:
    """Scaled Bessel kernel values on the tanh-sinh node tables.

    One instance serves every integral sharing the same (p, nu): values
    are keyed by the identity of the (module-cached, immutable) node
    arrays, so repeated integrations reuse each level's kernel slice.
    """

    def __init__(self, ext: ExtensionParams, cfg: QuadratureConfig):
        self.ext = ext
        self.cfg = cfg
        self._p_is_real = ext.p.imag == 0.0
        self._cache: dict[int, np.ndarray] = {}

    def argument(self, t: np.ndarray, tc: np.ndarray) -> np.ndarray:
        p = self.ext.p.real if self._p_is_real else self.ext.p
        return p / (t * tc)

    def scaled_values(self, t: np.ndarray, tc: np.ndarray, w: np.ndarray) -> np.ndarray:
        """e^w K_{nu+1/2}(w) at the nodes; NaN where w was skipped as huge."""
        key = id(t)
        vals = self._cache.get(key)
        if vals is None:
            re_w = w.real if np.iscomplexobj(w) else w
            vals = np.full(w.shape, np.nan, dtype=w.dtype)
            live = re_w <= self.cfg.endpoint_cutoff + _KERNEL_SLACK
            if np.any(live):
                vals[live] = bessel_k_scaled_many(self.ext.order, w[live])
            vals.flags.writeable = False
            self._cache[key] = vals
        return vals


def _fused_kernel_integrand(xt: complex, yt: complex, kernel: ExtendedBetaKernel,
                            extra=None):
    """Integrand t^xt (1-t)^yt [extra(t, tc)] K_{nu+1/2}(w), w = p/(t(1-t)).

    ``extra`` may add further log-domain terms (the Appell power factors);
    it receives (t, tc) and returns an array added to the exponent.
    """
    cutoff = kernel.cfg.endpoint_cutoff

    def integrand(t, tc):
        w = kernel.argument(t, tc)
        kv = kernel.scaled_values(t, tc, w)
        expo = xt * np.log(t) + yt * np.log(tc) - w
        if extra is not None:
            expo = expo + extra(t, tc)
        re = expo.real if np.iscomplexobj(expo) else expo
        live = re > -cutoff
        out = np.zeros(t.shape, dtype=expo.dtype if np.iscomplexobj(expo) else float)
        if not np.any(live):
            return out
        kv_live = kv[live]
        missing = np.isnan(kv_live.real if np.iscomplexobj(kv_live) else kv_live)
        if np.any(missing):
            idx = np.flatnonzero(live)[missing]
            kv_live = kv_live.copy()
            kv_live[missing] = bessel_k_scaled_many(kernel.ext.order, w[idx])
        out[live] = np.exp(expo[live]) * kv_live
        return out

    return integrand


def extended_beta(
    x: complex,
    y: complex,
    ext: ExtensionParams,
    cfg: QuadratureConfig | None = None,
    kernel: ExtendedBetaKernel | None = None,
) -> complex:
    """B_{p,nu}(x, y) for arbitrary complex x, y.

    Raises
    ------
    ConvergenceError
        If the quadrature fails to meet its tolerance.
    """
    cfg = cfg or default_config()
    kernel = kernel or ExtendedBetaKernel(ext, cfg)
    x, y = complex(x), complex(y)
    if x.imag == 0.0 and y.imag == 0.0 and kernel._p_is_real:
        xt, yt = x.real - 1.5, y.real - 1.5
    else:
        xt, yt = x - 1.5, y - 1.5
    res = integrate_unit_interval(_fused_kernel_integrand(xt, yt, kernel), cfg)
    if not res.converged:
        raise ConvergenceError(
            f"extended Beta quadrature stalled at error {res.abs_error_estimate:g}"
        )
    return cmath.sqrt(2.0 * ext.p / cmath.pi) * complex(res.value)


def chaudhry_beta(
    x: complex, y: complex, p: complex, cfg: QuadratureConfig | None = None
) -> complex:
    """The p-extension B(x, y; p) with kernel exp(-p/(t(1-t))), Re(p) > 0."""
    p = complex(p)
    if not p.real > 0.0:
        raise DomainError(f"needs Re(p) > 0, got p = {p}")
    cfg = cfg or default_config()
    x, y = complex(x), complex(y)
    real_case = x.imag == 0.0 and y.imag == 0.0 and p.imag == 0.0
    if real_case:
        xt, yt, pv = x.real - 1.0, y.real - 1.0, p.real
    else:
        xt, yt, pv = x - 1.0, y - 1.0, p
    cutoff = cfg.endpoint_cutoff

    def integrand(t, tc):
        expo = xt * np.log(t) + yt * np.log(tc) - pv / (t * tc)
        re = expo.real if np.iscomplexobj(expo) else expo
        live = re > -cutoff
        out = np.zeros(t.shape, dtype=expo.dtype if np.iscomplexobj(expo) else float)
        out[live] = np.exp(expo[live])
        return out

    res = integrate_unit_interval(integrand, cfg)
    if not res.converged:
        raise ConvergenceError(
            f"Chaudhry Beta quadrature stalled at error {res.abs_error_estimate:g}"
        )
    return complex(res.value)


class ExtendedBetaFamily:
    """B_{p,nu}(a + k, b) over consecutive integers k with one shared kernel."""

    def __init__(
        self,
        a: complex,
        b: complex,
        ext: ExtensionParams,
        cfg: QuadratureConfig | None = None,
    ):
        self.a = complex(a)
        self.b = complex(b)
        self.ext = ext
        self.cfg = cfg or default_config()
        self.kernel = ExtendedBetaKernel(ext, self.cfg)
        self._vals: list[complex] = []

    def value(self, k: int) -> complex:
        while len(self._vals) <= k:
            j = len(self._vals)
            self._vals.append(
                extended_beta(self.a + j, self.b, self.ext, self.cfg, self.kernel)
            )
        return self._vals[k]
