"""Reusable integration engines.

Three engines, all built on trapezoidal sums over doubly-exponentially
decaying transformed integrands:

* ``integrate_unit_interval`` -- tanh-sinh on (0, 1),
* ``integrate_semi_infinite`` -- exp-sinh on (0, inf),
* ``integrate_vertical_line`` -- truncated trapezoid in the imaginary
  direction for Mellin-Barnes / inverse-Mellin integrands.

Integrands are vectorized callables: they receive NumPy arrays of nodes
and must return an array of values (real or complex).  The unit-interval
engine also hands the integrand the exact complement ``1 - t`` so that
factors like ``(1-t)**(y-3/2)`` stay accurate next to the right endpoint.

Node tables are computed once per refinement level and cached; engines
are stateless apart from those immutable tables.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

# tau range chosen so the closest node to an endpoint keeps t and 1-t
# representable (pi*sinh(6) ~ 634, exp(-634) ~ 2.6e-276)
_TAU_MAX_UNIT = 6.0
# exp-sinh range: deep toward u -> 0 (algebraic blow-up needs it), but only
# u <~ 1.3e15 on the right so integrands may square/cube u without overflow;
# the edge-tail guard below catches anything decaying too slowly for that
_V_MIN_SEMI = -6.8
_V_MAX_SEMI = 4.25
_ENV_LEVELS = "APPELL_QUAD_LEVELS"


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and budgets shared by the engines.

    ``endpoint_cutoff`` is the exponent magnitude beyond which integrands
    are expected to treat themselves as exactly zero (callers consult it
    when fusing log-domain factors); 745 is the double-precision
    underflow threshold for exp.
    """

    target_rel_tol: float = 1e-10
    max_levels: int = 12
    endpoint_cutoff: float = 745.0

    def __post_init__(self):
        if not self.target_rel_tol > 0.0:
            raise DomainError("target_rel_tol must be positive")
        if not (1 <= self.max_levels <= 16):
            raise DomainError("max_levels must lie in 1..16")


def default_config(target_rel_tol: float = 1e-10) -> QuadratureConfig:
    """Config with the level budget taken from APPELL_QUAD_LEVELS."""
    levels = int(os.environ.get(_ENV_LEVELS, "12"))
    return QuadratureConfig(target_rel_tol=target_rel_tol, max_levels=min(levels, 16))


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_error_estimate: float
    nodes_used: int
    converged: bool = True


# --------------------------------------------------------------------------
# node tables
# --------------------------------------------------------------------------

_unit_tables: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []
_semi_tables: list[tuple[np.ndarray, np.ndarray]] = []


def _unit_level(level: int):
    """(t, 1-t, weight) for the nodes new at `level` of the tanh-sinh rule.

    t(tau) = sigmoid(pi * sinh(tau)); dt/dtau = pi * cosh(tau) * t * (1-t).
    Level 0 holds the integer abscissae, level L > 0 the odd multiples of
    2**-L, all within |tau| <= _TAU_MAX_UNIT.
    """
    while len(_unit_tables) <= level:
        lvl = len(_unit_tables)
        h = 2.0 ** (-lvl)
        if lvl == 0:
            ks = np.arange(-int(_TAU_MAX_UNIT), int(_TAU_MAX_UNIT) + 1)
            tau = ks * 1.0
        else:
            kmax = int(math.floor(_TAU_MAX_UNIT / h))
            ks = np.arange(-kmax, kmax + 1)
            tau = ks[ks % 2 != 0] * h
        u = math.pi * np.sinh(tau)
        eu = np.exp(-np.abs(u))
        near = eu / (1.0 + eu)
        far = 1.0 / (1.0 + eu)
        t = np.where(u >= 0, far, near)
        tc = np.where(u >= 0, near, far)
        w = math.pi * np.cosh(tau) * t * tc
        for a in (t, tc, w):
            a.flags.writeable = False
        _unit_tables.append((t, tc, w))
    return _unit_tables[level]


def _semi_level(level: int):
    """(u, weight) new at `level` of the exp-sinh rule on (0, inf).

    u(v) = exp(sinh(v)); du/dv = u * cosh(v).  Handles algebraic behavior
    at 0 and (super)exponential decay at infinity.
    """
    while len(_semi_tables) <= level:
        lvl = len(_semi_tables)
        h = 2.0 ** (-lvl)
        if lvl == 0:
            ks = np.arange(int(_V_MIN_SEMI), int(_V_MAX_SEMI) + 1)
            v = ks * 1.0
        else:
            ks = np.arange(math.ceil(_V_MIN_SEMI / h), math.floor(_V_MAX_SEMI / h) + 1)
            v = ks[ks % 2 != 0] * h
        s = np.sinh(v)
        u = np.exp(s)
        w = u * np.cosh(v)
        for a in (u, w):
            a.flags.writeable = False
        _semi_tables.append((u, w))
    return _semi_tables[level]


def _weighted(fvals: np.ndarray, w: np.ndarray) -> np.ndarray:
    # exact zeros from integrand cutoffs must not meet huge weights
    fvals = np.asarray(fvals)
    if fvals.shape != w.shape:
        raise DomainError("integrand returned an array of the wrong shape")
    if np.any(~np.isfinite(fvals)):
        raise DomainError("non-finite integrand sample at an interior node")
    out = np.zeros(
        fvals.shape, dtype=complex if np.iscomplexobj(fvals) else float
    )
    nz = fvals != 0
    out[nz] = fvals[nz] * w[nz]
    return out


def _tail_estimate(inner: float, outer: float) -> float:
    """Geometric tail guess from the two outermost level-0 contributions.

    Nonzero weighted samples at the edge of the node table mean the rule
    may be missing integrand mass beyond it; level refinement cannot see
    that, so the engines downgrade ``converged`` when this estimate is
    not negligible.
    """
    if outer == 0.0:
        return 0.0
    if inner == 0.0 or outer >= 0.75 * inner:
        return math.inf
    rho = outer / inner
    return outer * rho / (1.0 - rho)


def integrate_unit_interval(f, cfg: QuadratureConfig | None = None) -> QuadratureResult:
    """Tanh-sinh integral of ``f`` over (0, 1).

    Parameters
    ----------
    f : callable(t, tc) -> array
        Vectorized integrand; ``tc`` is the exactly-computed ``1 - t``.
    cfg : QuadratureConfig, optional

    Levels are doubled until the successive-level difference drops below
    ``target_rel_tol * (1 + |value|)``; if the budget runs out the best
    value is returned with ``converged=False`` (callers decide whether
    that is an error).
    """
    cfg = cfg or default_config()
    t0, tc0, w0 = _unit_level(0)
    level0 = _weighted(f(t0, tc0), w0)
    tail = max(
        _tail_estimate(abs(level0[1]), abs(level0[0])),
        _tail_estimate(abs(level0[-2]), abs(level0[-1])),
    )
    return _refine(lambda lvl: (lambda a: f(a[0], a[1]))(_unit_level(lvl)[:2]),
                   lambda lvl: _unit_level(lvl)[2],
                   level0, tail, t0.size, cfg)


def integrate_semi_infinite(f, cfg: QuadratureConfig | None = None) -> QuadratureResult:
    """Exp-sinh integral of ``f`` over (0, inf).

    ``f`` receives an array of abscissae u > 0.  Integrands must decay
    at least exponentially at infinity (after the log substitution) and
    may blow up algebraically but integrably at 0.
    """
    cfg = cfg or default_config()
    u0, w0 = _semi_level(0)
    level0 = _weighted(f(u0), w0)
    tail = max(
        _tail_estimate(abs(level0[1]), abs(level0[0])),
        _tail_estimate(abs(level0[-2]), abs(level0[-1])),
    )
    return _refine(lambda lvl: f(_semi_level(lvl)[0]),
                   lambda lvl: _semi_level(lvl)[1],
                   level0, tail, u0.size, cfg)


def _refine(sample, weights, level0, tail, n0, cfg: QuadratureConfig) -> QuadratureResult:
    running = complex(level0.sum())
    nodes_used = n0
    value_prev = running  # h = 1 at level 0
    best, err = value_prev, math.inf
    converged = False
    for level in range(1, cfg.max_levels + 1):
        w = weights(level)
        running += complex(_weighted(sample(level), w).sum())
        nodes_used += w.size
        value = (2.0 ** (-level)) * running
        err = abs(value - value_prev)
        value_prev = value
        best = value
        if level >= 2 and err <= cfg.target_rel_tol * (1.0 + abs(value)):
            converged = True
            break
    if converged and tail > cfg.target_rel_tol * (1.0 + abs(best)):
        converged = False
        err = max(err, tail)
    return QuadratureResult(best, err, nodes_used, converged)


_PROBE_TAUS = (1.0, 2.0, 4.0, 8.0, 16.0, 24.0, 32.0, 48.0, 64.0, 96.0, 128.0, 192.0)


def integrate_vertical_line(
    f, abscissa: float, cfg: QuadratureConfig | None = None
) -> QuadratureResult:
    """Trapezoid integral of ``f(tau)`` over tau in (-inf, inf).

    ``f`` is the integrand already restricted to the vertical line
    Re(zeta) = abscissa, parameterized by the imaginary part tau; it must
    decay at least like exp(-eta |tau|).  The truncation point is twice
    the first probe abscissa at which both tails have dropped below
    tolerance (measured decay, safety factor 2).  Returns the plain
    integral in tau; any 1/(2 pi) convention is the caller's business.

    Raises
    ------
    DomainError
        If no decay below tolerance is detected at the largest probe.
    """
    cfg = cfg or default_config()
    scale = max(float(np.max(np.abs(f(np.array([0.0]))))), 1.0)
    cut = cfg.target_rel_tol * scale * 1e-2
    trunc = None
    for tau in _PROBE_TAUS:
        mags = np.abs(f(np.array([tau, -tau])))
        scale = max(scale, float(np.max(mags)))
        if float(np.max(mags)) < cut:
            trunc = 2.0 * tau
            break
    if trunc is None:
        raise DomainError(
            "integrand does not decay below tolerance along the contour "
            f"(no decay detected out to |tau| = {_PROBE_TAUS[-1]})"
        )

    nodes_used = 0
    n0 = 16
    taus = np.linspace(-trunc, trunc, n0 + 1)
    h = taus[1] - taus[0]
    fv = np.asarray(f(taus))
    if np.any(~np.isfinite(fv)):
        raise DomainError("non-finite integrand sample on the contour")
    nodes_used += taus.size
    inner = fv[1:-1].sum() + 0.5 * (fv[0] + fv[-1])
    value_prev = h * inner
    running = inner
    best, err = value_prev, math.inf
    for _level in range(cfg.max_levels):
        mid = taus[:-1] + 0.5 * h
        fm = np.asarray(f(mid))
        if np.any(~np.isfinite(fm)):
            raise DomainError("non-finite integrand sample on the contour")
        nodes_used += mid.size
        running = running + fm.sum()
        h *= 0.5
        taus = np.sort(np.concatenate([taus, mid]))
        value = h * running
        err = abs(value - value_prev)
        value_prev = value
        best = value
        if err <= cfg.target_rel_tol * (1.0 + abs(value)):
            return QuadratureResult(best, err, nodes_used, True)
    return QuadratureResult(best, err, nodes_used, False)
