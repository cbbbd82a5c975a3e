"""Reliability metrics computed from their defining integrals.

Moments, MTTF/MTTR/MTBF, steady-state availability, maintainability, mean
residual life, mean past life and order-statistic densities.  Every quantity
is obtained by adaptive quadrature of the defining integral; nothing here
relies on series expansions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from . import distribution as dist
from .distribution import EgwgParams
from .exceptions import DomainError, LeftTailUnderflowError, TailOverflowError
from .numerics import QuadratureConfig, integrate

__all__ = [
    "RepairableSystem",
    "raw_moment",
    "mttf",
    "mtbf",
    "availability",
    "maintainability",
    "mean_residual_life",
    "mean_past_life",
    "order_stat_pdf",
]

_TAIL_Q = 1.0 - 1e-14   # quadrature domain cap for survival integrals


def _scaled_cfg(cfg: QuadratureConfig | None, magnitude: float) -> QuadratureConfig:
    """Pin the absolute tolerance below the expected integral magnitude.

    Distributions whose support sits at extreme scales (say 1e-26) would
    otherwise be 'converged' the moment the error dips under the default
    absolute tolerance, long before any relative accuracy is reached.
    """
    if cfg is None:
        from .numerics import default_quadrature_config
        cfg = default_quadrature_config()
    if not (magnitude > 0.0 and math.isfinite(magnitude)):
        return cfg
    target = cfg.rel_tol * magnitude * 1e-2
    if target >= cfg.abs_tol:
        return cfg
    return QuadratureConfig(rel_tol=cfg.rel_tol, abs_tol=target,
                            max_subdivisions=cfg.max_subdivisions)


def raw_moment(p: EgwgParams, r: int, cfg: QuadratureConfig | None = None) -> float:
    """E[X^r] as the integral of x^r f(x) over the positive half-line.

    Finite for every valid parameter vector (the right tail decays doubly
    exponentially); r = 0 returns the normalisation 1.  Quadrature accuracy
    failures propagate to the caller.
    """
    r = int(r)
    if r < 0:
        raise DomainError(f"moment order must be >= 0, got {r}")
    if r == 0:
        return 1.0
    med = dist.quantile(p, 0.5)
    scale = med * max(1, r)

    def f(x: float) -> float:
        return x ** r * float(dist.pdf(p, x))

    return integrate(f, 0.0, math.inf, _scaled_cfg(cfg, 0.5 * med ** r), scale=scale)


def mttf(p: EgwgParams, cfg: QuadratureConfig | None = None) -> float:
    """Mean time to failure: the first raw moment.

    The same function serves the repair law, in which case the value is the
    mean time to repair (the laws share one functional form).
    """
    return raw_moment(p, 1, cfg)


@dataclass(frozen=True)
class RepairableSystem:
    """A failure law paired with a repair law, both with finite means."""

    failure: EgwgParams
    repair: EgwgParams

    def __post_init__(self):
        for name in ("failure", "repair"):
            m = mttf(getattr(self, name))
            if not (math.isfinite(m) and m > 0.0):
                raise DomainError(f"{name} law has no finite positive mean")


def mtbf(sys: RepairableSystem, cfg: QuadratureConfig | None = None) -> float:
    """Mean time between failures: MTTF + MTTR."""
    return mttf(sys.failure, cfg) + mttf(sys.repair, cfg)


def availability(sys: RepairableSystem, cfg: QuadratureConfig | None = None) -> float:
    """Steady-state availability MTTF / (MTTF + MTTR).

    Equals 0.5 exactly when the failure and repair laws coincide.
    """
    up = mttf(sys.failure, cfg)
    down = mttf(sys.repair, cfg)
    return up / (up + down)


def maintainability(repair: EgwgParams, t):
    """Probability a repair completes by time t; the repair law's CDF."""
    return dist.cdf(repair, t)


def mean_residual_life(p: EgwgParams, t: float,
                       cfg: QuadratureConfig | None = None) -> float:
    """m(t) = (1 / R(t)) * integral of R over (t, inf); m(0) is the mean.

    The quadrature domain is capped at the 1 - 1e-14 quantile; the mass
    beyond is added as R(x_hi)/h(x_hi), a bound that is exact to the same
    1e-14 order because the hazard increases in the far tail.
    """
    t = float(t)
    if t < 0.0:
        raise DomainError(f"mean residual life requires t >= 0, got {t}")
    rt = dist.survival(p, t)
    if rt <= 0.0:
        raise TailOverflowError(f"survival underflowed at t = {t!r}")
    x_hi = dist.quantile(p, _TAIL_Q)
    if t >= x_hi:
        # already beyond the cap: the increasing-hazard bound is the estimate
        return 1.0 / float(dist.hazard(p, t))
    local = _scaled_cfg(cfg, rt * (x_hi - t))
    body = integrate(lambda x: float(dist.survival(p, x)), t, x_hi, local)
    tail = dist.survival(p, x_hi) / float(dist.hazard(p, x_hi))
    return (body + tail) / rt


def mean_past_life(p: EgwgParams, t: float,
                   cfg: QuadratureConfig | None = None) -> float:
    """P(t) = (1 / F(t)) * integral of F over (0, t); satisfies 0 < P(t) < t."""
    t = float(t)
    if t <= 0.0:
        raise DomainError(f"mean past life requires t > 0, got {t}")
    ft = dist.cdf(p, t)
    if ft <= 0.0:
        raise LeftTailUnderflowError(f"CDF underflowed at t = {t!r}")
    body = integrate(lambda x: float(dist.cdf(p, x)), 0.0, t, _scaled_cfg(cfg, ft * t))
    return body / ft


def order_stat_pdf(p: EgwgParams, i: int, n: int, x):
    """Density of the i-th smallest of n i.i.d. lifetimes at x > 0.

    n! / ((i-1)! (n-i)!) * f(x) F(x)^{i-1} (1-F(x))^{n-i}, with the
    combinatorial prefactor evaluated through log-gamma.  i = 1 and i = n
    give the minimum and maximum order statistics.
    """
    i, n = int(i), int(n)
    if n < 1 or not (1 <= i <= n):
        raise DomainError(f"order statistic index out of range: i={i}, n={n}")
    xs = np.asarray(x, dtype=float)
    scalar = xs.ndim == 0
    xs = np.atleast_1d(xs)
    pref = gammaln(n + 1) - gammaln(i) - gammaln(n - i + 1)
    total = pref + np.atleast_1d(dist.log_pdf(p, xs))
    # add the F / R powers only when their exponents are nonzero, so that an
    # underflowed log (-inf) cannot poison the i = 1 / i = n boundary cases
    if i > 1:
        total = total + (i - 1) * np.atleast_1d(dist.log_cdf(p, xs))
    if n > i:
        total = total + (n - i) * np.atleast_1d(dist.log_survival(p, xs))
    out = np.exp(total)
    return float(out[0]) if scalar else out
