"""Exact evaluation of the five-parameter lifetime distribution.

The family has CDF ``F(x) = [1 - exp(-a x^b (e^{c x^d} - 1))]^theta`` on
x >= 0.  Everything here is computed through two log-space kernels: the inner
exponent ``z(x) = a x^b (e^{c x^d} - 1)`` (carried as log z so it never
underflows) and a stable ``log(1 - e^{-z})``.  All evaluators accept scalars
or arrays of evaluation points and are pure functions of their inputs.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .exceptions import (
    BracketError,
    DomainError,
    InvalidParametersError,
    LeftTailUnderflowError,
    TailOverflowError,
)
from .numerics import RootConfig, find_root_increasing

__all__ = [
    "EgwgParams",
    "cdf",
    "log_cdf",
    "pdf",
    "log_pdf",
    "survival",
    "log_survival",
    "hazard",
    "reversed_hazard",
    "quantile",
    "median",
    "mode",
    "sample",
]

_LN2 = math.log(2.0)
_LOG_TINY = math.log(1e-300)   # left-tail clamp threshold on log F
_LOG_MAX = 709.0               # exp() overflow edge


@dataclass(frozen=True)
class EgwgParams:
    """Parameter vector (a, b, c, d, theta).

    b, theta and d are shape parameters, a is a scale-like rate and c an
    acceleration parameter.  b = 0 selects the analytic limit sub-family
    (all evaluators use the rewritten form below, never 0/0 arithmetic).
    """

    a: float
    b: float
    c: float
    d: float
    theta: float

    def __post_init__(self):
        for name in ("a", "c", "d", "theta"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0.0):
                raise InvalidParametersError(f"{name} must be a finite positive number, got {v!r}")
        if not (isinstance(self.b, (int, float)) and math.isfinite(self.b) and self.b >= 0.0):
            raise InvalidParametersError(f"b must be a finite number >= 0, got {self.b!r}")

    def to_dict(self) -> dict:
        return {k: float(v) for k, v in asdict(self).items()}

    @classmethod
    def from_dict(cls, d: dict) -> "EgwgParams":
        try:
            return cls(a=float(d["a"]), b=float(d["b"]), c=float(d["c"]),
                       d=float(d["d"]), theta=float(d["theta"]))
        except KeyError as exc:
            raise InvalidParametersError(f"missing parameter field {exc}") from exc


# ---------------------------------------------------------------------------
# log-space kernels
# ---------------------------------------------------------------------------

def _log_expm1(y):
    """log(e^y - 1) for y > 0, elementwise, without overflow or underflow."""
    y = np.asarray(y, dtype=float)
    out = np.empty_like(y)
    tiny = y < 1e-8
    big = y > 33.0
    mid = ~(tiny | big)
    with np.errstate(divide="ignore"):
        out[tiny] = np.log(y[tiny]) + 0.5 * y[tiny]
    out[mid] = np.log(np.expm1(y[mid]))
    out[big] = y[big]          # correction log(1 - e^{-y}) < 5e-15 here
    return out


def _log1mexp(z, logz):
    """log(1 - e^{-z}) for z > 0, using log z when z itself underflows."""
    z = np.asarray(z, dtype=float)
    logz = np.asarray(logz, dtype=float)
    out = np.empty_like(z)
    deep = logz < -36.7       # z below 1.1e-16: log(1 - e^{-z}) = log z to 1 ulp
    small = (~deep) & (z <= _LN2)
    big = (~deep) & (z > _LN2)
    out[deep] = logz[deep]
    out[small] = np.log(-np.expm1(-z[small]))
    out[big] = np.log1p(-np.exp(-z[big]))
    return out


def _inner(p: EgwgParams, x):
    """Return (z, log z, s = x^d, c*s) for x > 0, all elementwise."""
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore", divide="ignore"):
        lnx = np.log(x)
        s = x ** p.d
        cs = p.c * s
        logz = math.log(p.a) + p.b * lnx + _log_expm1(cs)
        z = np.exp(logz)
    return z, logz, s, cs


def _as_x_array(x, *, allow_zero: bool) -> tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    scalar = arr.ndim == 0
    arr = np.atleast_1d(arr)
    if np.any(~np.isfinite(arr)):
        raise DomainError("evaluation points must be finite")
    bad = arr < 0.0 if allow_zero else arr <= 0.0
    if np.any(bad):
        side = "x >= 0" if allow_zero else "x > 0"
        raise DomainError(f"evaluation requires {side}, got {arr[bad][0]!r}")
    return arr, scalar


def _ret(values: np.ndarray, scalar: bool):
    return float(values[0]) if scalar else values


# ---------------------------------------------------------------------------
# distribution functions
# ---------------------------------------------------------------------------

def log_cdf(p: EgwgParams, x):
    """log F(x) for x >= 0 (log of 0 at x = 0 is -inf)."""
    xs, scalar = _as_x_array(x, allow_zero=True)
    out = np.full(xs.shape, -np.inf)
    pos = xs > 0.0
    if np.any(pos):
        z, logz, _, _ = _inner(p, xs[pos])
        out[pos] = p.theta * _log1mexp(z, logz)
    return _ret(out, scalar)


def cdf(p: EgwgParams, x):
    """F(x) = [1 - e^{-a x^b (e^{c x^d} - 1)}]^theta, for x >= 0."""
    lf = log_cdf(p, x)
    return np.exp(lf) if not np.isscalar(lf) else math.exp(lf)


def log_survival(p: EgwgParams, x):
    """log R(x), evaluated as its own expression (not via 1 - cdf)."""
    xs, scalar = _as_x_array(x, allow_zero=True)
    out = np.zeros(xs.shape)
    pos = xs > 0.0
    if np.any(pos):
        z, logz, _, _ = _inner(p, xs[pos])
        lf = p.theta * _log1mexp(z, logz)
        with np.errstate(divide="ignore"):
            out[pos] = np.log(-np.expm1(lf))
    return _ret(out, scalar)


def survival(p: EgwgParams, x):
    """R(x) = 1 - F(x), keeping full precision for values near 1."""
    xs, scalar = _as_x_array(x, allow_zero=True)
    out = np.ones(xs.shape)
    pos = xs > 0.0
    if np.any(pos):
        z, logz, _, _ = _inner(p, xs[pos])
        lf = p.theta * _log1mexp(z, logz)
        out[pos] = -np.expm1(lf)
    return _ret(out, scalar)


def _theta_clamp_x(p: EgwgParams) -> float:
    """Smallest x the density is evaluated at when theta < 1.

    The density is unbounded as x -> 0+ for theta < 1; evaluations below the
    point where F = 1e-300 are clamped there instead of overflowing.  When
    that point is itself below the floating-point range the clamp is inert.
    """
    try:
        return quantile(p, 1e-300)
    except BracketError:
        return 0.0


def log_pdf(p: EgwgParams, x):
    """log f(x) for x > 0.

    Uses the rewrite a*b*x^{b-1}*(1 + (c d / b) x^d - e^{-c x^d})
    = a x^{b-1} * [b (1 - e^{-c x^d}) + c d x^d], which evaluates the b -> 0
    limit directly instead of producing 0 * inf.
    """
    xs, scalar = _as_x_array(x, allow_zero=False)
    if p.theta < 1.0 and xs.size:
        # the density blows up toward 0 when theta < 1; clamp only points in
        # the ultra-deep left tail (F below 1e-300), where the blow-up could
        # otherwise overflow.  The cheap log F screen avoids the clamp-point
        # root solve on the hot path.
        xmin = float(xs.min())
        zm, logzm, _, _ = _inner(p, xmin)
        if float(p.theta * _log1mexp(zm, logzm)) < _LOG_TINY:
            xc = _theta_clamp_x(p)
            if xc > 0.0:
                xs = np.maximum(xs, xc)
    z, logz, s, cs = _inner(p, xs)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        lnx = np.log(xs)
        w = p.b * (-np.expm1(-cs)) + p.c * p.d * s
        out = (math.log(p.a) + math.log(p.theta) + (p.b - 1.0) * lnx
               + cs - z + np.log(w) + (p.theta - 1.0) * _log1mexp(z, logz))
    # deep right tail: cs - z -> -inf dominates; make sure no NaN from inf - inf
    bad = np.isnan(out)
    if np.any(bad):
        out[bad] = -np.inf
    return _ret(np.minimum(out, _LOG_MAX), scalar)


def pdf(p: EgwgParams, x):
    """f(x) = exp(log_pdf(x)); density defined on the open positive half-line."""
    lp = log_pdf(p, x)
    return np.exp(lp) if not np.isscalar(lp) else math.exp(lp)


def _largest_representable_x(p: EgwgParams) -> float:
    """x beyond which R(x) underflows to exactly zero (approximate)."""
    target = math.log(745.0 - min(0.0, math.log(p.theta)))
    try:
        return find_root_increasing(
            lambda x: float(_inner(p, x)[1]), target, RootConfig(x_tol=1e-6))
    except BracketError:
        return math.inf


def hazard(p: EgwgParams, x):
    """h(x) = f(x) / R(x), computed as exp(log f - log R) for tail stability."""
    xs, scalar = _as_x_array(x, allow_zero=False)
    lr = log_survival(p, xs)
    lr = np.atleast_1d(lr)
    if np.any(np.isinf(lr) & (lr < 0)):
        raise TailOverflowError(
            "survival underflowed to 0; largest representable point is about "
            f"x = {_largest_representable_x(p):.6g}")
    lp = np.atleast_1d(log_pdf(p, xs))
    return _ret(np.exp(lp - lr), scalar)


def reversed_hazard(p: EgwgParams, x):
    """r(x) = f(x) / F(x) for x > 0 with F(x) > 0."""
    xs, scalar = _as_x_array(x, allow_zero=False)
    lf = np.atleast_1d(log_cdf(p, xs))
    if np.any(lf < _LOG_TINY):
        raise LeftTailUnderflowError("CDF underflowed in the extreme left tail")
    lp = np.atleast_1d(log_pdf(p, xs))
    return _ret(np.exp(lp - lf), scalar)


# ---------------------------------------------------------------------------
# quantiles, mode, sampling
# ---------------------------------------------------------------------------

def _log_target(p: EgwgParams, q: float) -> float:
    """log of t(q) = -ln(1 - q^{1/theta}) / a with u = q^{1/theta}.

    Three branches keep full relative precision: u negligible (t = u),
    u below 1/2 (log1p on -u), and u near 1 (1 - u formed by expm1 so it
    survives u rounding to 1.0).
    """
    lnu = math.log(q) / p.theta
    if lnu < -36.0:
        t_log = lnu                                  # -log1p(-u) = u to 1 ulp
    elif lnu < -_LN2:
        t_log = math.log(-math.log1p(-math.exp(lnu)))
    else:
        t_log = math.log(-math.log(-math.expm1(lnu)))
    return t_log - math.log(p.a)


def quantile(p: EgwgParams, q) -> float:
    """Inverse CDF.  Solves x^b (e^{c x^d} - 1) = t(q) in log space.

    The left side is strictly increasing with full real log-range, so the
    root exists and is unique for every q in (0, 1); q = 0 returns 0.
    """
    q = float(q)
    if not (0.0 <= q < 1.0):
        raise DomainError(f"quantile requires 0 <= q < 1, got {q!r}")
    if q == 0.0:
        return 0.0
    log_t = _log_target(p, q)

    def g(x: float) -> float:
        return p.b * math.log(x) + float(_log_expm1(p.c * x ** p.d))

    return find_root_increasing(g, log_t)


def median(p: EgwgParams) -> float:
    """The distribution median; alias of quantile(p, 0.5)."""
    return quantile(p, 0.5)


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _golden_max(fn, lo: float, hi: float, iters: int = 200) -> float:
    """Golden-section maximiser of a unimodal fn on [lo, hi]."""
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = fn(x1), fn(x2)
    for _ in range(iters):
        if hi - lo <= 1e-14 * (abs(lo) + abs(hi)):
            break
        if f1 < f2:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = fn(x2)
        else:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = fn(x1)
    return 0.5 * (lo + hi)


def mode(p: EgwgParams, grid_points: int = 512) -> float:
    """Maximiser of the density over (0, inf); 0.0 denotes a boundary mode.

    Scans a log-spaced grid between the 1e-6 and 1 - 1e-6 quantiles, then
    refines with golden-section search.  When the supremum is approached as
    x -> 0+ (e.g. theta < 1, or decreasing sub-family densities), the
    boundary mode 0.0 is reported.  Flat ties resolve to the leftmost point.
    """
    lo = quantile(p, 1e-6)
    hi = quantile(p, 1.0 - 1e-6)
    grid = np.geomspace(lo, hi, grid_points)
    lp = np.atleast_1d(log_pdf(p, grid))
    i = int(np.argmax(lp))
    if i == 0:
        # probe toward 0: nondecreasing log-density as x shrinks => boundary
        probes = grid[0] / np.array([4.0, 16.0, 64.0])
        lp_probe = np.atleast_1d(log_pdf(p, probes))
        if lp_probe[0] >= lp[0] and np.all(np.diff(lp_probe) >= 0.0):
            return 0.0
        bracket = (probes[0], grid[1])
    elif i == grid_points - 1:
        bracket = (grid[i - 1], hi)
    else:
        bracket = (grid[i - 1], grid[i + 1])
    return _golden_max(lambda x: float(log_pdf(p, x)), *bracket)


def sample(p: EgwgParams, n: int, seed: int) -> np.ndarray:
    """n inverse-transform draws from a seeded Philox4x64 uniform stream.

    The generator (numpy's Philox counter-based bit generator seeded through
    SeedSequence(seed)) is fixed as part of the I/O contract: identical seed
    and parameters always reproduce the identical sequence.  The quantile
    equation is solved for the whole batch by bisection in log x, to machine
    precision.
    """
    n = int(n)
    if n < 1:
        raise DomainError(f"sample size must be >= 1, got {n}")
    rng = np.random.Generator(np.random.Philox(seed))
    u = rng.random(n)
    return _batch_quantile(p, u)


def _batch_quantile(p: EgwgParams, q: np.ndarray) -> np.ndarray:
    out = np.zeros(q.shape)
    pos = q > 0.0
    if not np.any(pos):
        return out
    qq = q[pos]
    lnu = np.log(qq) / p.theta
    with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
        small = np.log(-np.log1p(-np.exp(lnu)))      # full precision for u < 1/2
        near1 = np.log(-np.log(-np.expm1(lnu)))      # survives u rounding to 1
        log_t = np.where(lnu < -36.0, lnu,
                         np.where(lnu < -_LN2, small, near1)) - math.log(p.a)

    def g(v):   # strictly increasing in v = log x
        return p.b * v + _log_expm1(p.c * np.exp(p.d * v))

    # one bracket spans all targets; endpoints found on the extreme targets
    v_lo = math.log(quantile(p, float(qq.min())) * 0.5)
    v_hi = math.log(quantile(p, float(qq.max())) * 2.0)
    lo = np.full(qq.shape, v_lo)
    hi = np.full(qq.shape, v_hi)
    for _ in range(64):       # (hi-lo) * 2^-64 is far below double precision
        mid = 0.5 * (lo + hi)
        high = g(mid) >= log_t
        hi = np.where(high, mid, hi)
        lo = np.where(high, lo, mid)
    out[pos] = np.exp(0.5 * (lo + hi))
    return out
