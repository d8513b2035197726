"""Five-parameter additive lifetime family.

Cumulative hazard

    H(x) = alpha*x**theta + beta*x**gamma * exp(lam*x),  x >= 0,

a Weibull wear-in term plus an exponentially accelerated Weibull wear-out
term.  Sub-models: beta = 0 gives Weibull(alpha, theta) (exponential at
theta = 1, Rayleigh at theta = 2); lam = 0 gives an additive Weibull pair.
Setting gamma = theta = 1/2 recovers the reduced three-parameter family of
``core``, and those evaluations are delegated so both parameterizations
agree to machine precision.
"""
import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import core
from .core import RnmwParams
from .errors import DomainError, NumericError

__all__ = [
    "NmwParams", "nmw_cumulative_hazard", "nmw_cdf", "nmw_survival",
    "nmw_hazard", "nmw_pdf",
]

# lower bound used for the shape exponents during optimization; keeps the
# likelihood differentiable while allowing a near-constant power term
SHAPE_FLOOR = 1e-6


@dataclass(frozen=True)
class NmwParams:
    """Parameters (alpha, beta, gamma, theta, lam).  Scales alpha, beta and
    the acceleration lam are nonnegative (alpha + beta > 0); the shape
    exponents gamma, theta are strictly positive."""
    alpha: float
    beta: float
    gamma: float
    theta: float
    lam: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "theta", "lam"):
            val = getattr(self, name)
            try:
                fval = float(val)
            except (TypeError, ValueError):
                raise DomainError("%s must be a real number, got %r" % (name, val))
            object.__setattr__(self, name, fval)
            if not math.isfinite(fval):
                raise DomainError("%s must be finite, got %r" % (name, fval))
        if self.alpha < 0.0 or self.beta < 0.0 or self.lam < 0.0:
            raise DomainError("alpha, beta and lam must be >= 0")
        if self.gamma <= 0.0 or self.theta <= 0.0:
            raise DomainError("gamma and theta must be > 0")
        if self.alpha == 0.0 and self.beta == 0.0:
            raise DomainError("alpha and beta cannot both be zero")

    @property
    def is_reduced(self):
        return self.gamma == 0.5 and self.theta == 0.5

    def reduced(self):
        if not self.is_reduced:
            raise DomainError("reduced() needs gamma == theta == 0.5")
        return RnmwParams(self.alpha, self.beta, self.lam)


def _validate_x(x, positive):
    arr = np.asarray(x, dtype=float)
    if arr.size:
        if not np.all(np.isfinite(arr)):
            raise DomainError("x must be finite")
        if positive:
            if np.any(arr <= 0.0):
                raise DomainError("x must be strictly positive")
        elif np.any(arr < 0.0):
            raise DomainError("x must be nonnegative")
    return arr


def _match(x, arr):
    if np.ndim(x) == 0:
        return float(arr)
    return arr


def _cumhaz_arr(q, x):
    out = np.zeros_like(x)
    if q.alpha > 0.0:
        out += q.alpha * x ** q.theta
    if q.beta > 0.0:
        if q.lam == 0.0:
            out += q.beta * x ** q.gamma
        else:
            out += q.beta * x ** q.gamma * np.exp(q.lam * x)
    return out


def _hazard_arr(q, x):
    # x ** (gamma - 1) at x == 0 is handled by the pdf wrapper; here x > 0
    out = np.zeros_like(x)
    if q.alpha > 0.0:
        out += q.alpha * q.theta * x ** (q.theta - 1.0)
    if q.beta > 0.0:
        if q.lam == 0.0:
            out += q.beta * q.gamma * x ** (q.gamma - 1.0)
        else:
            out += q.beta * (q.gamma + q.lam * x) * x ** (q.gamma - 1.0) * np.exp(q.lam * x)
    return out


def nmw_cumulative_hazard(q, x):
    """H(x) for x >= 0."""
    if q.is_reduced:
        return core.cumulative_hazard(q.reduced(), x)
    arr = _validate_x(x, positive=False)
    return _match(x, _cumhaz_arr(q, arr))


def nmw_survival(q, x):
    """S(x) = exp(-H(x)) for x >= 0."""
    if q.is_reduced:
        return core.survival(q.reduced(), x)
    arr = _validate_x(x, positive=False)
    with np.errstate(over="ignore"):
        return _match(x, np.exp(-_cumhaz_arr(q, arr)))


def nmw_cdf(q, x):
    """F(x) = 1 - exp(-H(x)) for x >= 0."""
    if q.is_reduced:
        return core.cdf(q.reduced(), x)
    arr = _validate_x(x, positive=False)
    return _match(x, -np.expm1(-_cumhaz_arr(q, arr)))


def nmw_hazard(q, x):
    """h(x) = alpha*theta*x**(theta-1) + beta*(gamma+lam*x)*x**(gamma-1)*exp(lam*x)
    for x > 0."""
    if q.is_reduced:
        return core.hazard(q.reduced(), x)
    arr = _validate_x(x, positive=True)
    return _match(x, _hazard_arr(q, arr))


def nmw_pdf(q, x):
    """Density f(x) = h(x) * S(x).

    Defined at x == 0 only when both active power terms have exponent >= 1;
    otherwise the hazard diverges there and x == 0 is a domain error.
    """
    if q.is_reduced:
        return core.pdf(q.reduced(), x)
    arr = _validate_x(x, positive=False)
    if np.any(arr == 0.0):
        diverges = (q.alpha > 0.0 and q.theta < 1.0) or (q.beta > 0.0 and q.gamma < 1.0)
        if diverges:
            raise DomainError("pdf is unbounded at x = 0 for these shape exponents")
    with np.errstate(over="ignore", invalid="ignore"):
        h = _hazard_arr(q, arr)
        S = np.exp(-_cumhaz_arr(q, arr))
        out = np.where(S == 0.0, 0.0, h * S)
    return _match(x, out)


def _x_for_target(q, T):
    """Smallest x with H(x) = T, for scalar T > 0.  Doubling bracket with
    overflow pullback, then Brent."""
    def g(x):
        H = _cumhaz_arr(q, np.asarray([x], dtype=float))[0]
        return H - T

    hi = 1.0
    lo = 0.0
    for _ in range(3000):
        val = g(hi)
        if not math.isfinite(val):
            # pull back inside the representable region
            top = hi
            for _ in range(200):
                mid = 0.5 * (lo + top)
                vm = g(mid)
                if math.isfinite(vm):
                    if vm >= 0.0:
                        return float(brentq(g, lo, mid, xtol=1e-300, rtol=1e-12,
                                            maxiter=200))
                    lo = mid
                else:
                    top = mid
            raise NumericError("cumulative hazard target bracketing failed")
        if val >= 0.0:
            if val == 0.0:
                return hi
            return float(brentq(g, lo, hi, xtol=1e-300, rtol=1e-12, maxiter=200))
        lo = hi
        hi *= 2.0
    raise NumericError("cumulative hazard target bracketing failed")


def _nmw_quantile(q, u):
    """Inverse CDF for u in [0, 1); scalar or array."""
    if q.is_reduced:
        return core.quantile(q.reduced(), u)
    arr = np.asarray(u, dtype=float)
    if arr.size:
        if not np.all(np.isfinite(arr)):
            raise DomainError("u must be finite")
        if np.any(arr < 0.0) or np.any(arr >= 1.0):
            raise DomainError("u must lie in [0, 1)")
    flat = arr.ravel()
    out = np.empty_like(flat)
    for i, ui in enumerate(flat):
        T = -math.log1p(-ui)
        out[i] = 0.0 if T == 0.0 else _x_for_target(q, T)
    return _match(u, out.reshape(arr.shape))
