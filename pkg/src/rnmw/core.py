"""Three-parameter lifetime distribution with a bathtub-shaped hazard.

The law is defined by its cumulative hazard

    H(x) = alpha*sqrt(x) + beta*sqrt(x)*exp(lam*x),  x >= 0,

so S(x) = exp(-H(x)), F(x) = 1 - S(x), and the hazard rate is

    h(x) = (alpha + beta*(1 + 2*lam*x)*exp(lam*x)) / (2*sqrt(x)).

With beta > 0 and lam > 0 the hazard falls from +inf at the origin to a
single minimum and then climbs, the classic bathtub; with beta == 0 or
lam == 0 it is proportional to 1/sqrt(x) and strictly decreasing.  All
evaluators accept scalars or arrays and return matching shapes.
"""
import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import brentq

from . import _kernels
from .errors import DomainError, NumericError

__all__ = [
    "RnmwParams", "HazardKind", "HazardShape",
    "cumulative_hazard", "cdf", "survival", "pdf", "hazard",
    "hazard_log_derivative", "hazard_shape", "quantile", "sample",
]


@dataclass(frozen=True)
class RnmwParams:
    """Parameter triple (alpha, beta, lam); alpha, beta, lam >= 0, finite,
    and alpha + beta > 0 so the distribution is proper."""
    alpha: float
    beta: float
    lam: float

    def __post_init__(self):
        for name in ("alpha", "beta", "lam"):
            val = getattr(self, name)
            try:
                fval = float(val)
            except (TypeError, ValueError):
                raise DomainError("%s must be a real number, got %r" % (name, val))
            object.__setattr__(self, name, fval)
            if not math.isfinite(fval):
                raise DomainError("%s must be finite, got %r" % (name, fval))
            if fval < 0.0:
                raise DomainError("%s must be >= 0, got %r" % (name, fval))
        if self.alpha == 0.0 and self.beta == 0.0:
            raise DomainError("alpha and beta cannot both be zero")


class HazardKind(enum.Enum):
    BATHTUB = "bathtub"
    DECREASING = "decreasing"


@dataclass(frozen=True)
class HazardShape:
    """Shape classification of the hazard curve.  For a bathtub the location
    and value of the interior minimum are filled in; for a monotone
    decreasing hazard they are None."""
    kind: HazardKind
    minimum_location: Optional[float] = None
    minimum_value: Optional[float] = None


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


def cumulative_hazard(p, x):
    """H(x) for x >= 0."""
    arr = _validate_x(x, positive=False)
    return _match(x, _kernels.cumhaz(p.alpha, p.beta, p.lam, arr.ravel()).reshape(arr.shape))


def survival(p, x):
    """S(x) = exp(-H(x)) for x >= 0."""
    arr = _validate_x(x, positive=False)
    H = _kernels.cumhaz(p.alpha, p.beta, p.lam, arr.ravel()).reshape(arr.shape)
    with np.errstate(over="ignore"):
        return _match(x, np.exp(-H))


def cdf(p, x):
    """F(x) = 1 - exp(-H(x)) for x >= 0, computed via expm1 for accuracy
    near zero."""
    arr = _validate_x(x, positive=False)
    H = _kernels.cumhaz(p.alpha, p.beta, p.lam, arr.ravel()).reshape(arr.shape)
    return _match(x, -np.expm1(-H))


def hazard(p, x):
    """h(x) for x > 0.  Diverges like 1/(2*sqrt(x)) at the origin, so x == 0
    is rejected."""
    arr = _validate_x(x, positive=True)
    return _match(x, _kernels.hazard(p.alpha, p.beta, p.lam, arr.ravel()).reshape(arr.shape))


def pdf(p, x):
    """Density f(x) = h(x) * S(x) for x > 0."""
    arr = _validate_x(x, positive=True)
    flat = arr.ravel()
    h = _kernels.hazard(p.alpha, p.beta, p.lam, flat)
    H = _kernels.cumhaz(p.alpha, p.beta, p.lam, flat)
    with np.errstate(over="ignore", invalid="ignore"):
        S = np.exp(-H)
        out = np.where(S == 0.0, 0.0, h * S)
    return _match(x, out.reshape(arr.shape))


def hazard_log_derivative(p, x):
    """d/dx log h(x), in the overflow-stable form

        -1/(2x) + b*lam*(2*lam*x + 3) / (a*exp(-lam*x) + b*(2*lam*x + 1)).

    Negative on the falling limb, positive on the rising limb; the sign
    change brackets the hazard minimum.
    """
    arr = _validate_x(x, positive=True)
    a, b, lam = p.alpha, p.beta, p.lam
    with np.errstate(under="ignore"):
        denom = a * np.exp(-lam * arr) + b * (2.0 * lam * arr + 1.0)
        out = -1.0 / (2.0 * arr) + b * lam * (2.0 * lam * arr + 3.0) / denom
    return _match(x, out)


def hazard_shape(p):
    """Classify the hazard and locate its minimum.

    The stationarity condition h'(x) = 0 reads

        beta * (4*lam^2*x^2 + 4*lam*x - 1) * exp(lam*x) = alpha,

    which has exactly one positive root when beta > 0 and lam > 0 (the left
    side is strictly increasing from -beta at x = 0).  The root is found by
    bisection-safeguarded Brent on the logarithm of the left side over
    x > (sqrt(2)-1)/(2*lam), where the polynomial factor turns positive.
    """
    a, b, lam = p.alpha, p.beta, p.lam
    if b == 0.0 or lam == 0.0:
        return HazardShape(HazardKind.DECREASING)
    xpos = (math.sqrt(2.0) - 1.0) / (2.0 * lam)
    if a == 0.0:
        x0 = xpos
        return HazardShape(HazardKind.BATHTUB, x0, hazard(p, x0))

    def phi(x):
        # log of the left side minus log alpha; increasing from -inf on
        # (xpos, inf), so sign change brackets the root without overflow
        q = 4.0 * lam * lam * x * x + 4.0 * lam * x - 1.0
        return math.log(b) + lam * x + math.log(q) - math.log(a)

    lo = xpos * (1.0 + 1e-12)
    while phi(lo) > 0.0:
        lo = xpos + (lo - xpos) * 0.5
        if lo - xpos < 5e-324:
            raise NumericError("hazard minimum bracketing failed near the polynomial root")
    hi = max(2.0 * xpos, 1.0 / lam, 1.0)
    it = 0
    while phi(hi) < 0.0:
        hi *= 2.0
        it += 1
        if it > 2000 or not math.isfinite(hi):
            raise NumericError("hazard minimum bracketing failed")
    x0 = brentq(phi, lo, hi, rtol=1e-12, maxiter=200)
    return HazardShape(HazardKind.BATHTUB, float(x0), hazard(p, float(x0)))


def quantile(p, u):
    """Inverse CDF.  Accepts u in [0, 1); u == 0 maps to 0.  Solved for
    y = sqrt(x) from alpha*y + beta*y*exp(lam*y^2) = -log(1-u)."""
    arr = np.asarray(u, dtype=float)
    if arr.size:
        if not np.all(np.isfinite(arr)):
            raise DomainError("u must be finite")
        if np.any(arr < 0.0) or np.any(arr >= 1.0):
            raise DomainError("u must lie in [0, 1)")
    T = -np.log1p(-arr)
    y = _kernels.quantile_y(p.alpha, p.beta, p.lam, T.ravel()).reshape(arr.shape)
    return _match(u, y * y)


def sample(p, n, seed=None, rng=None, uniforms=None):
    """Draw n lifetimes by inversion.

    Exactly one uniform stream is used: an explicit ``uniforms`` array (its
    first n entries), a supplied generator, or a fresh
    ``numpy.random.default_rng(seed)``.
    """
    n = int(n)
    if n < 0:
        raise DomainError("n must be >= 0")
    if uniforms is not None:
        u = np.asarray(uniforms, dtype=float).ravel()
        if u.size < n:
            raise DomainError("need at least n uniforms, got %d" % u.size)
        u = u[:n]
    else:
        if rng is None:
            rng = np.random.default_rng(seed)
        u = rng.random(n)
    if n == 0:
        return np.empty(0)
    return quantile(p, u)
