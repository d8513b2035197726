"""Information criteria, Kaplan-Meier, Kolmogorov-Smirnov, nested tests,
and total-time-on-test transforms."""
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.integrate import quad

from . import core, moments, nmw
from .core import RnmwParams
from .errors import DomainError, NumericError
from .nmw import NmwParams

__all__ = [
    "CriteriaReport", "information_criteria",
    "KmCurve", "kaplan_meier", "ks_statistic",
    "LrtResult", "likelihood_ratio_test",
    "TttCurve", "empirical_ttt", "fitted_ttt",
]

_NESTING_SLACK = 1e-6


@dataclass(frozen=True)
class CriteriaReport:
    """Penalized likelihood criteria.  ``caic_bozdogan`` is BIC + k (the
    consistent-AIC convention); note that some applied work labels the
    corrected AIC as CAIC instead, which is reported here as ``aicc``.
    ``aicc`` is NaN with ``aicc_defined=False`` when n <= k + 1."""
    loglik: float
    k: int
    n: int
    aic: float
    bic: float
    aicc: float
    caic_bozdogan: float
    aicc_defined: bool


def information_criteria(loglik, k, n):
    if isinstance(k, bool) or not isinstance(k, (int, np.integer)) or k < 0:
        raise DomainError("k must be a nonnegative integer")
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)) or n < 1:
        raise DomainError("n must be a positive integer")
    loglik = float(loglik)
    if math.isnan(loglik):
        raise DomainError("loglik must not be NaN")
    k, n = int(k), int(n)
    aic = -2.0 * loglik + 2.0 * k
    bic = -2.0 * loglik + k * math.log(n)
    if n > k + 1:
        aicc = aic + 2.0 * k * (k + 1.0) / (n - k - 1.0)
        defined = True
    else:
        aicc = math.nan
        defined = False
    caic = bic + k
    return CriteriaReport(loglik, k, n, aic, bic, aicc, caic, defined)


@dataclass(frozen=True)
class KmCurve:
    """Product-limit survival estimate.  ``times`` are the distinct failure
    times; ``survival[j]`` is the estimate just after times[j].  Censoring
    ties at a failure time are treated as still at risk there (failures
    first)."""
    times: np.ndarray
    survival: np.ndarray
    n: int

    def survival_at(self, t):
        idx = np.searchsorted(self.times, np.asarray(t, dtype=float), side="right")
        vals = np.concatenate([[1.0], self.survival])
        out = vals[idx]
        return float(out) if np.ndim(t) == 0 else out

    def survival_before(self, t):
        idx = np.searchsorted(self.times, np.asarray(t, dtype=float), side="left")
        vals = np.concatenate([[1.0], self.survival])
        out = vals[idx]
        return float(out) if np.ndim(t) == 0 else out

    def cdf_at(self, t):
        s = self.survival_at(t)
        return 1.0 - s


def kaplan_meier(ds):
    times = ds.times
    fail = ds.is_failure
    ftimes = np.unique(times[fail])
    surv = np.empty(ftimes.size)
    s = 1.0
    for j, tj in enumerate(ftimes):
        at_risk = int(np.sum(times >= tj))
        deaths = int(np.sum(fail & (times == tj)))
        s *= 1.0 - deaths / at_risk
        surv[j] = s
    return KmCurve(ftimes, surv, int(times.size))


def ks_statistic(ds, cdf):
    """Kolmogorov-Smirnov distance between the product-limit estimate and a
    fitted distribution function, taking the supremum over both sides of
    every estimate jump."""
    km = kaplan_meier(ds)
    if km.times.size == 0:
        raise DomainError("the distance requires at least one failure")
    tf = km.times
    fhat = 1.0 - km.survival
    fhat_minus = 1.0 - np.concatenate([[1.0], km.survival[:-1]])
    try:
        fmod = np.asarray(cdf(tf), dtype=float)
        if fmod.shape != tf.shape:
            raise ValueError
    except Exception:
        fmod = np.array([float(cdf(float(t))) for t in tf])
    if not np.all(np.isfinite(fmod)):
        raise NumericError("model cdf evaluated to a non-finite value")
    return float(max(np.max(np.abs(fhat - fmod)), np.max(np.abs(fhat_minus - fmod))))


@dataclass(frozen=True)
class LrtResult:
    omega: float
    p_value: float
    df: int


def likelihood_ratio_test(loglik_full, loglik_reduced):
    """Test of the reduced family (two shape exponents pinned at one half)
    inside the five-parameter family: omega = 2*(ll_full - ll_reduced),
    referred to chi-square with 2 degrees of freedom, for which the upper
    tail is exp(-omega/2)."""
    lf, lr = float(loglik_full), float(loglik_reduced)
    if not (math.isfinite(lf) and math.isfinite(lr)):
        raise DomainError("log-likelihoods must be finite")
    diff = lf - lr
    if diff < -_NESTING_SLACK:
        raise DomainError(
            "full-model log-likelihood is below the reduced model by more "
            "than the numerical slack; the full-model fit is unusable")
    omega = max(0.0, 2.0 * diff)
    return LrtResult(float(omega), float(math.exp(-0.5 * omega)), 2)


@dataclass(frozen=True)
class TttCurve:
    """Scaled total-time-on-test transform, anchored at (0, 0) and (1, 1)."""
    u: np.ndarray
    value: np.ndarray


def empirical_ttt(ds):
    """Scaled empirical transform of a complete sample:

        T_i = (sum of the i smallest times + (n - i) * t_(i)) / total time,

    plotted against i/n and anchored at (0, 0).  A convex-then-concave
    (first below, then above the diagonal) pattern is the classical visual
    signature of a bathtub hazard.  Censored data are rejected."""
    if np.any(~ds.is_failure):
        raise DomainError("the empirical transform is defined for complete samples only")
    xs = np.sort(ds.times)
    n = xs.size
    cum = np.cumsum(xs)
    total = cum[-1]
    tvals = (cum + (n - np.arange(1, n + 1)) * xs) / total
    u = np.concatenate([[0.0], np.arange(1, n + 1) / n])
    v = np.concatenate([[0.0], tvals])
    return TttCurve(u, v)


def _rnmw_survival_y(p, y):
    # survival as a function of y = sqrt(x), with the wear-out exponential
    # evaluated in log space once it would overflow
    a, b, lam = p.alpha, p.beta, p.lam
    G = a * y
    if b > 0.0 and y > 0.0:
        m = lam * y * y
        if m > 690.0:
            lg = math.log(b) + math.log(y) + m
            G = math.inf if lg > 700.0 else G + math.exp(lg)
        else:
            G += b * y * math.exp(m)
    return math.exp(-G) if G < 745.0 else 0.0


def _segment_integrals(surv_y, ys, mean):
    # integral of S(t) dt from 0 to ys[i]^2, evaluated segmentwise in
    # y = sqrt(t) so the integrand is smooth at the origin
    out = np.empty(ys.size - 1)
    acc = 0.0
    absref = 1e-13 * max(mean, 1e-300)
    for i in range(ys.size - 1):
        lo, hi = ys[i], ys[i + 1]
        if hi > lo:
            res = quad(lambda y: 2.0 * y * surv_y(y), lo, hi,
                       epsabs=absref, epsrel=1e-9, limit=200, full_output=1)
            if len(res) > 3:
                raise NumericError("transform quadrature did not converge: %s" % res[3])
            acc += res[0]
        out[i] = acc
    return out


def fitted_ttt(params, u=None):
    """Scaled transform of a fitted law on a grid of probabilities:

        value(u) = integral of S(t) dt from 0 to F^{-1}(u), divided by the mean.

    Defaults to an even grid on (0, 1).  Works for both families."""
    if u is None:
        u = np.linspace(0.005, 0.995, 199)
    u = np.sort(np.asarray(u, dtype=float).ravel())
    if u.size == 0:
        raise DomainError("the probability grid must be nonempty")
    if not np.all(np.isfinite(u)) or np.any(u <= 0.0) or np.any(u >= 1.0):
        raise DomainError("probabilities must lie strictly inside (0, 1)")

    if isinstance(params, RnmwParams):
        xq = np.asarray(core.quantile(params, u), dtype=float)
        mean = moments.raw_moment_quadrature(params, 1)
        surv_y = lambda y: _rnmw_survival_y(params, y)
    elif isinstance(params, NmwParams):
        xq = np.asarray(nmw._nmw_quantile(params, u), dtype=float)
        x_up = nmw._x_for_target(params, 740.0)
        surv_y = lambda y: float(nmw.nmw_survival(params, y * y))
        res = quad(lambda y: 2.0 * y * surv_y(y), 0.0, math.sqrt(x_up),
                   epsabs=0.0, epsrel=1e-10, limit=200, full_output=1)
        if len(res) > 3:
            raise NumericError("mean quadrature did not converge: %s" % res[3])
        mean = float(res[0])
    else:
        raise DomainError("params must be RnmwParams or NmwParams")
    if not (math.isfinite(mean) and mean > 0.0):
        raise NumericError("mean did not evaluate to a positive finite value")

    ys = np.concatenate([[0.0], np.sqrt(xq)])
    partial = _segment_integrals(surv_y, ys, mean)
    vals = np.clip(np.maximum.accumulate(partial / mean), 0.0, 1.0)
    return TttCurve(np.concatenate([[0.0], u, [1.0]]),
                    np.concatenate([[0.0], vals, [1.0]]))
