"""NumPy implementations of the numerical kernels.

This module is the reference backend: the compiled extension in
``_native.pyx`` mirrors these routines exactly.  All kernels operate on the
three-parameter law with cumulative hazard

    H(x) = a*sqrt(x) + b*sqrt(x)*exp(lam*x)

and hazard rate

    h(x) = (a + b*(1 + 2*lam*x)*exp(lam*x)) / (2*sqrt(x)).

Overflow policy: exp(lam*x) may overflow to inf for extreme inputs; batch
evaluators propagate inf (survival underflows to 0 downstream) and the
log-likelihood reports -inf instead of raising.
"""
import math

import numpy as np

from .errors import NumericError


def cumhaz(a, b, lam, x):
    """Cumulative hazard on an array of nonnegative times."""
    sx = np.sqrt(x)
    if b == 0.0:
        return a * sx
    if lam == 0.0:
        return a * sx + b * sx
    with np.errstate(over="ignore"):
        return a * sx + b * sx * np.exp(lam * x)


def hazard(a, b, lam, x):
    """Hazard rate on an array of strictly positive times."""
    sx = np.sqrt(x)
    if b == 0.0:
        return a / (2.0 * sx)
    if lam == 0.0:
        return (a + b) / (2.0 * sx)
    with np.errstate(over="ignore"):
        return (a + b * (1.0 + 2.0 * lam * x) * np.exp(lam * x)) / (2.0 * sx)


def loglik(a, b, lam, xf, xc):
    """Log-likelihood: failures contribute log h - H, censored times -H.

    Returns -inf (flagged, not raised) when the hazard vanishes or the
    cumulative hazard overflows at an observation.
    """
    ll = 0.0
    if xf.size:
        sf = np.sqrt(xf)
        if b != 0.0:
            with np.errstate(over="ignore", invalid="ignore"):
                ef = np.exp(lam * xf)
                h = (a + b * (1.0 + 2.0 * lam * xf) * ef) / (2.0 * sf)
                Hf = a * sf + b * sf * ef
        else:
            h = a / (2.0 * sf)
            Hf = a * sf
        if np.any(~np.isfinite(h)) or np.any(~np.isfinite(Hf)) or np.any(h <= 0.0):
            return -np.inf
        with np.errstate(divide="ignore"):
            ll += float(np.sum(np.log(h)) - np.sum(Hf))
    if xc.size:
        sc = np.sqrt(xc)
        if b != 0.0:
            with np.errstate(over="ignore", invalid="ignore"):
                Hc = a * sc + b * sc * np.exp(lam * xc)
        else:
            Hc = a * sc
        if np.any(~np.isfinite(Hc)):
            return -np.inf
        ll -= float(np.sum(Hc))
    return ll


def score_info(a, b, lam, xf, xc):
    """Log-likelihood, analytic score and observed information (3x3).

    Parameter order (a, b, lam).  The hazard is linear in (a, b), so the
    only nonzero second derivatives of h are h_bl and h_ll; the cumulative
    hazard contributes H_bl and H_ll over all observations.
    """
    with np.errstate(over="ignore", invalid="ignore"):
        sf = np.sqrt(xf)
        ef = np.exp(lam * xf)
        h = (a + b * (1.0 + 2.0 * lam * xf) * ef) / (2.0 * sf)
        ha = 1.0 / (2.0 * sf)
        hb = (0.5 + lam * xf) * ef / sf
        hl = b * sf * (1.5 + lam * xf) * ef
        hbl = sf * (1.5 + lam * xf) * ef
        hll = b * np.sqrt(xf ** 3) * (2.5 + lam * xf) * ef

        sc = np.sqrt(xc)
        ec = np.exp(lam * xc)
        sum_sx = float(np.sum(sf) + np.sum(sc))
        sum_sxe = float(np.sum(sf * ef) + np.sum(sc * ec))
        sum_x15e = float(np.sum(xf ** 1.5 * ef) + np.sum(xc ** 1.5 * ec))
        sum_x25e = float(np.sum(xf ** 2.5 * ef) + np.sum(xc ** 2.5 * ec))

    if np.any(~np.isfinite(h)) or np.any(h <= 0.0) or not np.isfinite(sum_sxe):
        nanv = np.full(3, np.nan)
        return -np.inf, nanv, np.full((3, 3), np.nan)

    with np.errstate(divide="ignore"):
        ll = float(np.sum(np.log(h))) - a * sum_sx - b * sum_sxe

    s = np.array([
        float(np.sum(ha / h)) - sum_sx,
        float(np.sum(hb / h)) - sum_sxe,
        float(np.sum(hl / h)) - b * sum_x15e,
    ])
    info = np.empty((3, 3))
    info[0, 0] = np.sum(ha * ha / h ** 2)
    info[0, 1] = info[1, 0] = np.sum(ha * hb / h ** 2)
    info[0, 2] = info[2, 0] = np.sum(ha * hl / h ** 2)
    info[1, 1] = np.sum(hb * hb / h ** 2)
    info[1, 2] = info[2, 1] = np.sum(hb * hl / h ** 2 - hbl / h) + sum_x15e
    info[2, 2] = np.sum(hl * hl / h ** 2 - hll / h) + b * sum_x25e
    return ll, s, info


def inner_ab(u, v, s1, s2, a0, b0, gain_tol, max_iter):
    """Damped Newton for the concave two-scale problem.

    Maximizes sum(log(a*u + b*v)) - a*s1 - b*s2 over a > 0, b >= 0, where u
    and v are the per-failure hazard coefficients and s1, s2 the cumulative
    hazard sums over all observations.  Stops when the predicted Newton gain
    0.5 * g' I^{-1} g drops below gain_tol.  Returns (a, b, ll, iterations).
    """
    a, b = a0, b0
    ll = np.sum(np.log(a * u + b * v)) - a * s1 - b * s2
    it = 0
    for _ in range(max_iter):
        h = a * u + b * v
        ga = np.sum(u / h) - s1
        gb = np.sum(v / h) - s2
        iaa = np.sum((u / h) ** 2)
        iab = np.sum(u * v / h ** 2)
        ibb = np.sum((v / h) ** 2)
        det = iaa * ibb - iab ** 2
        if not np.isfinite(det) or det <= 0:
            break
        da = (ibb * ga - iab * gb) / det
        db = (iaa * gb - iab * ga) / det
        if 0.5 * (ga * da + gb * db) < gain_tol:
            break
        t1, ll1 = 1.0, None
        while t1 > 1e-14:
            a1, b1 = a + t1 * da, b + t1 * db
            if a1 > 0 and b1 >= 0 and np.all(a1 * u + b1 * v > 0):
                c = np.sum(np.log(a1 * u + b1 * v)) - a1 * s1 - b1 * s2
                if np.isfinite(c) and c > ll:
                    ll1 = c
                    break
            t1 *= 0.5
        if ll1 is None:
            break
        a, b, ll = a1, max(b1, 0.0), ll1
        it += 1
    return float(a), float(b), float(ll), it


def quantile_y(a, b, lam, T):
    """Solve G(y) = a*y + b*y*exp(lam*y*y) = T for y >= 0, elementwise.

    G is strictly increasing and convex, and G(y) >= (a+b)*y, so
    y0 = T/(a+b) is always an upper bracket; when b > 0 and lam > 0 the
    root also satisfies y <= max(1, sqrt(log(T/b)/lam)), which keeps the
    bracket representable when T/(a+b) would start in the overflow region.
    Newton steps are taken on the log residual, (log G - log T) * G / G',
    because natural-scale steps stall at ~1/(2*lam*y) when exp(lam*y^2)
    dominates; every step is safeguarded by bisection on the bracket.
    """
    T = np.asarray(T, dtype=float)
    if b == 0.0:
        return T / a
    if lam == 0.0:
        return T / (a + b)
    with np.errstate(all="ignore"):
        y0 = T / (a + b)
        cap = np.sqrt(np.maximum(0.0, np.log(T) - math.log(b)) / lam)
        hi = np.minimum(y0, np.maximum(1.0, cap * (1.0 + 1e-12)))
    if not np.all(np.isfinite(hi)):
        raise NumericError("quantile bracket is not representable for these parameters")
    y = hi.copy()
    lo = np.zeros_like(T)
    done = np.zeros(T.shape, dtype=bool)
    with np.errstate(all="ignore"):
        for _ in range(200):
            e = np.exp(lam * y * y)
            G = a * y + b * y * e
            gp = a + b * e * (1.0 + 2.0 * lam * y * y)
            over = ~np.isfinite(G)
            res = G - T
            above = over | (res > 0)
            hi = np.where(above, y, hi)
            lo = np.where(~above, y, lo)
            step = (np.log(G) - np.log(T)) * G / gp
            ynew = y - step
            out = over | (ynew <= lo) | (ynew >= hi) | ~np.isfinite(ynew)
            ynew = np.where(out, 0.5 * (lo + hi), ynew)
            done = np.abs(ynew - y) <= 1e-15 * np.maximum(ynew, 1e-300)
            y = ynew
            if np.all(done):
                break
    if not np.all(done):
        raise NumericError("quantile iteration cap exhausted")
    return np.where(T == 0.0, 0.0, y)
