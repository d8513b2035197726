# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled implementations of the numerical kernels.

Mirrors ``_fallback.py`` function for function; see that module for the
algorithm notes.  The public surface accepts and returns the same types
(floats and C-contiguous float64 arrays).
"""
from libc.math cimport exp, log, sqrt, isfinite, fabs, INFINITY, NAN

import numpy as np

from .errors import NumericError


def cumhaz(double a, double b, double lam, double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double sx
    for i in range(n):
        sx = sqrt(x[i])
        if b == 0.0:
            out[i] = a * sx
        elif lam == 0.0:
            out[i] = a * sx + b * sx
        else:
            out[i] = a * sx + b * sx * exp(lam * x[i])
    return out_arr


def hazard(double a, double b, double lam, double[::1] x):
    cdef Py_ssize_t i, n = x.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double sx
    for i in range(n):
        sx = sqrt(x[i])
        if b == 0.0:
            out[i] = a / (2.0 * sx)
        elif lam == 0.0:
            out[i] = (a + b) / (2.0 * sx)
        else:
            out[i] = (a + b * (1.0 + 2.0 * lam * x[i]) * exp(lam * x[i])) / (2.0 * sx)
    return out_arr


def loglik(double a, double b, double lam, double[::1] xf, double[::1] xc):
    cdef Py_ssize_t i, nf = xf.shape[0], nc = xc.shape[0]
    cdef double ll = 0.0, s, e, h, H
    for i in range(nf):
        s = sqrt(xf[i])
        if b != 0.0:
            e = exp(lam * xf[i])
            h = (a + b * (1.0 + 2.0 * lam * xf[i]) * e) / (2.0 * s)
            H = a * s + b * s * e
        else:
            h = a / (2.0 * s)
            H = a * s
        if not isfinite(h) or not isfinite(H) or h <= 0.0:
            return -INFINITY
        ll += log(h) - H
    for i in range(nc):
        s = sqrt(xc[i])
        if b != 0.0:
            H = a * s + b * s * exp(lam * xc[i])
        else:
            H = a * s
        if not isfinite(H):
            return -INFINITY
        ll -= H
    return ll


def score_info(double a, double b, double lam, double[::1] xf, double[::1] xc):
    cdef Py_ssize_t i, nf = xf.shape[0], nc = xc.shape[0]
    cdef double s, e, h, ha, hb, hl, hbl, hll, x15, lx
    cdef double sum_sx = 0.0, sum_sxe = 0.0, sum_x15e = 0.0, sum_x25e = 0.0
    cdef double slogh = 0.0, sa = 0.0, sb = 0.0, sl = 0.0
    cdef double iaa = 0.0, iab = 0.0, ial = 0.0, ibb = 0.0, ibl = 0.0, ill = 0.0
    cdef bint bad = 0

    for i in range(nf):
        s = sqrt(xf[i])
        lx = lam * xf[i]
        e = exp(lx)
        x15 = xf[i] * s
        h = (a + b * (1.0 + 2.0 * lx) * e) / (2.0 * s)
        if not isfinite(h) or h <= 0.0 or not isfinite(e):
            bad = 1
            break
        ha = 1.0 / (2.0 * s)
        hb = (0.5 + lx) * e / s
        hl = b * s * (1.5 + lx) * e
        hbl = s * (1.5 + lx) * e
        hll = b * x15 * (2.5 + lx) * e
        slogh += log(h)
        sa += ha / h
        sb += hb / h
        sl += hl / h
        iaa += (ha / h) * (ha / h)
        iab += ha * hb / (h * h)
        ial += ha * hl / (h * h)
        ibb += (hb / h) * (hb / h)
        ibl += hb * hl / (h * h) - hbl / h
        ill += hl * hl / (h * h) - hll / h
        sum_sx += s
        sum_sxe += s * e
        sum_x15e += x15 * e
        sum_x25e += xf[i] * x15 * e
    if not bad:
        for i in range(nc):
            s = sqrt(xc[i])
            e = exp(lam * xc[i])
            if not isfinite(e):
                bad = 1
                break
            x15 = xc[i] * s
            sum_sx += s
            sum_sxe += s * e
            sum_x15e += x15 * e
            sum_x25e += xc[i] * x15 * e
    if bad or not isfinite(sum_sxe):
        return -INFINITY, np.full(3, np.nan), np.full((3, 3), np.nan)

    score = np.array([sa - sum_sx, sb - sum_sxe, sl - b * sum_x15e])
    info = np.empty((3, 3))
    info[0, 0] = iaa
    info[0, 1] = info[1, 0] = iab
    info[0, 2] = info[2, 0] = ial
    info[1, 1] = ibb
    info[1, 2] = info[2, 1] = ibl + sum_x15e
    info[2, 2] = ill + b * sum_x25e
    return slogh - a * sum_sx - b * sum_sxe, score, info


cdef double _ll_ab(double a, double b, double[::1] u, double[::1] v,
                   double s1, double s2) nogil:
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double acc = 0.0, h
    for i in range(n):
        h = a * u[i] + b * v[i]
        if h <= 0.0:
            return NAN
        acc += log(h)
    return acc - a * s1 - b * s2


def inner_ab(double[::1] u, double[::1] v, double s1, double s2,
             double a0, double b0, double gain_tol, int max_iter):
    cdef Py_ssize_t i, n = u.shape[0]
    cdef double a = a0, b = b0
    cdef double ll = _ll_ab(a, b, u, v, s1, s2)
    cdef double h, ga, gb, iaa, iab, ibb, det, da, db, t1, c, a1, b1, ll1
    cdef int it = 0, k
    cdef bint found
    for k in range(max_iter):
        ga = -s1
        gb = -s2
        iaa = 0.0
        iab = 0.0
        ibb = 0.0
        for i in range(n):
            h = a * u[i] + b * v[i]
            ga += u[i] / h
            gb += v[i] / h
            iaa += (u[i] / h) * (u[i] / h)
            iab += u[i] * v[i] / (h * h)
            ibb += (v[i] / h) * (v[i] / h)
        det = iaa * ibb - iab * iab
        if not isfinite(det) or det <= 0:
            break
        da = (ibb * ga - iab * gb) / det
        db = (iaa * gb - iab * ga) / det
        if 0.5 * (ga * da + gb * db) < gain_tol:
            break
        t1 = 1.0
        found = 0
        while t1 > 1e-14:
            a1 = a + t1 * da
            b1 = b + t1 * db
            if a1 > 0 and b1 >= 0:
                c = _ll_ab(a1, b1, u, v, s1, s2)
                if isfinite(c) and c > ll:
                    ll1 = c
                    found = 1
                    break
            t1 *= 0.5
        if not found:
            break
        a = a1
        b = b1 if b1 > 0.0 else 0.0
        ll = ll1
        it += 1
    return float(a), float(b), float(ll), it


def quantile_y(double a, double b, double lam, double[::1] T):
    cdef Py_ssize_t j, n = T.shape[0]
    out_arr = np.empty(n)
    cdef double[::1] out = out_arr
    cdef double t, y, lo, hi, cap, e, G, gp, res, ynew, m
    cdef int it
    cdef bint done, above, over, out_of
    cdef double logb = log(b) if b > 0.0 else 0.0

    if b == 0.0:
        for j in range(n):
            out[j] = T[j] / a
        return out_arr
    if lam == 0.0:
        for j in range(n):
            out[j] = T[j] / (a + b)
        return out_arr

    for j in range(n):
        t = T[j]
        if t == 0.0:
            out[j] = 0.0
            continue
        hi = t / (a + b)
        cap = log(t) - logb
        if cap > 0.0:
            cap = sqrt(cap / lam) * (1.0 + 1e-12)
        else:
            cap = 0.0
        if cap < 1.0:
            cap = 1.0
        if hi > cap:
            hi = cap
        if not isfinite(hi):
            raise NumericError("quantile bracket is not representable for these parameters")
        lo = 0.0
        y = hi
        done = 0
        for it in range(200):
            m = lam * y * y
            e = exp(m)
            G = a * y + b * y * e
            gp = a + b * e * (1.0 + 2.0 * m)
            over = not isfinite(G)
            above = over or (G - t > 0)
            if above:
                hi = y
            else:
                lo = y
            if over:
                ynew = 0.5 * (lo + hi)
            else:
                ynew = y - (log(G) - log(t)) * G / gp
                if ynew <= lo or ynew >= hi or not isfinite(ynew):
                    ynew = 0.5 * (lo + hi)
            if fabs(ynew - y) <= 1e-15 * (ynew if ynew > 1e-300 else 1e-300):
                y = ynew
                done = 1
                break
            y = ynew
        if not done:
            raise NumericError("quantile iteration cap exhausted")
        out[j] = y
    return out_arr
