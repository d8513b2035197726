"""Kernel backend selection.

The compiled extension is preferred when it imported cleanly; the NumPy
fallback is always available.  ``set_backend`` exists so tests and
benchmarks can force either implementation, and the RNMW_BACKEND
environment variable picks the initial backend.
"""
import os

import numpy as np

from . import _fallback

try:
    from . import _native
except ImportError:
    _native = None

_impl = _native if _native is not None else _fallback


def backend_name():
    return "native" if _impl is _native else "fallback"


def available_backends():
    return ("fallback",) if _native is None else ("fallback", "native")


def set_backend(name):
    global _impl
    if name == "fallback":
        _impl = _fallback
    elif name == "native":
        if _native is None:
            raise ValueError("native backend is not built")
        _impl = _native
    else:
        raise ValueError("unknown backend %r" % (name,))


if os.environ.get("RNMW_BACKEND"):
    set_backend(os.environ["RNMW_BACKEND"])


def _arr(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def cumhaz(a, b, lam, x):
    return _impl.cumhaz(a, b, lam, _arr(x))


def hazard(a, b, lam, x):
    return _impl.hazard(a, b, lam, _arr(x))


def loglik(a, b, lam, xf, xc):
    return _impl.loglik(a, b, lam, _arr(xf), _arr(xc))


def score_info(a, b, lam, xf, xc):
    return _impl.score_info(a, b, lam, _arr(xf), _arr(xc))


def inner_ab(u, v, s1, s2, a0, b0, gain_tol, max_iter):
    return _impl.inner_ab(_arr(u), _arr(v), float(s1), float(s2),
                          float(a0), float(b0), float(gain_tol), int(max_iter))


def quantile_y(a, b, lam, T):
    return _impl.quantile_y(a, b, lam, _arr(T))
