import numpy as np
import pytest

from rnmw import (
    Dataset,
    RnmwParams,
    aarset,
    available_backends,
    backend_name,
    core,
    fit_mle,
    set_backend,
)
from rnmw import _kernels

HAVE_NATIVE = "native" in available_backends()
needs_native = pytest.mark.skipif(not HAVE_NATIVE,
                                  reason="compiled kernels not built")


def test_fallback_always_available():
    assert "fallback" in available_backends()


def test_unknown_backend_rejected(keep_backend):
    with pytest.raises(ValueError):
        set_backend("turbo")


def test_switch_round_trip(keep_backend):
    set_backend("fallback")
    assert backend_name() == "fallback"


@needs_native
class TestEquivalence:
    def _both(self, fn):
        out = {}
        before = backend_name()
        try:
            for name in ("fallback", "native"):
                set_backend(name)
                out[name] = fn()
        finally:
            set_backend(before)
        return out["fallback"], out["native"]

    def test_cumhaz_and_hazard(self):
        x = np.linspace(0.01, 90.0, 500)
        f, n = self._both(lambda: (_kernels.cumhaz(0.1, 3.7e-8, 0.18, x),
                                   _kernels.hazard(0.1, 3.7e-8, 0.18, x)))
        assert np.allclose(f[0], n[0], rtol=1e-12, atol=0.0)
        assert np.allclose(f[1], n[1], rtol=1e-12, atol=0.0)

    def test_loglik(self):
        ds = aarset()
        xf, xc = ds.failure_times, ds.censored_times
        f, n = self._both(lambda: _kernels.loglik(0.102, 3.644e-8, 0.18, xf, xc))
        assert n == pytest.approx(f, rel=1e-12)

    def test_score_info(self):
        ds = aarset()
        xf, xc = ds.failure_times, ds.censored_times
        f, n = self._both(lambda: _kernels.score_info(0.102, 3.644e-8, 0.18, xf, xc))
        assert n[0] == pytest.approx(f[0], rel=1e-12)
        assert np.allclose(f[1], n[1], rtol=1e-9)
        assert np.allclose(f[2], n[2], rtol=1e-9)

    def test_quantile_y(self):
        T = np.geomspace(1e-10, 700.0, 200)
        f, n = self._both(lambda: _kernels.quantile_y(0.5, 0.05, 0.3, T))
        assert np.allclose(f, n, rtol=1e-12, atol=0.0)

    def test_inner_newton(self):
        ds = aarset()
        x = ds.failure_times
        lam = 0.18
        sx = np.sqrt(x)
        u = 1.0 / (2.0 * sx)
        v = (1.0 + 2.0 * lam * x) * np.exp(lam * x) / (2.0 * sx)
        s1 = float(np.sum(sx))
        s2 = float(np.sum(sx * np.exp(lam * x)))
        f, n = self._both(lambda: _kernels.inner_ab(u, v, s1, s2,
                                                    50.0 / (2.0 * s1),
                                                    0.01 * 50.0 / s2, 1e-9, 300))
        assert n[0] == pytest.approx(f[0], rel=1e-9)
        assert n[1] == pytest.approx(f[1], rel=1e-6, abs=1e-300)
        assert n[2] == pytest.approx(f[2], rel=1e-12)

    def test_full_fit_agrees(self):
        ds = aarset()
        f, n = self._both(lambda: fit_mle(ds, "rnmw"))
        assert np.allclose(f.estimates, n.estimates, rtol=1e-6, atol=0.0)
        assert n.loglik == pytest.approx(f.loglik, rel=1e-12)
        assert f.converged == n.converged

    def test_quantile_function_agrees(self):
        p = RnmwParams(1e-6, 1e-6, 5.0)
        u = np.linspace(0.001, 0.999, 97)
        f, n = self._both(lambda: core.quantile(p, u))
        assert np.allclose(f, n, rtol=1e-12, atol=0.0)
