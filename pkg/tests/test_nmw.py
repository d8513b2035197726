import math

import numpy as np
import pytest

from rnmw import (
    DomainError,
    NmwParams,
    RnmwParams,
    nmw_cdf,
    nmw_cumulative_hazard,
    nmw_hazard,
    nmw_pdf,
    nmw_survival,
)
from rnmw import core
from rnmw.nmw import _nmw_quantile

GEN = NmwParams(0.07, 0.004, 2.0, 0.6, 0.2)


class TestParams:
    @pytest.mark.parametrize("bad", [
        (-0.1, 1.0, 1.0, 1.0, 0.5),
        (1.0, -0.1, 1.0, 1.0, 0.5),
        (1.0, 1.0, 0.0, 1.0, 0.5),
        (1.0, 1.0, 1.0, 0.0, 0.5),
        (1.0, 1.0, 1.0, 1.0, -0.5),
        (0.0, 0.0, 1.0, 1.0, 0.5),
        (math.nan, 1.0, 1.0, 1.0, 0.5),
    ])
    def test_invalid_rejected(self, bad):
        with pytest.raises(DomainError):
            NmwParams(*bad)

    def test_is_reduced(self):
        assert NmwParams(1.0, 2.0, 0.5, 0.5, 0.3).is_reduced
        assert not NmwParams(1.0, 2.0, 0.5, 0.6, 0.3).is_reduced
        r = NmwParams(1.0, 2.0, 0.5, 0.5, 0.3).reduced()
        assert isinstance(r, RnmwParams)
        assert (r.alpha, r.beta, r.lam) == (1.0, 2.0, 0.3)

    def test_reduced_requires_half_powers(self):
        with pytest.raises(DomainError):
            NmwParams(1.0, 2.0, 0.6, 0.5, 0.3).reduced()


class TestReduction:
    def test_half_power_slice_matches_reduced_family_exactly(self):
        p5 = NmwParams(0.7, 0.2, 0.5, 0.5, 0.4)
        p3 = RnmwParams(0.7, 0.2, 0.4)
        x = np.linspace(0.01, 8.0, 50)
        assert np.array_equal(nmw_cumulative_hazard(p5, x), core.cumulative_hazard(p3, x))
        assert np.array_equal(nmw_survival(p5, x), core.survival(p3, x))
        assert np.array_equal(nmw_cdf(p5, x), core.cdf(p3, x))
        assert np.array_equal(nmw_hazard(p5, x), core.hazard(p3, x))
        assert np.array_equal(nmw_pdf(p5, x), core.pdf(p3, x))


class TestEvaluators:
    def test_cumulative_hazard_formula(self):
        x = np.array([0.0, 0.3, 1.7, 9.0])
        got = nmw_cumulative_hazard(GEN, x)
        want = GEN.alpha * x ** GEN.theta \
            + GEN.beta * x ** GEN.gamma * np.exp(GEN.lam * x)
        assert np.allclose(got, want, rtol=1e-14, atol=0.0)

    def test_survival_cdf_complementary(self):
        x = np.linspace(0.0, 12.0, 30)
        assert np.all(np.abs(nmw_survival(GEN, x) + nmw_cdf(GEN, x) - 1.0) <= 1e-15)

    def test_pdf_is_hazard_times_survival(self):
        x = np.array([0.05, 1.0, 4.0])
        assert np.allclose(nmw_pdf(GEN, x),
                           nmw_hazard(GEN, x) * nmw_survival(GEN, x),
                           rtol=1e-13, atol=0.0)

    def test_pdf_at_origin_rules(self):
        # density diverges at 0 when an active power is below one
        with pytest.raises(DomainError):
            nmw_pdf(NmwParams(1.0, 0.5, 2.0, 0.6, 0.1), 0.0)
        with pytest.raises(DomainError):
            nmw_pdf(NmwParams(1.0, 0.5, 0.6, 2.0, 0.1), 0.0)
        # inactive term with a low power is harmless
        val = nmw_pdf(NmwParams(1.0, 0.0, 0.3, 1.0, 0.0), 0.0)
        assert val == pytest.approx(1.0)
        assert nmw_pdf(NmwParams(1.0, 0.5, 2.0, 1.5, 0.1), 0.0) == 0.0

    def test_negative_x_rejected(self):
        with pytest.raises(DomainError):
            nmw_cumulative_hazard(GEN, -1.0)
        with pytest.raises(DomainError):
            nmw_hazard(GEN, 0.0)


class TestQuantile:
    def test_round_trip(self):
        u = np.array([1e-8, 0.05, 0.5, 0.95, 1.0 - 1e-9])
        for p in [GEN, NmwParams(1.0, 0.0, 1.0, 1.0, 0.0),
                  NmwParams(0.0, 0.8, 1.4, 1.0, 0.7),
                  NmwParams(0.07, 4.2e-11, 2.0, 0.61, 0.18)]:
            x = _nmw_quantile(p, u)
            back = nmw_cdf(p, x)
            assert np.all(np.abs(back - u) <= 1e-8 * np.maximum(u, 1e-300))

    def test_exponential_slice_exact(self):
        p = NmwParams(2.0, 0.0, 1.0, 1.0, 0.0)
        assert _nmw_quantile(p, 0.5) == pytest.approx(math.log(2.0) / 2.0, rel=1e-12)
