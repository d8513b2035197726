import math

import numpy as np
import pytest

from rnmw import (
    DomainError,
    HazardKind,
    RnmwParams,
    cdf,
    cumulative_hazard,
    hazard,
    hazard_log_derivative,
    hazard_shape,
    pdf,
    quantile,
    sample,
    survival,
)

UNIT = RnmwParams(1.0, 1.0, 1.0)
# minimum of the unit-parameter hazard, high-precision root of the
# stationarity equation beta*(4*lam^2*x^2 + 4*lam*x - 1)*exp(lam*x) = alpha
X0_UNIT = 0.32500373553965390347

REGIMES = [
    RnmwParams(1.0, 1.0, 1.0),
    RnmwParams(0.102, 3.686e-08, 0.18),
    RnmwParams(0.0, 1.0, 2.0),
    RnmwParams(3.0, 0.0, 0.0),
    RnmwParams(1e-06, 1e-06, 5.0),
    RnmwParams(2.0, 0.01, 0.05),
    RnmwParams(0.5, 0.3, 0.8),
]


class TestParams:
    def test_fields_coerced_to_float(self):
        p = RnmwParams(1, 2, 3)
        assert isinstance(p.alpha, float) and isinstance(p.beta, float)
        assert isinstance(p.lam, float)

    @pytest.mark.parametrize("bad", [
        (-0.1, 1.0, 1.0),
        (1.0, -0.1, 1.0),
        (1.0, 1.0, -0.1),
        (0.0, 0.0, 1.0),
        (math.nan, 1.0, 1.0),
        (1.0, math.inf, 1.0),
        (1.0, 1.0, math.nan),
    ])
    def test_invalid_rejected(self, bad):
        with pytest.raises(DomainError):
            RnmwParams(*bad)

    def test_frozen(self):
        p = RnmwParams(1.0, 1.0, 1.0)
        with pytest.raises(Exception):
            p.alpha = 2.0


class TestEvaluators:
    def test_cumulative_hazard_formula(self):
        x = np.array([0.0, 0.25, 1.0, 4.0])
        for p in REGIMES:
            got = cumulative_hazard(p, x)
            want = p.alpha * np.sqrt(x) + p.beta * np.sqrt(x) * np.exp(p.lam * x)
            assert np.allclose(got, want, rtol=1e-14, atol=0.0)
        assert cumulative_hazard(UNIT, 0.0) == 0.0

    def test_survival_cdf_complementary(self):
        x = np.linspace(0.0, 5.0, 40)
        for p in REGIMES:
            s = survival(p, x)
            f = cdf(p, x)
            assert np.all(np.abs(s + f - 1.0) <= 1e-15)
            assert s[0] == 1.0 and f[0] == 0.0
            assert np.all(np.diff(f) >= 0.0)

    def test_hazard_formula_and_pdf_identity(self):
        x = np.array([0.01, 0.5, 2.0, 10.0])
        for p in REGIMES:
            h = hazard(p, x)
            want = (p.alpha + p.beta * (1.0 + 2.0 * p.lam * x) * np.exp(p.lam * x)) \
                / (2.0 * np.sqrt(x))
            assert np.allclose(h, want, rtol=1e-13, atol=0.0)
            assert np.allclose(pdf(p, x), h * survival(p, x), rtol=1e-13, atol=0.0)

    def test_positive_domain_enforced(self):
        with pytest.raises(DomainError):
            hazard(UNIT, 0.0)
        with pytest.raises(DomainError):
            pdf(UNIT, -1.0)
        with pytest.raises(DomainError):
            cumulative_hazard(UNIT, -0.5)
        with pytest.raises(DomainError):
            survival(UNIT, np.array([1.0, -2.0]))

    def test_scalar_and_array_shapes(self):
        assert isinstance(cdf(UNIT, 1.0), float)
        out = cdf(UNIT, np.array([1.0, 2.0]))
        assert isinstance(out, np.ndarray) and out.shape == (2,)

    def test_large_x_overflow_safe(self):
        s = survival(RnmwParams(1.0, 1.0, 1.0), 1e6)
        assert s == 0.0
        f = cdf(RnmwParams(1.0, 1.0, 1.0), 1e6)
        assert f == 1.0


class TestHazardLogDerivative:
    def test_matches_finite_differences(self):
        for p in REGIMES:
            for x in (0.05, 0.4, 1.3, 6.0):
                h = 1e-6 * x
                fd = (math.log(hazard(p, x + h)) - math.log(hazard(p, x - h))) / (2 * h)
                got = hazard_log_derivative(p, x)
                assert abs(got - fd) <= 1e-6 * max(1.0, abs(fd))

    def test_vanishes_at_unit_minimum(self):
        assert abs(hazard_log_derivative(UNIT, X0_UNIT)) <= 1e-10


class TestHazardShape:
    def test_unit_minimum_location(self):
        shape = hazard_shape(UNIT)
        assert shape.kind is HazardKind.BATHTUB
        assert abs(shape.minimum_location - X0_UNIT) <= 1e-12 * X0_UNIT
        assert shape.minimum_value == pytest.approx(hazard(UNIT, shape.minimum_location),
                                                    rel=1e-12)

    def test_alpha_zero_closed_form(self):
        for lam in (0.1, 1.0, 7.5):
            shape = hazard_shape(RnmwParams(0.0, 2.0, lam))
            want = (math.sqrt(2.0) - 1.0) / (2.0 * lam)
            assert shape.kind is HazardKind.BATHTUB
            assert abs(shape.minimum_location - want) <= 1e-12 * want

    @pytest.mark.parametrize("p", [
        RnmwParams(1.0, 0.0, 0.5),
        RnmwParams(1.0, 0.5, 0.0),
        RnmwParams(2.0, 0.0, 0.0),
    ])
    def test_decreasing_when_wearout_term_inactive(self, p):
        shape = hazard_shape(p)
        assert shape.kind is HazardKind.DECREASING
        assert shape.minimum_location is None and shape.minimum_value is None

    def test_minimum_is_a_minimum(self):
        for p in [UNIT, RnmwParams(0.102, 3.686e-08, 0.18), RnmwParams(0.01, 2.0, 0.3)]:
            shape = hazard_shape(p)
            x0 = shape.minimum_location
            assert hazard(p, 0.9 * x0) > shape.minimum_value
            assert hazard(p, 1.1 * x0) > shape.minimum_value


class TestQuantile:
    def test_round_trip(self):
        u = np.array([1e-12, 1e-6, 0.01, 0.1, 0.5, 0.9, 0.99, 1.0 - 1e-10])
        for p in REGIMES:
            x = quantile(p, u)
            back = cdf(p, x)
            assert np.all(np.abs(back - u) <= 1e-8 * np.maximum(u, 1e-300))

    def test_edge_values(self):
        assert quantile(UNIT, 0.0) == 0.0
        assert quantile(UNIT, np.array([0.0, 0.5]))[0] == 0.0

    @pytest.mark.parametrize("u", [-0.1, 1.0, 1.5, math.nan])
    def test_invalid_probability(self, u):
        with pytest.raises(DomainError):
            quantile(UNIT, u)

    def test_monotone(self):
        u = np.linspace(0.001, 0.999, 200)
        x = quantile(RnmwParams(0.102, 3.686e-08, 0.18), u)
        assert np.all(np.diff(x) > 0.0)


class TestSample:
    def test_seed_reproducible(self):
        a = sample(UNIT, 100, seed=42)
        b = sample(UNIT, 100, seed=42)
        assert np.array_equal(a, b)
        c = sample(UNIT, 100, seed=43)
        assert not np.array_equal(a, c)

    def test_rng_stream(self):
        rng = np.random.default_rng(7)
        a = sample(UNIT, 10, rng=rng)
        rng2 = np.random.default_rng(7)
        b = sample(UNIT, 10, rng=rng2)
        assert np.array_equal(a, b)

    def test_uniforms_inverts_cdf(self):
        u = np.array([0.1, 0.5, 0.9])
        x = sample(UNIT, 3, uniforms=u)
        assert np.allclose(x, quantile(UNIT, u), rtol=0.0, atol=0.0)

    def test_empty(self):
        x = sample(UNIT, 0, seed=1)
        assert x.shape == (0,)

    def test_negative_n_rejected(self):
        with pytest.raises(DomainError):
            sample(UNIT, -1, seed=1)

    def test_ecdf_close_to_cdf(self):
        x = np.sort(sample(RnmwParams(0.5, 0.05, 0.3), 4000, seed=11))
        ecdf = np.arange(1, x.size + 1) / x.size
        dist = np.max(np.abs(ecdf - cdf(RnmwParams(0.5, 0.05, 0.3), x)))
        # Kolmogorov bound: P(D > 1.63/sqrt(n)) ~ 0.01
        assert dist < 1.63 / math.sqrt(x.size)
