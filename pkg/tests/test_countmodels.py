import math

import pytest

from zetakkr.countmodels import (
    THETA_STATIONARY_POINT,
    ComparisonReport,
    CountingModel,
    ModelId,
    compare_catalog,
    estimate_zero,
    ratio_scan,
    smooth_count,
    two_term_residual,
)
from zetakkr.errors import CatalogCoverageError, DomainError
from zetakkr.specfun import theta_exact

TWO_PI = 2.0 * math.pi

# Root-find oracle values computed with mpmath (bisection on the
# arbitrary-precision smooth counts) before the build.
RS_FIRST_ESTIMATE = 14.5179196282622
POLYA_FIRST_ESTIMATE = 14.5213469530656
POLYA_TENTH_ESTIMATE = 50.2336533913627

# Direct arbitrary-precision evaluations.
POLYA_AT_100 = 29.0023435873253
KKR_ASYMPTOTE_AT_100 = 47.2212855711207
KKR_EXACT_AT_100 = 47.2215508355493

ALL_IDS = list(ModelId)


def model(model_id, **kw):
    return CountingModel.create(model_id, **kw)


class TestSmoothCount:
    def test_polya_at_100(self):
        value = smooth_count(model(ModelId.POLYA), 100.0)
        assert math.isclose(value, POLYA_AT_100, rel_tol=1e-12)
        assert abs(value - 29.0) < 0.2

    def test_rs_smooth_is_theta_route(self):
        assert smooth_count(model(ModelId.RIEMANN_SIEGEL_SMOOTH), 50.0) == 1.0 + theta_exact(50.0) / math.pi

    def test_kkr_asymptote_at_100(self):
        value = smooth_count(model(ModelId.KKR_GAMMA, uses_exact_gamma=False), 100.0)
        assert math.isclose(value, KKR_ASYMPTOTE_AT_100, rel_tol=1e-12)

    def test_kkr_exact_at_100(self):
        value = smooth_count(model(ModelId.KKR_GAMMA), 100.0)
        assert math.isclose(value, KKR_EXACT_AT_100, rel_tol=1e-10)

    def test_kkr_exact_approaches_asymptote(self):
        exact = smooth_count(model(ModelId.KKR_GAMMA), 1000.0)
        asym = smooth_count(model(ModelId.KKR_GAMMA, uses_exact_gamma=False), 1000.0)
        assert abs(exact - asym) < 1e-3

    def test_default_thetas(self):
        assert model(ModelId.KKR_GAMMA).theta == 1.5 * math.pi
        assert model(ModelId.LECLAIR_MUSSARDO).theta == 0.0
        assert model(ModelId.SIERRA).theta == 0.0

    @pytest.mark.parametrize("model_id", ALL_IDS)
    def test_domain_guard(self, model_id):
        m = model(model_id)
        with pytest.raises(DomainError):
            smooth_count(m, m.domain_min)

    @pytest.mark.parametrize("model_id", ALL_IDS)
    def test_strictly_increasing_on_domain(self, model_id):
        m = model(model_id)
        lo = m.domain_min + 1e-6
        values = [smooth_count(m, lo + (1000.0 - lo) * i / 20000 ) for i in range(20001)]
        assert all(b > a for a, b in zip(values, values[1:]))

    def test_rs_domain_is_theta_stationary_point(self):
        m = model(ModelId.RIEMANN_SIEGEL_SMOOTH)
        assert m.domain_min == THETA_STATIONARY_POINT
        # the published 2pi bound is slightly below the true turning point
        assert TWO_PI < THETA_STATIONARY_POINT
        h = 1e-5
        slope = theta_exact(THETA_STATIONARY_POINT + h) - theta_exact(THETA_STATIONARY_POINT - h)
        assert abs(slope) < 1e-8

    def test_polya_tracks_rs_beyond_100(self):
        diffs = []
        for e in (100.0, 200.0, 400.0, 800.0):
            diff = abs(
                smooth_count(model(ModelId.POLYA), e)
                - smooth_count(model(ModelId.RIEMANN_SIEGEL_SMOOTH), e)
            )
            diffs.append(diff)
        assert max(diffs) < 1e-3
        assert all(b < a for a, b in zip(diffs, diffs[1:]))


class TestEstimateZero:
    def test_rs_first(self):
        assert abs(estimate_zero(model(ModelId.RIEMANN_SIEGEL_SMOOTH), 1) - RS_FIRST_ESTIMATE) < 1e-6

    def test_polya_first(self):
        value = estimate_zero(model(ModelId.POLYA), 1)
        assert abs(value - POLYA_FIRST_ESTIMATE) < 1e-6
        assert abs(value - 14.5) < 0.1

    def test_polya_tenth(self):
        value = estimate_zero(model(ModelId.POLYA), 10)
        assert abs(value - POLYA_TENTH_ESTIMATE) < 1e-6
        assert abs(value - 50.2) < 0.05

    def test_bad_index(self):
        with pytest.raises(DomainError):
            estimate_zero(model(ModelId.POLYA), 0)

    def test_kkr_first_target_below_range(self):
        with pytest.raises(DomainError):
            estimate_zero(model(ModelId.KKR_GAMMA), 1)

    @pytest.mark.parametrize("model_id", ALL_IDS)
    def test_two_term_residual_vanishes_at_estimates(self, model_id):
        m = model(model_id)
        for n in (2, 7, 15):
            e_star = estimate_zero(m, n)
            assert abs(two_term_residual(m, n - 1, e_star)) < 1e-8

    @pytest.mark.parametrize("model_id", [ModelId.LECLAIR_MUSSARDO, ModelId.SIERRA])
    def test_theta_sensitivity(self, model_id):
        # first-order shift in the estimate under a phase perturbation:
        # dE = -d(theta) * (d count/d theta) / (d count/d E)
        d_theta = 1e-4
        n = 5
        base = model(model_id, theta=0.3)
        bumped = model(model_id, theta=0.3 + d_theta)
        e_star = estimate_zero(base, n)
        shift = estimate_zero(bumped, n) - e_star
        theta_coef = 1.0 / math.pi if model_id is ModelId.LECLAIR_MUSSARDO else -1.0 / TWO_PI
        h = 1e-6
        e_coef = (smooth_count(base, e_star + h) - smooth_count(base, e_star - h)) / (2 * h)
        predicted = -d_theta * theta_coef / e_coef
        assert abs(shift - predicted) < 1e-4 * abs(predicted) + 1e-12


class TestCompare:
    def test_rs_mae(self, catalog_100):
        report = compare_catalog(model(ModelId.RIEMANN_SIEGEL_SMOOTH), catalog_100, 29)
        assert report.mae < 0.5
        assert len(report.entries) == 29

    def test_polya_mae(self, catalog_100):
        report = compare_catalog(model(ModelId.POLYA), catalog_100, 29)
        assert report.mae < 0.6

    def test_kkr_counts_faster(self, catalog_100):
        report = compare_catalog(model(ModelId.KKR_GAMMA), catalog_100, 29)
        assert report.mae > 5.0
        # n = 1 has no root for this model; entries start at 2
        assert report.entries[0][0] == 2

    def test_report_shape(self, catalog_100):
        report = compare_catalog(model(ModelId.POLYA), catalog_100, 10)
        assert isinstance(report, ComparisonReport)
        ns = [n for n, *_ in report.entries]
        assert ns == sorted(ns)
        mae = sum(abs(err) for *_, err in report.entries) / len(report.entries)
        assert math.isclose(report.mae, mae, rel_tol=1e-15)
        for n, actual, estimate, error in report.entries:
            assert math.isclose(error, estimate - actual, rel_tol=1e-15)
        assert report.mean_spacing_actual == pytest.approx(
            (report.entries[-1][1] - report.entries[0][1]) / 9
        )

    def test_insufficient_catalog(self, catalog_100):
        with pytest.raises(CatalogCoverageError):
            compare_catalog(model(ModelId.POLYA), catalog_100, 30)


class TestRatioScan:
    def test_reference_values(self):
        rows = ratio_scan([1e2, 1e6, 1e12])
        assert abs(rows[0][1] - 0.607) < 0.001
        assert abs(rows[1][1] - 0.906) < 0.001
        assert abs(rows[2][1] - 0.956) < 0.001

    def test_increasing_below_one(self):
        values = [r for _, r in ratio_scan([20.0, 1e2, 1e4, 1e6, 1e9, 1e12, 1e15])]
        assert all(b > a for a, b in zip(values, values[1:]))
        assert all(v < 1.0 for v in values)

    def test_domain(self):
        with pytest.raises(DomainError):
            ratio_scan([17.0])

    def test_kkr_ratio_to_exact_count(self, catalog_100):
        from zetakkr.zeroscan import exact_count

        ratio = smooth_count(model(ModelId.KKR_GAMMA), 100.0) / exact_count(catalog_100, 100.0)
        assert abs(ratio - 1.63) < 0.05
