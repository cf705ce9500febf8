import json
import math

import numpy as np

from evaluation.report import SfSettings, build_report
from evaluation.stylized_facts import (
    TailSide,
    acf,
    aggregation_analysis,
    ccdf,
    ccdf_tail_slope,
    excess_kurtosis,
    hill_estimator,
    powerlaw_decay_fit,
    vol_acf_powerlaw_fit,
)
from simModel.common.errors import DomainError


def _raises(func, *args, **kwargs):
    try:
        func(*args, **kwargs)
    except DomainError:
        return True
    return False


def test_acf_alternating_and_lag_zero():
    x = np.tile([1.0, -1.0], 5000)
    result = acf(x, 5)
    assert result.values[0] == 1.0
    assert abs(result.values[1] + 1.0) < 0.01
    assert np.all(np.abs(result.values) <= 1.0)


def test_acf_iid_band_and_reversal():
    x = np.random.default_rng(0).standard_normal(100_000)
    result = acf(x, 100)
    assert result.fraction_in_band(range(1, 101)) >= 0.9
    np.testing.assert_allclose(acf(x[::-1], 100).values, result.values, atol=1e-12)


def test_acf_rejects_constant_and_short_series():
    assert _raises(acf, np.ones(50), 5)
    assert _raises(acf, np.arange(5.0), 10)


def test_ccdf_counting_and_monotonicity():
    curve = ccdf([3.0, 1.0, 4.0, 2.0])
    np.testing.assert_array_equal(curve.x, [1.0, 2.0, 3.0, 4.0])
    assert curve.F[0] == 1.0
    assert curve.F[2] == 0.5
    sample = np.random.default_rng(1).standard_normal(1000)
    assert np.all(np.diff(ccdf(sample).F) <= 0.0)


def _pareto(alpha, n, seed):
    u = np.random.default_rng(seed).random(n)
    return (1.0 - u) ** (-1.0 / alpha)


def test_ccdf_slope_of_pareto():
    fit = ccdf_tail_slope(_pareto(3.0, 100_000, 2), 1e-3, 1e-2, TailSide.POSITIVE)
    assert abs(fit.exponent - 3.0) < 0.3


def test_hill_on_pareto_and_gaussian():
    fit = hill_estimator(_pareto(3.0, 100_000, 3), 0.01, TailSide.POSITIVE)
    assert fit.k == 1000
    assert 2.7 <= fit.alpha <= 3.3
    assert math.isclose(fit.stderr, fit.alpha / math.sqrt(1000))

    gaussian = hill_estimator(np.random.default_rng(4).standard_normal(100_000), 0.01, "absolute")
    assert gaussian.alpha >= 5.0


def test_hill_scale_invariance_and_sides():
    x = np.random.default_rng(5).standard_t(3, size=20_000)
    for side in TailSide:
        a = hill_estimator(x, 0.01, side).alpha
        b = hill_estimator(7.5 * x, 0.01, side).alpha
        assert math.isclose(a, b, rel_tol=1e-10)
    negative = hill_estimator(x, 0.01, "negative").alpha
    assert math.isclose(negative, hill_estimator(-x, 0.01, "positive").alpha)


def test_hill_needs_ten_tail_points():
    assert _raises(hill_estimator, np.random.default_rng(6).standard_normal(500), 0.01)
    assert _raises(hill_estimator, -np.abs(np.random.default_rng(7).standard_normal(5000)), 0.01, "positive")


def test_powerlaw_fit_exact():
    lags = np.arange(1, 101)
    fit = powerlaw_decay_fit(lags, lags ** -0.2)
    assert abs(fit.exponent - 0.2) < 1e-6
    assert fit.used == 100 and fit.excluded == 0


def test_powerlaw_fit_excludes_negative_points():
    lags = np.arange(1, 11)
    values = lags ** -0.5
    values[[2, 5]] = -0.1
    fit = powerlaw_decay_fit(lags, values)
    assert fit.excluded == 2
    assert abs(fit.exponent - 0.5) < 1e-9
    assert _raises(powerlaw_decay_fit, lags[:4], values[:4])


def test_vol_acf_fit_on_iid_noise_is_flat_or_rejected():
    noise = np.abs(np.random.default_rng(8).standard_normal(20_000))
    try:
        fit = vol_acf_powerlaw_fit(noise, (1, 100))
    except DomainError:
        return
    assert fit.excluded > 10 or fit.stderr > abs(fit.exponent) / 3


def test_excess_kurtosis_oracles():
    assert math.isclose(excess_kurtosis(np.tile([1.0, -1.0], 50)), -2.0)
    assert abs(excess_kurtosis(np.random.default_rng(9).standard_normal(1_000_000))) < 0.05
    assert abs(excess_kurtosis(np.random.default_rng(10).laplace(size=1_000_000)) - 3.0) < 0.2
    assert _raises(excess_kurtosis, np.ones(10))
    assert _raises(excess_kurtosis, [1.0, 2.0])


def test_aggregation_of_gaussian_walk():
    steps = np.random.default_rng(11).normal(0.0, 0.01, size=200_000)
    prices = 100.0 * np.exp(np.concatenate([[0.0], np.cumsum(steps)]))
    result = aggregation_analysis(prices, [1, 10, 100, prices.size])
    for lag in (1, 10):
        assert abs(result[lag]) < 0.15
    assert abs(result[100]) < 0.5
    assert result[prices.size] is None


def test_statistics_unchanged_by_dropping_a_prefix():
    # iid data: discarding the first t0 samples only changes sampling error
    n, t0 = 200_000, 50_000
    rng = np.random.default_rng(21)
    gaussian = rng.standard_normal(n)
    tail = _pareto(3.0, n, 22) * rng.choice([-1.0, 1.0], size=n)
    kept = n - t0

    full, shifted = acf(gaussian, 20), acf(gaussian[t0:], 20)
    assert np.all(np.abs(full.values[1:] - shifted.values[1:]) < 4.0 / math.sqrt(kept))

    fit_full, fit_shifted = hill_estimator(tail), hill_estimator(tail[t0:])
    assert abs(fit_full.alpha - fit_shifted.alpha) < 4.0 * fit_shifted.stderr
    assert abs(fit_shifted.alpha - 3.0) < 4.0 * fit_shifted.stderr

    band = 4.0 * math.sqrt(24.0 / kept)
    assert abs(excess_kurtosis(gaussian) - excess_kurtosis(gaussian[t0:])) < band

    prices = 100.0 * np.exp(np.concatenate([[0.0], np.cumsum(0.01 * gaussian)]))
    lags = [1, 10, 100]
    whole, later = aggregation_analysis(prices, lags), aggregation_analysis(prices[t0:], lags)
    for lag in lags:
        assert abs(whole[lag] - later[lag]) < 4.0 * math.sqrt(24.0 * lag / kept)


def test_build_report_serializes_and_marks_insufficient():
    rng = np.random.default_rng(12)
    prices = 100.0 * np.exp(np.cumsum(rng.normal(0.0, 0.01, size=5001)))
    returns = np.diff(np.log(prices))
    report = build_report(returns, prices, SfSettings(max_lag=20, vol_lag_range=(1, 20),
                                                      aggregation_lags=(1, 1000)))
    data = json.loads(report.to_json())
    assert data["n_returns"] == 5000
    assert data["settings"]["tail_fraction"] == 0.01
    assert data["aggregation_kurtosis"]["1000"] is None
    assert "aggregation_kurtosis.1000" in report.insufficient
    assert report.tail_absolute is not None and report.tail_absolute.k == 50
    assert "Stylized facts report" in report.to_markdown()
    row = report.summary_row()
    assert row["n_returns"] == 5000 and row["kurtosis_dt1000"] is None
    assert math.isclose(row["alpha_abs"], report.tail_absolute.alpha)
    assert row["acf_abs_10"] == report.acf_absreturns.at(10)

    filtered = build_report(returns[::2], contiguous=False)
    assert filtered.acf_returns is None and "acf_returns" in filtered.insufficient


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_"):
            func()
            print(f"{name}: ok")
