"""
Description: estimators for the stylized facts of return series: return and
volatility autocorrelation, power-law decay fits, complementary CDF, Hill tail
exponents, excess kurtosis and the aggregation of returns over Δt.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import stats

from simModel.common.errors import DomainError
from simModel.common.series import PriceSeries, ReturnSeries, compute_returns

SeriesLike = Union[ReturnSeries, PriceSeries, Sequence[float], np.ndarray]

MIN_TAIL_POINTS = 10
MIN_FIT_POINTS = 5
MIN_AGGREGATED_SAMPLES = 50


def _values(series: SeriesLike) -> np.ndarray:
    if isinstance(series, (ReturnSeries, PriceSeries)):
        series = series.values
    values = np.asarray(series, dtype=np.float64)
    if values.ndim != 1:
        raise DomainError(f"expected a one-dimensional series, got shape {values.shape}")
    return values


class TailSide(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    ABSOLUTE = "absolute"


class VolProxy(str, Enum):
    ABS = "abs"
    SQUARE = "square"


@dataclass(frozen=True)
class AcfResult:
    lags: np.ndarray
    values: np.ndarray
    n: int

    def at(self, lag: int) -> float:
        return float(self.values[lag])

    def fraction_in_band(self, lags: Iterable[int]) -> float:
        """share of the given lags with |ρ| below the iid band 2/√n"""
        lags = list(lags)
        band = 2.0 / math.sqrt(self.n)
        return sum(abs(self.values[lag]) < band for lag in lags) / len(lags)


@dataclass(frozen=True)
class TailFit:
    alpha: float
    k: int
    side: TailSide
    stderr: float
    n: int


@dataclass(frozen=True)
class PowerLawFit:
    """ρ(τ) ~ τ^(-exponent) fitted on log-log axes."""
    exponent: float
    stderr: float
    intercept: float
    used: int
    excluded: int


class Ccdf(NamedTuple):
    x: np.ndarray
    F: np.ndarray


def acf(series: SeriesLike, max_lag: int) -> AcfResult:
    """ρ(τ) = (<r_t r_{t+τ}> - μ²) / σ² for τ = 0..max_lag

    Full-sample mean and variance, sums divided by n at every lag.
    """
    x = _values(series)
    n = x.size
    if max_lag < 0:
        raise DomainError(f"max_lag must be >= 0, got {max_lag}")
    if n < max_lag + 2:
        raise DomainError(f"{n} values are not enough for max_lag {max_lag}")
    centered = x - x.mean()
    variance = float(np.dot(centered, centered)) / n
    if variance == 0.0:
        raise DomainError("autocorrelation of a constant series")

    values = np.empty(max_lag + 1)
    values[0] = 1.0
    for lag in range(1, max_lag + 1):
        values[lag] = float(np.dot(centered[:-lag], centered[lag:])) / n / variance
    return AcfResult(np.arange(max_lag + 1), values, n)


def volatility_proxy(returns: SeriesLike, proxy: Union[VolProxy, str] = VolProxy.ABS) -> np.ndarray:
    r = _values(returns)
    return np.abs(r) if VolProxy(proxy) is VolProxy.ABS else r * r


def ccdf(series: SeriesLike) -> Ccdf:
    """F(x) = 1 - P(X < x) evaluated at every sorted sample point"""
    x = np.sort(_values(series))
    if x.size == 0:
        raise DomainError("complementary CDF of an empty sample")
    below = np.searchsorted(x, x, side="left")
    return Ccdf(x, (x.size - below) / x.size)


def _tail_values(series: SeriesLike, side: Union[TailSide, str]) -> Tuple[np.ndarray, TailSide]:
    side = TailSide(side)
    x = _values(series)
    if side is TailSide.NEGATIVE:
        x = -x
    elif side is TailSide.ABSOLUTE:
        x = np.abs(x)
    return x, side


def hill_estimator(series: SeriesLike, tail_fraction: float = 0.01,
                   side: Union[TailSide, str] = TailSide.ABSOLUTE) -> TailFit:
    """Hill estimate of the CCDF exponent α from the k largest order statistics.

    α = k / Σ_{i=1..k} log(x_(i) / x_(k+1)) with k = ceil(tail_fraction n).

    Args:
        series (SeriesLike): returns
        tail_fraction (float, optional): share of the sample in the tail. Defaults to 0.01.
        side (TailSide | str, optional): positive, negative (the series is negated) or absolute.

    Raises:
        DomainError: k < 10, or the (k+1)-th largest value is not positive.

    Returns:
        TailFit: α with its asymptotic standard error α/√k
    """
    x, side = _tail_values(series, side)
    n = x.size
    if not 0.0 < tail_fraction < 1.0:
        raise DomainError(f"tail_fraction must lie in (0, 1), got {tail_fraction}")
    k = math.ceil(tail_fraction * n - 1e-9)
    if k < MIN_TAIL_POINTS or k >= n:
        raise DomainError(f"{k} tail points out of {n}; at least {MIN_TAIL_POINTS} are needed")

    top = -np.sort(-x)[:k + 1]
    threshold = top[k]
    if not threshold > 0.0:
        raise DomainError(f"the {side.value} tail has fewer than {k + 1} positive values")
    log_excess = float(np.sum(np.log(top[:k] / threshold)))
    if log_excess == 0.0:
        raise DomainError(f"the {side.value} tail is flat")
    alpha = k / log_excess
    return TailFit(alpha, k, side, alpha / math.sqrt(k), n)


def ccdf_tail_slope(series: SeriesLike, f_min: float = 1e-3, f_max: float = 1e-2,
                    side: Union[TailSide, str] = TailSide.ABSOLUTE) -> PowerLawFit:
    """log-log regression of the CCDF over the points with f_min <= F <= f_max"""
    x, _ = _tail_values(series, side)
    curve = ccdf(x[x > 0.0])
    mask = (curve.F >= f_min) & (curve.F <= f_max)
    xs, Fs = curve.x[mask], curve.F[mask]
    if xs.size < MIN_FIT_POINTS or np.unique(xs).size < 2:
        raise DomainError(f"{xs.size} CCDF points in [{f_min}, {f_max}]; at least {MIN_FIT_POINTS} are needed")
    fit = stats.linregress(np.log(xs), np.log(Fs))
    return PowerLawFit(-float(fit.slope), float(fit.stderr), float(fit.intercept), int(xs.size), 0)


def powerlaw_decay_fit(lags: Sequence[int], values: Sequence[float]) -> PowerLawFit:
    """least-squares slope of log ρ against log τ; non-positive points are excluded"""
    lags = np.asarray(lags, dtype=np.float64)
    values = np.asarray(values, dtype=np.float64)
    usable = (values > 0.0) & (lags > 0.0)
    excluded = int(np.count_nonzero(~usable))
    if np.count_nonzero(usable) < MIN_FIT_POINTS:
        raise DomainError(
            f"{int(np.count_nonzero(usable))} positive autocorrelation points; "
            f"at least {MIN_FIT_POINTS} are needed ({excluded} excluded)")
    fit = stats.linregress(np.log(lags[usable]), np.log(values[usable]))
    return PowerLawFit(-float(fit.slope), float(fit.stderr), float(fit.intercept),
                       int(np.count_nonzero(usable)), excluded)


def vol_acf_powerlaw_fit(abs_returns: SeriesLike, lag_range: Tuple[int, int] = (1, 100)) -> PowerLawFit:
    """power-law decay exponent of the volatility autocorrelation over lag_range"""
    lo, hi = lag_range
    if lo < 1 or hi < lo:
        raise DomainError(f"invalid lag range {lag_range}")
    result = acf(abs_returns, hi)
    return powerlaw_decay_fit(result.lags[lo:hi + 1], result.values[lo:hi + 1])


def excess_kurtosis(series: SeriesLike) -> float:
    """m4 / m2² - 3 with sample (biased) moments"""
    x = _values(series)
    if x.size < 4:
        raise DomainError(f"kurtosis needs at least 4 values, got {x.size}")
    if np.all(x == x[0]):
        raise DomainError("kurtosis of a constant series")
    return float(stats.kurtosis(x, fisher=True, bias=True))


def aggregated_returns(prices: SeriesLike, lag: int) -> np.ndarray:
    """non-overlapping log returns over Δt = lag"""
    p = prices if isinstance(prices, PriceSeries) else PriceSeries(_values(prices))
    if lag < 1:
        raise DomainError(f"lag must be >= 1, got {lag}")
    if len(p) <= lag:
        return np.zeros(0)
    return compute_returns(PriceSeries(p.values[::lag], p.t0), "log", 1).values


def aggregation_analysis(prices: SeriesLike, lags: Iterable[int]) -> Dict[int, Optional[float]]:
    """excess kurtosis of log returns at each Δt; None where data are insufficient"""
    result: Dict[int, Optional[float]] = {}
    for lag in sorted(set(int(l) for l in lags)):
        try:
            returns = aggregated_returns(prices, lag)
            if returns.size < MIN_AGGREGATED_SAMPLES:
                result[lag] = None
                continue
            result[lag] = excess_kurtosis(returns)
        except DomainError:
            result[lag] = None
    return result
