"""
Description: the stylized-facts report of one return series, serialized to
JSON for the run artifacts and to markdown for the console.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from evaluation.stylized_facts import (
    AcfResult,
    PowerLawFit,
    SeriesLike,
    TailFit,
    TailSide,
    VolProxy,
    acf,
    aggregation_analysis,
    ccdf_tail_slope,
    excess_kurtosis,
    hill_estimator,
    powerlaw_decay_fit,
    volatility_proxy,
)
from simModel.common.errors import DomainError

import logger

logging = logger.get_logger(__name__)


@dataclass
class SfSettings:
    max_lag: int = 100
    tail_fraction: float = 0.01
    vol_proxy: str = VolProxy.ABS.value
    vol_lag_range: Tuple[int, int] = (1, 100)
    aggregation_lags: Tuple[int, ...] = (1, 10, 100)
    ccdf_range: Tuple[float, float] = (1e-3, 1e-2)


@dataclass
class SfReport:
    n_returns: int
    settings: SfSettings
    acf_returns: Optional[AcfResult] = None
    acf_absreturns: Optional[AcfResult] = None
    vol_acf: Optional[PowerLawFit] = None
    tail_positive: Optional[TailFit] = None
    tail_negative: Optional[TailFit] = None
    tail_absolute: Optional[TailFit] = None
    ccdf_slope: Optional[PowerLawFit] = None
    excess_kurtosis: Optional[float] = None
    aggregation_kurtosis: Dict[int, Optional[float]] = field(default_factory=dict)
    # field name -> reason, for every estimator that could not be computed
    insufficient: Dict[str, str] = field(default_factory=dict)
    extra: Dict[str, Any] = field(default_factory=dict)

    @property
    def vol_acf_exponent(self) -> Optional[float]:
        return None if self.vol_acf is None else self.vol_acf.exponent

    def summary_row(self) -> Dict[str, Optional[float]]:
        """flat scalars for the sweep summary table"""
        def alpha(fit: Optional[TailFit]) -> Optional[float]:
            return None if fit is None else fit.alpha

        row = {
            "n_returns": self.n_returns,
            "excess_kurtosis": self.excess_kurtosis,
            "alpha_pos": alpha(self.tail_positive),
            "alpha_neg": alpha(self.tail_negative),
            "alpha_abs": alpha(self.tail_absolute),
            "alpha_neg_stderr": None if self.tail_negative is None else self.tail_negative.stderr,
            "vol_acf_exponent": self.vol_acf_exponent,
            "acf_ret_1": None if self.acf_returns is None else self.acf_returns.at(1),
            "acf_abs_10": (None if self.acf_absreturns is None or self.settings.max_lag < 10
                           else self.acf_absreturns.at(10)),
        }
        for lag, value in sorted(self.aggregation_kurtosis.items()):
            row[f"kurtosis_dt{lag}"] = value
        return row

    def to_dict(self) -> Dict[str, Any]:
        def convert(value):
            if isinstance(value, np.ndarray):
                return value.tolist()
            if isinstance(value, (np.floating, np.integer)):
                return value.item()
            if isinstance(value, TailSide):
                return value.value
            if isinstance(value, dict):
                return {str(k): convert(v) for k, v in value.items()}
            if isinstance(value, (list, tuple)):
                return [convert(v) for v in value]
            return value

        data = {
            "n_returns": self.n_returns,
            "settings": asdict(self.settings),
            "acf_returns": None if self.acf_returns is None else asdict(self.acf_returns),
            "acf_absreturns": None if self.acf_absreturns is None else asdict(self.acf_absreturns),
            "vol_acf": None if self.vol_acf is None else asdict(self.vol_acf),
            "tail_positive": None if self.tail_positive is None else asdict(self.tail_positive),
            "tail_negative": None if self.tail_negative is None else asdict(self.tail_negative),
            "tail_absolute": None if self.tail_absolute is None else asdict(self.tail_absolute),
            "ccdf_slope": None if self.ccdf_slope is None else asdict(self.ccdf_slope),
            "excess_kurtosis": self.excess_kurtosis,
            "aggregation_kurtosis": self.aggregation_kurtosis,
            "insufficient": self.insufficient,
            "extra": self.extra,
        }
        return convert(data)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_markdown(self) -> str:
        header = '# Stylized facts report\n\n'
        comments = 'Computed on {} returns (tail fraction {}, volatility proxy {}).\n\n'.format(
            self.n_returns, self.settings.tail_fraction, self.settings.vol_proxy)
        table = '|Statistic|Value|\n|:----|----:|\n'
        for key, value in self.summary_row().items():
            table += '|{}|{}|\n'.format(key, 'n/a' if value is None else '{:.6g}'.format(value))
        if self.insufficient:
            table += '\nInsufficient data: {}\n'.format(
                ', '.join(f'{k} ({v})' for k, v in sorted(self.insufficient.items())))
        return header + comments + table + '\n'


def build_report(returns: SeriesLike, prices: Optional[SeriesLike] = None,
                 settings: Optional[SfSettings] = None,
                 contiguous: bool = True) -> SfReport:
    """Run every estimator; an estimator without enough data is recorded as insufficient.

    Args:
        returns (SeriesLike): one-tick returns
        prices (SeriesLike, optional): price series for the aggregation analysis
        settings (SfSettings, optional): estimator parameters. Defaults to SfSettings().
        contiguous (bool, optional): False when `returns` was filtered, so lagged
            statistics are skipped. Defaults to True.
    """
    settings = settings or SfSettings()
    r = np.asarray(returns.values if hasattr(returns, "values") else returns, dtype=np.float64)
    report = SfReport(n_returns=int(r.size), settings=settings)

    def attempt(name: str, compute):
        try:
            setattr(report, name, compute())
        except DomainError as exc:
            report.insufficient[name] = str(exc)
            logging.debug(f"{name}: {exc}")

    if contiguous:
        attempt("acf_returns", lambda: acf(r, settings.max_lag))
        proxy = volatility_proxy(r, settings.vol_proxy) if r.size else r
        attempt("acf_absreturns", lambda: acf(proxy, max(settings.max_lag, settings.vol_lag_range[1])))
        if report.acf_absreturns is not None:
            lo, hi = settings.vol_lag_range
            attempt("vol_acf", lambda: powerlaw_decay_fit(report.acf_absreturns.lags[lo:hi + 1],
                                                          report.acf_absreturns.values[lo:hi + 1]))
        else:
            report.insufficient["vol_acf"] = "no volatility autocorrelation"
    else:
        for name in ("acf_returns", "acf_absreturns", "vol_acf"):
            report.insufficient[name] = "returns filtered; lagged statistics skipped"

    for side in TailSide:
        attempt(f"tail_{side.value}", lambda side=side: hill_estimator(r, settings.tail_fraction, side))
    attempt("ccdf_slope", lambda: ccdf_tail_slope(r, *settings.ccdf_range))
    attempt("excess_kurtosis", lambda: excess_kurtosis(r))

    if prices is not None and settings.aggregation_lags:
        report.aggregation_kurtosis = aggregation_analysis(prices, settings.aggregation_lags)
        for lag, value in report.aggregation_kurtosis.items():
            if value is None:
                report.insufficient[f"aggregation_kurtosis.{lag}"] = "too few aggregated returns"
    return report
