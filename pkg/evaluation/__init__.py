from evaluation.stylized_facts import (
    AcfResult,
    Ccdf,
    PowerLawFit,
    TailFit,
    TailSide,
    VolProxy,
    acf,
    aggregated_returns,
    aggregation_analysis,
    ccdf,
    ccdf_tail_slope,
    excess_kurtosis,
    hill_estimator,
    powerlaw_decay_fit,
    vol_acf_powerlaw_fit,
    volatility_proxy,
)
from evaluation.report import SfReport, SfSettings, build_report
