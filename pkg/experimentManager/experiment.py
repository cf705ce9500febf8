"""
Description: running experiments. A configuration expands into run
descriptors (one per sweep point); each run steps its model on its own random
stream, writes its tick CSV and stylized-facts report, and the experiment
writes a summary table and a manifest hashing every artifact.
"""
from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np
import pandas as pd

from evaluation.report import SfReport, SfSettings, build_report
from experimentManager import __version__
from experimentManager.config import ExperimentConfig, bind_params
from experimentManager.registry import build_model
from simModel.common.errors import DomainError, RunAbort
from simModel.common.rng import RngStream
from simModel.common.runner import RunRecords, run_model
from simModel.common.series import PriceSeries, compute_returns
from simModel.fcMinimal import RateVariant
from simModel.fcMinimal.equilibrium import (
    equilibrium_bin_masses,
    fit_shape_parameter,
    histogram_masses,
    lattice_edges,
    total_variation,
)
from simModel.gcmg import predictability

import logger

logging = logger.get_logger(__name__)

CSV_OPTIONS = dict(index=False, float_format="%.17g", lineterminator="\n")


@dataclass
class RunDescriptor:
    index: int
    name: str
    model: str
    params: Dict[str, Any]
    stream_id: int
    sweep_value: Any = None


@dataclass
class RunResult:
    index: int
    name: str
    sweep_value: Any
    status: str
    abort_tick: Optional[int] = None
    abort_reason: Optional[str] = None
    row: Dict[str, Any] = field(default_factory=dict)
    artifacts: List[str] = field(default_factory=list)


@dataclass
class ExperimentResult:
    directory: str
    runs: List[RunResult]
    summary: pd.DataFrame
    manifest_path: str

    @property
    def aborted(self) -> List[RunResult]:
        return [run for run in self.runs if run.abort_tick is not None]


def _point_name(param: str, value: Any, index: int) -> str:
    return f"{index:02d}_{param.replace('.', '-')}={value}"


def expand_runs(config: ExperimentConfig) -> List[RunDescriptor]:
    """one descriptor per sweep value (stream_id = point index), or a single run"""
    if config.sweep is None:
        return [RunDescriptor(0, "run", config.model, config.params_for(), 0)]
    return [
        RunDescriptor(i, _point_name(config.sweep.param, value, i), config.model,
                      config.params_for(value), i, value)
        for i, value in enumerate(config.sweep.values)
    ]


def _settings(config: ExperimentConfig) -> SfSettings:
    analysis = config.analysis
    return SfSettings(max_lag=analysis.max_lag, tail_fraction=analysis.tail_fraction,
                      vol_proxy=analysis.vol_proxy, vol_lag_range=tuple(analysis.vol_lag_range),
                      aggregation_lags=tuple(analysis.aggregation_lags))


def _sha256(path: str) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def config_hash(config: ExperimentConfig) -> str:
    text = json.dumps(config.to_dict(), sort_keys=True, default=str)
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def analyze_records(records: RunRecords, model: str, params: Any, config: ExperimentConfig,
                    run_summary: Dict[str, Any], run_dir: str) -> SfReport:
    """Stylized-facts report of the post-burn-in ticks, plus model-specific checks."""
    analysis = config.analysis
    start = min(config.burn_in, len(records) - 1)
    prices = PriceSeries(records.prices[start:], int(records.ticks[start]))
    try:
        returns = compute_returns(prices, analysis.return_kind).values
    except DomainError as exc:
        logging.warning(f"returns unavailable: {exc}")
        returns = np.zeros(0)

    contiguous = True
    if model == "thurner" and analysis.active_only and returns.size:
        # a return counts when the funds were active at its starting tick
        active = records.column("funds_active")[start:-1] > 0.0
        returns = returns[active]
        contiguous = False

    report = build_report(returns, prices if analysis.return_kind == "log" else None,
                          _settings(config), contiguous=contiguous)
    report.extra.update(run_summary)

    if model == "fc_minimal":
        _fc_checks(records, params, config, start, run_dir, report)
    elif model == "lux_marchesi":
        _lm_checks(records, start, returns, report)
    elif model == "gcmg":
        _gcmg_checks(records, params, config, start, report)
    elif model == "thurner":
        report.extra["max_clearing_residual"] = float(records.column("clearing_residual").max())
        report.extra["max_leverage"] = float(records.column("max_leverage").max())
        report.extra["active_fraction"] = float(records.column("funds_active")[start:].mean())
    return report


def _fc_checks(records, params, config, start, run_dir, report) -> None:
    analysis = config.analysis
    N = records.column("N")[start:]
    if params.soc.enabled:
        half = N[N.size // 2:]
        report.extra["final_half_mean_N"] = float(half.mean())
        if analysis.soc_band is not None:
            lo, hi = analysis.soc_band
            report.extra["fraction_in_soc_band"] = float(np.mean((half >= lo) & (half <= hi)))

    if not analysis.equilibrium_check:
        return
    if params.variant is not RateVariant.SIMPLIFIED or params.soc.enabled:
        report.insufficient["equilibrium_check"] = "needs simplified rates at fixed N"
        return
    n_c = records.column("n_c")[start:]
    bins = analysis.histogram_bins
    edges = lattice_edges(params.N, bins)
    try:
        r = fit_shape_parameter(n_c, params.delta, params.N, bins)
        analytic = equilibrium_bin_masses(edges, r, params.delta, params.N)
    except DomainError as exc:
        report.insufficient["equilibrium_check"] = str(exc)
        return
    empirical = histogram_masses(n_c, params.N, bins)
    report.extra["fitted_r"] = r
    report.extra["tv_distance"] = total_variation(empirical, analytic)
    frame = pd.DataFrame({"bin_lo": edges[:-1], "bin_hi": edges[1:],
                          "empirical": empirical, "analytic": analytic})
    frame.to_csv(os.path.join(run_dir, "x_distribution.csv"), **CSV_OPTIONS)


def _lm_checks(records, start, returns, report) -> None:
    N = (records.column("n_f") + records.column("n_c"))[start:]
    fundamental_share = records.column("n_f")[start:] / N
    chartist_share = records.column("n_c")[start:] / N
    report.extra["fraction_fundamental_dominated"] = float(np.mean(fundamental_share > 0.9))
    if returns.size == chartist_share.size - 1:
        epochs = chartist_share[:-1]
        for label, mask in (("chartist_epoch_std", epochs > 0.5), ("fundamental_epoch_std", epochs < 0.1)):
            report.extra[label] = float(np.std(returns[mask])) if np.count_nonzero(mask) > 1 else None


def _gcmg_checks(records, params, config, start, report) -> None:
    mus = records.column("mu")[start:].astype(np.int64)
    As = records.column("A")[start:]
    window = config.analysis.predictability_window
    if window:
        mus, As = mus[-window:], As[-window:]
    H, unseen = predictability(mus, As, params.P)
    report.extra["predictability"] = H
    report.extra["unseen_states"] = unseen
    report.extra["mean_active_speculators"] = float(records.column("n_active")[start:].mean())


def execute_run(descriptor: RunDescriptor, config: ExperimentConfig, directory: str) -> RunResult:
    """Run one point and write its artifacts; a run abort is recorded, not raised."""
    params = bind_params(descriptor.model, descriptor.params)
    stream = RngStream(config.seed, descriptor.stream_id)
    run_dir = os.path.join(directory, descriptor.name)
    os.makedirs(run_dir, exist_ok=True)
    result = RunResult(descriptor.index, descriptor.name, descriptor.sweep_value, "ok")

    model = build_model(descriptor.model, params, stream)
    try:
        records = run_model(model, config.steps, stream)
    except RunAbort as abort:
        logging.error(f"{descriptor.name}: {abort}")
        result.status = f"aborted@{abort.tick}"
        result.abort_tick = abort.tick
        result.abort_reason = abort.reason
        return result

    ticks_path = os.path.join(run_dir, "ticks.csv")
    records.to_frame().to_csv(ticks_path, **CSV_OPTIONS)
    report = analyze_records(records, descriptor.model, params, config, model.run_summary(), run_dir)
    report_path = os.path.join(run_dir, "report.json")
    with open(report_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(report.to_json())

    result.row = report.summary_row()
    for key, value in report.extra.items():
        if isinstance(value, (int, float)) or value is None:
            result.row[key] = value
    result.artifacts = sorted(os.path.join(descriptor.name, name) for name in os.listdir(run_dir))
    logging.info(f"{descriptor.name}: done ({config.steps} steps, stream {descriptor.stream_id})")
    return result


def _execute(args) -> RunResult:
    return execute_run(*args)


def run_experiment(config: ExperimentConfig, output_dir: Optional[str] = None,
                   workers: Optional[int] = None) -> ExperimentResult:
    """Run every point of an experiment and write the summary and manifest.

    Args:
        config (ExperimentConfig): validated configuration
        output_dir (str, optional): overrides config.output_dir
        workers (int, optional): overrides config.workers; > 1 runs points in processes

    Returns:
        ExperimentResult: per-run results ordered by point index
    """
    directory = os.path.join(output_dir or config.output_dir, config.name)
    os.makedirs(directory, exist_ok=True)
    descriptors = expand_runs(config)
    workers = workers or config.workers
    logging.info(f"experiment {config.name}: {len(descriptors)} run(s) of {config.model}, "
                 f"seed {config.seed}, {workers} worker(s)")

    jobs = [(descriptor, config, directory) for descriptor in descriptors]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_execute, jobs))
    else:
        results = [_execute(job) for job in jobs]
    results.sort(key=lambda run: run.index)

    summary = summary_frame(config, results)
    summary_path = os.path.join(directory, "summary.csv")
    summary.to_csv(summary_path, **CSV_OPTIONS)
    manifest_path = write_manifest(config, results, directory)
    return ExperimentResult(directory, results, summary, manifest_path)


def sweep(config: ExperimentConfig, output_dir: Optional[str] = None,
          workers: Optional[int] = None) -> pd.DataFrame:
    """summary table of a sweep, one row per value in sweep order"""
    if config.sweep is None:
        raise ValueError("the configuration has no sweep")
    return run_experiment(config, output_dir, workers).summary


def summary_frame(config: ExperimentConfig, results: List[RunResult]) -> pd.DataFrame:
    rows = []
    for run in results:
        row = {"index": run.index, "name": run.name, "status": run.status}
        if config.sweep is not None:
            row[config.sweep.param] = run.sweep_value
        row.update(run.row)
        rows.append(row)
    return pd.DataFrame(rows)


def write_manifest(config: ExperimentConfig, results: List[RunResult], directory: str) -> str:
    artifacts = ["summary.csv"] + [path for run in results for path in run.artifacts]
    manifest = {
        "name": config.name,
        "model": config.model,
        "version": __version__,
        "seed": config.seed,
        "config_sha256": config_hash(config),
        "config": config.to_dict(),
        "runs": [{"index": run.index, "name": run.name, "stream_id": run.index,
                  "status": run.status, "abort_tick": run.abort_tick,
                  "abort_reason": run.abort_reason} for run in results],
        "artifacts": [{"path": path.replace(os.sep, "/"),
                       "sha256": _sha256(os.path.join(directory, path))} for path in sorted(artifacts)],
    }
    path = os.path.join(directory, "manifest.json")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(manifest, indent=2, sort_keys=True, default=str))
    return path


def analyze_csv(path: str, column: str = "price", settings: Optional[SfSettings] = None,
                return_kind: str = "log") -> SfReport:
    """stylized-facts report of a price column of any CSV file"""
    frame = pd.read_csv(path)
    if column not in frame.columns:
        raise DomainError(f"column '{column}' not in {path}; available: {list(frame.columns)}")
    prices = PriceSeries(frame[column].to_numpy(dtype=np.float64))
    returns = compute_returns(prices, return_kind)
    return build_report(returns, prices if return_kind == "log" else None, settings)
