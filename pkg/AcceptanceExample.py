"""
Regime checks on the shipped presets. Each gate runs its preset(s) at full
length and prints a pass/fail table; expect several minutes in total.

    python AcceptanceExample.py            # every gate
    python AcceptanceExample.py 1 4 8      # selected gates
"""
import math
import sys
import tempfile

import numpy as np
from rich.console import Console
from rich.table import Table

from evaluation.stylized_facts import acf, excess_kurtosis, hill_estimator, powerlaw_decay_fit
from experimentManager.config import bind_params, load_preset
from experimentManager.experiment import run_experiment
from experimentManager.registry import build_model
from simModel.common.rng import RngStream
from simModel.common.runner import run_model
from simModel.common.series import compute_returns

import logger

log = logger.setup_app_level_logger(file_name="acceptance.log", level="INFO", use_stdout=False)
console = Console()

DETERMINISM_STEPS = 20000


def _run(config, workers=1):
    with tempfile.TemporaryDirectory() as out:
        return run_experiment(config, output_dir=out, workers=workers).summary


def _returns_of(name):
    config = load_preset(name)
    params = bind_params(config.model, config.params_for())
    stream = RngStream(config.seed)
    records = run_model(build_model(config.model, params, stream), config.steps, stream)
    return compute_returns(records.price_series(config.burn_in)).values


def gate_equilibrium():
    row = _run(load_preset("fig1")).iloc[0]
    return row["tv_distance"] < 0.05, f"TV distance {row['tv_distance']:.4f} (fitted r {row['fitted_r']:.3g})"


def gate_intermittency():
    votes_kurtosis, votes_acf = 0, 0
    config = load_preset("fig2")
    for seed in range(5):
        config.seed = seed
        summary = _run(config).set_index("N")
        k = summary["excess_kurtosis"]
        if k[500] - max(k[50], k[5000]) >= 1.0:
            votes_kurtosis += 1
        a = summary["acf_abs_10"]
        if a[500] > 0.05 and a[500] > a[5000]:
            votes_acf += 1
    return votes_kurtosis >= 3 and votes_acf >= 3, \
        f"kurtosis peak at N=500 in {votes_kurtosis}/5 seeds, |r|-ACF(10) in {votes_acf}/5"


def gate_self_organization():
    config = load_preset("fig5")
    summary = _run(config)
    inside = summary["fraction_in_soc_band"]
    means = summary["final_half_mean_N"]
    lo, hi = config.analysis.soc_band
    return bool((inside > 0.8).all() and means.between(lo, hi).all()), \
        f"in band {list(inside.round(3))}, long-run N {list(means.round(1))}"


def gate_lock_in():
    large = _run(load_preset("lm-largeN")).iloc[0]["fraction_fundamental_dominated"]
    baseline = _run(load_preset("lm-baseline")).iloc[0]
    small = baseline["fraction_fundamental_dominated"]
    chartist, fundamental = baseline["chartist_epoch_std"], baseline["fundamental_epoch_std"]
    ok = large > 0.95 and small < 0.8 and chartist > fundamental
    return ok, (f"fundamentalist-dominated: N=10^4 {large:.3f}, N=500 {small:.3f}; "
                f"return std chartist {chartist:.3g} vs fundamentalist {fundamental:.3g}")


def gate_random_walk():
    returns = _returns_of("gcmg-producers-only")
    in_band = acf(returns, 100).fraction_in_band(range(1, 101))
    kurtosis = excess_kurtosis(returns)
    speculators = _run(load_preset("gcmg-speculators")).iloc[0]["excess_kurtosis"]
    return in_band >= 0.95 and abs(kurtosis) < 0.2 and speculators > 1.0, \
        f"ACF in band {in_band:.2f}, kurtosis {kurtosis:.3f}, with speculators {speculators:.3f}"


def _non_increasing(values, stderrs):
    inversions = 0
    for i in range(1, len(values)):
        if values[i] > values[i - 1]:
            if values[i] - values[i - 1] > stderrs[i]:
                return False
            inversions += 1
    return inversions <= 1


def gate_leverage(summary):
    alpha = list(summary["alpha_neg"])
    stderr = list(summary["alpha_neg_stderr"])
    k = list(summary["excess_kurtosis"])
    last = summary.iloc[-1]
    ok = (_non_increasing(alpha, stderr) and k[0] < 0.5 and k[-1] > 1.0
          and last["alpha_neg"] < last["alpha_pos"])
    return ok, f"alpha_neg {np.round(alpha, 2).tolist()}, kurtosis {np.round(k, 2).tolist()}"


def gate_clearing(summary):
    config = load_preset("thurner-leverage-scan")
    params = bind_params("thurner", config.params_for())
    ok = True
    for _, row in summary.iterrows():
        lam = row["lambda_max"]
        ok &= row["max_clearing_residual"] < 1e-10 * params.N_shares
        ok &= row["max_leverage"] <= lam + 1e-9
    return bool(ok), f"max residual {summary['max_clearing_residual'].max():.3g}"


def gate_estimators():
    rng = np.random.default_rng(0)
    pareto = (1.0 - rng.random(100_000)) ** (-1.0 / 3.0)
    alpha = hill_estimator(pareto, 0.01, "positive").alpha
    kurtosis = excess_kurtosis(rng.standard_normal(1_000_000))
    lags = np.arange(1, 101)
    exponent = powerlaw_decay_fit(lags, lags ** -0.2).exponent
    ok = 2.7 <= alpha <= 3.3 and abs(kurtosis) <= 0.05 and math.isclose(exponent, 0.2, abs_tol=1e-6)
    return ok, f"Hill {alpha:.3f}, normal kurtosis {kurtosis:.4f}, decay exponent {exponent:.8f}"


def gate_determinism():
    for name in ("fig1", "fig2", "fig5", "lm-baseline", "lm-largeN",
                 "gcmg-producers-only", "gcmg-speculators", "thurner-leverage-scan"):
        config = load_preset(name)
        config.steps = min(config.steps, DETERMINISM_STEPS)
        config.burn_in = min(config.burn_in, config.steps // 2)
        first, second = _run(config), _run(config, workers=4)
        if not first.equals(second):
            return False, f"{name} differs between reruns"
    return True, "identical summaries (serial vs parallel) for every preset"


def main(selected):
    table = Table(title="acceptance")
    table.add_column("gate")
    table.add_column("result")
    table.add_column("detail")

    leverage_summary = None

    def leverage():
        nonlocal leverage_summary
        if leverage_summary is None:
            leverage_summary = _run(load_preset("thurner-leverage-scan"), workers=4)
        return leverage_summary

    gates = {
        1: ("equilibrium density", gate_equilibrium),
        2: ("finite-size intermittency", gate_intermittency),
        3: ("self-organization", gate_self_organization),
        4: ("large-N lock-in", gate_lock_in),
        5: ("random-walk baseline", gate_random_walk),
        6: ("leverage scan", lambda: gate_leverage(leverage())),
        7: ("clearing correctness", lambda: gate_clearing(leverage())),
        8: ("estimator oracles", gate_estimators),
        9: ("determinism", gate_determinism),
    }
    failed = 0
    for number in selected or sorted(gates):
        label, gate = gates[number]
        ok, detail = gate()
        failed += not ok
        table.add_row(f"{number} {label}", "[green]pass[/green]" if ok else "[red]FAIL[/red]", detail)
    console.print(table)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main([int(arg) for arg in sys.argv[1:]]))
