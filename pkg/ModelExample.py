from evaluation.report import SfSettings, build_report
from simModel.common.rng import SETUP_SUBSTREAM, RngStream
from simModel.common.runner import run_model
from simModel.common.series import compute_returns
from simModel.fcMinimal import FcMinimalModel, FcParams
from simModel.gcmg import GcmgModel, GcmgParams
from simModel.luxMarchesi import LmParams, LuxMarchesiModel
from simModel.thurner import ThurnerModel, ThurnerParams

import logger

log = logger.setup_app_level_logger(file_name="app_debug.log", use_stdout=True)


def build(name, stream):
    if name == "fc_minimal":
        return FcMinimalModel(FcParams(N=500))
    if name == "lux_marchesi":
        return LuxMarchesiModel(LmParams(N=500))
    if name == "gcmg":
        return GcmgModel(GcmgParams(n_spec=640, n_prod=640, P=64), stream.generator(SETUP_SUBSTREAM))
    if name == "thurner":
        return ThurnerModel(ThurnerParams(lambda_max=10.0))
    raise ValueError(f"unknown model {name}")


def simulate(name, steps=50000, burn_in=5000, seed=2024):
    stream = RngStream(seed)
    model = build(name, stream)
    records = run_model(model, steps, stream)
    records.to_frame().to_csv(f"{name}_ticks.csv", index=False, float_format="%.17g")

    returns = compute_returns(records.price_series(burn_in))
    report = build_report(returns, records.price_series(burn_in), SfSettings())
    report.extra.update(model.run_summary())
    print(report.to_markdown())
    return report


if __name__ == "__main__":
    simulate("fc_minimal")
