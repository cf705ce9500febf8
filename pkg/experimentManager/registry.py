"""
Description: the models an experiment can name, with their parameter classes
and how to build a model from bound parameters and a random stream.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Dict

from simModel.common.rng import SETUP_SUBSTREAM, RngStream
from simModel.common.runner import MarketModel
from simModel.fcMinimal import FcMinimalModel, FcParams
from simModel.gcmg import GcmgModel, GcmgParams
from simModel.luxMarchesi import LmParams, LuxMarchesiModel
from simModel.thurner import ThurnerModel, ThurnerParams


@dataclass(frozen=True)
class ModelEntry:
    params_cls: type
    build: Callable[[Any, RngStream], MarketModel]


MODELS: Dict[str, ModelEntry] = {
    "fc_minimal": ModelEntry(FcParams, lambda params, stream: FcMinimalModel(params)),
    "lux_marchesi": ModelEntry(LmParams, lambda params, stream: LuxMarchesiModel(params)),
    "gcmg": ModelEntry(GcmgParams,
                       lambda params, stream: GcmgModel(params, stream.generator(SETUP_SUBSTREAM))),
    "thurner": ModelEntry(ThurnerParams, lambda params, stream: ThurnerModel(params)),
}


def build_model(model: str, params: Any, stream: RngStream) -> MarketModel:
    return MODELS[model].build(params, stream)
