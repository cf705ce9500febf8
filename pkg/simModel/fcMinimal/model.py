"""
Description: the minimal fundamentalist-chartist market. One tick is a
population sweep, a price update and, when enabled, an entry/exit decision on
the number of agents.
"""
from __future__ import annotations

import math

import numpy as np

from simModel.common.runner import MarketModel, StepRecord
from simModel.fcMinimal.params import FcParams, FcState
from simModel.fcMinimal.population import clip_rates, draw_chartists, raw_rates
from simModel.fcMinimal.price import price_step
from simModel.fcMinimal.soc import RollingVariance, rescale_chartists, soc_step

import logger

logging = logger.get_logger(__name__)


class FcMinimalModel(MarketModel):
    name = "fc_minimal"
    observable_keys = ("x", "n_c", "N", "sigma_T")

    def __init__(self, params: FcParams) -> None:
        super().__init__()
        self.params = params
        self.state = FcState.initial(params)
        self.soc = params.soc
        self.volatility = RollingVariance(self.soc.T, reference=params.p_f) if self.soc.enabled else None
        if self.volatility is not None:
            self.volatility.push(self.state.price)
        self.soc_moves = 0

    def step(self, rng: np.random.Generator) -> StepRecord:
        state = self.state

        rates, clipped = clip_rates(raw_rates(state, self.params))
        self.clip_count += clipped
        state.n_c = draw_chartists(state.n_c, state.N, rates, rng)

        price = self.check_price(price_step(state, self.params, rng))
        state.price = price
        state.window.append(price)
        state.t += 1
        self.t = state.t

        sigma_T = math.nan
        if self.volatility is not None:
            self.volatility.push(price)
            variance = self.volatility.value()
            if variance is not None:
                sigma_T = variance
                if state.t % self.soc.decision_interval == 0:
                    self._resize(variance)

        return StepRecord(state.t, price, {
            "x": state.x,
            "n_c": float(state.n_c),
            "N": float(state.N),
            "sigma_T": sigma_T,
        })

    def _resize(self, variance: float) -> None:
        state = self.state
        new_N = soc_step(state.N, variance, self.soc)
        if new_N != state.N:
            state.n_c = rescale_chartists(state.n_c, state.N, new_N)
            state.N = new_N
            self.soc_moves += 1

    def run_summary(self):
        summary = super().run_summary()
        summary["soc_moves"] = self.soc_moves
        summary["final_N"] = self.state.N
        return summary
