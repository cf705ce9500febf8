"""
Description: leverage model. Each tick a mean-reverting noise trader and up to
n_funds leveraged value investors clear against a fixed supply of shares.
"""
from __future__ import annotations

from typing import Tuple

import numpy as np

from simModel.common.runner import MarketModel, StepRecord
from simModel.thurner.clearing import FundBook, clear_market, excess_demand
from simModel.thurner.funds import (
    bankruptcy_step,
    book_pending_flow,
    fund_accounting_step,
    investor_flow,
    noise_trader_step,
)
from simModel.thurner.params import ThurnerParams, ThurnerState

import logger

logging = logger.get_logger(__name__)

FUND_FIELDS = ("W", "D", "lambda", "status")


def fund_keys(n_funds: int) -> Tuple[str, ...]:
    return tuple(f"{name}_{h + 1}" for h in range(n_funds) for name in FUND_FIELDS)


class ThurnerModel(MarketModel):
    name = "thurner"

    def __init__(self, params: ThurnerParams) -> None:
        super().__init__()
        self.params = params
        self.state = ThurnerState.initial(params)
        self.observable_keys = ("m", "xi", "n_active_funds", "funds_active",
                                "clearing_residual", "max_leverage") + fund_keys(params.n_funds)
        self.bankruptcies = 0

    def step(self, rng: np.random.Generator) -> StepRecord:
        params = self.params
        state = self.state

        funds = [book_pending_flow(f, state.price) for f in state.funds]
        xi = noise_trader_step(state.noise.xi, params, rng)
        price = self.check_price(clear_market(xi, funds, params, tick=state.t))

        book = FundBook(funds, params)
        residual = excess_demand(price, xi, book, params.N_shares)
        leverages = np.zeros(len(funds))
        for D_new, h in zip(book.demand(price), book.index):
            W_start = funds[h].W
            fund = fund_accounting_step(funds[h], price, float(D_new))
            funds[h] = investor_flow(fund, W_start, params)
            leverages[h] = funds[h].leverage(price)

        n_active = len(book)
        for h, spec in enumerate(params.funds):
            was_active = funds[h].active
            funds[h] = bankruptcy_step(funds[h], spec, params, tick=state.t + 1)
            if was_active and not funds[h].active:
                self.bankruptcies += 1

        state.noise.xi = xi
        state.price = price
        state.funds = funds
        state.t += 1
        self.t = state.t

        m = params.p_f - price
        observables = {
            "m": m,
            "xi": xi,
            "n_active_funds": float(n_active),
            "funds_active": 1.0 if m > 0.0 else 0.0,
            "clearing_residual": abs(residual),
            "max_leverage": float(leverages.max()) if leverages.size else 0.0,
        }
        for h, fund in enumerate(funds):
            observables[f"W_{h + 1}"] = fund.W
            observables[f"D_{h + 1}"] = fund.D
            observables[f"lambda_{h + 1}"] = float(leverages[h])
            observables[f"status_{h + 1}"] = 1.0 if fund.active else 0.0
        return StepRecord(state.t, price, observables)

    def run_summary(self):
        summary = super().run_summary()
        summary["bankruptcies"] = self.bankruptcies
        return summary
