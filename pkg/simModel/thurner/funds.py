"""
Description: noise-trader demand process and the per-fund bookkeeping that
follows each clearing: mark to market, rebalancing, investor flows, bankruptcy
and re-entry.
"""
from __future__ import annotations

import math
from dataclasses import replace

import numpy as np

from simModel.common.errors import DomainError
from simModel.thurner.params import FundSpec, FundState, FundStatus, ThurnerParams

import logger

logging = logger.get_logger(__name__)


def noise_trader_step(xi: float, params: ThurnerParams, rng: np.random.Generator) -> float:
    """log ξ' = ρ log ξ + σ η + (1 - ρ) log(N_s p_f), η ~ N(0, 1)"""
    if not xi > 0.0:
        raise DomainError(f"noise-trader demand must be > 0, got {xi}")
    eta = rng.standard_normal()
    log_xi = (params.rho * math.log(xi) + params.sigma * eta
              + (1.0 - params.rho) * math.log(params.xi_fixed_point))
    return math.exp(log_xi)


def fund_accounting_step(fund: FundState, p_new: float, D_new: float) -> FundState:
    """Mark the old position to p_new, then trade to D_new at p_new.

    W' = D_old p_new + C_old and C' = W' - D_new p_new; borrowing is C' < 0.
    """
    if not fund.active:
        return fund
    W = fund.D * p_new + fund.C
    return replace(fund, W=W, C=W - D_new * p_new, D=D_new)


def investor_flow(fund: FundState, W_start: float, params: ThurnerParams) -> FundState:
    """Update the fund's performance average and queue the investor flow.

    r_perf is an exponential average of the tick return W'/W - 1 with weight
    flow_memory on the newest tick; flow_memory = 1 uses the raw return. The
    flow κ (r_perf - r_bm) W' is bounded below by -W' and is booked into cash
    at the start of the next tick.
    """
    if not fund.active or params.flow_kappa <= 0.0:
        return fund
    r = fund.W / W_start - 1.0 if W_start > 0.0 else 0.0
    performance = (1.0 - params.flow_memory) * fund.performance + params.flow_memory * r
    flow = params.flow_kappa * (performance - params.r_bm) * fund.W
    flow = max(flow, -max(fund.W, 0.0))
    return replace(fund, performance=performance, pending_flow=flow)


def book_pending_flow(fund: FundState, price: float) -> FundState:
    if not fund.active or fund.pending_flow == 0.0:
        return fund
    C = fund.C + fund.pending_flow
    return replace(fund, C=C, W=fund.D * price + C, pending_flow=0.0)


def bankruptcy_step(fund: FundState, spec: FundSpec, params: ThurnerParams, tick: int = 0) -> FundState:
    """Remove funds below bankrupt_frac W0; re-enter with W0 after T_wait ticks.

    A removed fund's shares leave the book, so its demand is absent from the
    next clearing.
    """
    if fund.active:
        if fund.W < params.bankrupt_frac * spec.W0:
            logging.info(f"tick {tick}: fund beta={spec.beta:g} bankrupt at W={fund.W:.4g}")
            return FundState(W=0.0, C=0.0, D=0.0, status=FundStatus.BANKRUPT, timer=params.T_wait)
        return fund
    timer = fund.timer - 1
    if timer <= 0:
        logging.info(f"tick {tick}: fund beta={spec.beta:g} re-enters with W0={spec.W0:g}")
        return FundState.fresh(spec.W0)
    return replace(fund, timer=timer)
