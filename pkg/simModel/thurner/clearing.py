"""
Description: fund demand and numerical market clearing

    ξ/p + Σ_h D_h(p) = N_s

Fund demand is evaluated on mark-to-market wealth W_h(p) = D_h p + C_h, so a
leveraged fund's demand can rise with the price and uniqueness of the
clearing price is not guaranteed. The bracket below always changes sign, and
the root found is checked against the residual tolerance.
"""
from __future__ import annotations

from typing import Sequence, Union

import numpy as np
from scipy import optimize

from simModel.common.errors import ClearingError, DomainError
from simModel.thurner.params import FundState, ThurnerParams

import logger

logging = logger.get_logger(__name__)

RESIDUAL_TOL = 1e-10
ArrayLike = Union[float, np.ndarray]


def fund_demand(W: ArrayLike, p: float, p_f: float, beta: ArrayLike, lambda_max: float) -> ArrayLike:
    """long-only demand min(β m W/p, λ^M W/p) with mispricing m = p_f - p

    Zero when the asset is perceived overpriced (m <= 0) or wealth is not positive.
    """
    if p <= 0.0:
        raise DomainError(f"fund demand needs a positive price, got {p}")
    m = p_f - p
    W = np.maximum(np.asarray(W, dtype=np.float64), 0.0)
    beta = np.asarray(beta, dtype=np.float64)
    demand = np.where(m > 0.0, np.minimum(beta * m * W / p, lambda_max * W / p), 0.0)
    return float(demand) if demand.ndim == 0 else demand


class FundBook:
    """Positions of the active funds, frozen for one clearing."""

    def __init__(self, funds: Sequence[FundState], params: ThurnerParams) -> None:
        active = [h for h, f in enumerate(funds) if f.active]
        self.index = np.array(active, dtype=np.int64)
        self.D = np.array([funds[h].D for h in active], dtype=np.float64)
        self.C = np.array([funds[h].C for h in active], dtype=np.float64)
        self.beta = params.betas[self.index] if active else np.zeros(0)
        self.params = params

    def __len__(self) -> int:
        return self.index.size

    def wealth(self, p: float) -> np.ndarray:
        return self.D * p + self.C

    def demand(self, p: float) -> np.ndarray:
        if not len(self):
            return np.zeros(0)
        return fund_demand(self.wealth(p), p, self.params.p_f, self.beta, self.params.lambda_max)


def excess_demand(p: float, xi: float, book: FundBook, N_shares: float) -> float:
    return xi / p + float(np.sum(book.demand(p))) - N_shares


def clear_market(xi: float, funds: Sequence[FundState], params: ThurnerParams, tick: int = 0) -> float:
    """Clearing price p* > 0 of the noise trader and the active funds.

    Args:
        xi (float): noise-trader cash demand, > 0
        funds (Sequence[FundState]): all funds; bankrupt ones contribute nothing
        params (ThurnerParams): model parameters
        tick (int, optional): tick index for diagnostics

    Raises:
        DomainError: xi <= 0
        ClearingError: the root finder fails or the residual exceeds 1e-10 N_s

    Returns:
        float: p* with |excess demand| < 1e-10 N_s
    """
    if not xi > 0.0:
        raise DomainError(f"noise-trader demand must be > 0, got {xi}", tick=tick)
    book = FundBook(funds, params)
    N_s = params.N_shares
    if not len(book):
        return xi / N_s

    # ξ/p_lo = 2 N_s, and every fund demand vanishes at p_hi >= 2 p_f
    p_lo = 0.5 * xi / N_s
    p_hi = 2.0 * max(params.p_f, xi / N_s)
    f_lo = excess_demand(p_lo, xi, book, N_s)
    f_hi = excess_demand(p_hi, xi, book, N_s)
    diagnostics = {"xi": xi, "p_lo": p_lo, "p_hi": p_hi, "f_lo": f_lo, "f_hi": f_hi,
                   "active_funds": len(book)}
    if not (f_lo > 0.0 > f_hi):
        logging.error(f"tick {tick}: clearing bracket does not change sign {diagnostics}")
        raise ClearingError(tick, "clearing bracket does not change sign", diagnostics)

    try:
        price = optimize.brentq(excess_demand, p_lo, p_hi, args=(xi, book, N_s),
                                xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=500)
    except (RuntimeError, ValueError) as exc:
        logging.error(f"tick {tick}: root finder failed {diagnostics}")
        raise ClearingError(tick, f"root finder failed: {exc}", diagnostics) from exc

    residual = excess_demand(price, xi, book, N_s)
    if abs(residual) >= RESIDUAL_TOL * N_s:
        diagnostics.update(price=price, residual=residual)
        logging.error(f"tick {tick}: clearing residual too large {diagnostics}")
        raise ClearingError(tick, f"clearing residual {residual:.3g} above tolerance", diagnostics)
    return float(price)
