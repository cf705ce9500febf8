"""
Description: price formation of the minimal model.
"""
from __future__ import annotations

import itertools
from typing import TYPE_CHECKING, Sequence

import numpy as np

from simModel.common.errors import DomainError

if TYPE_CHECKING:
    from simModel.fcMinimal.params import FcParams, FcState


def moving_average(window: Sequence[float], M: int) -> float:
    """arithmetic mean of the last min(M, len(window)) prices, current price included"""
    if not window:
        raise DomainError("moving average of an empty window")
    n = min(M, len(window))
    return sum(itertools.islice(reversed(window), n)) / n


def chartist_pull(state: FcState, params: FcParams) -> float:
    """b/(M-1) * (p - p_M), averaged over the chartist horizons"""
    pull = 0.0
    horizons = params.horizons
    for M in horizons:
        pull += params.b / (M - 1) * (state.price - moving_average(state.window, M))
    return pull / len(horizons)


def price_step(state: FcState, params: FcParams, rng: np.random.Generator) -> float:
    """p(t+1) = p + x b/(M-1) (p - p_M) + (1-x) γ (p_f - p) + σ ξ

    Args:
        state (FcState): current state, window holds the current price last
        params (FcParams): model parameters
        rng (np.random.Generator): noise source, one standard normal per call

    Returns:
        float: next price (finiteness is checked by the caller)
    """
    x = state.x
    noise = rng.standard_normal()
    return (state.price
            + x * chartist_pull(state, params)
            + (1.0 - x) * params.gamma * (params.p_f - state.price)
            + params.sigma * noise)
