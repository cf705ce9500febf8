"""
Description: switching between chartists and fundamentalists.

Both rate variants return per-agent, per-step probabilities: the rate is
multiplied by B * dt_scale and clipped to [0, 1].
"""
from __future__ import annotations

import math
from dataclasses import replace
from typing import Tuple

import numpy as np

from simModel.fcMinimal.params import FcParams, FcState, RateVariant
from simModel.fcMinimal.price import moving_average

Rates = Tuple[float, float]


def clip_rates(raw: Rates) -> Tuple[Rates, int]:
    """clip both probabilities to [0, 1] and count how many needed it"""
    clipped = 0
    out = []
    for value in raw:
        if value > 1.0 or value < 0.0:
            clipped += 1
            value = min(1.0, max(0.0, value))
        out.append(value)
    return (out[0], out[1]), clipped


def raw_rates_full(state: FcState, params: FcParams) -> Rates:
    scale = params.B * params.dt_scale
    x = state.x
    K = params.herding_offset(state.N)
    # chartist -> fundamentalist: herding on fundamentalists, signal |p_f - p|
    p_cf = scale * (1.0 + params.delta) * (K + (1.0 - x)) * \
        math.exp(params.gamma * abs(params.p_f - state.price))
    # fundamentalist -> chartist, averaged over the chartist horizons
    signal = 0.0
    horizons = params.horizons
    for M in horizons:
        p_M = moving_average(state.window, M)
        signal += math.exp(params.b * abs(p_M - state.price) / (M - 1))
    signal /= len(horizons)
    p_fc = scale * (1.0 - params.delta) * (K + x) * signal
    return p_cf, p_fc


def raw_rates_simplified(state: FcState, params: FcParams) -> Rates:
    scale = params.B * params.dt_scale
    x = state.x
    K = params.herding_offset(state.N)
    p_cf = scale * (1.0 + params.delta) * (K + (1.0 - x))
    p_fc = scale * (1.0 - params.delta) * (K + x)
    return p_cf, p_fc


def transition_rates_full(state: FcState, params: FcParams) -> Rates:
    """Price-signal switching probabilities (p_cf, p_fc).

    p_cf ~ (K + N_f/N) exp(γ|p_f - p|), p_fc ~ (K + N_c/N) exp(b|p_M - p|/(M-1)).
    The asymmetry factors (1 ± δ) reduce to 1 for δ = 0.
    """
    return clip_rates(raw_rates_full(state, params))[0]


def transition_rates_simplified(state: FcState, params: FcParams) -> Rates:
    """p_cf = B(1+δ)(K + N_f/N) dt_scale, p_fc = B(1-δ)(K + N_c/N) dt_scale"""
    return clip_rates(raw_rates_simplified(state, params))[0]


def raw_rates(state: FcState, params: FcParams) -> Rates:
    if params.variant is RateVariant.SIMPLIFIED:
        return raw_rates_simplified(state, params)
    return raw_rates_full(state, params)


def draw_chartists(n_c: int, N: int, rates: Rates, rng: np.random.Generator) -> int:
    p_cf, p_fc = rates
    leaving = rng.binomial(n_c, p_cf) if n_c > 0 else 0
    joining = rng.binomial(N - n_c, p_fc) if n_c < N else 0
    return n_c - int(leaving) + int(joining)


def population_step(state: FcState, rates: Rates, rng: np.random.Generator) -> FcState:
    """each chartist switches with p_cf, each fundamentalist with p_fc

    Args:
        state (FcState): current state
        rates (Rates): (p_cf, p_fc) in [0, 1]
        rng (np.random.Generator): noise source

    Returns:
        FcState: state with the new chartist count, price untouched
    """
    p_cf, p_fc = rates
    if not (0.0 <= p_cf <= 1.0 and 0.0 <= p_fc <= 1.0):
        raise ValueError(f"switching probabilities must lie in [0, 1], got {rates}")
    return replace(state, n_c=draw_chartists(state.n_c, state.N, rates, rng))
