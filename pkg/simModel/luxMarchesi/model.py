"""
Description: three-population herding market (fundamentalists, optimists,
pessimists) with a tick-quantized price driven by excess demand.

Transition probabilities follow the destination convention: pi_ab is the
probability that an agent of class b moves to class a, and the herding factor
is the fraction of the destination class (pi_+f is fundamentalist -> optimist).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Tuple

import numpy as np

from simModel.common.errors import RunAbort
from simModel.common.runner import MarketModel, StepRecord

import logger

logging = logger.get_logger(__name__)


@dataclass
class LmParams:
    N: int = 500
    nu1: float = 20.0
    nu2: float = 10.0
    beta: float = 0.2
    gamma: float = 0.25
    t_c: float = 1.0
    tick: float = 0.01
    mu_sigma: float = 0.01
    p_f0: float = 10.0
    pf_sigma: float = 0.0005
    n_floor: int = 4
    dt_scale: float = 0.05
    a1: float = 0.0
    a2: float = 300.0
    f0: float = 0.9

    def __post_init__(self):
        if self.n_floor < 0:
            raise ValueError(f"n_floor must be >= 0, got {self.n_floor}")
        if self.N < 3 * self.n_floor or self.N < 3:
            raise ValueError(f"N={self.N} must be at least 3 * n_floor = {3 * self.n_floor}")
        if self.tick <= 0:
            raise ValueError(f"tick must be > 0, got {self.tick}")
        if self.p_f0 <= 0:
            raise ValueError(f"p_f0 must be > 0, got {self.p_f0}")
        if min(self.nu1, self.nu2, self.dt_scale, self.mu_sigma, self.pf_sigma) < 0:
            raise ValueError("rates, dt_scale and noise widths must be non-negative")
        if not 0.0 <= self.f0 <= 1.0:
            raise ValueError(f"f0 must lie in [0, 1], got {self.f0}")


@dataclass
class LmState:
    n_f: int
    n_plus: int
    n_minus: int
    price_ticks: int
    p_f: float
    tick: float
    t: int = 0

    @property
    def price(self) -> float:
        return self.price_ticks * self.tick

    @property
    def n_c(self) -> int:
        return self.n_plus + self.n_minus

    @property
    def N(self) -> int:
        return self.n_f + self.n_plus + self.n_minus

    @classmethod
    def initial(cls, params: LmParams) -> LmState:
        n_f = int(round(params.f0 * params.N))
        n_plus = (params.N - n_f) // 2
        state = cls(n_f, n_plus, params.N - n_f - n_plus,
                    price_ticks=int(round(params.p_f0 / params.tick)),
                    p_f=params.p_f0, tick=params.tick)
        return enforce_floors(state, params.n_floor)


@dataclass(frozen=True)
class LmProbabilities:
    plus_f: float    # f -> +
    f_plus: float    # + -> f
    minus_f: float   # f -> -
    f_minus: float   # - -> f
    plus_minus: float  # - -> +
    minus_plus: float  # + -> -

    def as_tuple(self) -> Tuple[float, ...]:
        return (self.plus_f, self.f_plus, self.minus_f, self.f_minus,
                self.plus_minus, self.minus_plus)


def lm_utilities(state: LmState, prev_price: float, params: LmParams) -> Tuple[float, float, float]:
    """profit-differential utilities (U1, U21, U22)

    U1 is the trend advantage of optimists over pessimists; U21 (U22) compares
    the optimists' (pessimists') trend profit with the fundamentalists' profit
    from the mispricing.
    """
    trend = state.price - prev_price
    herd_sign = float(np.sign(state.n_plus - state.n_minus))
    fundamental_profit = params.gamma * abs(state.p_f - state.price)
    U1 = params.a1 * trend
    U21 = params.a2 * (trend * herd_sign - fundamental_profit)
    U22 = params.a2 * (-trend * herd_sign - fundamental_profit)
    return U1, U21, U22


def _clip(value: float) -> Tuple[float, int]:
    if value > 1.0:
        return 1.0, 1
    return value, 0


def lm_transition_probabilities(state: LmState, utilities: Tuple[float, float, float],
                                params: LmParams) -> Tuple[LmProbabilities, int]:
    """the six switching probabilities scaled by dt_scale and clipped to [0, 1]

    Returns:
        Tuple[LmProbabilities, int]: probabilities and the number clipped
    """
    U1, U21, U22 = utilities
    N = state.N
    raw = (
        params.nu2 * state.n_plus / N * math.exp(U21),
        params.nu2 * state.n_f / N * math.exp(-U21),
        params.nu2 * state.n_minus / N * math.exp(U22),
        params.nu2 * state.n_f / N * math.exp(-U22),
        params.nu1 * state.n_c / N * math.exp(U1),
        params.nu1 * state.n_c / N * math.exp(-U1),
    )
    clipped = 0
    values = []
    for value in raw:
        value, was_clipped = _clip(value * params.dt_scale)
        clipped += was_clipped
        values.append(value)
    return LmProbabilities(*values), clipped


def _leave(count: int, p_a: float, p_b: float, rng: np.random.Generator) -> Tuple[int, int, int]:
    """split `count` agents into (to a, to b, stay)"""
    total = p_a + p_b
    if total > 1.0:
        p_a, p_b = p_a / total, p_b / total
    moved = rng.multinomial(count, [p_a, p_b, max(0.0, 1.0 - p_a - p_b)])
    return int(moved[0]), int(moved[1]), int(moved[2])


def enforce_floors(state: LmState, n_floor: int) -> LmState:
    """restore classes below the floor, one agent at a time from the largest class"""
    counts = [state.n_f, state.n_plus, state.n_minus]
    while min(counts) < n_floor:
        low = counts.index(min(counts))
        high = counts.index(max(counts))
        counts[low] += 1
        counts[high] -= 1
    return replace(state, n_f=counts[0], n_plus=counts[1], n_minus=counts[2])


def lm_population_step(state: LmState, probabilities: LmProbabilities, n_floor: int,
                       rng: np.random.Generator) -> LmState:
    """multinomial moves between the three classes, then the floors"""
    pr = probabilities
    f_to_plus, f_to_minus, f_stay = _leave(state.n_f, pr.plus_f, pr.minus_f, rng)
    plus_to_f, plus_to_minus, plus_stay = _leave(state.n_plus, pr.f_plus, pr.minus_plus, rng)
    minus_to_f, minus_to_plus, minus_stay = _leave(state.n_minus, pr.f_minus, pr.plus_minus, rng)

    moved = replace(state,
                    n_f=f_stay + plus_to_f + minus_to_f,
                    n_plus=plus_stay + f_to_plus + minus_to_plus,
                    n_minus=minus_stay + f_to_minus + plus_to_minus)
    return enforce_floors(moved, n_floor)


def lm_excess_demand(state: LmState, params: LmParams) -> float:
    """ED = n_f γ (p_f - p) + (n_+ - n_-) t_c; fundamentalists buy below p_f"""
    return state.n_f * params.gamma * (state.p_f - state.price) + \
        (state.n_plus - state.n_minus) * params.t_c


def tick_probabilities(signal: float) -> Tuple[float, float]:
    """(π_up, π_down) for the signal β·ED + μ"""
    up = min(1.0, max(0.0, signal))
    down = min(1.0, -min(0.0, signal))
    return up, down


def lm_price_step(state: LmState, ED: float, params: LmParams,
                  rng: np.random.Generator) -> LmState:
    """move the price by at most one tick, then let the fundamental price diffuse"""
    mu = params.mu_sigma * rng.standard_normal()
    up, down = tick_probabilities(params.beta * ED + mu)
    u = rng.random()
    price_ticks = state.price_ticks
    if u < up:
        price_ticks += 1
    elif u < down:
        price_ticks -= 1
    if price_ticks <= 0:
        raise RunAbort(state.t, f"price left the positive tick grid ({price_ticks} ticks)")

    p_f = state.p_f * math.exp(params.pf_sigma * rng.standard_normal())
    return replace(state, price_ticks=price_ticks, p_f=p_f)


class LuxMarchesiModel(MarketModel):
    name = "lux_marchesi"
    observable_keys = ("p_f", "n_f", "n_plus", "n_minus", "n_c", "ED")

    def __init__(self, params: LmParams) -> None:
        super().__init__()
        self.params = params
        self.state = LmState.initial(params)
        self.prev_price = self.state.price

    def step(self, rng: np.random.Generator) -> StepRecord:
        params = self.params
        state = self.state

        utilities = lm_utilities(state, self.prev_price, params)
        probabilities, clipped = lm_transition_probabilities(state, utilities, params)
        self.clip_count += clipped
        state = lm_population_step(state, probabilities, params.n_floor, rng)

        ED = lm_excess_demand(state, params)
        self.prev_price = state.price
        state = lm_price_step(state, ED, params, rng)
        state = replace(state, t=state.t + 1)
        self.state = state
        self.t = state.t

        return StepRecord(state.t, self.check_price(state.price), {
            "p_f": state.p_f,
            "n_f": float(state.n_f),
            "n_plus": float(state.n_plus),
            "n_minus": float(state.n_minus),
            "n_c": float(state.n_c),
            "ED": ED,
        })
