"""
Description: grand-canonical minority game. Producers always trade with a
fixed action per information state; speculators pick their best-scoring
strategy, which may be the inactive one, and the log-price moves with the
aggregate action.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

import numpy as np

from simModel.common.errors import DomainError
from simModel.common.runner import MarketModel, StepRecord

import logger

logging = logger.get_logger(__name__)

INACTIVE = 0


@dataclass
class GcmgParams:
    n_spec: int = 640
    n_prod: int = 640
    P: int = 64
    S: int = 2
    epsilon: float = 0.01
    lambda_depth: float = 1000.0
    score_init: float = 0.0
    log_price0: float = 0.0

    def __post_init__(self):
        if self.P < 1:
            raise ValueError(f"P must be >= 1, got {self.P}")
        if self.S < 1:
            raise ValueError(f"S must be >= 1, got {self.S}")
        if self.lambda_depth <= 0:
            raise ValueError(f"lambda_depth must be > 0, got {self.lambda_depth}")
        if self.n_spec < 0 or self.n_prod < 0 or self.n_spec + self.n_prod < 1:
            raise ValueError(f"need at least one agent, got n_spec={self.n_spec}, n_prod={self.n_prod}")

    @property
    def n_s(self) -> float:
        """normalized number of speculators N_s / P"""
        return self.n_spec / self.P


@dataclass(frozen=True)
class StrategyTable:
    """Actions a[i, s, mu-1] in {-1, 0, +1}.

    speculator_actions has shape (n_spec, S+1, P) with strategy 0 the inactive
    one (all zeros); producer_actions has shape (n_prod, P). Both are read-only.
    """
    speculator_actions: np.ndarray
    producer_actions: np.ndarray

    @classmethod
    def draw(cls, params: GcmgParams, rng: np.random.Generator) -> StrategyTable:
        speculators = np.zeros((params.n_spec, params.S + 1, params.P), dtype=np.int8)
        speculators[:, 1:, :] = rng.choice(np.array([-1, 1], dtype=np.int8),
                                           size=(params.n_spec, params.S, params.P))
        producers = rng.choice(np.array([-1, 1], dtype=np.int8), size=(params.n_prod, params.P))
        speculators.setflags(write=False)
        producers.setflags(write=False)
        return cls(speculators, producers)

    @property
    def n_strategies(self) -> int:
        return self.speculator_actions.shape[1]


@dataclass
class GcmgState:
    scores: np.ndarray
    mu: int
    log_price: float
    t: int = 0


def draw_information(rng: np.random.Generator, P: int) -> int:
    """uniform information state in 1..P"""
    if P < 1:
        raise DomainError(f"P must be >= 1, got {P}")
    return int(rng.integers(1, P + 1))


def select_strategy(scores: np.ndarray, rng: np.random.Generator) -> Union[int, np.ndarray]:
    """Index of the best-scoring strategy, ties broken uniformly at random.

    Args:
        scores (np.ndarray): (n_strategies,) for one agent or (n_agents, n_strategies),
            inactive strategy in column 0
        rng (np.random.Generator): tie-break source

    Returns:
        int | np.ndarray: chosen index per agent
    """
    scores = np.asarray(scores, dtype=np.float64)
    if scores.shape[-1] < 1:
        raise DomainError("an agent needs at least one strategy")
    ties = scores == scores.max(axis=-1, keepdims=True)
    choice = np.argmax(rng.random(scores.shape) * ties, axis=-1)
    return int(choice) if scores.ndim == 1 else choice


def aggregate_action(actions: Sequence[int]) -> int:
    """A(t): sum of the actions, inactive agents contribute 0"""
    return int(np.sum(actions, dtype=np.int64))


def update_scores(scores: np.ndarray, A: int, mu: int, table: StrategyTable,
                  epsilon: float) -> np.ndarray:
    """U[i, s] -= a[i, s, mu] A for every strategy, used or not; U[i, 0] += ε"""
    updated = scores - float(A) * table.speculator_actions[:, :, mu - 1].astype(np.float64)
    updated[:, INACTIVE] += epsilon
    return updated


def gcmg_price_step(log_price: float, A: int, lambda_depth: float) -> float:
    if lambda_depth <= 0:
        raise DomainError(f"lambda_depth must be > 0, got {lambda_depth}")
    return log_price + A / lambda_depth


class Predictability(NamedTuple):
    H: float
    unseen: int  # information states never observed, left out of the sum


def predictability(mu_history: Sequence[int], A_history: Sequence[float], P: int) -> Predictability:
    """H = (1/P) Σ_mu <A|mu>^2 over the recorded (mu, A) pairs"""
    mus = np.asarray(mu_history, dtype=np.int64)
    As = np.asarray(A_history, dtype=np.float64)
    if mus.size == 0:
        raise DomainError("predictability of an empty history")
    if mus.shape != As.shape:
        raise DomainError(f"{mus.size} information states for {As.size} actions")
    if mus.min() < 1 or mus.max() > P:
        raise DomainError(f"information states must lie in 1..{P}")

    counts = np.bincount(mus, minlength=P + 1)[1:]
    sums = np.bincount(mus, weights=As, minlength=P + 1)[1:]
    seen = counts > 0
    unseen = int(P - seen.sum())
    if unseen:
        logging.warning(f"predictability: {unseen} of {P} information states never observed")
    conditional = sums[seen] / counts[seen]
    return Predictability(float(np.sum(conditional ** 2) / P), unseen)


class GcmgModel(MarketModel):
    name = "gcmg"
    observable_keys = ("A", "log_price", "mu", "n_active")

    def __init__(self, params: GcmgParams, setup_rng: np.random.Generator) -> None:
        super().__init__()
        self.params = params
        self.table = StrategyTable.draw(params, setup_rng)
        self.state = GcmgState(
            scores=np.full((params.n_spec, params.S + 1), params.score_init, dtype=np.float64),
            mu=0, log_price=params.log_price0)
        self._agents = np.arange(params.n_spec)

    def step(self, rng: np.random.Generator) -> StepRecord:
        params = self.params
        state = self.state

        mu = draw_information(rng, params.P)
        choice = select_strategy(state.scores, rng)
        speculator_actions = self.table.speculator_actions[self._agents, choice, mu - 1]
        A = aggregate_action(speculator_actions) + aggregate_action(self.table.producer_actions[:, mu - 1])

        state.log_price = gcmg_price_step(state.log_price, A, params.lambda_depth)
        state.scores = update_scores(state.scores, A, mu, self.table, params.epsilon)
        state.mu = mu
        state.t += 1
        self.t = state.t

        price = self.check_price(float(np.exp(state.log_price)))
        return StepRecord(state.t, price, {
            "A": float(A),
            "log_price": state.log_price,
            "mu": float(mu),
            "n_active": float(np.count_nonzero(choice != INACTIVE)),
        })

    def run_summary(self):
        summary = super().run_summary()
        summary["n_s"] = self.params.n_s
        return summary
