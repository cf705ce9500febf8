"""
Description: self-organization of the number of agents through the long-term
price variance sigma(t, T).
"""
from __future__ import annotations

from typing import Optional, Sequence, Union

import numpy as np

from simModel.common.series import PriceSeries
from simModel.fcMinimal.params import SocParams

import logger

logging = logger.get_logger(__name__)


def long_term_volatility(prices: Union[PriceSeries, Sequence[float]], T: int) -> Optional[float]:
    """sample variance of the trailing T prices

    Returns None while fewer than T prices exist (warming up); no entry or
    exit decision is taken on a None.
    """
    values = prices.values if isinstance(prices, PriceSeries) else np.asarray(prices, dtype=np.float64)
    if T < 2:
        raise ValueError(f"T must be >= 2, got {T}")
    if values.size < T:
        return None
    return float(np.var(values[-T:], ddof=1))


class RollingVariance:
    """O(1) trailing-window sample variance over a ring buffer.

    Sums are taken around a fixed reference to keep the squares small, and
    rebuilt from the buffer once per window length so rounding cannot drift.
    """

    def __init__(self, T: int, reference: float = 0.0) -> None:
        self.T = T
        self.reference = reference
        self.buffer = np.zeros(T)
        self.count = 0
        self.head = 0
        self.total = 0.0
        self.total_sq = 0.0

    def push(self, price: float) -> None:
        value = price - self.reference
        if self.count >= self.T:
            old = self.buffer[self.head]
            self.total -= old
            self.total_sq -= old * old
        else:
            self.count += 1
        self.buffer[self.head] = value
        self.total += value
        self.total_sq += value * value
        self.head = (self.head + 1) % self.T
        if self.head == 0 and self.count == self.T:
            self.total = float(self.buffer.sum())
            self.total_sq = float(np.dot(self.buffer, self.buffer))

    def value(self) -> Optional[float]:
        if self.count < self.T:
            return None
        mean = self.total / self.T
        return max(0.0, (self.total_sq - self.T * mean * mean) / (self.T - 1))


def soc_step(N: int, sigma_T: Optional[float], soc: SocParams) -> int:
    """agents enter above theta_in, leave below theta_out, within [n_min, n_max]"""
    if sigma_T is None:
        return N
    if sigma_T > soc.theta_in:
        new_N = min(soc.n_max, N + soc.entry_exit_size)
    elif sigma_T < soc.theta_out:
        new_N = max(soc.n_min, N - soc.entry_exit_size)
    else:
        new_N = N
    if new_N != N:
        logging.debug(f"sigma_T={sigma_T:.4g}: N {N} -> {new_N}")
    return new_N


def rescale_chartists(n_c: int, N: int, new_N: int) -> int:
    """keep x = n_c/N, rounding half up, clamped to [0, new_N]"""
    if new_N == N:
        return n_c
    scaled = int(np.floor(n_c * new_N / N + 0.5))
    return min(new_N, max(0, scaled))
