"""
Description: time-indexed price series and the return views derived from them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence, Union

import numpy as np

from simModel.common.errors import DomainError


class ReturnKind(str, Enum):
    LOG = "log"
    DIFFERENCE = "difference"


@dataclass(frozen=True)
class PriceSeries:
    """Prices p(t0), p(t0+1), ... stored as 64-bit floats."""
    values: np.ndarray
    t0: int = 0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.size < 1:
            raise DomainError("a price series needs at least one value")
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            raise DomainError(f"non-finite price at tick {self.t0 + bad}", tick=self.t0 + bad)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size

    @classmethod
    def from_records(cls, records) -> PriceSeries:
        """Prices of a record sequence (RunRecords or any list of StepRecord)."""
        if hasattr(records, "prices"):
            return cls(records.prices, int(records.ticks[0]) if len(records) else 0)
        return cls(np.array([r.price for r in records]), records[0].t if records else 0)

    def tail(self, n: int) -> PriceSeries:
        """The trailing n prices, keeping their tick indices."""
        n = min(n, len(self))
        return PriceSeries(self.values[-n:], self.t0 + len(self) - n)

    def log_prices(self) -> np.ndarray:
        self._require_positive()
        return np.log(self.values)

    def _require_positive(self) -> None:
        nonpositive = np.flatnonzero(self.values <= 0.0)
        if nonpositive.size:
            tick = self.t0 + int(nonpositive[0])
            raise DomainError(
                f"log returns need strictly positive prices; p <= 0 at tick {tick}",
                tick=tick)


@dataclass(frozen=True)
class ReturnSeries:
    values: np.ndarray
    kind: ReturnKind
    lag: int = 1
    t0: int = field(default=0)

    def __len__(self) -> int:
        return self.values.size


def compute_returns(prices: Union[PriceSeries, Sequence[float]],
                    kind: Union[ReturnKind, str] = ReturnKind.LOG,
                    lag: int = 1) -> ReturnSeries:
    """Returns over a lag of Δt ticks.

    Element i is p(i+lag) - p(i) for difference returns and
    log p(i+lag) - log p(i) for log returns.

    Args:
        prices (PriceSeries | Sequence[float]): price series
        kind (ReturnKind | str, optional): "log" or "difference". Defaults to log.
        lag (int, optional): Δt >= 1. Defaults to 1.

    Raises:
        DomainError: lag < 1, series too short, or a non-positive price for log returns.

    Returns:
        ReturnSeries: len(prices) - lag values
    """
    if not isinstance(prices, PriceSeries):
        prices = PriceSeries(np.asarray(prices, dtype=np.float64))
    kind = ReturnKind(kind)
    if lag < 1:
        raise DomainError(f"lag must be >= 1, got {lag}")
    if len(prices) <= lag:
        raise DomainError(f"{len(prices)} prices are not enough for lag {lag}")

    if kind is ReturnKind.LOG:
        base = prices.log_prices()
    else:
        base = prices.values
    return ReturnSeries(base[lag:] - base[:-lag], kind, lag, prices.t0 + lag)
