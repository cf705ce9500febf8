"""
Description: the model-step contract every market model implements, and the
run loop that steps a model and collects its observables tick by tick.
"""
from __future__ import annotations

import math
import time
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Iterator, Sequence, Tuple, Union, overload

import numpy as np
import pandas as pd

from simModel.common.errors import RunAbort
from simModel.common.rng import RUN_SUBSTREAM, RngStream
from simModel.common.series import PriceSeries

import logger

logging = logger.get_logger(__name__)


@dataclass
class StepRecord:
    t: int
    price: float
    model_observables: Dict[str, float] = field(default_factory=dict)


class MarketModel(ABC):
    """A market model advanced one tick at a time.

    Implementations keep their own state, expose the fixed tuple of observable
    names they emit, and raise RunAbort when a step cannot be completed.
    """
    name: str = "abstract"
    observable_keys: Tuple[str, ...] = ()

    def __init__(self) -> None:
        self.t: int = 0
        self.clip_count: int = 0

    @abstractmethod
    def step(self, rng: np.random.Generator) -> StepRecord:
        pass

    def check_price(self, price: float) -> float:
        if not math.isfinite(price):
            raise RunAbort(self.t, f"non-finite price {price}")
        return price

    def run_summary(self) -> Dict[str, float]:
        """Model-specific scalars recorded once per run (e.g. clipping count)."""
        return {"clip_count": self.clip_count}


class RunRecords(Sequence[StepRecord]):
    """Column-backed record sequence returned by run_model."""

    def __init__(self, keys: Tuple[str, ...], capacity: int) -> None:
        self.keys = keys
        self._t = np.zeros(capacity, dtype=np.int64)
        self._price = np.zeros(capacity, dtype=np.float64)
        self._columns = {key: np.full(capacity, np.nan) for key in keys}
        self._size = 0

    def append(self, record: StepRecord) -> None:
        i = self._size
        if set(record.model_observables) != set(self.keys):
            raise RunAbort(record.t, f"observable keys changed: {sorted(record.model_observables)}")
        self._t[i] = record.t
        self._price[i] = record.price
        for key, value in record.model_observables.items():
            self._columns[key][i] = value
        self._size += 1

    def __len__(self) -> int:
        return self._size

    @overload
    def __getitem__(self, index: int) -> StepRecord: ...

    @overload
    def __getitem__(self, index: slice) -> Sequence[StepRecord]: ...

    def __getitem__(self, index: Union[int, slice]):
        if isinstance(index, slice):
            return [self[i] for i in range(*index.indices(self._size))]
        if index < 0:
            index += self._size
        if not 0 <= index < self._size:
            raise IndexError(index)
        return StepRecord(
            int(self._t[index]), float(self._price[index]),
            {key: float(col[index]) for key, col in self._columns.items()})

    def __iter__(self) -> Iterator[StepRecord]:
        for i in range(self._size):
            yield self[i]

    @property
    def ticks(self) -> np.ndarray:
        return self._t[:self._size]

    @property
    def prices(self) -> np.ndarray:
        return self._price[:self._size]

    def column(self, key: str) -> np.ndarray:
        if key == "price":
            return self.prices
        return self._columns[key][:self._size]

    def price_series(self, start: int = 0) -> PriceSeries:
        return PriceSeries(self.prices[start:], int(self._t[start]) if self._size else 0)

    def to_frame(self) -> pd.DataFrame:
        data = {"tick": self.ticks, "price": self.prices}
        for key in self.keys:
            data[key] = self.column(key)
        return pd.DataFrame(data)


def run_model(model: MarketModel, steps: int,
              rng: Union[RngStream, np.random.Generator]) -> RunRecords:
    """Step a model `steps` times.

    Args:
        model (MarketModel): initialized model
        steps (int): number of ticks, >= 1
        rng (RngStream | np.random.Generator): noise source; a stream is
            turned into its run generator.

    Raises:
        ValueError: steps < 1
        RunAbort: propagated from the model with the offending tick

    Returns:
        RunRecords: exactly `steps` records
    """
    if steps < 1:
        raise ValueError(f"steps must be >= 1, got {steps}")
    generator = rng.generator(RUN_SUBSTREAM) if isinstance(rng, RngStream) else rng

    records = RunRecords(model.observable_keys, steps)
    start = time.time()
    logging.info(f"start {model.name}: {steps} steps")
    for _ in range(steps):
        try:
            records.append(model.step(generator))
        except RunAbort as abort:
            logging.error(f"{model.name} {abort}")
            raise
        except FloatingPointError as exc:
            logging.error(f"{model.name} floating point failure at tick {model.t}: {exc}")
            raise RunAbort(model.t, str(exc)) from exc

    if model.clip_count:
        logging.warning(
            f"{model.name}: {model.clip_count} transition probabilities were clipped to [0, 1]; "
            "the time step is too coarse for the configured rates")
    logging.info(f"end {model.name}: {len(records)} records in {time.time() - start:.2f}s")
    return records
