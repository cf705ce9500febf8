from simModel.common.errors import ClearingError, DomainError, MarketSimError, RunAbort
from simModel.common.rng import RngStream
from simModel.common.series import PriceSeries, ReturnKind, ReturnSeries, compute_returns
from simModel.common.runner import MarketModel, RunRecords, StepRecord, run_model
