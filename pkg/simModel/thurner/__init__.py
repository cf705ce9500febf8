from simModel.thurner.params import (
    FundSpec,
    FundState,
    FundStatus,
    NoiseTraderState,
    ThurnerParams,
    ThurnerState,
)
from simModel.thurner.clearing import FundBook, clear_market, excess_demand, fund_demand
from simModel.thurner.funds import (
    bankruptcy_step,
    book_pending_flow,
    fund_accounting_step,
    investor_flow,
    noise_trader_step,
)
from simModel.thurner.model import ThurnerModel
