"""
Description: parameters and state of the leverage model.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional

import numpy as np


class FundStatus(str, Enum):
    ACTIVE = "active"
    BANKRUPT = "bankrupt"


@dataclass
class FundSpec:
    beta: float
    W0: float = 2.0

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError(f"fund aggressivity beta must be > 0, got {self.beta}")
        if self.W0 <= 0:
            raise ValueError(f"fund initial wealth W0 must be > 0, got {self.W0}")


@dataclass
class ThurnerParams:
    rho: float = 0.99
    sigma: float = 0.035
    N_shares: float = 1000.0
    p_f: float = 1.0
    # explicit fund list; when omitted, n_funds funds with beta_h = beta_step * h
    funds: Optional[List[FundSpec]] = None
    n_funds: int = 10
    beta_step: float = 5.0
    W0: float = 2.0
    lambda_max: float = 5.0
    bankrupt_frac: float = 0.1
    T_wait: int = 100
    flow_kappa: float = 0.0
    flow_memory: float = 0.2
    r_bm: float = 0.005

    def __post_init__(self):
        if not 0.0 < self.rho < 1.0:
            raise ValueError(f"rho must lie in (0, 1), got {self.rho}")
        if self.sigma < 0:
            raise ValueError(f"sigma must be >= 0, got {self.sigma}")
        if self.N_shares <= 0 or self.p_f <= 0:
            raise ValueError("N_shares and p_f must be > 0")
        if self.lambda_max < 1.0:
            raise ValueError(f"lambda_max must be >= 1, got {self.lambda_max}")
        if not 0.0 < self.bankrupt_frac < 1.0:
            raise ValueError(f"bankrupt_frac must lie in (0, 1), got {self.bankrupt_frac}")
        if self.T_wait < 1:
            raise ValueError(f"T_wait must be >= 1, got {self.T_wait}")
        if self.flow_kappa < 0 or not 0.0 < self.flow_memory <= 1.0:
            raise ValueError("flow_kappa must be >= 0 and flow_memory in (0, 1]")
        if self.funds is None:
            if self.n_funds < 0:
                raise ValueError(f"n_funds must be >= 0, got {self.n_funds}")
            self.funds = [FundSpec(self.beta_step * (h + 1), self.W0) for h in range(self.n_funds)]
        else:
            self.funds = [f if isinstance(f, FundSpec) else FundSpec(**f) for f in self.funds]
            self.n_funds = len(self.funds)

    @property
    def betas(self) -> np.ndarray:
        return np.array([f.beta for f in self.funds], dtype=np.float64)

    @property
    def xi_fixed_point(self) -> float:
        return self.N_shares * self.p_f


@dataclass
class FundState:
    W: float
    C: float
    D: float = 0.0
    status: FundStatus = FundStatus.ACTIVE
    timer: int = 0
    performance: float = 0.0
    pending_flow: float = 0.0

    @classmethod
    def fresh(cls, W0: float) -> FundState:
        return cls(W=W0, C=W0)

    @property
    def active(self) -> bool:
        return self.status is FundStatus.ACTIVE

    def leverage(self, price: float) -> float:
        """λ = D p / W, zero for a fund without positive wealth"""
        if self.W <= 0.0:
            return 0.0
        return self.D * price / self.W


@dataclass
class NoiseTraderState:
    xi: float

    def __post_init__(self):
        if not self.xi > 0.0:
            raise ValueError(f"noise-trader demand scale must be > 0, got {self.xi}")


@dataclass
class ThurnerState:
    price: float
    noise: NoiseTraderState
    funds: List[FundState] = field(default_factory=list)
    t: int = 0

    @classmethod
    def initial(cls, params: ThurnerParams) -> ThurnerState:
        return cls(price=params.p_f, noise=NoiseTraderState(params.xi_fixed_point),
                   funds=[FundState.fresh(f.W0) for f in params.funds])
