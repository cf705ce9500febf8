"""
Description: parameters and state of the minimal fundamentalist-chartist model.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Deque, List, Optional, Tuple


class RateVariant(str, Enum):
    FULL = "full"              # price-signal rates
    SIMPLIFIED = "simplified"  # constant-signal rates with asymmetry δ


@dataclass
class SocParams:
    """Entry/exit of agents driven by the long-term price variance."""
    enabled: bool = False
    T: int = 5000
    theta_in: float = 6.0
    theta_out: float = 3.0
    n_min: int = 20
    n_max: int = 10000
    entry_exit_size: int = 1
    decision_interval: int = 1

    def __post_init__(self):
        if self.T < 2:
            raise ValueError(f"T must be >= 2, got {self.T}")
        if not self.theta_out < self.theta_in:
            raise ValueError(f"theta_out ({self.theta_out}) must be below theta_in ({self.theta_in})")
        if not 2 <= self.n_min < self.n_max:
            raise ValueError(f"need 2 <= n_min < n_max, got n_min={self.n_min}, n_max={self.n_max}")
        if self.entry_exit_size < 1:
            raise ValueError("entry_exit_size must be >= 1")
        if self.decision_interval < 1:
            raise ValueError("decision_interval must be >= 1")


@dataclass
class FcParams:
    N: int = 500
    K: float = 0.002
    # when set, K = KN / N follows the current N so r = K N stays fixed
    KN: Optional[float] = None
    gamma: float = 0.05
    b: float = 1.5
    M: int = 20
    p_f: float = 100.0
    sigma: float = 0.5
    B: float = 1.0
    delta: float = 0.005
    dt_scale: float = 0.1
    variant: RateVariant = RateVariant.FULL
    heterogeneous_m: bool = False
    m_choices: List[int] = field(default_factory=lambda: [10, 20, 30, 40, 50])
    x0: float = 0.0
    p0: Optional[float] = None
    soc: SocParams = field(default_factory=SocParams)

    def __post_init__(self):
        self.variant = RateVariant(self.variant)
        if isinstance(self.soc, dict):
            self.soc = SocParams(**self.soc)
        if self.N < 2:
            raise ValueError(f"N must be >= 2, got {self.N}")
        if self.M < 2:
            raise ValueError(f"M must be >= 2, got {self.M}")
        if self.K <= 0:
            raise ValueError(f"K must be > 0, got {self.K}")
        if self.KN is not None and self.KN <= 0:
            raise ValueError(f"KN must be > 0, got {self.KN}")
        if self.B <= 0:
            raise ValueError(f"B must be > 0, got {self.B}")
        if not -1.0 < self.delta < 1.0:
            raise ValueError(f"|delta| must be < 1, got {self.delta}")
        if self.dt_scale <= 0:
            raise ValueError(f"dt_scale must be > 0, got {self.dt_scale}")
        if self.heterogeneous_m and (not self.m_choices or min(self.m_choices) < 2):
            raise ValueError("m_choices must be non-empty with every M >= 2")
        if not 0.0 <= self.x0 <= 1.0:
            raise ValueError(f"x0 must lie in [0, 1], got {self.x0}")
        if self.soc.enabled and not self.soc.n_min <= self.N <= self.soc.n_max:
            raise ValueError(f"N={self.N} lies outside [soc.n_min, soc.n_max]")

    def herding_offset(self, N: int) -> float:
        return self.K if self.KN is None else self.KN / N

    @property
    def horizons(self) -> Tuple[int, ...]:
        """Chartist moving-average windows; one entry unless heterogeneous."""
        if self.heterogeneous_m:
            return tuple(sorted(set(self.m_choices)))
        return (self.M,)

    @property
    def initial_price(self) -> float:
        return self.p_f if self.p0 is None else self.p0


@dataclass
class FcState:
    n_c: int
    N: int
    price: float
    window: Deque[float]
    t: int = 0

    @property
    def x(self) -> float:
        return self.n_c / self.N

    @property
    def n_f(self) -> int:
        return self.N - self.n_c

    @classmethod
    def initial(cls, params: FcParams) -> FcState:
        n_c = min(params.N, max(0, int(params.x0 * params.N + 0.5)))
        window = deque([params.initial_price], maxlen=max(params.horizons))
        return cls(n_c=n_c, N=params.N, price=params.initial_price, window=window)
