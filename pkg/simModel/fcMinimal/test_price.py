import math
from collections import deque

import numpy as np

from simModel.common.errors import DomainError
from simModel.fcMinimal.params import FcParams, FcState
from simModel.fcMinimal.price import moving_average, price_step


def _state(n_c, N, window):
    return FcState(n_c=n_c, N=N, price=window[-1], window=deque(window, maxlen=50))


def test_moving_average_examples():
    assert moving_average([2.0, 2.0, 2.0], 3) == 2.0
    assert moving_average([1.0, 2.0, 3.0], 3) == 2.0
    assert moving_average([1.0, 2.0, 3.0, 4.0], 2) == 3.5
    assert moving_average([5.0], 20) == 5.0
    try:
        moving_average([], 3)
    except DomainError:
        pass
    else:
        raise AssertionError("expected a DomainError")


def test_fundamentalists_pull_toward_fundamental():
    params = FcParams(N=10, gamma=0.1, sigma=0.0, p_f=100.0)
    price = price_step(_state(0, 10, [90.0]), params, np.random.default_rng(0))
    assert math.isclose(price, 91.0)


def test_fixed_point_without_noise():
    params = FcParams(N=10, sigma=0.0, p_f=100.0)
    price = price_step(_state(4, 10, [100.0, 100.0, 100.0]), params, np.random.default_rng(0))
    assert price == 100.0


def test_chartists_extrapolate():
    params = FcParams(N=10, b=1.0, M=2, sigma=0.0, p_f=100.0)
    price = price_step(_state(10, 10, [8.0, 10.0]), params, np.random.default_rng(0))
    assert math.isclose(price, 11.0)


def test_heterogeneous_horizons_average_the_pull():
    params = FcParams(N=10, b=1.0, sigma=0.0, heterogeneous_m=True, m_choices=[2, 4])
    assert params.horizons == (2, 4)
    price = price_step(_state(10, 10, [4.0, 6.0, 8.0, 10.0]), params, np.random.default_rng(0))
    assert math.isclose(price, 11.0)


def test_noise_has_configured_scale():
    params = FcParams(N=10, sigma=0.5, gamma=0.0, p_f=100.0)
    rng = np.random.default_rng(3)
    moves = np.array([price_step(_state(0, 10, [100.0]), params, rng) - 100.0 for _ in range(20_000)])
    assert abs(moves.std() - 0.5) < 0.02
    assert abs(moves.mean()) < 0.02


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_"):
            func()
            print(f"{name}: ok")
