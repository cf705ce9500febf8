import math

import numpy as np

from simModel.fcMinimal.params import SocParams
from simModel.fcMinimal.soc import RollingVariance, long_term_volatility, rescale_chartists, soc_step


def test_long_term_volatility_examples():
    assert long_term_volatility([3.0] * 10, 10) == 0.0
    assert long_term_volatility([1.0, 3.0], 2) == 2.0
    assert long_term_volatility([0.0, 100.0, 1.0, 3.0], 2) == 2.0
    assert long_term_volatility([1.0, 2.0], 3) is None


def test_long_term_volatility_of_white_noise():
    rng = np.random.default_rng(8)
    estimates = [long_term_volatility(2.0 * rng.standard_normal(1000), 1000) for _ in range(200)]
    assert abs(np.mean(estimates) - 4.0) < 0.05


def test_rolling_variance_matches_direct_window():
    rng = np.random.default_rng(2)
    prices = 100.0 + np.cumsum(rng.standard_normal(500))
    rolling = RollingVariance(37, reference=100.0)
    for i, price in enumerate(prices):
        rolling.push(price)
        expected = long_term_volatility(prices[:i + 1], 37)
        if expected is None:
            assert rolling.value() is None
        else:
            assert math.isclose(rolling.value(), expected, rel_tol=1e-8, abs_tol=1e-10)


def test_soc_step_thresholds():
    soc = SocParams(enabled=True, theta_in=6.0, theta_out=3.0, n_min=20, n_max=100, entry_exit_size=5)
    assert soc_step(50, 4.0, soc) == 50
    assert soc_step(50, 7.0, soc) == 55
    assert soc_step(50, 1.0, soc) == 45
    assert soc_step(100, 7.0, soc) == 100
    assert soc_step(98, 7.0, soc) == 100
    assert soc_step(22, 1.0, soc) == 20
    assert soc_step(50, None, soc) == 50


def test_soc_params_validation():
    for kwargs in ({"theta_in": 3.0, "theta_out": 3.0}, {"n_min": 1}, {"n_min": 50, "n_max": 50}):
        try:
            SocParams(**kwargs)
        except ValueError:
            continue
        raise AssertionError(f"accepted {kwargs}")


def test_rescale_keeps_fraction():
    assert rescale_chartists(5, 10, 11) == 6
    assert rescale_chartists(1, 2, 3) == 2
    assert rescale_chartists(10, 10, 9) == 9
    assert rescale_chartists(0, 10, 20) == 0
    assert rescale_chartists(3, 10, 10) == 3


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_"):
            func()
            print(f"{name}: ok")
