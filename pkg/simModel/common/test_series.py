import math

import numpy as np

from simModel.common.errors import DomainError
from simModel.common.runner import StepRecord
from simModel.common.series import PriceSeries, ReturnKind, compute_returns


def _domain_error(func, *args, **kwargs):
    try:
        func(*args, **kwargs)
    except DomainError as exc:
        return exc
    raise AssertionError("expected a DomainError")


def test_difference_and_log_returns():
    r = compute_returns([100.0, 101.0, 99.0], ReturnKind.DIFFERENCE)
    np.testing.assert_allclose(r.values, [1.0, -2.0])
    assert r.kind is ReturnKind.DIFFERENCE and r.t0 == 1

    r = compute_returns([1.0, math.e, 1.0], "log")
    np.testing.assert_allclose(r.values, [1.0, -1.0], atol=1e-15)


def test_lagged_returns():
    prices = np.arange(1.0, 11.0)
    r = compute_returns(prices, ReturnKind.DIFFERENCE, lag=3)
    assert len(r) == 7 and r.lag == 3
    np.testing.assert_allclose(r.values, 3.0)


def test_log_returns_reject_non_positive_prices():
    exc = _domain_error(compute_returns, PriceSeries(np.array([1.0, 2.0, 0.0, 3.0]), t0=10))
    assert exc.tick == 12
    r = compute_returns([1.0, -1.0, 2.0], ReturnKind.DIFFERENCE)
    np.testing.assert_allclose(r.values, [-2.0, 3.0])


def test_domain_errors():
    _domain_error(compute_returns, [1.0, 2.0], "log", 0)
    _domain_error(compute_returns, [1.0, 2.0], "log", 2)
    _domain_error(PriceSeries, np.array([]))
    exc = _domain_error(PriceSeries, np.array([1.0, np.nan]), 5)
    assert exc.tick == 6


def test_from_records_and_tail():
    records = [StepRecord(t, 1.0 + t) for t in range(1, 6)]
    series = PriceSeries.from_records(records)
    assert series.t0 == 1 and len(series) == 5
    tail = series.tail(2)
    np.testing.assert_allclose(tail.values, [5.0, 6.0])
    assert tail.t0 == 4
    assert len(series.tail(100)) == 5


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_"):
            func()
            print(f"{name}: ok")
