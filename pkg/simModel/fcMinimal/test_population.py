import math
from collections import deque

import numpy as np

from simModel.fcMinimal.params import FcParams, FcState, RateVariant
from simModel.fcMinimal.population import (
    clip_rates,
    draw_chartists,
    population_step,
    raw_rates,
    transition_rates_full,
    transition_rates_simplified,
)


def _state(n_c, N, price=100.0, window=None):
    window = deque(window if window is not None else [price], maxlen=50)
    return FcState(n_c=n_c, N=N, price=price, window=window)


def test_full_rates_symmetric_at_rest():
    params = FcParams(N=100, K=0.5, delta=0.0, p_f=100.0)
    p_cf, p_fc = transition_rates_full(_state(50, 100), params)
    assert math.isclose(p_cf, p_fc)


def test_full_rates_without_chartists_keep_the_offset():
    params = FcParams(N=100, K=0.3, delta=0.0, B=1.0, dt_scale=0.1)
    _, p_fc = transition_rates_full(_state(0, 100), params)
    assert math.isclose(p_fc, 0.1 * 0.3)


def test_full_rates_substitution():
    params = FcParams(N=100, K=0.2, gamma=1.0, delta=0.0, B=1.0, dt_scale=0.1, p_f=100.0)
    p_cf, _ = transition_rates_full(_state(50, 100, price=99.8), params)
    assert math.isclose(p_cf, 0.1 * 0.7 * math.exp(0.2), rel_tol=1e-9)
    assert abs(p_cf - 0.0855) < 1e-4


def test_simplified_rates_substitution():
    params = FcParams(N=100, K=0.2, delta=0.1, B=1.0, dt_scale=1.0, variant=RateVariant.SIMPLIFIED)
    p_cf, p_fc = transition_rates_simplified(_state(50, 100), params)
    assert math.isclose(p_cf, 0.77)
    assert math.isclose(p_fc, 0.63)


def test_simplified_rates_symmetric_without_asymmetry():
    params = FcParams(N=100, K=0.2, delta=0.0, variant="simplified")
    p_cf, p_fc = transition_rates_simplified(_state(50, 100), params)
    assert math.isclose(p_cf, p_fc)


def test_fixed_shape_offset_follows_N():
    params = FcParams(N=100, K=0.9, KN=20.0, delta=0.1, dt_scale=0.01, variant="simplified")
    assert math.isclose(params.herding_offset(100), 0.2)
    assert math.isclose(params.herding_offset(400), 0.05)
    assert FcParams(K=0.3).herding_offset(1000) == 0.3

    plain = FcParams(N=400, K=0.05, delta=0.1, dt_scale=0.01, variant="simplified")
    assert raw_rates(_state(100, 400), params) == raw_rates(_state(100, 400), plain)
    try:
        FcParams(KN=0.0)
    except ValueError:
        pass
    else:
        raise AssertionError("expected KN=0 to be rejected")


def test_strong_asymmetry_starves_chartists():
    params = FcParams(N=1000, K=0.01, delta=0.99, dt_scale=0.1, variant="simplified")
    p_cf, p_fc = transition_rates_simplified(_state(1, 1000), params)
    assert p_fc < 0.01 * p_cf


def test_clipping_is_counted():
    (p_cf, p_fc), clipped = clip_rates((1.7, 0.2))
    assert (p_cf, p_fc, clipped) == (1.0, 0.2, 1)
    params = FcParams(N=10, K=0.2, dt_scale=5.0, variant="simplified")
    _, clipped = clip_rates(raw_rates(_state(0, 10), params))
    assert clipped >= 1


def test_population_step_boundaries():
    rng = np.random.default_rng(0)
    state = _state(30, 100)
    assert population_step(state, (0.0, 0.0), rng).n_c == 30
    assert population_step(state, (1.0, 0.0), rng).n_c == 0
    assert population_step(state, (0.0, 1.0), rng).n_c == 100
    assert population_step(state, (1.0, 1.0), rng).n_c == 70
    try:
        population_step(state, (1.2, 0.0), rng)
    except ValueError:
        pass
    else:
        raise AssertionError("expected a ValueError")


def test_population_conserved_and_symmetric_mean():
    params = FcParams(N=50, K=0.2, delta=0.0, B=1.0, dt_scale=0.01, variant="simplified")
    rng = np.random.default_rng(11)
    state = _state(25, 50)
    xs = np.empty(200_000)
    for i in range(xs.size):
        rates, _ = clip_rates(raw_rates(state, params))
        state.n_c = draw_chartists(state.n_c, state.N, rates, rng)
        assert 0 <= state.n_c <= state.N
        xs[i] = state.x
    assert abs(xs.mean() - 0.5) < 0.03


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_"):
            func()
            print(f"{name}: ok")
