import math

import numpy as np

from simModel.common.rng import RngStream
from simModel.common.runner import run_model
from simModel.luxMarchesi.model import (
    LmParams,
    LmProbabilities,
    LmState,
    LuxMarchesiModel,
    lm_excess_demand,
    lm_population_step,
    lm_price_step,
    lm_transition_probabilities,
    lm_utilities,
    tick_probabilities,
)


def _state(n_f=100, n_plus=100, n_minus=100, price=10.0, p_f=10.0, tick=0.01):
    return LmState(n_f, n_plus, n_minus, price_ticks=int(round(price / tick)), p_f=p_f, tick=tick)


def test_utilities_vanish_on_flat_price_at_fundamental():
    params = LmParams(N=300)
    state = _state()
    assert lm_utilities(state, state.price, params) == (0.0, 0.0, 0.0)


def test_utilities_signs():
    params = LmParams(N=300, a1=50.0, a2=50.0, gamma=0.01)
    state = _state(n_plus=150, n_minus=50)
    U1, U21, U22 = lm_utilities(state, state.price - 0.01, params)
    assert U1 > 0 and U21 > 0 and U22 < 0
    U1_down, _, _ = lm_utilities(state, state.price + 0.01, params)
    assert math.isclose(U1_down, -U1)


def test_transition_probabilities_substitution():
    params = LmParams(N=300, nu1=1.0, nu2=1.0, dt_scale=1.0)
    probabilities, clipped = lm_transition_probabilities(_state(), (0.0, 0.0, 0.0), params)
    assert clipped == 0
    assert math.isclose(probabilities.plus_f, 1 / 3)
    assert math.isclose(probabilities.f_plus, 1 / 3)
    assert math.isclose(probabilities.plus_minus, 2 / 3)
    assert math.isclose(probabilities.minus_plus, 2 / 3)


def test_transition_probability_ratio_identity():
    params = LmParams(N=300, dt_scale=0.01)
    state = _state(n_f=180, n_plus=70, n_minus=50)
    U21 = 0.3
    probabilities, _ = lm_transition_probabilities(state, (0.1, U21, -0.2), params)
    expected = state.n_plus / state.n_f * math.exp(2 * U21)
    assert math.isclose(probabilities.plus_f / probabilities.f_plus, expected, rel_tol=1e-12)


def test_no_optimists_no_conversion_to_optimist():
    params = LmParams(N=12, n_floor=0)
    probabilities, _ = lm_transition_probabilities(_state(6, 0, 6), (0.0, 0.0, 0.0), params)
    assert probabilities.plus_f == 0.0


def test_clipping_is_counted():
    params = LmParams(N=300, nu1=3.0, dt_scale=1.0)
    probabilities, clipped = lm_transition_probabilities(_state(), (2.0, 0.0, 0.0), params)
    assert clipped >= 1
    assert max(probabilities.as_tuple()) <= 1.0


def test_population_step_without_moves_is_identity():
    rng = np.random.default_rng(1)
    state = _state(120, 90, 90)
    moved = lm_population_step(state, LmProbabilities(0, 0, 0, 0, 0, 0), 4, rng)
    assert (moved.n_f, moved.n_plus, moved.n_minus) == (120, 90, 90)


def test_population_step_conserves_and_respects_floors():
    rng = np.random.default_rng(2)
    params = LmParams(N=300)
    state = _state()
    for _ in range(500):
        utilities = tuple(rng.normal(0.0, 2.0, size=3))
        probabilities, _ = lm_transition_probabilities(state, utilities, params)
        state = lm_population_step(state, probabilities, params.n_floor, rng)
        assert state.N == 300
        assert min(state.n_f, state.n_plus, state.n_minus) >= params.n_floor


def test_fundamentalists_drained_to_floor():
    rng = np.random.default_rng(3)
    state = _state(100, 100, 100)
    # every fundamentalist leaves, nobody comes back
    drain = LmProbabilities(plus_f=0.5, f_plus=0.0, minus_f=0.5, f_minus=0.0,
                            plus_minus=0.0, minus_plus=0.0)
    for _ in range(20):
        state = lm_population_step(state, drain, 4, rng)
    assert state.n_f == 4
    assert state.N == 300


def test_excess_demand():
    params = LmParams(N=300, gamma=0.01, t_c=1.0)
    assert lm_excess_demand(_state(), params) == 0.0
    assert lm_excess_demand(_state(price=9.0, p_f=10.0), params) > 0.0
    state = _state(n_f=100, n_plus=55, n_minus=50, price=8.0, p_f=10.0)
    assert math.isclose(lm_excess_demand(state, params), 7.0)


def test_tick_probabilities_split_by_sign():
    assert tick_probabilities(0.0) == (0.0, 0.0)
    assert tick_probabilities(0.3) == (0.3, 0.0)
    assert tick_probabilities(-0.4) == (0.0, 0.4)
    assert tick_probabilities(7.0) == (1.0, 0.0)


def test_price_stays_on_tick_grid():
    params = LmParams(N=300, mu_sigma=0.5)
    rng = np.random.default_rng(4)
    state = _state()
    for _ in range(200):
        new = lm_price_step(state, 3.0, params, rng)
        assert abs(new.price_ticks - state.price_ticks) <= 1
        state = new
    assert math.isclose(state.price, state.price_ticks * 0.01)


def test_price_unchanged_without_signal_and_noise():
    params = LmParams(N=300, mu_sigma=0.0, pf_sigma=0.0)
    state = _state()
    new = lm_price_step(state, 0.0, params, np.random.default_rng(5))
    assert new.price_ticks == state.price_ticks
    assert new.p_f == state.p_f


def test_model_run_invariants_and_determinism():
    params = LmParams(N=300)
    records = run_model(LuxMarchesiModel(params), 2000, RngStream(7))
    again = run_model(LuxMarchesiModel(params), 2000, RngStream(7))
    np.testing.assert_array_equal(records.prices, again.prices)

    totals = records.column("n_f") + records.column("n_plus") + records.column("n_minus")
    np.testing.assert_array_equal(totals, 300)
    assert records.column("n_f").min() >= params.n_floor
    ticks = records.prices / params.tick
    np.testing.assert_allclose(ticks, np.round(ticks), atol=1e-6)
    np.testing.assert_array_equal(records.column("n_c"),
                                  records.column("n_plus") + records.column("n_minus"))


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_"):
            func()
            print(f"{name}: ok")
