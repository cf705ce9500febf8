import math

import numpy as np

from simModel.common.errors import DomainError
from simModel.common.rng import SETUP_SUBSTREAM, RngStream
from simModel.common.runner import run_model
from simModel.gcmg.model import (
    GcmgModel,
    GcmgParams,
    StrategyTable,
    aggregate_action,
    draw_information,
    gcmg_price_step,
    predictability,
    select_strategy,
    update_scores,
)


def test_draw_information_range_and_determinism():
    rng = np.random.default_rng(0)
    assert all(draw_information(rng, 1) == 1 for _ in range(20))
    draws = [draw_information(np.random.default_rng(11), 8) for _ in range(3)]
    assert len(set(draws)) == 1
    values = np.array([draw_information(rng, 8) for _ in range(2000)])
    assert values.min() == 1 and values.max() == 8


def test_draw_information_is_uniform():
    rng = np.random.default_rng(12)
    P, n = 10, 100_000
    counts = np.bincount([draw_information(rng, P) for _ in range(n)], minlength=P + 1)[1:]
    chi2 = float(np.sum((counts - n / P) ** 2 / (n / P)))
    # 99.9% quantile of chi-square with 9 degrees of freedom
    assert chi2 < 27.88


def test_select_strategy_argmax_and_ties():
    rng = np.random.default_rng(1)
    assert select_strategy(np.array([2.0, 1.0, 0.5]), rng) == 0
    assert select_strategy(np.array([0.0, 3.0]), rng) == 1

    n = 10_000
    picks = select_strategy(np.zeros((n, 3)), rng)
    counts = np.bincount(picks, minlength=3)
    chi2 = float(np.sum((counts - n / 3) ** 2 / (n / 3)))
    # 99.9% quantile with 2 degrees of freedom
    assert chi2 < 13.82


def test_aggregate_action():
    assert aggregate_action([1] * 7) == 7
    assert aggregate_action([1, -1, 1, -1]) == 0
    assert aggregate_action([1, 1, 1, -1, 0, 0]) == 2


def test_update_scores_minority_rule():
    params = GcmgParams(n_spec=1, n_prod=0, P=1, S=2, epsilon=0.1)
    speculators = np.array([[[0], [1], [-1]]], dtype=np.int8)
    table = StrategyTable(speculators, np.zeros((0, 1), dtype=np.int8))
    scores = np.zeros((1, 3))

    unchanged = update_scores(scores, 0, 1, table, params.epsilon)
    np.testing.assert_allclose(unchanged, [[0.1, 0.0, 0.0]])

    updated = update_scores(scores, 10, 1, table, params.epsilon)
    np.testing.assert_allclose(updated, [[0.1, -10.0, 10.0]])


def test_price_step():
    assert gcmg_price_step(0.3, 0, 10.0) == 0.3
    assert math.isclose(gcmg_price_step(0.0, 5, 10.0), 0.5)
    try:
        gcmg_price_step(0.0, 1, 0.0)
    except DomainError:
        pass
    else:
        raise AssertionError("expected DomainError")


def test_predictability_examples():
    assert predictability([1, 2, 1], [0, 0, 0], 2).H == 0.0
    result = predictability([1, 2, 1, 2, 2], [1, -1, 1, -1, -1], 2)
    assert math.isclose(result.H, 1.0)
    assert result.unseen == 0

    partial = predictability([1, 1], [2.0, 4.0], 3)
    assert math.isclose(partial.H, 9.0 / 3)
    assert partial.unseen == 2

    try:
        predictability([], [], 4)
    except DomainError:
        pass
    else:
        raise AssertionError("expected DomainError")


def test_strategy_table_is_fixed_and_read_only():
    params = GcmgParams(n_spec=5, n_prod=3, P=4, S=2)
    table = StrategyTable.draw(params, RngStream(3).generator(SETUP_SUBSTREAM))
    assert table.speculator_actions.shape == (5, 3, 4)
    assert not np.any(table.speculator_actions[:, 0, :])
    assert set(np.unique(table.speculator_actions[:, 1:, :])) <= {-1, 1}
    assert not table.producer_actions.flags.writeable
    again = StrategyTable.draw(params, RngStream(3).generator(SETUP_SUBSTREAM))
    np.testing.assert_array_equal(table.producer_actions, again.producer_actions)


def test_returns_equal_aggregate_action_over_depth():
    params = GcmgParams(n_spec=20, n_prod=10, P=4, lambda_depth=50.0)
    stream = RngStream(5)
    records = run_model(GcmgModel(params, stream.generator(SETUP_SUBSTREAM)), 500, stream)
    log_prices = np.concatenate([[params.log_price0], records.column("log_price")])
    np.testing.assert_allclose(np.diff(log_prices), records.column("A") / 50.0, atol=1e-12)


def test_producers_only_predictability_matches_grouping():
    params = GcmgParams(n_spec=0, n_prod=51, P=16)
    stream = RngStream(6)
    model = GcmgModel(params, stream.generator(SETUP_SUBSTREAM))
    records = run_model(model, 3000, stream)
    mus = records.column("mu").astype(int)
    As = records.column("A")

    # producers act deterministically per information state
    for mu in np.unique(mus):
        assert np.unique(As[mus == mu]).size == 1

    brute = 0.0
    for mu in range(1, 17):
        hits = As[mus == mu]
        if hits.size:
            brute += hits.mean() ** 2
    assert math.isclose(predictability(mus, As, 16).H, brute / 16, rel_tol=1e-12)


def test_active_count_varies_with_speculators():
    params = GcmgParams(n_spec=64, n_prod=64, P=8, epsilon=0.01)
    stream = RngStream(8)
    records = run_model(GcmgModel(params, stream.generator(SETUP_SUBSTREAM)), 2000, stream)
    active = records.column("n_active")
    assert active.min() >= 0 and active.max() <= 64
    assert np.unique(active).size > 1


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_"):
            func()
            print(f"{name}: ok")
