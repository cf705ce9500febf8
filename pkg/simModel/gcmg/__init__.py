from simModel.gcmg.model import (
    GcmgModel,
    GcmgParams,
    GcmgState,
    Predictability,
    StrategyTable,
    aggregate_action,
    draw_information,
    gcmg_price_step,
    predictability,
    select_strategy,
    update_scores,
)
