from simModel.luxMarchesi.model import (
    LmParams,
    LmProbabilities,
    LmState,
    LuxMarchesiModel,
    enforce_floors,
    lm_excess_demand,
    lm_population_step,
    lm_price_step,
    lm_transition_probabilities,
    lm_utilities,
    tick_probabilities,
)
