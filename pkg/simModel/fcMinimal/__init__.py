from simModel.fcMinimal.params import FcParams, FcState, RateVariant, SocParams
from simModel.fcMinimal.population import (
    population_step,
    transition_rates_full,
    transition_rates_simplified,
)
from simModel.fcMinimal.price import moving_average, price_step
from simModel.fcMinimal.soc import long_term_volatility, rescale_chartists, soc_step
from simModel.fcMinimal.equilibrium import (
    EquilibriumDensity,
    equilibrium_bin_masses,
    equilibrium_density,
    fit_shape_parameter,
    histogram_masses,
    lattice_counts,
    lattice_edges,
    total_variation,
)
from simModel.fcMinimal.model import FcMinimalModel
