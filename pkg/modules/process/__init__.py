from .path import SamplePath
from .prabhakar import prabhakar_integral, product_identity, volterra_rhs
from .renewal import (
    GenIIRenewal,
    GenIRenewal,
    RenewalProcess,
    renewal_for,
    separate_ties,
    simulate_path,
    simulate_paths,
)
from .state import (
    StatePmf,
    arrival_time_cdf,
    empirical_pmf,
    fpp_count_variance,
    fpp_mean_count,
    fpp_mgf,
    fpp_state_pmf,
    fpp_state_pmf_series,
    mean_count,
    state_pmf,
    state_prob,
)

__all__ = [
    "SamplePath", "StatePmf",
    "RenewalProcess", "GenIRenewal", "GenIIRenewal", "renewal_for", "separate_ties",
    "simulate_path", "simulate_paths",
    "arrival_time_cdf", "state_prob", "state_pmf", "mean_count",
    "fpp_state_pmf", "fpp_state_pmf_series", "fpp_mean_count",
    "fpp_count_variance", "fpp_mgf", "empirical_pmf",
    "prabhakar_integral", "volterra_rhs", "product_identity",
]
