"""
Numeric configuration for the fractional Poisson toolkit.

Every tolerance, cap and default lives here, grouped by the module that
consumes it:
1. Special functions
2. Quadrature
3. Counting process
4. Estimation
5. Monte Carlo studies and output
"""

# =============================================================================
# SPECIAL FUNCTIONS
# =============================================================================
specfun = {
    "z_max": 50.0,  # series branch radius; beyond it only the asymptotic branches run
    "z_asymptotic": 10.0,  # for beta < 1, z below -z_asymptotic tries the expansion first
    "term_tol": 1e-16,  # relative term size that counts as negligible
    "quiet_terms": 3,  # consecutive negligible terms before the series stops
    "chunk": 64,  # terms built per vectorised step
    "max_terms": 200_000,
    "double_cancellation": 1e2,  # largest sum|t| / |sum| trusted to double precision
    "guard_digits": 20,
    "max_dps": 3000,
    "rel_tol": 1e-12,  # what the extended-precision branch certifies
    "asymptotic_rel_tol": 1e-12,
    "asymptotic_max_terms": 400,
    "asymptotic_reach": 45.0,  # for beta < 1 the expansion is also tried once |z|^(1/beta) exceeds this
    "pole_atol": 1e-12,  # gamma arguments this close to 0, -1, -2, ... count as poles
    "digamma_shift": 10.0,  # first omitted term 691/(32760 tau^12) stays near 2e-14
    "polygamma_shift": 10.0,
}

# =============================================================================
# QUADRATURE
# =============================================================================
quadrature = {
    "abs_tol": 1e-9,
    "rel_tol": 1e-10,
    "limit": 400,
    "kernel_abs_tol": 1e-8,
    "mixture_shape": 16.0,  # generalized ML cdf switches to the gamma-stable mixture from this shape on
    "mixture_abs_tol": 1e-13,
    "mixture_tail_prob": 1e-17,  # gamma mass left outside the inner range
}

# =============================================================================
# COUNTING PROCESS
# =============================================================================
process = {
    "k_start": 16,
    "k_cap": 4096,
    "tail_tol": 1e-10,
    "mean_rel_tol": 1e-14,
    "mean_quiet_terms": 3,
    "mean_max_terms": 10_000,
}

# =============================================================================
# ESTIMATION
# =============================================================================
estimate = {
    "panels": 64,
    "residual_tol": 1e-10,
    "xtol": 1e-14,
    "delta_max": 1e12,
    "nu_floor": 1e-6,
}

# =============================================================================
# STUDIES AND OUTPUT
# =============================================================================
study = {
    "default_seed": 20240101,
    "seed_env": "FPP_SEED",
    "abort_failure_share": 0.5,
    "workers": 1,  # worker processes; 1 runs in-process
}

output = {
    "schema_version": "1.0",
    "float_format": "%.10g",
}
