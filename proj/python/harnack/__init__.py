"""Sharp Harnack bracket for the half-Laplacian heat flow."""

from ._core import (
    ContractError,
    DegenerateInputError,
    DomainError,
    Model,
    NumericFailure,
    OrderingError,
    PointPair,
    RatioExtrema,
    SharpBracket,
    SpecError,
    brute_force_extrema,
    bsv_bracket,
    cauchy_kernel,
    critical_points,
    extrema_log_derivative,
    frac_constant,
    gaussian_kernel,
    hadamard_pini_lower,
    half_laplacian,
    harnack_compliance,
    kernel_ratio,
    mixture,
    parse_solution_spec,
    printed_prefactor_counterexample,
    random_pairs,
    ratio_extrema,
    run_cli,
    sharp_bracket,
    simple_fractional_lower,
    wz_lower,
)

__version__ = "0.1.0"
