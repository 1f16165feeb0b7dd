"""Periodic Fourier pseudospectral solver and experiment harness for a
derivative nonlinear Schrodinger equation with diffusion."""

__version__ = "1.0.0"

from .config import SCHEMA_VERSION, ConfigError, config_to_dict, parse_config, serialize_config
from .experiments import (
    ConvergenceReport,
    ConvergenceRow,
    ExperimentConfig,
    LimitReport,
    LinearValidation,
    converge_space,
    converge_time,
    fit_power_exponent,
    initial_field,
    limit_sweep,
    observed_order,
    run_simulation,
    sup_time_distance,
    validate_linear,
)
from .model import (
    LinearSymbol,
    ModelParams,
    apply_semigroup,
    cubic_spectrum,
    exact_linear_solution,
    linear_symbol,
    nonlinear_term,
    semidiscrete_forcing,
)
from .spectral import (
    PeriodicGrid,
    SpectralField,
    dealias_pad_product,
    derivative,
    dft_forward,
    dft_inverse,
    extend,
    from_modes,
    hs_inner,
    hs_norm,
    truncate,
)
from .steppers import (
    SCHEMES,
    BlowUpError,
    NoContractionError,
    StepperState,
    Trajectory,
    cnab2_bootstrap,
    cnab2_step,
    etd2_bootstrap,
    etd2_step,
    picard_solve,
)
