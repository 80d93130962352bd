"""Numerical laboratory for resonance expansions of unstable wave packets.

Two canonically equivalent pictures of the same dynamics: a dilation
(damped-motion) coordinate where resonances are monomials and delta
derivatives, and an inverted-oscillator coordinate where they are
complex-scaled Hermite-Gauss fields.  The package provides the resonance
families, the continuum eigenfunctions with their pole residues, the unitary
map between the pictures, exact and grid propagators, background/tail
diagnostics, compact-bump fitting, and a scenario CLI that emits CSV data
with a JSON manifest.
"""

from ._version import __version__
from .errors import (
    AccuracyError,
    CapabilityError,
    ConfigurationError,
    DataError,
    DomainError,
    GamowLabError,
    GridMismatchError,
    PoleProximityError,
    SearchIntervalError,
    TruncationError,
    TruncationWarning,
)
from .grid import (
    DEFAULT_UV_GRID,
    DEFAULT_XP_GRID,
    Grid,
    WaveFunction,
    inner_product,
    interpolate_values,
    make_grid,
    norm,
    resample,
    sample,
    simpson_weights,
)
from .special import (
    SpecialFnConfig,
    hermite,
    hermite_log_scaled,
    kummer_m,
    log_factorial,
    log_gamma,
    parabolic_cylinder_d,
    reciprocal_gamma,
    stirling_factorial,
    stirling_gamma,
    stirling_log_gamma,
)
from .resonances import (
    GamowIndex,
    MollifierSpec,
    default_mollifier,
    eval_f_minus_u_mollified,
    eval_f_plus_u,
    eval_f_pm_x,
    gamow_expand,
    pair_f_minus_u,
    pair_resonances_x,
    project_f_plus_u,
    quasi_orthogonality_uv,
    reconstruct_x,
)
from .spectra import (
    ContinuumFamily,
    ResidueEstimate,
    SchwartzTest,
    detect_poles,
    eval_chi,
    eval_eta,
    eval_psi,
    orthonormality_check_chi,
    orthonormality_control_plane_waves,
    pair_psi_weak,
    pole_lattice,
    residue_at_pole,
    residue_psi_weak,
)
from .propagate import (
    CoefficientTrace,
    PropagatorSpec,
    coefficient_trace,
    evolve,
    evolve_damped_exact,
    evolve_pde_uv,
    evolve_rho_xp,
    evolve_series,
    fitted_decay_rate,
    time_reverse,
)
from .transform import (
    TransformParams,
    forward_transform,
    inverse_transform,
    transform_resonance_check,
    v_lambda,
)
from .background import (
    BackgroundReport,
    DecayFit,
    background_field,
    background_parts,
    coefficient_decay_order,
    partial_sum_increment,
    tail_compare,
    tail_energy,
)
from .bumps import (
    BumpParams,
    FitReport,
    FitResult,
    eval_bump,
    fit_alternatives,
    fit_epsilon,
    normalize_bump,
    sample_bump,
    support_integral,
)
from .scenarios import (
    CATALOG,
    InitialState,
    OutputRequest,
    ScenarioConfig,
    config_from_dict,
    config_to_dict,
    list_scenarios,
    run_scenario,
    unit_gaussian,
    validate_config_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
