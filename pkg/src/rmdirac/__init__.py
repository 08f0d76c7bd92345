"""Bound states of the Dirac equation with Rosen-Morse-family potentials.

Closed-form spin- and pseudospin-symmetric spectra and spinor components
for the sech^2/tanh well family, with an independent finite-difference
eigensolver for cross-validation of every result.
"""

from .errors import (
    BoundViolationError,
    BranchAmbiguityError,
    CardinalityMismatchWarning,
    ConfigError,
    DegenerateDenominatorError,
    DiscretizationError,
    DomainError,
    GammaPoleError,
    InadmissibleEnergyError,
    NoBoundStateError,
    NoInteriorMinimumError,
    NonConvergenceError,
    OverflowGuardError,
    ParameterPoleError,
    QuantizationPoleError,
    RmdiracError,
    ZeroNormError,
)
from .oracle import (
    ComparisonReport,
    OracleConfig,
    OracleLevel,
    compare,
    self_consistent_levels,
    solve_fixed_E_eigen,
    trig_interval_levels,
)
from .potentials import (
    PekerisCoefficients,
    PotentialSpec,
    ReflectionlessParams,
    RosenMorseGeneral,
    StandardRMParams,
    TrigRMParams,
    as_general,
    centrifugal_approx,
    equilibrium_radius,
    eval_potential,
    eval_potential_hyperbolic,
    pekeris_from_formulas,
    pekeris_from_taylor_match,
)
from .spectrum import (
    EffectiveCoefficients,
    EnergyLevel,
    NUParameters,
    SearchConfig,
    SymmetrySector,
    effective_coefficients,
    centrifugal_strength,
    find_levels,
    kg_residual,
    level_parameters,
    nonrel_energy_reflectionless,
    nonrel_energy_rm,
    pspin_residual_rm,
    spin_residual_rm,
    swave_trig_rm_residual,
)
from .spinors import (
    SpinorState,
    build_state,
    count_nodes,
    log_decay_slope,
    lower_component_pspin,
    lower_from_upper,
    make_radial_grid,
    normalization_constant_formula,
    normalize,
    ode_residual_sup,
    upper_component_rm,
    upper_from_lower,
)

__version__ = "0.1.0"
