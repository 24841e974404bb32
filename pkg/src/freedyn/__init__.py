"""freedyn: potential dynamics recast as free evolution of a transformed state.

The package verifies, numerically, a family of identities of the form

    psi(x, t) solves the equation with a static potential
        <=>
    U(x)^(-1) psi(x, 0), evolved *freely*, reproduces psi(x, t) after mapping
    back through the static, time-independent matrix field U(x)

for one-dimensional two-component wave equations (a complex-mass form, a
real-mass form with an antilinear mass coupling, and their two-particle
variants).  Some potential/equation pairs admit an exact U, others only an
approximate one whose defect the library quantifies.

Layers:

  lattice     periodic grid, spinor fields, Gaussian packets, density metrics
  algebra     Pauli/Kronecker matrices and closed-form matrix exponentials
  potentials  four-channel potential descriptions built from coefficient profiles
  transforms  compiling, evaluating and applying the static transforms
  dynamics    split-step evolution of all four equation variants
  scenarios   end-to-end oracle-vs-transformed-pipeline experiments
  cli         config parsing, CSV/JSON artifact emission, `freedyn` entry point
"""

from .errors import (
    ConfigError,
    DegenerateInterval,
    FreedynError,
    GridMismatch,
    MissingKey,
    NonInvertible,
    PreconditionViolated,
    TypeMismatch,
    UnknownKey,
    UnsupportedPotential,
    ZeroSpinor,
)
from .lattice import (
    Grid1D,
    RealField,
    SpinorField,
    TwoBodyField,
    density,
    gaussian_packet,
    l2_density_error,
    make_grid,
    norm,
    position_expectation,
    spectral_derivative,
    window_mask,
)
from .algebra import (
    ALPHA1,
    ALPHA2,
    BETA1,
    BETA12,
    BETA1H,
    BETA2,
    BETA2H,
    ID2,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    pauli_exp,
)
from .potentials import Coefficient, PotentialSpec, antiderivative_coefficient
from .transforms import (
    EQUATION_KINDS,
    TransformField,
    TransformSpec,
    apply_transform,
    build_transform_field,
    compile_transform,
    density_relation_factor,
    elimination_residual,
    free_equation_defect,
)
from .dynamics import (
    EvolutionConfig,
    default_timestep,
    evolve_dirac,
    evolve_majorana,
    evolve_two_body_dirac,
    evolve_two_body_majorana,
    free_dirac_step,
)
from .scenarios import (
    SCENARIO_DEFAULTS,
    SCENARIO_NAMES,
    ComparisonReport,
    ScenarioConfig,
    ScenarioResult,
    compare_pipelines,
    run_dirac_f4,
    run_fig1,
    run_majorana_linear,
    run_massless_mass,
    run_scenario,
    run_two_body,
    scenario_checks,
    scenario_defaults,
    scenario_keys,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # errors
    "FreedynError", "DegenerateInterval", "ZeroSpinor", "GridMismatch",
    "UnsupportedPotential", "NonInvertible", "PreconditionViolated",
    "ConfigError", "MissingKey", "UnknownKey", "TypeMismatch",
    # lattice
    "Grid1D", "SpinorField", "TwoBodyField", "RealField",
    "make_grid", "gaussian_packet", "density", "norm",
    "position_expectation", "window_mask", "l2_density_error",
    "spectral_derivative",
    # algebra
    "SIGMA_X", "SIGMA_Y", "SIGMA_Z", "ID2",
    "ALPHA1", "ALPHA2", "BETA1", "BETA2", "BETA12", "BETA1H", "BETA2H",
    "pauli_exp",
    # potentials
    "Coefficient", "PotentialSpec", "antiderivative_coefficient",
    # transforms
    "EQUATION_KINDS", "TransformSpec", "TransformField",
    "compile_transform", "build_transform_field", "apply_transform",
    "density_relation_factor", "elimination_residual", "free_equation_defect",
    # dynamics
    "EvolutionConfig", "default_timestep", "free_dirac_step",
    "evolve_dirac", "evolve_majorana",
    "evolve_two_body_dirac", "evolve_two_body_majorana",
    # scenarios
    "ScenarioConfig", "ComparisonReport", "ScenarioResult",
    "SCENARIO_NAMES", "SCENARIO_DEFAULTS",
    "scenario_defaults", "scenario_keys", "compare_pipelines",
    "run_majorana_linear", "run_dirac_f4", "run_fig1",
    "run_massless_mass", "run_two_body", "run_scenario", "scenario_checks",
]
