"""Tripartite Bell operators, separability bounds and 3-qubit classification."""

from .core import (
    ConsistencyError,
    ValidationError,
    embed_pair,
    embed_single,
    expectation_matrix,
    kron,
)
from .states import (
    AcinParameters,
    DensityMatrix,
    PureState,
    acin_state,
    canonical_biseparable,
    generalized_ghz,
    ghz,
    maximally_mixed,
    mix,
    phi_plus_otimes_zero,
    random_in_class,
    random_pure,
    to_density,
    w_state,
)
from .pauli import PauliDecomposition, decompose, invariant_norms, q_norm, reconstruct
from .bell import (
    DerivedSettingVectors,
    MeasurementSettings,
    bell_operator,
    derive_st,
    expectation_bell,
    expectation_bell_fast,
    observable,
    omega,
    random_settings,
    wwzb_pair,
)
from .optimize import (
    OptimizationResult,
    OptimizerConfig,
    maximize_omega,
    omega_planar_oracle,
    planar_grid_max,
    seesaw_max_abs_d,
    seesaw_max_abs_d_many,
)
from .classify import (
    ClassificationReport,
    RegionPoint,
    classify,
    figure_projection,
    sample_region,
)

__version__ = "0.1.0"

__all__ = [
    "AcinParameters",
    "ClassificationReport",
    "ConsistencyError",
    "DensityMatrix",
    "DerivedSettingVectors",
    "MeasurementSettings",
    "OptimizationResult",
    "OptimizerConfig",
    "PauliDecomposition",
    "PureState",
    "RegionPoint",
    "ValidationError",
    "acin_state",
    "bell_operator",
    "canonical_biseparable",
    "classify",
    "decompose",
    "derive_st",
    "embed_pair",
    "embed_single",
    "expectation_bell",
    "expectation_bell_fast",
    "expectation_matrix",
    "figure_projection",
    "generalized_ghz",
    "ghz",
    "invariant_norms",
    "kron",
    "maximally_mixed",
    "maximize_omega",
    "mix",
    "observable",
    "omega",
    "omega_planar_oracle",
    "phi_plus_otimes_zero",
    "planar_grid_max",
    "q_norm",
    "random_in_class",
    "random_pure",
    "random_settings",
    "reconstruct",
    "sample_region",
    "seesaw_max_abs_d",
    "seesaw_max_abs_d_many",
    "to_density",
    "w_state",
    "wwzb_pair",
]
