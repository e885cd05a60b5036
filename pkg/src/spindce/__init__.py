"""Emission of photon pairs by a spinning anisotropic dielectric spheroid.

The package computes the emission spectrum and total photon rate driven by
the rotation of a subwavelength dielectric particle whose polarizability is
anisotropic, together with the quasi-static baseline, the resonant
enhancement, and burst-speed-constrained geometry studies. See the cli
module for the batch front-end.
"""

__version__ = "0.1.0"

from .bogoliubov import (
    DEFAULT_NORMALIZATION,
    ChannelSpectra,
    DipoleCorrelationMatrix,
    VacuumNormalization,
    calibrate_normalization,
    channel_spectra,
    correlation_matrix,
    pipeline_spectrum,
    vacuum_density,
)
from .emission import (
    EmissionSpectrum,
    RateResult,
    enhancement_curve,
    quasistatic_rate,
    sample_spectrum,
    spectrum_at,
    surface_mode_frequencies,
    total_rate,
)
from .errors import (
    CalibrationError,
    ConfigError,
    ConvergenceError,
    DegenerateObjectiveError,
    FitError,
    InvalidArgumentError,
    LosslessPoleError,
    LosslessResonanceCrossingError,
    MissingMechanicalDataError,
    ParseError,
    SchemaError,
    SpindceError,
    UnknownMaterialError,
)
from .geometry import (
    DepolarizationFactors,
    PrincipalPolarizability,
    SpheroidGeometry,
    anisotropy,
    depolarization_factors,
    polarizability_volume,
    principal_polarizabilities,
)
from .materials import (
    CONSTANTS,
    ConstantPermittivity,
    LorentzPermittivity,
    MaterialSpec,
    PhysicalConstants,
    burst_speed,
    get_material,
    load_catalog,
    material_from_entry,
    permittivity,
)
from .optimize import (
    ConstraintSpec,
    CrossoverEstimate,
    EccentricitySweep,
    SweepRecord,
    constrained_omega,
    constraint_from_material,
    crossover_from_records,
    crossover_radius,
    optimal_eccentricity,
    override_constraint,
    sweep_eccentricity,
    sweep_size,
)
from .quadrature import QuadratureResult, adaptive_quadrature
from .rotation import (
    SidebandResponse,
    SpinConfiguration,
    mean_polarizability,
    principal_axis_anisotropy,
    sideband_tensors,
)

__all__ = [
    "__version__",
    "CONSTANTS",
    "DEFAULT_NORMALIZATION",
    "CalibrationError",
    "ChannelSpectra",
    "ConfigError",
    "ConstantPermittivity",
    "ConstraintSpec",
    "ConvergenceError",
    "CrossoverEstimate",
    "DegenerateObjectiveError",
    "DepolarizationFactors",
    "DipoleCorrelationMatrix",
    "EccentricitySweep",
    "EmissionSpectrum",
    "FitError",
    "InvalidArgumentError",
    "LorentzPermittivity",
    "LosslessPoleError",
    "LosslessResonanceCrossingError",
    "MaterialSpec",
    "MissingMechanicalDataError",
    "ParseError",
    "PhysicalConstants",
    "PrincipalPolarizability",
    "QuadratureResult",
    "RateResult",
    "SchemaError",
    "SidebandResponse",
    "SpheroidGeometry",
    "SpinConfiguration",
    "SpindceError",
    "SweepRecord",
    "UnknownMaterialError",
    "VacuumNormalization",
    "adaptive_quadrature",
    "anisotropy",
    "burst_speed",
    "calibrate_normalization",
    "channel_spectra",
    "constrained_omega",
    "constraint_from_material",
    "correlation_matrix",
    "crossover_from_records",
    "crossover_radius",
    "depolarization_factors",
    "enhancement_curve",
    "get_material",
    "load_catalog",
    "material_from_entry",
    "mean_polarizability",
    "optimal_eccentricity",
    "override_constraint",
    "permittivity",
    "pipeline_spectrum",
    "polarizability_volume",
    "principal_axis_anisotropy",
    "principal_polarizabilities",
    "quasistatic_rate",
    "sample_spectrum",
    "sideband_tensors",
    "spectrum_at",
    "surface_mode_frequencies",
    "sweep_eccentricity",
    "sweep_size",
    "total_rate",
    "vacuum_density",
]
