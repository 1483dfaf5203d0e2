"""Two-path interferometry with a which-path detector and an asymmetric
recombining beam splitter: state evolution, fringe visibility, which-path
distinguishability, and the complementarity relation between them.

All operations are pure functions on immutable values and are safe to call
concurrently from any number of threads.
"""

from .duality import (
    DualityReport,
    MeasurementBasis,
    PathWeights,
    complementarity_residual,
    detector_mixture,
    distinguishability_closed,
    distinguishability_trace_norm,
    distinguishability_valley,
    duality_report,
    min_error_basis,
    min_error_basis_closed_form,
    path_weights,
    visibility_closed,
    visibility_peak_fixed_beta,
    visibility_peak_fixed_sx,
    visibility_scan,
)
from .errors import (
    DegenerateBasisError,
    DualityError,
    InvalidInputError,
    NoExtremumError,
    UndefinedVisibilityError,
)
from .interferometer import (
    BeamSplitterAngle,
    BlochState,
    DetectorConfig,
    PhaseShift,
    beam_splitter,
    bloch_to_density,
    detection_probability_closed,
    detection_probability_numeric,
    evolve,
    evolve_closed_form,
    marking_operator,
    phase_shifter,
)
from .linalg import (
    DensityOperator,
    hermitian_eig2,
    partial_trace_detector,
    partial_trace_path,
    tensor,
    trace_norm,
)
from .verify import RunConfig, run_verification

__version__ = "0.1.0"

__all__ = [
    "BeamSplitterAngle",
    "BlochState",
    "DegenerateBasisError",
    "DensityOperator",
    "DetectorConfig",
    "DualityError",
    "DualityReport",
    "InvalidInputError",
    "MeasurementBasis",
    "NoExtremumError",
    "PathWeights",
    "PhaseShift",
    "RunConfig",
    "UndefinedVisibilityError",
    "beam_splitter",
    "bloch_to_density",
    "complementarity_residual",
    "detection_probability_closed",
    "detection_probability_numeric",
    "detector_mixture",
    "distinguishability_closed",
    "distinguishability_trace_norm",
    "distinguishability_valley",
    "duality_report",
    "evolve",
    "evolve_closed_form",
    "hermitian_eig2",
    "marking_operator",
    "min_error_basis",
    "min_error_basis_closed_form",
    "partial_trace_detector",
    "partial_trace_path",
    "path_weights",
    "phase_shifter",
    "run_verification",
    "tensor",
    "trace_norm",
    "visibility_closed",
    "visibility_peak_fixed_beta",
    "visibility_peak_fixed_sx",
    "visibility_scan",
]
