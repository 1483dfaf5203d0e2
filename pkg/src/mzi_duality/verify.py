"""Randomized self-verification suites behind the ``verify`` CLI command.

Each suite draws random parameter points (seeded, so reruns are bit-identical),
computes one quantity along two independent routes or checks one invariant,
and reports the case count, failure count, and worst observed error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .duality import (
    PathWeights,
    complementarity_residual,
    distinguishability_closed,
    distinguishability_trace_norm,
    distinguishability_valley,
    min_error_basis,
    min_error_basis_closed_form,
    path_weights,
    visibility_closed,
    visibility_peak_fixed_beta,
    visibility_peak_fixed_sx,
    visibility_scan,
)
from .errors import InvalidInputError
from .interferometer import (
    BeamSplitterAngle,
    BlochState,
    DetectorConfig,
    PhaseShift,
    detection_probability_closed,
    detection_probability_numeric,
    evolve,
    evolve_closed_form,
)
from .linalg import hermitian_eig2, hermiticity_defect, partial_trace_path

TWO_PI = 2.0 * math.pi

DEFAULT_TOLERANCES: dict[str, float] = {
    "pipeline_equivalence": 1e-12,
    "detection_probability": 1e-10,
    "state_validity": 1e-10,
    "reduced_detector_state": 1e-12,
    "visibility_oracle": 1e-9,
    "distinguishability_oracle": 1e-10,
    "weights_identity": 1e-12,
    "phase_invariance": 1e-10,
    "min_error_measurement": 1e-10,
    "measurement_basis_closed_form": 1e-8,
    "complementarity": 1e-12,
    "eig_reconstruction": 1e-10,
    "extremum_loci": 1e-3,
}

# Brute-force extremum searches walk the closed forms at this resolution and
# must land within 1e-3 of the predicted locus.
GRID_STEP = 1e-4


@dataclass(frozen=True)
class RunConfig:
    """Seed, draw count, and per-suite tolerance overrides for one verify run."""

    seed: int = 42
    draws: int = 1000
    tolerances: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.draws < 1:
            raise InvalidInputError("draws must be at least 1")
        for name, value in self.tolerances.items():
            if name not in DEFAULT_TOLERANCES:
                known = ", ".join(sorted(DEFAULT_TOLERANCES))
                raise InvalidInputError(f"unknown tolerance {name!r}; known: {known}")
            if not (math.isfinite(value) and value > 0.0):
                raise InvalidInputError(f"tolerance {name!r} must be finite and positive")

    def tolerance(self, name: str) -> float:
        return float(self.tolerances.get(name, DEFAULT_TOLERANCES[name]))


def draw_bloch_state(rng: np.random.Generator) -> BlochState:
    """Bloch vector uniform in the closed unit ball (cube-root radius law)."""
    direction = rng.standard_normal(3)
    norm = float(np.linalg.norm(direction))
    if norm < 1e-12:
        return BlochState(0.0, 0.0, 0.0)
    radius = rng.uniform(0.0, 1.0) ** (1.0 / 3.0)
    v = direction * (radius / norm)
    return BlochState(float(v[0]), float(v[1]), float(v[2]))


def draw_detector(rng: np.random.Generator) -> DetectorConfig:
    return DetectorConfig(
        a_overlap=float(rng.uniform(0.0, 1.0)),
        gamma=float(rng.uniform(0.0, TWO_PI)),
        delta=float(rng.uniform(0.0, TWO_PI)),
    )


def draw_beta(rng: np.random.Generator) -> BeamSplitterAngle:
    # [0.01, pi - 0.01] keeps the measure-zero degenerate edge out of the draws.
    return BeamSplitterAngle(float(rng.uniform(0.01, math.pi - 0.01)))


def draw_phase(rng: np.random.Generator) -> PhaseShift:
    return PhaseShift(float(rng.uniform(0.0, TWO_PI)))


def draw_point(rng):
    return draw_bloch_state(rng), draw_detector(rng), draw_beta(rng), draw_phase(rng)


# --- brute-force extremum oracles (vectorized closed forms on a fine grid) ---


def grid_visibility_peak_fixed_beta(
    lam: float, a_overlap: float, beta: BeamSplitterAngle, step: float = GRID_STEP
) -> tuple[float, float]:
    """Argmax and max of V over s_x in [-sqrt(lam), sqrt(lam)] by exhaustive grid."""
    r = math.sqrt(lam)
    s_x = np.arange(-r, r + 0.5 * step, step)
    amp = np.sqrt(np.maximum(lam - s_x * s_x, 0.0))
    values = a_overlap * math.sin(beta.beta) * amp / (1.0 + s_x * math.cos(beta.beta))
    k = int(np.argmax(values))
    return float(s_x[k]), float(values[k])


def grid_visibility_peak_fixed_sx(
    s_x: float, lam: float, a_overlap: float, step: float = GRID_STEP
) -> tuple[float, float]:
    """Argmax and max of V over the splitter angle by exhaustive grid."""
    beta = np.arange(step, math.pi, step)
    amp = math.sqrt(max(lam - s_x * s_x, 0.0))
    values = a_overlap * np.sin(beta) * amp / (1.0 + s_x * np.cos(beta))
    k = int(np.argmax(values))
    return float(beta[k]), float(values[k])


def grid_distinguishability_valley(
    s_x: float, a_overlap: float, step: float = GRID_STEP
) -> tuple[float, float]:
    """Argmin and min of D over the splitter angle by exhaustive grid."""
    beta = np.arange(step, math.pi, step)
    ratio = (a_overlap * np.sin(beta) / (1.0 + s_x * np.cos(beta))) ** 2 * (
        (1.0 - s_x) * (1.0 + s_x)
    )
    values = np.sqrt(np.maximum(1.0 - ratio, 0.0))
    k = int(np.argmin(values))
    return float(beta[k]), float(values[k])


# --- suites ---


def _suite_pipeline_equivalence(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, phi = draw_point(rng)
        err = float(
            np.abs(
                evolve(state, det, beta, phi).matrix
                - evolve_closed_form(state, det, beta, phi).matrix
            ).max()
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_detection_probability(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, phi = draw_point(rng)
        numeric = detection_probability_numeric(evolve(state, det, beta, phi))
        closed = detection_probability_closed(state, det, beta, phi)
        err = abs(numeric - closed)
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_state_validity(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, phi = draw_point(rng)
        m = evolve(state, det, beta, phi).matrix
        err = max(
            hermiticity_defect(m),
            abs(complex(m.trace()) - 1.0),
            max(0.0, -float(np.linalg.eigvalsh(m)[0])),
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_reduced_detector_state(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, phi = draw_point(rng)
        reduced = partial_trace_path(evolve(state, det, beta, phi)).matrix
        u = det.unitary
        rho_d = np.outer(det.reference_state, det.reference_state.conj())
        expected = 0.5 * (1.0 - state.s_x) * rho_d + 0.5 * (1.0 + state.s_x) * (
            u @ rho_d @ u.conj().T
        )
        err = float(np.abs(reduced - expected).max())
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_visibility_oracle(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, _ = draw_point(rng)
        err = abs(
            visibility_scan(state, det, beta)
            - visibility_closed(state, det.a_overlap, beta)
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_distinguishability_oracle(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, _ = draw_point(rng)
        weights = path_weights(state.s_x, beta)
        err = abs(
            distinguishability_trace_norm(det, weights)
            - distinguishability_closed(state.s_x, beta, det.a_overlap)
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_weights_identity(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, _ = draw_point(rng)
        weights = path_weights(state.s_x, beta)
        d = distinguishability_closed(state.s_x, beta, det.a_overlap)
        err = max(
            abs(d * d + 4.0 * weights.omega_a * weights.omega_b * det.a_overlap**2 - 1.0),
            abs(weights.omega_a + weights.omega_b - 1.0),
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_phase_invariance(rng, draws, tol):
    # gamma and delta shift the fringe and the unobservable off-diagonal phase
    # of the marking unitary; neither measured quantity may move.
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, _ = draw_point(rng)
        other = DetectorConfig(
            det.a_overlap,
            gamma=float(rng.uniform(0.0, TWO_PI)),
            delta=float(rng.uniform(0.0, TWO_PI)),
        )
        weights = path_weights(state.s_x, beta)
        err = max(
            abs(
                visibility_scan(state, det, beta, grid_size=512)
                - visibility_scan(state, other, beta, grid_size=512)
            ),
            abs(
                distinguishability_trace_norm(det, weights)
                - distinguishability_trace_norm(other, weights)
            ),
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_min_error_measurement(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, _ = draw_point(rng)
        weights = path_weights(state.s_x, beta)
        u = det.unitary
        rho_d = np.outer(det.reference_state, det.reference_state.conj())
        gamma_op = weights.omega_a * (u @ rho_d @ u.conj().T) - weights.omega_b * rho_d
        values, _ = hermitian_eig2(gamma_op)
        if values[0] - values[1] <= 1e-12:
            continue
        basis = min_error_basis(det, weights)
        eig_err = max(
            float(np.abs(gamma_op @ basis.m_a - values[0] * basis.m_a).max()),
            float(np.abs(gamma_op @ basis.m_b - values[1] * basis.m_b).max()),
        )
        ortho_err = max(
            abs(float(np.linalg.norm(basis.m_a)) - 1.0),
            abs(float(np.linalg.norm(basis.m_b)) - 1.0),
            abs(np.vdot(basis.m_a, basis.m_b)),
        )
        success = weights.omega_b * abs(
            np.vdot(basis.m_b, det.reference_state)
        ) ** 2 + weights.omega_a * abs(np.vdot(basis.m_a, det.marked_state)) ** 2
        helstrom_err = abs(success - 0.5 * (1.0 + distinguishability_trace_norm(det, weights)))
        prior_gap = max(weights.omega_a, weights.omega_b) - success
        err = max(eig_err, ortho_err, helstrom_err, prior_gap - 1e-12)
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_measurement_basis_closed_form(rng, draws, tol):
    # The printed closed-form basis assumes a real overlap and is numerically
    # singular at the domain edges, so the draws stay comfortably interior.
    failures, worst = 0, 0.0
    for _ in range(draws):
        det = DetectorConfig(
            a_overlap=float(rng.uniform(0.05, 0.95)),
            gamma=0.0,
            delta=float(rng.uniform(0.0, TWO_PI)),
        )
        omega_a = float(rng.uniform(0.05, 0.95))
        weights = PathWeights(omega_a, 1.0 - omega_a)
        numeric = min_error_basis(det, weights)
        literal = min_error_basis_closed_form(det, weights)
        err = max(
            _phase_aligned_distance(numeric.m_a, literal.m_a),
            _phase_aligned_distance(numeric.m_b, literal.m_b),
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _phase_aligned_distance(v: np.ndarray, w: np.ndarray) -> float:
    overlap = np.vdot(w, v)
    if abs(overlap) < 1e-300:
        return float(np.linalg.norm(v - w))
    aligned = w * (overlap / abs(overlap))
    return float(np.linalg.norm(v - aligned))


def _suite_complementarity(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        state, det, beta, _ = draw_point(rng)
        v = visibility_closed(state, det.a_overlap, beta)
        d = distinguishability_closed(state.s_x, beta, det.a_overlap)
        residual = complementarity_residual(state, det.a_overlap, beta)
        err = max(
            abs(1.0 - v * v - d * d - residual),
            v * v + d * d - 1.0 - 1e-12,
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_eig_reconstruction(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        diag = rng.uniform(-1.0, 1.0, size=2)
        off = complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))
        h = np.array([[diag[0], off], [np.conj(off), diag[1]]], dtype=complex)
        values, vectors = hermitian_eig2(h)
        rebuilt = (vectors * values) @ vectors.conj().T
        err = max(
            float(np.abs(rebuilt - h).max()),
            float(np.abs(vectors.conj().T @ vectors - np.eye(2)).max()),
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


def _suite_extremum_loci(rng, draws, tol):
    failures, worst = 0, 0.0
    for _ in range(draws):
        lam = float(rng.uniform(0.05, 1.0))
        a_overlap = float(rng.uniform(0.05, 1.0))
        beta = BeamSplitterAngle(float(rng.uniform(0.05, math.pi - 0.05)))
        s_x = float(rng.uniform(-0.95, 0.95)) * math.sqrt(lam)

        sx_pred, _ = visibility_peak_fixed_beta(lam, a_overlap, beta)
        sx_grid, _ = grid_visibility_peak_fixed_beta(lam, a_overlap, beta)
        beta_pred, _ = visibility_peak_fixed_sx(s_x, lam, a_overlap)
        beta_grid, _ = grid_visibility_peak_fixed_sx(s_x, lam, a_overlap)
        valley_pred, _ = distinguishability_valley(s_x, a_overlap)
        valley_grid, _ = grid_distinguishability_valley(s_x, a_overlap)

        err = max(
            abs(sx_grid - sx_pred),
            abs(beta_grid - beta_pred),
            abs(valley_grid - valley_pred),
        )
        worst = max(worst, err)
        failures += err > tol
    return failures, worst


_SUITES: list[tuple[str, Callable]] = [
    ("pipeline_equivalence", _suite_pipeline_equivalence),
    ("detection_probability", _suite_detection_probability),
    ("state_validity", _suite_state_validity),
    ("reduced_detector_state", _suite_reduced_detector_state),
    ("visibility_oracle", _suite_visibility_oracle),
    ("distinguishability_oracle", _suite_distinguishability_oracle),
    ("weights_identity", _suite_weights_identity),
    ("phase_invariance", _suite_phase_invariance),
    ("min_error_measurement", _suite_min_error_measurement),
    ("measurement_basis_closed_form", _suite_measurement_basis_closed_form),
    ("complementarity", _suite_complementarity),
    ("eig_reconstruction", _suite_eig_reconstruction),
    ("extremum_loci", _suite_extremum_loci),
]


def run_verification(config: RunConfig) -> dict[str, dict[str, float]]:
    """Run every suite; returns {suite: {cases, failures, max_error}}."""
    summary: dict[str, dict[str, float]] = {}
    for index, (name, suite) in enumerate(_SUITES):
        rng = np.random.default_rng([config.seed, index])
        failures, worst = suite(rng, config.draws, config.tolerance(name))
        summary[name] = {
            "cases": config.draws,
            "failures": int(failures),
            "max_error": float(worst),
        }
    return summary


def all_passed(summary: Mapping[str, Mapping[str, float]]) -> bool:
    return all(entry["failures"] == 0 for entry in summary.values())
