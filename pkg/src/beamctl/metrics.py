"""Normalized response patterns, array gain, and step-comparison costs.

Levels are linear ratios internally; anything user-facing is dB.  The two
comparison costs quantify what a control step did to the rest of the
pattern: the level perturbation at an earlier controlled direction (dB), and
the RMS deviation of the linear pattern over a dense angle grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arrays import ArrayModel
from .errors import BeamAxisNullError, ConfigError

# Presentation-only floor: exports clamp dB levels here so logs stay finite
# at pattern nulls.  Never applied inside metric computations.
EXPORT_DB_FLOOR = -200.0


@dataclass(frozen=True)
class GridSpec:
    """Uniform angle grid, inclusive of both endpoints."""

    from_deg: float = -90.0
    to_deg: float = 90.0
    step_deg: float = 0.2

    def __post_init__(self):
        if not (self.to_deg > self.from_deg):
            raise ConfigError(f"empty angle grid: [{self.from_deg}, {self.to_deg}]")
        if not (self.step_deg > 0.0):
            raise ConfigError(f"grid step must be positive, got {self.step_deg}")

    @property
    def count(self) -> int:
        return int(round((self.to_deg - self.from_deg) / self.step_deg)) + 1

    def angles_deg(self) -> np.ndarray:
        return np.linspace(self.from_deg, self.to_deg, self.count)

    def angles_rad(self) -> np.ndarray:
        return np.radians(self.angles_deg())


@dataclass(frozen=True)
class PatternGrid:
    """Sampled normalized pattern: one dB level per grid angle."""

    angles_deg: tuple[float, ...]
    levels_db: tuple[float, ...]

    def floored_levels(self) -> list[float]:
        return [max(lv, EXPORT_DB_FLOOR) for lv in self.levels_db]


@dataclass(frozen=True)
class StepMetrics:
    """Reported quantities for one completed control step."""

    d_db: float | None
    j_rms: float | None
    gain_db: float


def db(linear: float) -> float:
    return 10.0 * math.log10(linear) if linear > 0.0 else -math.inf


def from_db(level_db: float) -> float:
    return 10.0 ** (level_db / 10.0)


def _beam_axis_response(w: np.ndarray, a0: np.ndarray) -> complex:
    resp = w.conj() @ a0
    if abs(resp) <= 1e-14 * np.linalg.norm(w) * np.linalg.norm(a0):
        raise BeamAxisNullError("weight vector has no response at the beam axis")
    return resp


def normalized_response(w: np.ndarray, model: ArrayModel, theta: float,
                        theta0: float) -> float:
    """Linear level |w^H a(theta)|^2 / |w^H a(theta0)|^2."""
    axis = _beam_axis_response(w, model.steering_vector(theta0))
    return float(abs(w.conj() @ model.steering_vector(theta)) ** 2 / abs(axis) ** 2)


def response_curve(w: np.ndarray, model: ArrayModel, thetas: np.ndarray,
                   theta0: float) -> np.ndarray:
    """Vectorized normalized_response over many directions."""
    axis = _beam_axis_response(w, model.steering_vector(theta0))
    responses = model.steering_matrix(thetas) @ w.conj()
    return np.abs(responses) ** 2 / abs(axis) ** 2


def array_gain(w: np.ndarray, t: np.ndarray, a0: np.ndarray) -> float:
    """Linear gain |w^H a0|^2 / (w^H T w) against covariance T."""
    denom = w.conj() @ t @ w
    if abs(denom) <= 1e-14 * float(np.linalg.norm(w) ** 2) * float(np.max(np.abs(t))):
        raise BeamAxisNullError("degenerate quadratic form in the gain denominator")
    return float(abs(w.conj() @ a0) ** 2 / abs(denom))


def metric_d(w1: np.ndarray, w2: np.ndarray, model: ArrayModel, theta1: float,
             theta0: float) -> float:
    """Level perturbation at theta1 between two weights, in dB.

    Computed as the absolute difference of the dB levels; a linear-scale
    difference would be meaningless across the dynamic range these levels
    span.
    """
    l1 = normalized_response(w1, model, theta1, theta0)
    l2 = normalized_response(w2, model, theta1, theta0)
    return abs(db(l2) - db(l1))


def metric_j(w1: np.ndarray, w2: np.ndarray, model: ArrayModel, theta0: float,
             grid: GridSpec = GridSpec()) -> float:
    """RMS deviation of the two linear patterns over the grid."""
    thetas = grid.angles_rad()
    c1 = response_curve(w1, model, thetas, theta0)
    c2 = response_curve(w2, model, thetas, theta0)
    return float(np.sqrt(np.mean(np.abs(c2 - c1) ** 2)))


def sample_pattern(w: np.ndarray, model: ArrayModel, theta0: float,
                   grid: GridSpec = GridSpec()) -> PatternGrid:
    """Sample the normalized pattern in dB over the grid."""
    angles = grid.angles_deg()
    curve = response_curve(w, model, np.radians(angles), theta0)
    with np.errstate(divide="ignore"):
        levels = 10.0 * np.log10(curve)
    return PatternGrid(angles_deg=tuple(float(a) for a in angles),
                       levels_db=tuple(float(lv) for lv in levels))
