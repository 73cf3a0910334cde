"""Brute-force validators for the closed-form engine.

Everything here re-derives a result the engine obtains analytically, by
dense sampling or least squares, and is consumed only by tests and the
acceptance suite.  Nothing in the production path imports this module.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import ArrayModel
from .control import CircleR2, VcmState, XiQuartet, beta_to_gamma, compute_xi

DEFAULT_SAMPLES = 720


@dataclass(frozen=True)
class CircleScan:
    """Result of maximizing an objective over sampled circle points."""

    samples: int
    best_param: complex
    best_objective: float


def gamma_gain(gamma, quartet: XiQuartet) -> np.ndarray:
    """Array gain as a function of the update coefficient (vectorized)."""
    gamma = np.asarray(gamma, dtype=complex)
    return np.abs(quartet.xic_tilde) * np.abs(quartet.xi0 / quartet.xic_tilde + gamma)


def scan_gamma_for_gain(circle: CircleR2, quartet: XiQuartet,
                        samples: int = DEFAULT_SAMPLES) -> CircleScan:
    """Exhaustively maximize the gain over evenly sampled circle points."""
    points = circle.points(samples)
    objective = gamma_gain(points, quartet)
    best = int(np.argmax(objective))
    return CircleScan(samples=samples, best_param=complex(points[best]),
                      best_objective=float(objective[best]))


def beta_gain_updated(beta, quartet: XiQuartet) -> np.ndarray:
    """Gain against the UPDATED covariance, as a function of beta.

    Uses the rank-1 inverse identity, so it stays valid for complex beta:
    |xi0 - beta |xic|^2 / (1 + beta xik)|.
    """
    beta = np.asarray(beta, dtype=complex)
    return np.abs(quartet.xi0 - beta * abs(quartet.xic) ** 2 / (1.0 + beta * quartet.xik))


def scan_beta_for_prop7(circle: CircleR2, state_prev: VcmState, w_prev: np.ndarray,
                        a0: np.ndarray, ak: np.ndarray,
                        samples: int = DEFAULT_SAMPLES) -> tuple[CircleScan, CircleScan]:
    """Scan two gain objectives over the beta circle and return both argmaxes.

    The first keeps the PREVIOUS covariance in the denominator,
    |w^H a0|^2 / (w^H T_{k-1} w); the second is the gain against the updated
    covariance.  For positive definite previous state the two maximizers
    coincide, which is what callers assert.
    """
    quartet = compute_xi(state_prev, a0, ak)
    betas = circle.points(samples)
    v_k = state_prev.t_inv @ ak

    gammas = np.array([beta_to_gamma(b, quartet) for b in betas])
    weights = w_prev[None, :] + gammas[:, None] * v_k[None, :]
    numer = np.abs(weights.conj() @ a0) ** 2
    denom = np.einsum("ij,jk,ik->i", weights.conj(), state_prev.t, weights).real
    prev_objective = numer / denom
    best_prev = int(np.argmax(prev_objective))

    updated_objective = beta_gain_updated(betas, quartet)
    best_upd = int(np.argmax(updated_objective))

    return (
        CircleScan(samples=samples, best_param=complex(betas[best_prev]),
                   best_objective=float(prev_objective[best_prev])),
        CircleScan(samples=samples, best_param=complex(betas[best_upd]),
                   best_objective=float(updated_objective[best_upd])),
    )


@dataclass(frozen=True)
class SpanCheck:
    """Least-squares decomposition of a weight increment over steering vectors."""

    residual: float
    coefficients: np.ndarray
    rank_deficient: bool


def span_decomposition_check(w_delta: np.ndarray, directions, model: ArrayModel) -> SpanCheck:
    """Project a weight increment onto span{a(theta) for theta in directions}.

    Column order follows ``directions``, so passing [theta_k, ..., theta_1]
    puts the current step's coefficient first.  A rank-deficient steering set
    (directions too close) is flagged; the residual is still meaningful.
    """
    directions = list(directions)
    if not directions:
        raise ValueError("span check needs at least one direction")
    basis = np.column_stack([model.steering_vector(t) for t in directions])
    coeffs, _, rank, _ = np.linalg.lstsq(basis, w_delta, rcond=None)
    residual = float(np.linalg.norm(basis @ coeffs - w_delta))
    return SpanCheck(residual=residual, coefficients=coeffs,
                     rank_deficient=(rank < len(directions)))
