"""A2RC baseline: steering-vector weight updates with min-modulus selection.

The update w_k = w_{k-1} + mu_k a(theta_k) also admits a circle of admissible
mu per step; A2RC empirically takes the smallest-modulus point instead of the
gain-optimal one.  For diagnosis the module additionally tracks the implicit
interference powers this choice induces: unlike the optimal engine, every
step silently re-assigns interference at all previously controlled
directions, with complex powers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .arrays import ArrayModel
from .control import (
    VcmState,
    compute_xi,
    constraint_circle,
    gamma_circle,
    ray_candidates,
    select_gamma,
    validate_level,
)
from .errors import LevelOutOfRangeError, OriginCenterError

__all__ = [
    "A2rcState",
    "ImplicitInrUpdate",
    "Corollary1Report",
    "a2rc_step",
    "implicit_inrs_update",
    "reconstruct_implicit_vcm",
    "check_corollary1",
]


@dataclass(frozen=True)
class A2rcState:
    """Weight chain plus the implicit-interference ledger after k steps."""

    weight: np.ndarray
    mu_history: tuple[complex, ...]
    directions: tuple[float, ...]
    implicit_inrs: tuple[complex, ...]

    @classmethod
    def initial(cls, model: ArrayModel, theta0: float) -> "A2rcState":
        return cls(weight=model.steering_vector(theta0), mu_history=(),
                   directions=(), implicit_inrs=())

    @property
    def step_count(self) -> int:
        return len(self.mu_history)


@dataclass(frozen=True)
class ImplicitInrUpdate:
    """Updated implicit powers plus the per-direction increments of one step."""

    inrs: tuple[complex, ...]
    deltas: tuple[complex, ...]
    beta_kk: complex


def implicit_inrs_update(state: A2rcState, model: ArrayModel, theta_k: float,
                         mu_k: complex) -> ImplicitInrUpdate:
    """Advance the implicit interference powers for a step of size mu_k.

    The reciprocal powers at previously controlled directions shift by
    mu_k a^H(theta_i) a(theta_k) / mu_i, and the fresh direction receives
    -mu_k / (a^H(theta_k) w_{k-1} + mu_k ||a(theta_k)||^2).  ``state`` is the
    chain BEFORE the step; deltas are the increments against it.
    """
    ak = model.steering_vector(theta_k)
    new_inrs: list[complex] = []
    deltas: list[complex] = []
    for mu_i, theta_i, inr_prev in zip(state.mu_history, state.directions, state.implicit_inrs):
        if abs(mu_i) <= 1e-14:
            raise ZeroDivisionError(f"implicit-power recursion needs mu != 0, got {mu_i}")
        if abs(inr_prev) <= 1e-14:
            raise ZeroDivisionError("implicit-power recursion hit a zero previous power")
        a_i = model.steering_vector(theta_i)
        shift = mu_k * (a_i.conj() @ ak) / mu_i
        recip = 1.0 / inr_prev - shift
        if abs(recip) <= 1e-14 * max(1.0 / abs(inr_prev), abs(shift)):
            raise ZeroDivisionError("implicit-power recursion denominator vanished")
        inr_new = 1.0 / recip
        new_inrs.append(complex(inr_new))
        deltas.append(complex(inr_new - inr_prev))
    denom = (ak.conj() @ state.weight) + mu_k * float(np.linalg.norm(ak) ** 2)
    if abs(denom) <= 1e-14 * max(1.0, abs(mu_k) * float(np.linalg.norm(ak) ** 2)):
        raise ZeroDivisionError("fresh implicit power denominator vanished")
    beta_kk = complex(-mu_k / denom)
    new_inrs.append(beta_kk)
    deltas.append(beta_kk)
    return ImplicitInrUpdate(inrs=tuple(new_inrs), deltas=tuple(deltas), beta_kk=beta_kk)


def a2rc_step(state: A2rcState, model: ArrayModel, theta0: float, theta_k: float,
              rho: float) -> A2rcState:
    """One A2RC step: min-modulus point of the mu circle, then bookkeeping."""
    validate_level(rho)
    if theta_k == theta0:
        raise LevelOutOfRangeError("cannot control the beam axis against itself")
    a0 = model.steering_vector(theta0)
    ak = model.steering_vector(theta_k)
    circle = constraint_circle(state.weight, ak, a0, ak, rho)
    center = circle.center_complex
    if abs(center) <= 1e-14 * max(1.0, circle.radius):
        raise OriginCenterError(
            "mu circle is centered at the origin; the min-modulus point is nonunique"
        )
    # Nearest intersection of the circle with the line through the origin and
    # the center; when the origin lies inside, the root goes negative and the
    # point lands on the opposite ray, still at distance |norm - radius|.
    mu, _ = ray_candidates(state.weight, ak, a0, ak, rho, center)
    update = implicit_inrs_update(state, model, theta_k, mu)
    return A2rcState(weight=state.weight + mu * ak,
                     mu_history=state.mu_history + (mu,),
                     directions=state.directions + (theta_k,),
                     implicit_inrs=update.inrs)


def mu_circle(state: A2rcState, model: ArrayModel, theta0: float, theta_k: float,
              rho: float):
    """Circle of admissible mu for the next step (display/diagnostics)."""
    a0 = model.steering_vector(theta0)
    ak = model.steering_vector(theta_k)
    return constraint_circle(state.weight, ak, a0, ak, rho)


def reconstruct_implicit_vcm(state: A2rcState, model: ArrayModel) -> np.ndarray:
    """Build the implicit covariance I + A Sigma A^H from the ledger."""
    n = state.weight.shape[0]
    t = np.eye(n, dtype=complex)
    for theta, inr in zip(state.directions, state.implicit_inrs):
        a = model.steering_vector(theta)
        t += inr * np.outer(a, a.conj())
    return t


@dataclass(frozen=True)
class Corollary1Report:
    """First-step agreement between the min-modulus and optimal selections."""

    norm_ratio: float
    rho1: float
    low_level_branch: bool
    mu1: complex
    gamma_reference: complex
    agreement: float

    @property
    def matches(self) -> bool:
        return self.agreement <= 1e-9


def check_corollary1(model: ArrayModel, theta0: float, theta1: float,
                     rho1: float) -> Corollary1Report:
    """Run both methods' first steps from scratch and compare.

    With identity initial covariance the two candidate circles coincide, so
    mu_1 always equals one of the two gamma candidates: the optimal one when
    rho1 <= ||a(theta1)||^2 / ||a(theta0)||^2, the rejected one otherwise.
    """
    a0 = model.steering_vector(theta0)
    a1 = model.steering_vector(theta1)
    norm_ratio = float(np.linalg.norm(a1) ** 2 / np.linalg.norm(a0) ** 2)
    low_level = rho1 <= norm_ratio

    vcm = VcmState.initial(model.n)
    quartet = compute_xi(vcm, a0, a1)
    circle = gamma_circle(a0, a1, a0, a1, rho1)
    selection = select_gamma(quartet, circle, rho1)
    gamma_ref = selection.gamma_star if low_level else (
        selection.gamma_b if selection.gamma_star == selection.gamma_a else selection.gamma_a
    )

    first = a2rc_step(A2rcState.initial(model, theta0), model, theta0, theta1, rho1)
    mu1 = first.mu_history[0]
    return Corollary1Report(norm_ratio=norm_ratio, rho1=rho1, low_level_branch=low_level,
                            mu1=mu1, gamma_reference=complex(gamma_ref),
                            agreement=float(abs(mu1 - gamma_ref)))
