"""Sequential response-level control with virtual interference covariance.

A control session forces the normalized response L(theta_k, theta_0) to a
prescribed linear level rho_k at one direction per step, while keeping the
running weight vector an optimal beamformer against a virtual covariance
matrix T_k = I + sum_l beta_l a(theta_l) a^H(theta_l).  Per step, the set of
weight-update coefficients gamma that achieve the level is a circle in the
complex plane; so is the set of admissible interference powers beta.  The
optimal step maximizes the array gain |a0^H T_k^-1 a0| and lands on one of
two closed-form circle points.

Two method variants share the machinery:

* ``oparc_step`` picks the gain-optimal circle point,
* ``parc_step`` deliberately picks the rejected one (a control baseline).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .arrays import ArrayModel
from .errors import (
    DegenerateControlError,
    LevelOutOfRangeError,
    MappingPoleError,
    NegativeDiscriminantError,
)
from .linalg import quad_form, rank1_inverse_update

# A quantity claimed real may carry at most this relative imaginary residue.
REAL_RESIDUE_RTOL = 1e-9


@dataclass(frozen=True)
class XiQuartet:
    """The four quadratic forms of a0 and ak against the inverse covariance.

    xi0 and xik are real for Hermitian state; xic_tilde is then conj(xic).
    Every closed-form expression in this module is a function of these four
    numbers plus the desired level.
    """

    xi0: float
    xik: float
    xic: complex
    xic_tilde: complex


@dataclass(frozen=True)
class CircleR2:
    """Circle in the real/imaginary plane of a complex parameter."""

    center: tuple[float, float]
    radius: float

    @property
    def center_complex(self) -> complex:
        return complex(self.center[0], self.center[1])

    def point(self, phi: float) -> complex:
        """Circle point at angle phi off the positive real axis."""
        return self.center_complex + self.radius * complex(math.cos(phi), math.sin(phi))

    def points(self, count: int) -> np.ndarray:
        """count evenly spaced circle points, starting at phi = 0."""
        phi = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
        return self.center_complex + self.radius * np.exp(1j * phi)


@dataclass(frozen=True)
class GammaSelection:
    """Candidate pair on the gamma circle and the gain-optimal choice.

    gamma_a / gamma_b are the near / far intersections of the circle with the
    line through the origin and the center; zeta encodes which side of the
    center the equal-gain point d lies on, and decides the winner.
    """

    circle: CircleR2
    gamma_a: complex
    gamma_b: complex
    zeta: float
    d_point: complex
    chi: float
    gamma_star: complex


@dataclass(frozen=True)
class BetaSelection:
    """Real-axis intersections of the beta circle and the optimal choice."""

    circle: CircleR2
    beta_l: float
    beta_r: float
    beta_star: float


@dataclass(frozen=True)
class VcmState:
    """Virtual covariance bookkeeping after step_count control steps.

    Both the matrix and its inverse are maintained (the inverse through
    rank-1 updates, the matrix additively) together with the ledger of
    assigned interferences (direction, power ratio).
    """

    t_inv: np.ndarray
    t: np.ndarray
    interferences: tuple[tuple[float, float], ...]
    step_count: int

    @classmethod
    def initial(cls, n: int) -> "VcmState":
        return cls(t_inv=np.eye(n, dtype=complex), t=np.eye(n, dtype=complex),
                   interferences=(), step_count=0)

    @property
    def n(self) -> int:
        return self.t.shape[0]


@dataclass(frozen=True)
class ControlStepResult:
    """Everything one control step produced, for records and displays."""

    direction: float
    desired_level: float
    gamma: GammaSelection
    beta: BetaSelection
    weight_after: np.ndarray
    achieved_level: float
    array_gain: float


def _require_real(value: complex, what: str) -> float:
    """Strip floating-point dust off a provably real quantity."""
    residue = abs(value.imag)
    if residue > REAL_RESIDUE_RTOL * max(abs(value), 1e-300):
        raise ArithmeticError(
            f"{what} should be real but has imaginary residue {value.imag:.3e} "
            f"(magnitude {abs(value):.3e})"
        )
    return float(value.real)


def compute_xi(state: VcmState, a0: np.ndarray, ak: np.ndarray) -> XiQuartet:
    """Evaluate the four quadratic forms against the current inverse VCM."""
    t_inv = state.t_inv
    xi0 = quad_form(t_inv, a0, a0)
    xik = quad_form(t_inv, ak, ak)
    xic = quad_form(t_inv, ak, a0)
    xic_tilde = quad_form(t_inv, a0, ak)
    return XiQuartet(
        xi0=_require_real(xi0, "xi0"),
        xik=_require_real(xik, "xik"),
        xic=xic,
        xic_tilde=xic_tilde,
    )


def constraint_circle(b1: np.ndarray, b2: np.ndarray, a0: np.ndarray,
                       ak: np.ndarray, rho: float) -> CircleR2:
    """Locus of coefficients c with w = b1 + c*b2 meeting the level constraint.

    The constraint |w^H ak|^2 = rho |w^H a0|^2 reduces to a quadratic in c
    whose Hermitian 2x2 form is built from [b1 b2]; a nonzero (2,2) entry
    makes the locus a circle.
    """
    basis = np.column_stack([b1, b2])
    mid = np.outer(ak, ak.conj()) - rho * np.outer(a0, a0.conj())
    h = basis.conj().T @ mid @ basis
    h11 = h[0, 0].real
    h22 = h[1, 1].real
    h12 = h[0, 1]
    h_max = float(np.max(np.abs(h)))
    if abs(h22) <= 1e-12 * h_max:
        raise DegenerateControlError(
            "the solution locus degenerates to a line (vanishing quadratic term); "
            "this only happens when the requested level exceeds the beam-axis level"
        )
    neg_det = abs(h12) ** 2 - h11 * h22
    if neg_det < 0.0:
        raise NegativeDiscriminantError(
            f"no real solution circle exists (discriminant {neg_det:.3e} < 0)"
        )
    center = (-h12.real / h22, h12.imag / h22)
    radius = math.sqrt(neg_det) / abs(h22)
    return CircleR2(center=center, radius=radius)


def gamma_circle(w_prev: np.ndarray, v_k: np.ndarray, a0: np.ndarray,
                 ak: np.ndarray, rho: float) -> CircleR2:
    """Circle of all gamma with w = w_prev + gamma*v_k achieving level rho."""
    return constraint_circle(w_prev, v_k, a0, ak, rho)


def _stable_quadratic_roots(a: float, b: float, c: float) -> tuple[float, float]:
    """Real roots of a s^2 + b s + c = 0, ordered by |s|, computed stably."""
    disc = b * b - 4.0 * a * c
    if disc < 0.0:
        raise NegativeDiscriminantError(
            f"constraint quadratic has no real roots (discriminant {disc:.3e})"
        )
    q = -(b + math.copysign(math.sqrt(disc), b)) / 2.0
    if q == 0.0:
        return 0.0, 0.0
    s1, s2 = c / q, q / a
    return (s1, s2) if abs(s1) <= abs(s2) else (s2, s1)


def _polish_root(s: float, amp_k: complex, dir_k: complex, amp_0: complex,
                 dir_0: complex, rho: float) -> float:
    """Newton iterations on |amp_k + s dir_k|^2 - rho |amp_0 + s dir_0|^2.

    The unexpanded complex form evaluates the residual far below the rounding
    floor of the expanded quadratic coefficients, so a couple of steps pin
    the constraint to near machine precision even for almost-tangent
    geometry (tiny circles far from the origin).
    """
    for _ in range(3):
        rk = amp_k + s * dir_k
        r0 = amp_0 + s * dir_0
        residual = abs(rk) ** 2 - rho * abs(r0) ** 2
        slope = 2.0 * ((rk.conjugate() * dir_k).real - rho * (r0.conjugate() * dir_0).real)
        if slope == 0.0:
            break
        step = residual / slope
        s -= step
        if abs(step) <= 1e-16 * max(1.0, abs(s)):
            break
    return s


def ray_candidates(w_prev: np.ndarray, update_dir: np.ndarray, a0: np.ndarray,
                   ak: np.ndarray, rho: float, ray: complex) -> tuple[complex, complex]:
    """Intersections of the solution circle with the ray through the origin.

    Solves |w^H ak|^2 = rho |w^H a0|^2 for w = w_prev + s*ray*update_dir with
    real s, directly against the realized vectors.  This pins the achieved
    level to machine precision where the circle-radius route loses digits to
    cancellation; the near root comes first.
    """
    u = ray / abs(ray)
    amp_k = complex(w_prev.conj() @ ak)
    amp_0 = complex(w_prev.conj() @ a0)
    dir_k = complex(np.conj(u) * (update_dir.conj() @ ak))
    dir_0 = complex(np.conj(u) * (update_dir.conj() @ a0))
    a_coef = abs(dir_k) ** 2 - rho * abs(dir_0) ** 2
    b_coef = 2.0 * (np.conj(amp_k) * dir_k - rho * np.conj(amp_0) * dir_0).real
    c_coef = abs(amp_k) ** 2 - rho * abs(amp_0) ** 2
    scale = max(abs(a_coef), abs(b_coef), abs(c_coef))
    if abs(a_coef) <= 1e-12 * max(scale, 1e-300):
        raise DegenerateControlError(
            "constraint quadratic degenerates along the update ray"
        )
    s_near, s_far = _stable_quadratic_roots(a_coef, b_coef, c_coef)
    s_near = _polish_root(s_near, amp_k, dir_k, amp_0, dir_0, rho)
    s_far = _polish_root(s_far, amp_k, dir_k, amp_0, dir_0, rho)
    if abs(s_near) > abs(s_far):
        s_near, s_far = s_far, s_near
    return s_near * u, s_far * u


def select_gamma(quartet: XiQuartet, circle: CircleR2, rho: float) -> GammaSelection:
    """Pick the gain-maximizing point among the circle's two axis candidates.

    The candidates sit where the line through the origin and the circle
    center crosses the circle; the array gain is proportional to the distance
    from the equal-gain point d = -xi0/conj(xic), which is collinear with
    both, so the winner follows from sign comparisons alone.  The tie case
    (zeta == 0, every circle point has equal gain) returns gamma_a.
    """
    center = circle.center_complex
    norm_c = abs(center)
    if norm_c == 0.0:
        raise DegenerateControlError("gamma circle centered at the origin")
    d_point = -quartet.xi0 / np.conj(quartet.xic)
    chi = quartet.xik - rho * quartet.xi0
    gamma_a = (1.0 - circle.radius / norm_c) * center
    gamma_b = (1.0 + circle.radius / norm_c) * center
    zeta = float(np.sign(circle.center[0]) * np.sign(d_point.real - circle.center[0]))
    gamma_star = gamma_a if zeta > 0.0 else (gamma_a if zeta == 0.0 else gamma_b)
    return GammaSelection(circle=circle, gamma_a=complex(gamma_a), gamma_b=complex(gamma_b),
                          zeta=zeta, d_point=complex(d_point), chi=chi,
                          gamma_star=complex(gamma_star))


def beta_circle(quartet: XiQuartet, rho: float) -> CircleR2:
    """Circle of all interference powers beta achieving level rho.

    The center sits on the real axis and does not depend on rho; only the
    radius scales with 1/sqrt(rho).
    """
    if rho <= 0.0:
        raise LevelOutOfRangeError(f"desired linear level must be positive, got {rho}")
    denom = abs(quartet.xic) ** 2 - quartet.xi0 * quartet.xik
    scale = max(abs(quartet.xic) ** 2, abs(quartet.xi0 * quartet.xik))
    if abs(denom) <= 1e-14 * max(scale, 1e-300):
        raise DegenerateControlError(
            "beta circle degenerates: |xic|^2 == xi0*xik to tolerance "
            "(steering vectors collinear under the current metric)"
        )
    center_x = quartet.xi0 / denom
    radius = abs(quartet.xic) / (math.sqrt(rho) * abs(denom))
    return CircleR2(center=(center_x, 0.0), radius=radius)


def select_beta(quartet: XiQuartet, circle: CircleR2, rho: float,
                pd_shortcut: bool = False) -> BetaSelection:
    """Choose the optimal interference power between the two real circle points.

    With pd_shortcut the caller asserts the previous covariance is positive
    definite, and the right intersection wins outright via its closed form;
    otherwise the general sign condition decides.
    """
    beta_l = circle.center[0] - circle.radius
    beta_r = circle.center[0] + circle.radius
    if pd_shortcut:
        denom = quartet.xi0 * quartet.xik - abs(quartet.xic) ** 2
        beta_star = (abs(quartet.xic) - math.sqrt(rho) * quartet.xi0) / (math.sqrt(rho) * denom)
    else:
        denom = abs(quartet.xic) ** 2 - quartet.xi0 * quartet.xik
        beta_star = beta_r if (-1.0 / quartet.xik) > (quartet.xi0 / denom) else beta_l
    return BetaSelection(circle=circle, beta_l=beta_l, beta_r=beta_r, beta_star=beta_star)


def gamma_to_beta(gamma: complex, quartet: XiQuartet) -> complex:
    """Map a weight-update coefficient to its interference power."""
    denom = quartet.xic + gamma * quartet.xik
    if abs(denom) <= 1e-14 * max(abs(quartet.xic), abs(gamma * quartet.xik), 1e-300):
        raise MappingPoleError(f"gamma={gamma} sits at the mapping pole")
    return -gamma / denom


def beta_to_gamma(beta: complex, quartet: XiQuartet) -> complex:
    """Map an interference power to its weight-update coefficient."""
    denom = 1.0 + beta * quartet.xik
    if abs(denom) <= 1e-14 * max(1.0, abs(beta * quartet.xik)):
        raise MappingPoleError(f"beta={beta} sits at the mapping pole")
    return -beta * quartet.xic / denom


def validate_level(rho: float) -> None:
    if not (0.0 < rho <= 1.0):
        raise LevelOutOfRangeError(
            f"desired linear level must lie in (0, 1], got {rho}; the optimal "
            "selection rules assume levels at or below the beam-axis level"
        )


def _control_step(state: VcmState, w_prev: np.ndarray, model: ArrayModel,
                  theta0: float, theta_k: float, rho: float,
                  take_optimal: bool) -> tuple[VcmState, ControlStepResult]:
    validate_level(rho)
    if theta_k == theta0:
        raise LevelOutOfRangeError(
            "cannot control the beam axis against itself (the normalized level "
            "there is identically 1)"
        )
    a0 = model.steering_vector(theta0)
    ak = model.steering_vector(theta_k)
    v_k = state.t_inv @ ak
    quartet = compute_xi(state, a0, ak)

    circle = gamma_circle(w_prev, v_k, a0, ak, rho)
    selection = select_gamma(quartet, circle, rho)
    # re-derive the candidates against the realized vectors: same points, but
    # the achieved level stays exact even for very deep level requests
    near, far = ray_candidates(w_prev, v_k, a0, ak, rho, circle.center_complex)
    optimal_is_near = selection.gamma_star == selection.gamma_a
    gamma = (near if optimal_is_near else far) if take_optimal else \
        (far if optimal_is_near else near)
    selection = GammaSelection(circle=circle, gamma_a=near, gamma_b=far,
                               zeta=selection.zeta, d_point=selection.d_point,
                               chi=selection.chi, gamma_star=gamma)

    beta_c = beta_circle(quartet, rho)
    beta = _require_real(gamma_to_beta(gamma, quartet), "beta for the chosen gamma")
    beta_sel = BetaSelection(circle=beta_c, beta_l=beta_c.center[0] - beta_c.radius,
                             beta_r=beta_c.center[0] + beta_c.radius, beta_star=beta)

    weight = w_prev + gamma * v_k
    inv_scale = _require_real(gamma / quartet.xic, "gamma_star / xic")
    t_inv = rank1_inverse_update(state.t_inv, v_k, inv_scale)
    t = state.t + beta * np.outer(ak, ak.conj())
    new_state = VcmState(t_inv=t_inv, t=t,
                         interferences=state.interferences + ((theta_k, beta),),
                         step_count=state.step_count + 1)

    achieved = abs(weight.conj() @ ak) ** 2 / abs(weight.conj() @ a0) ** 2
    gain = abs(quad_form(t_inv, a0, a0))
    result = ControlStepResult(direction=theta_k, desired_level=rho, gamma=selection,
                               beta=beta_sel, weight_after=weight,
                               achieved_level=float(achieved), array_gain=float(gain))
    return new_state, result


def oparc_step(state: VcmState, w_prev: np.ndarray, model: ArrayModel,
               theta0: float, theta_k: float, rho: float) -> tuple[VcmState, ControlStepResult]:
    """One gain-optimal control step: returns the advanced state and record."""
    return _control_step(state, w_prev, model, theta0, theta_k, rho, take_optimal=True)


def parc_step(state: VcmState, w_prev: np.ndarray, model: ArrayModel,
              theta0: float, theta_k: float, rho: float) -> tuple[VcmState, ControlStepResult]:
    """One control step that deliberately takes the gain-inferior candidate."""
    return _control_step(state, w_prev, model, theta0, theta_k, rho, take_optimal=False)


def oparc_step_variant2(state: VcmState, model: ArrayModel, theta0: float,
                        theta_k: float, rho: float) -> VcmState:
    """Covariance-only form of the optimal step: no intermediate weights.

    Advances T (additively) and its inverse; the terminal weight is recovered
    afterwards with ``terminal_weight``.
    """
    validate_level(rho)
    if theta_k == theta0:
        raise LevelOutOfRangeError("cannot control the beam axis against itself")
    a0 = model.steering_vector(theta0)
    ak = model.steering_vector(theta_k)
    quartet = compute_xi(state, a0, ak)
    circle = beta_circle(quartet, rho)
    beta = select_beta(quartet, circle, rho).beta_star
    t = state.t + beta * np.outer(ak, ak.conj())
    v_k = state.t_inv @ ak
    denom = 1.0 + beta * quartet.xik
    if abs(denom) <= 1e-14 * max(1.0, abs(beta * quartet.xik)):
        raise MappingPoleError(f"beta={beta} sits at the inverse-update pole")
    t_inv = rank1_inverse_update(state.t_inv, v_k, -beta / denom)
    return VcmState(t_inv=t_inv, t=t,
                    interferences=state.interferences + ((theta_k, beta),),
                    step_count=state.step_count + 1)


def terminal_weight(state: VcmState, model: ArrayModel, theta0: float) -> np.ndarray:
    """Optimal weight for the accumulated covariance: solve T w = a(theta0)."""
    return np.linalg.solve(state.t, model.steering_vector(theta0))


def reconstruct_vcm(state: VcmState, model: ArrayModel) -> np.ndarray:
    """Rebuild T from the interference ledger: I + sum beta a a^H."""
    t = np.eye(state.n, dtype=complex)
    for theta, beta in state.interferences:
        a = model.steering_vector(theta)
        t += beta * np.outer(a, a.conj())
    return t


def predict_beta_sign(state: VcmState, w_prev: np.ndarray, ak: np.ndarray,
                      a0: np.ndarray, rho: float) -> int:
    """Sign of the upcoming interference power, from levels alone.

    +1 when the request lowers (or holds) the current level at the target
    direction, -1 when it raises it.  Valid in the positive definite regime.
    """
    current = abs(w_prev.conj() @ ak) ** 2 / abs(w_prev.conj() @ a0) ** 2
    return 1 if rho <= current else -1
