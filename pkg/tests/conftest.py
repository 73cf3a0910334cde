import math
from dataclasses import dataclass, field

import numpy as np
import pytest

from beamctl import control
from beamctl.a2rc import A2rcState, a2rc_step
from beamctl.arrays import ArrayModel, load_array_config

# Reference prescription used by the bundled experiments: beam axis 20 deg,
# first control point (-45 deg, -40 dB), second either (-5 deg, -30 dB) for
# the sidelobe study or (23 deg, 0 dB) for the mainlobe study.
THETA0_DEG = 20.0
EXP1_STEPS = ((-45.0, -40.0), (-5.0, -30.0))
EXP2_STEPS = ((-45.0, -40.0), (23.0, 0.0))


@dataclass
class Chain:
    """Raw engine chain with every intermediate state kept around."""

    model: ArrayModel
    theta0: float
    states: list[control.VcmState] = field(default_factory=list)
    weights: list[np.ndarray] = field(default_factory=list)
    results: list[control.ControlStepResult] = field(default_factory=list)
    directions: list[float] = field(default_factory=list)
    levels: list[float] = field(default_factory=list)


def run_chain(model: ArrayModel, theta0_deg: float, steps, optimal: bool = True) -> Chain:
    theta0 = math.radians(theta0_deg)
    chain = Chain(model=model, theta0=theta0)
    chain.states.append(control.VcmState.initial(model.n))
    chain.weights.append(model.steering_vector(theta0))
    stepper = control.oparc_step if optimal else control.parc_step
    for theta_deg, rho_db in steps:
        theta = math.radians(theta_deg)
        rho = 10.0 ** (rho_db / 10.0)
        state, result = stepper(chain.states[-1], chain.weights[-1], model, theta0, theta, rho)
        chain.states.append(state)
        chain.weights.append(result.weight_after)
        chain.results.append(result)
        chain.directions.append(theta)
        chain.levels.append(rho)
    return chain


def run_a2rc_chain(model: ArrayModel, theta0_deg: float, steps) -> list[A2rcState]:
    theta0 = math.radians(theta0_deg)
    states = [A2rcState.initial(model, theta0)]
    for theta_deg, rho_db in steps:
        states.append(a2rc_step(states[-1], model, theta0,
                                math.radians(theta_deg), 10.0 ** (rho_db / 10.0)))
    return states


@pytest.fixture(scope="session")
def table1() -> ArrayModel:
    return load_array_config("table1")


@pytest.fixture(scope="session")
def exp1_oparc(table1) -> Chain:
    return run_chain(table1, THETA0_DEG, EXP1_STEPS, optimal=True)


@pytest.fixture(scope="session")
def exp1_parc(table1) -> Chain:
    return run_chain(table1, THETA0_DEG, EXP1_STEPS, optimal=False)


@pytest.fixture(scope="session")
def exp2_oparc(table1) -> Chain:
    return run_chain(table1, THETA0_DEG, EXP2_STEPS, optimal=True)


@pytest.fixture(scope="session")
def exp2_parc(table1) -> Chain:
    return run_chain(table1, THETA0_DEG, EXP2_STEPS, optimal=False)


@pytest.fixture(scope="session")
def exp1_a2rc(table1) -> list[A2rcState]:
    return run_a2rc_chain(table1, THETA0_DEG, EXP1_STEPS)


@pytest.fixture(scope="session")
def exp2_a2rc(table1) -> list[A2rcState]:
    return run_a2rc_chain(table1, THETA0_DEG, EXP2_STEPS)


def random_hermitian_pd(rng: np.random.Generator, n: int, spread: float = 1.0) -> np.ndarray:
    """Well-conditioned random Hermitian positive definite matrix."""
    q = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    eigvals = 0.5 + spread * rng.random(n)
    q, _ = np.linalg.qr(q)
    return (q * eigvals) @ q.conj().T


def random_array_model(rng: np.random.Generator) -> ArrayModel:
    """Random nonuniform array with cosine element patterns."""
    from beamctl.arrays import ElementSpec

    n = int(rng.integers(6, 15))
    spacings = 0.35 + 0.45 * rng.random(n - 1)
    x = np.concatenate([[0.0], np.cumsum(spacings)])
    elems = tuple(
        ElementSpec(x_m=float(xi), amp=float(0.85 + 0.3 * rng.random()),
                    scale=float(rng.random()))
        for xi in x
    )
    return ArrayModel(elements=elems, omega=6e8 * math.pi)
