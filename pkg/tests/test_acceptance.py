"""Acceptance suite: every release criterion as one named, printing test.

Reference values are quoted to 4 decimals, so complex parameters carry an
absolute tolerance of 2e-3 per component, dB quantities 0.05 dB, and RMS
deviations 2% relative.  Run with -s to see one PASS line per criterion.
"""

import math

import numpy as np
import pytest

from beamctl import control, linalg, metrics, oracle
from beamctl.a2rc import check_corollary1
from beamctl.arrays import load_array_config
from beamctl.experiments import load_experiment_config, run_experiment, run_sweep, write_exports, write_sweep

from conftest import (
    THETA0_DEG,
    random_array_model,
    run_chain,
)

CPLX_TOL = 2e-3
DB_TOL = 0.05
J_RTOL = 0.02

TH0 = math.radians(THETA0_DEG)


@pytest.fixture(scope="module")
def exp1_record():
    return run_experiment(load_experiment_config("experiment1"))


@pytest.fixture(scope="module")
def exp2_record():
    return run_experiment(load_experiment_config("experiment2"))


def _step(record, method, index):
    return record.steps[method][index]


def _c(value_pair) -> complex:
    return complex(value_pair[0], value_pair[1])


def test_criterion_1_first_step_parameters(exp1_record):
    oparc = _step(exp1_record, "oparc", 0)
    parc = _step(exp1_record, "parc", 0)
    a2rc = _step(exp1_record, "a2rc", 0)

    circle = oparc["circles"]["gamma"]
    assert circle["center"][0] == pytest.approx(-0.1704, abs=CPLX_TOL)
    assert circle["center"][1] == pytest.approx(-0.0315, abs=CPLX_TOL)

    cand = oparc["gamma_candidates"]
    assert _c(cand["a"]) == pytest.approx(-0.1559 - 0.0288j, abs=CPLX_TOL)
    assert _c(cand["b"]) == pytest.approx(-0.1849 - 0.0342j, abs=CPLX_TOL)
    assert cand["zeta"] == 1.0
    assert _c(oparc["gamma"]) == pytest.approx(-0.1559 - 0.0288j, abs=CPLX_TOL)

    # the collinear equal-gain point, recomputed from the fresh state
    table1 = load_array_config("table1")
    state = control.VcmState.initial(table1.n)
    a0 = table1.steering_vector(TH0)
    a1 = table1.steering_vector(math.radians(-45.0))
    quartet = control.compute_xi(state, a0, a1)
    sel = control.select_gamma(quartet, control.gamma_circle(a0, a1, a0, a1, 1e-4), 1e-4)
    assert sel.d_point == pytest.approx(-8.5231 - 1.5766j, abs=CPLX_TOL)

    beta_circle = oparc["circles"]["beta"]
    assert beta_circle["center"][0] == pytest.approx(-0.1488, abs=CPLX_TOL)
    assert beta_circle["center"][1] == 0.0
    assert beta_circle["radius"] == pytest.approx(1.7171, abs=CPLX_TOL)
    assert oparc["beta"] == pytest.approx(1.5683, abs=CPLX_TOL)
    assert parc["beta"] == pytest.approx(-1.8659, abs=CPLX_TOL)

    assert abs(_c(a2rc["mu"]) - _c(oparc["gamma"])) <= 1e-9
    print("criterion 1 PASS: first-step circle, candidates, powers and mu1 == gamma1*")


def test_criterion_2_second_step_parameters(exp1_record):
    oparc = _step(exp1_record, "oparc", 1)
    parc = _step(exp1_record, "parc", 1)
    a2rc = _step(exp1_record, "a2rc", 1)
    a2rc_first = _step(exp1_record, "a2rc", 0)

    assert _c(oparc["gamma"]) == pytest.approx(-0.0685 - 0.0399j, abs=CPLX_TOL)
    assert oparc["beta"] == pytest.approx(0.2504, abs=CPLX_TOL)
    assert _c(parc["gamma"]) == pytest.approx(-0.1148 - 0.0695j, abs=CPLX_TOL)
    assert parc["beta"] == pytest.approx(-0.4277, abs=CPLX_TOL)
    assert _c(a2rc["mu"]) == pytest.approx(-0.0674 - 0.0393j, abs=CPLX_TOL)
    assert _c(a2rc["implicit_inrs"][1]) == pytest.approx(0.2465 + 0.0001j, abs=CPLX_TOL)
    delta_21 = _c(a2rc["implicit_inrs"][0]) - _c(a2rc_first["implicit_inrs"][0])
    assert delta_21 == pytest.approx(-0.4120 + 2.5879j, abs=CPLX_TOL)
    print("criterion 2 PASS: second-step parameters for all three methods")


def test_criterion_3_sidelobe_table(exp1_record):
    expected = {
        "a2rc": (5.05, 4.72e-3, 10.0482, 10.0026),
        "parc": (0.86, 7.84e-3, 10.0331, 9.9653),
        "oparc": (0.51, 4.69e-3, 10.0482, 10.0074),
    }
    for method, (d_ref, j_ref, g1_ref, g2_ref) in expected.items():
        first, second = exp1_record.steps[method]
        assert second["metrics"]["d_db"] == pytest.approx(d_ref, abs=DB_TOL), method
        assert second["metrics"]["j_rms"] == pytest.approx(j_ref, rel=J_RTOL), method
        assert first["gain_db"] == pytest.approx(g1_ref, abs=DB_TOL), method
        assert second["gain_db"] == pytest.approx(g2_ref, abs=DB_TOL), method
    print("criterion 3 PASS: sidelobe-study D/J/G table reproduced")


def test_criterion_4_mainlobe_step_parameters(exp2_record):
    oparc = _step(exp2_record, "oparc", 1)
    parc = _step(exp2_record, "parc", 1)
    a2rc = _step(exp2_record, "a2rc", 1)
    a2rc_first = _step(exp2_record, "a2rc", 0)

    assert _c(a2rc["mu"]) == pytest.approx(-0.5931 + 0.8040j, abs=CPLX_TOL)
    assert _c(a2rc["implicit_inrs"][1]) == pytest.approx(-0.3923 - 0.4011j, abs=CPLX_TOL)
    delta_21 = _c(a2rc["implicit_inrs"][0]) - _c(a2rc_first["implicit_inrs"][0])
    assert delta_21 == pytest.approx(-1.8001 + 0.0334j, abs=CPLX_TOL)
    assert _c(parc["gamma"]) == pytest.approx(-0.7108 + 0.7171j, abs=CPLX_TOL)
    assert parc["beta"] == pytest.approx(-0.8522, abs=CPLX_TOL)
    assert _c(oparc["gamma"]) == pytest.approx(0.8352 - 0.8438j, abs=CPLX_TOL)
    assert _c(oparc["gamma"]) == pytest.approx(_c(oparc["gamma_candidates"]["b"]), abs=1e-12)
    assert oparc["beta"] == pytest.approx(-0.0577, abs=CPLX_TOL)
    print("criterion 4 PASS: mainlobe-study step parameters for all three methods")


def test_criterion_5_mainlobe_table(exp2_record):
    expected = {
        "a2rc": (31.6001, 1.0685, 2.5060),
        "parc": (10.7083, 2.5149, 0.7366),
        "oparc": (1.2595, 0.0624, 13.1370),
    }
    for method, (d_ref, j_ref, g2_ref) in expected.items():
        second = _step(exp2_record, method, 1)
        assert second["metrics"]["d_db"] == pytest.approx(d_ref, abs=DB_TOL), method
        assert second["metrics"]["j_rms"] == pytest.approx(j_ref, rel=J_RTOL), method
        assert second["gain_db"] == pytest.approx(g2_ref, abs=DB_TOL), method
    print("criterion 5 PASS: mainlobe-study D/J/G table reproduced")


def test_criterion_6_sweep_dominance():
    for name in ("experiment1", "experiment2"):
        rows = run_sweep(load_experiment_config(name))
        by_level: dict[float, dict[str, dict]] = {}
        for row in rows:
            by_level.setdefault(row["rho_db"], {})[row["method"]] = row
        assert len(by_level) in (61, 41)
        for level, methods in by_level.items():
            for other in ("a2rc", "parc"):
                assert methods["oparc"]["d_db"] <= methods[other]["d_db"] + 1e-12, \
                    (name, level, other)
                assert methods["oparc"]["j_rms"] <= methods[other]["j_rms"] + 1e-12, \
                    (name, level, other)
    print("criterion 6 PASS: optimal engine dominates D and J over both sweeps")


def test_criterion_7_property_suite():
    rng = np.random.default_rng(20260809)
    sessions = 500
    corollary_checks = 0

    for s in range(sessions):
        model = random_array_model(rng)
        theta0_deg = float(rng.uniform(-60.0, 60.0))
        theta0 = math.radians(theta0_deg)
        n_steps = int(rng.integers(1, 6))
        used = [theta0_deg]
        steps = []
        while len(steps) < n_steps:
            theta = float(rng.uniform(-80.0, 80.0))
            if min(abs(theta - u) for u in used) < 8.0:
                continue
            used.append(theta)
            steps.append((theta, float(rng.uniform(-60.0, -3.0))))

        chain = run_chain(model, theta0_deg, steps)
        a0 = model.steering_vector(theta0)

        for k, res in enumerate(chain.results):
            rho = chain.levels[k]
            prev_state, state = chain.states[k], chain.states[k + 1]
            ak = model.steering_vector(chain.directions[k])
            quartet = control.compute_xi(prev_state, a0, ak)

            # exact control
            assert abs(res.achieved_level - rho) <= 1e-9 * rho

            # hermitian + positive definite covariance chain
            assert linalg.hermitian_defect(state.t) <= 1e-10 * np.max(np.abs(state.t))
            assert linalg.hermitian_defect(state.t_inv) <= 1e-10 * np.max(np.abs(state.t_inv))
            assert linalg.is_positive_definite(state.t)

            # incremental inverse vs direct factorization
            assert np.max(np.abs(linalg.invert(state.t) - state.t_inv)) <= 1e-8

            # closed-form selection beats every sampled circle point
            scan = oracle.scan_gamma_for_gain(res.gamma.circle, quartet)
            star = float(oracle.gamma_gain(res.gamma.gamma_star, quartet))
            assert star >= scan.best_objective - 1e-9 * star

            # the two gain objectives agree on the best interference power
            prev_scan, upd_scan = oracle.scan_beta_for_prop7(
                res.beta.circle, prev_state, chain.weights[k], a0, ak)
            cell = 2 * math.pi * res.beta.circle.radius / prev_scan.samples
            assert abs(prev_scan.best_param - upd_scan.best_param) <= cell
            assert abs(prev_scan.best_param - res.beta.beta_star) <= cell

            # bilinear mapping round trip
            gamma = res.gamma.gamma_star
            back = control.beta_to_gamma(control.gamma_to_beta(gamma, quartet), quartet)
            assert abs(back - gamma) <= 1e-10 * max(1.0, abs(gamma))

            # weight increments stay in the controlled-direction span
            delta = chain.weights[k + 1] - chain.weights[k]
            dirs = [chain.directions[i] for i in range(k, -1, -1)]
            check = oracle.span_decomposition_check(delta, dirs, model)
            assert check.residual <= 1e-8 * np.linalg.norm(delta)

            # sign prediction from levels alone
            sign = control.predict_beta_sign(prev_state, chain.weights[k], ak, a0, rho)
            assert sign == (1 if res.beta.beta_star >= -1e-12 else -1)

        if corollary_checks < 100:
            rho1 = 10.0 ** (rng.uniform(-60.0, -3.0) / 10.0)
            report = check_corollary1(model, theta0, math.radians(steps[0][0]), rho1)
            assert report.matches
            corollary_checks += 1

    assert corollary_checks == 100
    print(f"criterion 7 PASS: property suite over {sessions} randomized sessions")


def test_criterion_8_determinism(tmp_path):
    for name in ("experiment1", "experiment2"):
        config = load_experiment_config(name)
        dirs = (tmp_path / f"{name}_a", tmp_path / f"{name}_b")
        for out in dirs:
            write_exports(run_experiment(config), out)
            write_sweep(run_sweep(config), out)
        files_a = sorted(p.name for p in dirs[0].iterdir())
        files_b = sorted(p.name for p in dirs[1].iterdir())
        assert files_a == files_b
        for fname in files_a:
            assert (dirs[0] / fname).read_bytes() == (dirs[1] / fname).read_bytes(), fname
    print("criterion 8 PASS: byte-identical exports across repeated runs")
