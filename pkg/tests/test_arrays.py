import math

import numpy as np
import pytest

from beamctl.arrays import ArrayModel, ElementSpec, load_array_config, make_ula
from beamctl.errors import ConfigError

from conftest import random_array_model

OMEGA = 6e8 * math.pi  # wavelength 1 m at wave speed 3e8


class TestSteeringVector:
    def test_zero_position_has_zero_phase(self, table1):
        theta = math.radians(33.0)
        a = table1.steering_vector(theta)
        # element 1 sits at the phase reference x = 0
        assert a[0].imag == 0.0
        assert a[0].real == pytest.approx(table1.element_gains(theta)[0])

    def test_element_sample_hand_evaluated(self):
        model = ArrayModel(elements=(ElementSpec(0.0), ElementSpec(0.45, amp=0.98, scale=0.85)),
                           omega=OMEGA)
        a = model.steering_vector(math.radians(30.0))
        expected = 0.98 * math.cos(0.85 * math.pi / 6) * np.exp(1j * 0.45 * math.pi)
        assert a[1] == pytest.approx(expected, abs=1e-12)

    def test_quiescent_weight_is_steering_vector(self, table1):
        # the quiescent beamformer for the bundled experiments
        a0 = table1.steering_vector(math.radians(20.0))
        assert a0.shape == (11,)
        assert np.linalg.norm(a0) ** 2 == pytest.approx(np.sum(table1.element_gains(math.radians(20.0)) ** 2))

    def test_norm_equals_gain_energy(self):
        rng = np.random.default_rng(3)
        model = random_array_model(rng)
        for theta in np.radians(np.linspace(-80, 80, 17)):
            a = model.steering_vector(theta)
            gains = model.element_gains(theta)
            assert np.linalg.norm(a) ** 2 == pytest.approx(np.sum(gains**2))

    def test_entry_derivative_matches_finite_difference(self, table1):
        # d/dtheta [amp cos(s theta) e^{j k x sin theta}]
        kappa = table1.omega * np.array([e.x_m for e in table1.elements]) / table1.wave_speed
        amp = np.array([e.amp for e in table1.elements])
        scl = np.array([e.scale for e in table1.elements])
        delta = 1e-8
        for theta in np.radians([-60.0, -20.0, 5.0, 47.0]):
            fd = (table1.steering_vector(theta + delta) - table1.steering_vector(theta)) / delta
            phase = np.exp(1j * kappa * math.sin(theta))
            analytic = (-amp * scl * np.sin(scl * theta)
                        + amp * np.cos(scl * theta) * 1j * kappa * math.cos(theta)) * phase
            assert np.max(np.abs(fd - analytic) / np.maximum(np.abs(analytic), 1.0)) < 1e-5

    def test_steering_matrix_matches_single(self, table1):
        thetas = np.radians([-45.0, -5.0, 20.0, 23.0])
        stacked = table1.steering_matrix(thetas)
        for row, theta in zip(stacked, thetas):
            assert np.allclose(row, table1.steering_vector(theta))


class TestMakeUla:
    def test_broadside_isotropic(self):
        model = make_ula(2, 0.5, OMEGA)
        assert np.allclose(model.steering_vector(0.0), [1.0, 1.0])

    def test_unit_modulus_entries(self):
        model = make_ula(4, 0.5, OMEGA)
        for theta in np.radians(np.linspace(-90, 90, 19)):
            assert np.linalg.norm(model.steering_vector(theta)) ** 2 == pytest.approx(4.0)

    def test_endfire_phase(self):
        model = make_ula(8, 0.5, OMEGA)
        a = model.steering_vector(math.radians(90.0))
        n = np.arange(8)
        assert np.allclose(a, np.exp(1j * math.pi * n), atol=1e-12)

    def test_mirrored_angle_conjugates(self):
        model = make_ula(6, 0.5, OMEGA)
        for theta in np.radians([10.0, 35.0, 71.0]):
            assert np.allclose(model.steering_vector(-theta),
                               np.conj(model.steering_vector(theta)))

    def test_invalid_args(self):
        with pytest.raises(ConfigError):
            make_ula(1, 0.5, OMEGA)
        with pytest.raises(ConfigError):
            make_ula(4, -0.5, OMEGA)


class TestLoadArrayConfig:
    def test_bundled_table1(self, table1):
        assert table1.n == 11
        assert table1.elements[0].x_m == 0.0
        assert table1.elements[-1].x_m == 5.0
        assert table1.wavelength == pytest.approx(1.0)
        assert table1.elements[3].amp == pytest.approx(1.10)
        assert table1.elements[3].scale == pytest.approx(0.70)

    def test_single_element_rejected(self):
        with pytest.raises(ConfigError):
            load_array_config({"omega_rad_s": OMEGA, "elements": [{"x_m": 0.0}]})

    def test_pattern_defaults_isotropic(self):
        model = load_array_config({
            "omega_rad_s": OMEGA,
            "elements": [{"x_m": 0.0}, {"x_m": 0.5}],
        })
        for theta in np.radians([-50.0, 0.0, 50.0]):
            assert np.allclose(np.abs(model.steering_vector(theta)), 1.0)

    def test_degree_pattern_unit(self):
        model = load_array_config({
            "omega_rad_s": OMEGA,
            "pattern_angle_unit": "degrees",
            "elements": [{"x_m": 0.0, "amp": 1.0, "scale": 0.02}, {"x_m": 0.5}],
        })
        gains = model.element_gains(math.radians(30.0))
        assert gains[0] == pytest.approx(math.cos(0.02 * 30.0))

    def test_bad_documents_rejected(self, tmp_path):
        with pytest.raises(ConfigError):
            load_array_config({"elements": [{"x_m": 0.0}, {"x_m": 0.5}]})
        with pytest.raises(ConfigError):
            load_array_config({"omega_rad_s": OMEGA, "elements": []})
        with pytest.raises(ConfigError):
            load_array_config({"omega_rad_s": OMEGA, "pattern_angle_unit": "grads",
                               "elements": [{"x_m": 0.0}, {"x_m": 0.5}]})
        with pytest.raises(ConfigError):
            load_array_config({"omega_rad_s": float("nan"),
                               "elements": [{"x_m": 0.0}, {"x_m": 0.5}]})
        with pytest.raises(ConfigError):
            load_array_config(tmp_path / "missing.json")

    def test_file_round_trip(self, tmp_path):
        import json

        doc = {"omega_rad_s": OMEGA, "elements": [{"x_m": 0.0}, {"x_m": 0.4, "amp": 1.2}]}
        path = tmp_path / "arr.json"
        path.write_text(json.dumps(doc))
        model = load_array_config(path)
        assert model.n == 2
        assert model.elements[1].amp == pytest.approx(1.2)
