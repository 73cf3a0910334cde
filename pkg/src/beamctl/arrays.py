"""Array geometry, element patterns and steering vectors.

Linear arrays along one axis, with per-element cosine taper patterns
g_n(theta) = amp * cos(scale * theta).  Directions are radians from broadside
internally; every user-facing surface (configs, CLI, HTTP) speaks degrees.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .errors import ConfigError

DEFAULT_WAVE_SPEED = 3e8

_BUNDLED_ARRAYS = {"table1": "table1_array.json"}


@dataclass(frozen=True)
class ElementSpec:
    """One radiator: axial position plus its cosine pattern parameters."""

    x_m: float
    amp: float = 1.0
    scale: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x_m) and math.isfinite(self.amp) and math.isfinite(self.scale)):
            raise ConfigError(f"non-finite element parameters: {self}")
        if self.amp <= 0.0:
            raise ConfigError(f"element pattern amplitude must be positive, got {self.amp}")


@dataclass(frozen=True)
class ArrayModel:
    """Immutable array description; produces steering vectors.

    pattern_degrees=False evaluates cos(scale * theta) with theta in radians,
    which is the calibrated convention for the bundled nonuniform array.
    Setting it to True feeds the raw degree value into the cosine instead.
    """

    elements: tuple[ElementSpec, ...]
    omega: float
    wave_speed: float = DEFAULT_WAVE_SPEED
    pattern_degrees: bool = False
    _x: np.ndarray = field(init=False, repr=False, compare=False)
    _amp: np.ndarray = field(init=False, repr=False, compare=False)
    _scale: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.elements) < 2:
            raise ConfigError(f"an array needs at least 2 elements, got {len(self.elements)}")
        if not (self.omega > 0.0 and math.isfinite(self.omega)):
            raise ConfigError(f"operating frequency must be positive, got {self.omega}")
        if not (self.wave_speed > 0.0 and math.isfinite(self.wave_speed)):
            raise ConfigError(f"wave speed must be positive, got {self.wave_speed}")
        object.__setattr__(self, "_x", np.array([e.x_m for e in self.elements]))
        object.__setattr__(self, "_amp", np.array([e.amp for e in self.elements]))
        object.__setattr__(self, "_scale", np.array([e.scale for e in self.elements]))

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def wavelength(self) -> float:
        return 2.0 * math.pi * self.wave_speed / self.omega

    def element_gains(self, theta: float) -> np.ndarray:
        """Per-element pattern values g_n(theta)."""
        arg = self._scale * (math.degrees(theta) if self.pattern_degrees else theta)
        return self._amp * np.cos(arg)

    def steering_vector(self, theta: float) -> np.ndarray:
        """Steering vector a(theta), phase-referenced to x = 0.

        Entry n is g_n(theta) * exp(j * omega * x_n * sin(theta) / wave_speed):
        the phase advances with x for positive angles, matching the axis
        orientation the numeric calibration in the acceptance suite pins down.
        """
        phase = self.omega * self._x * math.sin(theta) / self.wave_speed
        return self.element_gains(theta) * np.exp(1j * phase)

    def steering_matrix(self, thetas) -> np.ndarray:
        """Stack of steering vectors, one row per direction."""
        thetas = np.asarray(thetas, dtype=float)
        arg = self._scale[None, :] * (np.degrees(thetas)[:, None] if self.pattern_degrees
                                      else thetas[:, None])
        gains = self._amp[None, :] * np.cos(arg)
        phase = self.omega / self.wave_speed * np.sin(thetas)[:, None] * self._x[None, :]
        return gains * np.exp(1j * phase)


def make_ula(n: int, spacing: float, omega: float,
             wave_speed: float = DEFAULT_WAVE_SPEED) -> ArrayModel:
    """Isotropic uniform linear array: x_n = (n-1)*spacing, g_n = 1."""
    if n < 2:
        raise ConfigError(f"a ULA needs at least 2 elements, got {n}")
    if spacing <= 0.0:
        raise ConfigError(f"element spacing must be positive, got {spacing}")
    elems = tuple(ElementSpec(x_m=i * spacing) for i in range(n))
    return ArrayModel(elements=elems, omega=omega, wave_speed=wave_speed)


def _require_number(doc: dict, key: str, default=None) -> float:
    value = doc.get(key, default)
    if value is None:
        raise ConfigError(f"array config is missing required field '{key}'")
    if not isinstance(value, (int, float)) or isinstance(value, bool) or not math.isfinite(value):
        raise ConfigError(f"array config field '{key}' must be a finite number, got {value!r}")
    return float(value)


def load_array_config(source) -> ArrayModel:
    """Build an ArrayModel from a config document.

    Accepts a mapping (the parsed document), a filesystem path to a JSON
    file, or the name of a bundled asset ("table1", the 11-element nonuniform
    array used throughout the bundled experiments).
    """
    if isinstance(source, (str, Path)):
        name = str(source)
        if name in _BUNDLED_ARRAYS:
            text = resources.files("beamctl.assets").joinpath(_BUNDLED_ARRAYS[name]).read_text()
            doc = json.loads(text)
        else:
            path = Path(source)
            if not path.exists():
                raise ConfigError(f"array config '{name}' is neither a bundled asset "
                                  f"({', '.join(sorted(_BUNDLED_ARRAYS))}) nor an existing file")
            doc = json.loads(path.read_text())
    elif isinstance(source, dict):
        doc = source
    else:
        raise ConfigError(f"unsupported array config source: {type(source).__name__}")

    omega = _require_number(doc, "omega_rad_s")
    wave_speed = _require_number(doc, "wave_speed_m_s", DEFAULT_WAVE_SPEED)
    unit = doc.get("pattern_angle_unit", "radians")
    if unit not in ("radians", "degrees"):
        raise ConfigError(f"pattern_angle_unit must be 'radians' or 'degrees', got {unit!r}")
    raw_elements = doc.get("elements")
    if not isinstance(raw_elements, list) or not raw_elements:
        raise ConfigError("array config needs a non-empty 'elements' list")
    elements = []
    for i, entry in enumerate(raw_elements):
        if not isinstance(entry, dict):
            raise ConfigError(f"element {i} must be an object, got {entry!r}")
        x = _require_number(entry, "x_m")
        amp = _require_number(entry, "amp", 1.0)
        scale = _require_number(entry, "scale", 0.0)
        elements.append(ElementSpec(x_m=x, amp=amp, scale=scale))
    if len(elements) < 2:
        raise ConfigError(f"an array needs at least 2 elements, got {len(elements)}")
    return ArrayModel(elements=tuple(elements), omega=omega, wave_speed=wave_speed,
                      pattern_degrees=(unit == "degrees"))
