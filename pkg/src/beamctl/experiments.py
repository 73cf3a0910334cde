"""Experiment configs, control sessions, sweeps and file exports.

A session is an ordered chain of control steps for one method on one array;
the runner executes the same step prescription for several methods, collects
per-step records (parameters, achieved level, gain, perturbation metrics and
pattern snapshots) and writes deterministic CSV/JSON exports.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from . import a2rc as a2rc_mod
from . import control, metrics
from .arrays import ArrayModel, load_array_config
from .errors import ConfigError

METHODS = ("oparc", "parc", "a2rc")

_BUNDLED_EXPERIMENTS = {
    "experiment1": "experiment1.json",
    "experiment2": "experiment2.json",
}


def _cplx(z: complex) -> list[float]:
    return [float(z.real), float(z.imag)]


def _circle_dict(circle: control.CircleR2) -> dict:
    return {"center": [circle.center[0], circle.center[1]], "radius": circle.radius}


@dataclass(frozen=True)
class StepSpec:
    theta_deg: float
    rho_db: float

    def __post_init__(self):
        if not math.isfinite(self.theta_deg) or not (-90.0 <= self.theta_deg <= 90.0):
            raise ConfigError(f"step direction must lie in [-90, 90] deg, got {self.theta_deg}")
        if not math.isfinite(self.rho_db) or self.rho_db > 0.0:
            raise ConfigError(f"desired level must be <= 0 dB, got {self.rho_db}")


@dataclass(frozen=True)
class SweepSpec:
    """Re-run the session many times, varying one step's desired level."""

    step_index: int
    rho_db_from: float
    rho_db_to: float
    rho_db_step: float = 0.5

    def levels_db(self) -> np.ndarray:
        count = int(round((self.rho_db_to - self.rho_db_from) / self.rho_db_step)) + 1
        return np.linspace(self.rho_db_from, self.rho_db_to, count)


@dataclass(frozen=True)
class ExperimentConfig:
    array: dict | str
    theta0_deg: float
    methods: tuple[str, ...]
    steps: tuple[StepSpec, ...]
    grid: metrics.GridSpec = metrics.GridSpec()
    sweep: SweepSpec | None = None

    def __post_init__(self):
        if not self.methods:
            raise ConfigError("config needs at least one method")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ConfigError(f"unknown methods {unknown}; choose from {METHODS}")
        if not self.steps:
            raise ConfigError("config needs at least one control step")
        if not (-90.0 <= self.theta0_deg <= 90.0):
            raise ConfigError(f"beam axis must lie in [-90, 90] deg, got {self.theta0_deg}")
        if self.sweep is not None and not (0 <= self.sweep.step_index < len(self.steps)):
            raise ConfigError(
                f"sweep step_index {self.sweep.step_index} outside the step list "
                f"(0..{len(self.steps) - 1})"
            )

    @classmethod
    def from_dict(cls, doc: dict) -> "ExperimentConfig":
        if not isinstance(doc, dict):
            raise ConfigError("experiment config must be an object")
        try:
            steps = tuple(StepSpec(theta_deg=float(s["theta_deg"]), rho_db=float(s["rho_db"]))
                          for s in doc.get("steps", []))
        except (KeyError, TypeError, ValueError) as exc:
            raise ConfigError(f"invalid steps section: {exc}") from exc
        grid_doc = doc.get("grid", {})
        grid = metrics.GridSpec(
            from_deg=float(grid_doc.get("from_deg", -90.0)),
            to_deg=float(grid_doc.get("to_deg", 90.0)),
            step_deg=float(grid_doc.get("step_deg", 0.2)),
        )
        sweep = None
        if "sweep" in doc and doc["sweep"] is not None:
            s = doc["sweep"]
            try:
                sweep = SweepSpec(step_index=int(s["step_index"]),
                                  rho_db_from=float(s["rho_db_from"]),
                                  rho_db_to=float(s["rho_db_to"]),
                                  rho_db_step=float(s.get("rho_db_step", 0.5)))
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigError(f"invalid sweep section: {exc}") from exc
        if "array" not in doc:
            raise ConfigError("experiment config is missing 'array'")
        if "theta0_deg" not in doc:
            raise ConfigError("experiment config is missing 'theta0_deg'")
        return cls(array=doc["array"], theta0_deg=float(doc["theta0_deg"]),
                   methods=tuple(doc.get("methods", [])), steps=steps, grid=grid, sweep=sweep)

    def to_dict(self) -> dict:
        out = {
            "array": self.array,
            "theta0_deg": self.theta0_deg,
            "methods": list(self.methods),
            "steps": [{"theta_deg": s.theta_deg, "rho_db": s.rho_db} for s in self.steps],
            "grid": {"from_deg": self.grid.from_deg, "to_deg": self.grid.to_deg,
                     "step_deg": self.grid.step_deg},
        }
        if self.sweep is not None:
            out["sweep"] = {"step_index": self.sweep.step_index,
                            "rho_db_from": self.sweep.rho_db_from,
                            "rho_db_to": self.sweep.rho_db_to,
                            "rho_db_step": self.sweep.rho_db_step}
        return out

    def build_model(self) -> ArrayModel:
        return load_array_config(self.array)


def load_experiment_config(source) -> ExperimentConfig:
    """Load a config from a mapping, JSON file path, or bundled name."""
    if isinstance(source, dict):
        return ExperimentConfig.from_dict(source)
    name = str(source)
    if name in _BUNDLED_EXPERIMENTS:
        text = resources.files("beamctl.assets").joinpath(_BUNDLED_EXPERIMENTS[name]).read_text()
        return ExperimentConfig.from_dict(json.loads(text))
    path = Path(source)
    if not path.exists():
        raise ConfigError(f"experiment config '{name}' is neither a bundled name "
                          f"({', '.join(sorted(_BUNDLED_EXPERIMENTS))}) nor an existing file")
    return ExperimentConfig.from_dict(json.loads(path.read_text()))


class ControlSession:
    """Linear chain of control steps for one method on one array.

    Each step appends immutable engine state, so undo is a truncation and a
    re-run of the same inputs reproduces the chain exactly.
    """

    def __init__(self, model: ArrayModel, theta0_deg: float, method: str):
        if method not in METHODS:
            raise ConfigError(f"unknown method {method!r}; choose from {METHODS}")
        self.model = model
        self.theta0_deg = float(theta0_deg)
        self.theta0 = math.radians(theta0_deg)
        self.method = method
        self._weights: list[np.ndarray] = [model.steering_vector(self.theta0)]
        self._vcm: list[control.VcmState] = [control.VcmState.initial(model.n)]
        self._a2rc: list[a2rc_mod.A2rcState] = [a2rc_mod.A2rcState.initial(model, self.theta0)]
        self.records: list[dict] = []

    @property
    def step_count(self) -> int:
        return len(self.records)

    def current_weight(self) -> np.ndarray:
        if self.method == "a2rc":
            return self._a2rc[-1].weight
        return self._weights[-1]

    def pattern(self, grid: metrics.GridSpec) -> metrics.PatternGrid:
        return metrics.sample_pattern(self.current_weight(), self.model, self.theta0, grid)

    def step(self, theta_deg: float, rho_db: float) -> dict:
        """Run one control step and return its JSON-ready summary."""
        spec = StepSpec(theta_deg=theta_deg, rho_db=rho_db)
        theta = math.radians(spec.theta_deg)
        rho = metrics.from_db(spec.rho_db)
        w_before = self.current_weight()

        summary: dict = {
            "index": self.step_count + 1,
            "method": self.method,
            "theta_deg": spec.theta_deg,
            "rho_db": spec.rho_db,
        }
        if self.method == "a2rc":
            state = self._a2rc[-1]
            circle = a2rc_mod.mu_circle(state, self.model, self.theta0, theta, rho)
            new_state = a2rc_mod.a2rc_step(state, self.model, self.theta0, theta, rho)
            self._a2rc.append(new_state)
            weight = new_state.weight
            t_implicit = a2rc_mod.reconstruct_implicit_vcm(new_state, self.model)
            gain = metrics.array_gain(weight, t_implicit,
                                      self.model.steering_vector(self.theta0))
            summary.update({
                "mu": _cplx(new_state.mu_history[-1]),
                "implicit_inrs": [_cplx(z) for z in new_state.implicit_inrs],
                "circles": {"mu": _circle_dict(circle)},
            })
            achieved = metrics.normalized_response(weight, self.model, theta, self.theta0)
        else:
            stepper = control.oparc_step if self.method == "oparc" else control.parc_step
            new_vcm, result = stepper(self._vcm[-1], self._weights[-1], self.model,
                                      self.theta0, theta, rho)
            self._vcm.append(new_vcm)
            self._weights.append(result.weight_after)
            weight = result.weight_after
            gain = result.array_gain
            summary.update({
                "gamma": _cplx(result.gamma.gamma_star),
                "beta": result.beta.beta_star,
                "gamma_candidates": {"a": _cplx(result.gamma.gamma_a),
                                     "b": _cplx(result.gamma.gamma_b),
                                     "zeta": result.gamma.zeta},
                "beta_candidates": {"l": result.beta.beta_l, "r": result.beta.beta_r},
                "circles": {"gamma": _circle_dict(result.gamma.circle),
                            "beta": _circle_dict(result.beta.circle)},
            })
            achieved = result.achieved_level

        summary["achieved_level_db"] = metrics.db(achieved)
        summary["gain_db"] = metrics.db(gain)
        d_db = None
        j_rms = None
        if self.records:
            prev_theta = math.radians(self.records[-1]["theta_deg"])
            d_db = metrics.metric_d(w_before, weight, self.model, prev_theta, self.theta0)
            j_rms = metrics.metric_j(w_before, weight, self.model, self.theta0)
        summary["metrics"] = {"d_db": d_db, "j_rms": j_rms}
        self.records.append(summary)
        return summary

    def undo(self) -> None:
        """Drop the most recent step (no-op on a fresh session)."""
        if not self.records:
            return
        self.records.pop()
        if self.method == "a2rc":
            self._a2rc.pop()
        else:
            self._vcm.pop()
            self._weights.pop()


@dataclass(frozen=True)
class SessionRecord:
    """Replayable result of running one config across methods."""

    config: ExperimentConfig
    steps: dict[str, list[dict]]
    patterns: dict[str, list[metrics.PatternGrid]] = field(repr=False)

    def to_dict(self) -> dict:
        out = {"config": self.config.to_dict(), "methods": {}}
        for method in self.config.methods:
            out["methods"][method] = {
                "steps": self.steps[method],
                "patterns": [
                    {"angles_deg": list(p.angles_deg),
                     "levels_db": p.floored_levels(),
                     "meta": {"theta0_deg": self.config.theta0_deg,
                              "method": method, "step": i + 1}}
                    for i, p in enumerate(self.patterns[method])
                ],
            }
        return out


def run_experiment(config: ExperimentConfig) -> SessionRecord:
    """Execute every requested method over the configured step list."""
    model = config.build_model()
    steps: dict[str, list[dict]] = {}
    patterns: dict[str, list[metrics.PatternGrid]] = {}
    for method in config.methods:
        session = ControlSession(model, config.theta0_deg, method)
        patterns[method] = []
        for spec in config.steps:
            session.step(spec.theta_deg, spec.rho_db)
            patterns[method].append(session.pattern(config.grid))
        steps[method] = session.records
    return SessionRecord(config=config, steps=steps, patterns=patterns)


def run_sweep(config: ExperimentConfig) -> list[dict]:
    """Re-run the session per swept level; one row per (level, method).

    Each row reports the swept step's perturbation metrics (level shift at
    the previously controlled direction, RMS pattern deviation), from a fresh
    independent session.
    """
    if config.sweep is None:
        raise ConfigError("config has no sweep section")
    model = config.build_model()
    idx = config.sweep.step_index
    rows: list[dict] = []
    for rho_db in config.sweep.levels_db():
        for method in config.methods:
            session = ControlSession(model, config.theta0_deg, method)
            for i, spec in enumerate(config.steps):
                level = float(rho_db) if i == idx else spec.rho_db
                session.step(spec.theta_deg, level)
            target = session.records[idx]
            rows.append({"rho_db": float(rho_db), "method": method,
                         "d_db": target["metrics"]["d_db"],
                         "j_rms": target["metrics"]["j_rms"]})
    return rows


def _fmt(value) -> str:
    if value is None:
        return ""
    return repr(float(value))


def write_exports(record: SessionRecord, out_dir, formats=("csv", "json")) -> list[Path]:
    """Write the record under out_dir; returns the created file paths."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []
    if "json" in formats:
        path = out / "session.json"
        path.write_text(json.dumps(record.to_dict(), indent=2, sort_keys=True) + "\n")
        written.append(path)
    if "csv" in formats:
        lines = ["method,step,theta_deg,rho_db,achieved_level_db,gain_db,d_db,j_rms"]
        for method in record.config.methods:
            for s in record.steps[method]:
                lines.append(",".join([
                    method, str(s["index"]), _fmt(s["theta_deg"]), _fmt(s["rho_db"]),
                    _fmt(s["achieved_level_db"]), _fmt(s["gain_db"]),
                    _fmt(s["metrics"]["d_db"]), _fmt(s["metrics"]["j_rms"]),
                ]))
        path = out / "summary.csv"
        path.write_text("\n".join(lines) + "\n")
        written.append(path)
        for method in record.config.methods:
            for i, pattern in enumerate(record.patterns[method]):
                plines = ["angle_deg,level_db"]
                plines += [f"{_fmt(a)},{_fmt(lv)}" for a, lv in
                           zip(pattern.angles_deg, pattern.floored_levels())]
                path = out / f"pattern_{method}_step{i + 1}.csv"
                path.write_text("\n".join(plines) + "\n")
                written.append(path)
    return written


def write_sweep(rows: list[dict], out_dir) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    lines = ["rho_db,method,d_db,j_rms"]
    lines += [",".join([_fmt(r["rho_db"]), r["method"], _fmt(r["d_db"]), _fmt(r["j_rms"])])
              for r in rows]
    path = out / "sweep.csv"
    path.write_text("\n".join(lines) + "\n")
    return path
