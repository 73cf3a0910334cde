"""HTTP session API for interactive control, plus static workbench hosting.

Sessions live in memory (optionally written through to a directory of JSON
files); each session serializes its own mutations behind a lock while
distinct sessions run fully independently.  Every mutation responds with the
complete step summary so a client can redraw without a second round trip.
"""

from __future__ import annotations

import json
import threading
import uuid
from pathlib import Path

from fastapi import FastAPI, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .arrays import load_array_config
from .errors import BeamctlError, ConfigError
from .experiments import METHODS, ControlSession
from .metrics import GridSpec

DEFAULT_FRONTEND_DIR = Path(__file__).resolve().parents[2] / "frontend" / "dist"


class SessionCreate(BaseModel):
    array: dict | str = "table1"
    theta0_deg: float
    method: str


class StepRequest(BaseModel):
    theta_deg: float
    rho_db: float


class _SessionSlot:
    def __init__(self, session: ControlSession, array_source):
        self.session = session
        self.array_source = array_source
        self.lock = threading.Lock()


class SessionStore:
    """Thread-safe registry of live sessions."""

    def __init__(self, persist_dir: str | Path | None = None):
        self._slots: dict[str, _SessionSlot] = {}
        self._registry_lock = threading.Lock()
        self.persist_dir = Path(persist_dir) if persist_dir else None
        if self.persist_dir:
            self.persist_dir.mkdir(parents=True, exist_ok=True)

    def create(self, body: SessionCreate) -> str:
        if body.method not in METHODS:
            raise ConfigError(f"unknown method {body.method!r}; choose from {METHODS}")
        model = load_array_config(body.array)
        session = ControlSession(model, body.theta0_deg, body.method)
        session_id = uuid.uuid4().hex[:12]
        with self._registry_lock:
            self._slots[session_id] = _SessionSlot(session, body.array)
        self._persist(session_id)
        return session_id

    def get(self, session_id: str) -> _SessionSlot:
        with self._registry_lock:
            slot = self._slots.get(session_id)
        if slot is None:
            raise KeyError(session_id)
        return slot

    def delete(self, session_id: str) -> None:
        with self._registry_lock:
            if session_id not in self._slots:
                raise KeyError(session_id)
            del self._slots[session_id]
        if self.persist_dir:
            path = self.persist_dir / f"{session_id}.json"
            if path.exists():
                path.unlink()

    def describe(self, session_id: str) -> dict:
        slot = self.get(session_id)
        session = slot.session
        return {
            "id": session_id,
            "method": session.method,
            "theta0_deg": session.theta0_deg,
            "array": slot.array_source if isinstance(slot.array_source, str) else "custom",
            "steps": session.records,
        }

    def _persist(self, session_id: str) -> None:
        if not self.persist_dir:
            return
        doc = self.describe(session_id)
        path = self.persist_dir / f"{session_id}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def create_app(persist_dir: str | Path | None = None,
               frontend_dir: str | Path | None = None) -> FastAPI:
    """Build the service; static workbench files are mounted when present."""
    app = FastAPI(title="beamctl session service")
    store = SessionStore(persist_dir)
    app.state.store = store

    def _slot_or_404(session_id: str) -> _SessionSlot:
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")

    @app.post("/sessions")
    def create_session(body: SessionCreate):
        try:
            session_id = store.create(body)
        except BeamctlError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        return {"id": session_id}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        _slot_or_404(session_id)
        return store.describe(session_id)

    @app.delete("/sessions/{session_id}")
    def delete_session(session_id: str):
        try:
            store.delete(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"no session {session_id!r}")
        return {"deleted": session_id}

    @app.post("/sessions/{session_id}/steps")
    def post_step(session_id: str, body: StepRequest):
        slot = _slot_or_404(session_id)
        with slot.lock:
            try:
                summary = slot.session.step(body.theta_deg, body.rho_db)
            except BeamctlError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
        store._persist(session_id)
        return summary

    @app.post("/sessions/{session_id}/undo")
    def post_undo(session_id: str):
        slot = _slot_or_404(session_id)
        with slot.lock:
            slot.session.undo()
            remaining = len(slot.session.records)
        store._persist(session_id)
        return {"id": session_id, "steps": remaining}

    @app.get("/sessions/{session_id}/pattern")
    def get_pattern(session_id: str, from_deg: float = -90.0, to_deg: float = 90.0,
                    step_deg: float = 0.2):
        slot = _slot_or_404(session_id)
        try:
            grid = GridSpec(from_deg=from_deg, to_deg=to_deg, step_deg=step_deg)
        except BeamctlError as exc:
            raise HTTPException(status_code=422, detail=str(exc))
        with slot.lock:
            pattern = slot.session.pattern(grid)
            step_count = len(slot.session.records)
            meta = {"theta0_deg": slot.session.theta0_deg,
                    "method": slot.session.method, "step": step_count}
        return {"angles_deg": list(pattern.angles_deg),
                "levels_db": pattern.floored_levels(), "meta": meta}

    front = Path(frontend_dir) if frontend_dir else DEFAULT_FRONTEND_DIR
    if front.is_dir():
        app.mount("/", StaticFiles(directory=front, html=True), name="workbench")

    return app
