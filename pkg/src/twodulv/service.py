"""HTTP service hosting live multi-round sessions.

State is write-through: every mutation lands in one JSON file per
session under the storage root before the response is sent, so a restart
reproduces identical GET responses. Mutations within a session are
serialized behind a per-session lock and an optimistic revision check
(``If-Match`` header); the service computes nothing the library cannot,
so every response is reproducible offline from the persisted session.
"""

from __future__ import annotations

import json
import os
import threading
import uuid

from fastapi import FastAPI, Header, Request
from fastapi.responses import JSONResponse

from .aggregation import temporal_aggregate
from .core import hamming_distance, uncertainty_degree
from .errors import TwoDulvError, ValidationError
from .pipeline import (SESSION_SCHEMA, Session, canonical_json,
                       report_to_dict, run_pipeline, validate_session,
                       with_overrides)
from .weighting import deviation_degree


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details=()):
        self.status = status
        self.code = code
        self.message = message
        self.details = list(details)
        super().__init__(message)


class SessionStore:
    """In-memory session map with write-through JSON persistence."""

    def __init__(self, root: str):
        self.root = root
        os.makedirs(root, exist_ok=True)
        self._lock = threading.Lock()
        self._locks: dict[str, threading.Lock] = {}
        self._sessions: dict[str, dict] = {}
        for name in sorted(os.listdir(root)):
            if name.endswith(".json"):
                with open(os.path.join(root, name), encoding="utf-8") as fh:
                    state = json.load(fh)
                self._sessions[state["id"]] = state

    def _session_lock(self, sid: str) -> threading.Lock:
        with self._lock:
            return self._locks.setdefault(sid, threading.Lock())

    def _persist(self, state: dict) -> dict:
        # keep the canonical (12-sig-digit) form in memory too, so
        # responses are identical before and after a restart
        text = canonical_json(state)
        path = os.path.join(self.root, f"{state['id']}.json")
        tmp = path + ".tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
        canon = json.loads(text)
        self._sessions[canon["id"]] = canon
        return canon

    def create(self, definition: dict) -> str:
        doc = dict(definition)
        doc.setdefault("schema", SESSION_SCHEMA)
        doc["rounds"] = []
        doc["status"] = "open"
        try:
            validate_session(doc)
        except ValidationError as err:
            raise ApiError(422, "invalid_definition", "invalid session definition",
                           err.problems)
        sid = uuid.uuid4().hex[:12]
        state = {"id": sid, "revision": 0, "session": doc, "report": None}
        with self._session_lock(sid):
            self._persist(state)
        return sid

    def get(self, sid: str) -> dict:
        state = self._sessions.get(sid)
        if state is None:
            raise ApiError(404, "not_found", f"no session {sid}")
        return state

    def _validated(self, state: dict) -> Session:
        return validate_session(state["session"])

    def feedback(self, sid: str) -> dict:
        state = self.get(sid)
        session = self._validated(state)
        if not session.rounds:
            return {"rounds": 0, "uncertainty_totals": {}, "deviation_totals": {},
                    "distance_grid": {}, "aggregate_grid": {}}
        return self._feedback(session)

    @staticmethod
    def _feedback(session: Session) -> dict:
        grids = [r.entries for r in session.rounds]
        latest = grids[-1]
        aggregate = temporal_aggregate(grids, session.alpha, session.scale)
        unc = {e: sum(uncertainty_degree(cell, session.scale)
                      for cell in latest[e].values())
               for e in session.experts}
        dev = deviation_degree(grids, aggregate, session.scale)
        dist_grid = {e: {a: sum(hamming_distance(g[e][a], aggregate[e][a], session.scale)
                                for g in grids)
                         for a in session.alternatives}
                     for e in session.experts}
        agg_grid = {e: {a: [aggregate[e][a].judgment.lo, aggregate[e][a].judgment.hi,
                            aggregate[e][a].reliability.lo, aggregate[e][a].reliability.hi]
                        for a in session.alternatives}
                    for e in session.experts}
        return {"rounds": len(session.rounds), "uncertainty_totals": unc,
                "deviation_totals": dev, "distance_grid": dist_grid,
                "aggregate_grid": agg_grid}

    def submit_round(self, sid: str, entries: dict, expected_revision: int | None) -> dict:
        with self._session_lock(sid):
            state = self.get(sid)
            if expected_revision is not None and expected_revision != state["revision"]:
                raise ApiError(409, "revision_mismatch",
                               f"expected revision {state['revision']}; refresh and retry")
            doc = state["session"]
            if doc["status"] == "finalized":
                raise ApiError(409, "finalized", "session is finalized")
            index = len(doc["rounds"]) + 1
            candidate = json.loads(json.dumps(doc))
            candidate["rounds"].append({"index": index, "entries": entries})
            try:
                session = validate_session(candidate)
            except ValidationError as err:
                raise ApiError(422, "invalid_round", "round grid rejected", err.problems)
            state = self._persist({**state, "session": candidate,
                                   "revision": state["revision"] + 1})
            fb = self._feedback(session)
            fb["round_index"] = index
            fb["revision"] = state["revision"]
            fb["warnings"] = list(session.warnings)
            return fb

    def finalize(self, sid: str, eta: float | None, alpha: float | None) -> dict:
        with self._session_lock(sid):
            state = self.get(sid)
            if state["session"]["status"] == "finalized":
                return state["report"]  # idempotent
            if not state["session"]["rounds"]:
                raise ApiError(422, "empty_session", "cannot finalize a session with no rounds")
            try:
                session = with_overrides(self._validated(state), eta=eta, alpha=alpha)
                report = run_pipeline(session)
            except ValidationError as err:
                raise ApiError(422, "invalid_overrides", str(err), err.problems)
            except TwoDulvError as err:
                raise ApiError(500, "pipeline_error", str(err))
            doc = {**state["session"], "status": "finalized",
                   "eta": session.eta, "alpha": session.alpha}
            state = self._persist({**state, "session": doc,
                                   "report": report_to_dict(report),
                                   "revision": state["revision"] + 1})
            return state["report"]

    def report(self, sid: str) -> dict:
        state = self.get(sid)
        if state["report"] is None:
            raise ApiError(404, "no_report", "session is not finalized")
        return state["report"]


def create_app(storage_root: str) -> FastAPI:
    app = FastAPI(title="twodulv session service")
    store = SessionStore(storage_root)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(_request: Request, err: ApiError):
        return JSONResponse(status_code=err.status,
                            content={"code": err.code, "message": err.message,
                                     "details": err.details})

    @app.post("/sessions", status_code=201)
    async def create_session(definition: dict):
        sid = store.create(definition)
        return {"id": sid}

    @app.get("/sessions/{sid}")
    async def get_session(sid: str):
        state = store.get(sid)
        return {"id": sid, "revision": state["revision"], "session": state["session"]}

    @app.post("/sessions/{sid}/rounds")
    async def submit_round(sid: str, payload: dict,
                           if_match: str | None = Header(default=None)):
        expected = None
        if if_match is not None:
            try:
                expected = int(if_match.strip('"'))
            except ValueError:
                raise ApiError(400, "bad_header", f"If-Match must be a revision number, "
                                                 f"got {if_match!r}")
        entries = payload.get("entries", payload)
        return store.submit_round(sid, entries, expected)

    @app.get("/sessions/{sid}/feedback")
    async def get_feedback(sid: str):
        return store.feedback(sid)

    @app.post("/sessions/{sid}/finalize")
    async def finalize(sid: str, overrides: dict | None = None):
        overrides = overrides or {}
        return store.finalize(sid, overrides.get("eta"), overrides.get("alpha"))

    @app.get("/sessions/{sid}/report")
    async def get_report(sid: str):
        return store.report(sid)

    return app


def main(argv=None):  # pragma: no cover - thin launcher
    import argparse
    import uvicorn

    parser = argparse.ArgumentParser(description="twodulv session service")
    parser.add_argument("--host", default=os.environ.get("TWODULV_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int,
                        default=int(os.environ.get("TWODULV_PORT", "8710")))
    parser.add_argument("--storage-root",
                        default=os.environ.get("TWODULV_STORAGE", "./twodulv-sessions"))
    args = parser.parse_args(argv)
    uvicorn.run(create_app(args.storage_root), host=args.host, port=args.port)


if __name__ == "__main__":  # pragma: no cover
    main()
