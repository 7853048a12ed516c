"""Service shell: session ingestion, live stream, analysis, and visuals.

Each session has its own engine behind a lock (single writer); analysis
endpoints snapshot the event list under the lock and compute outside it.
When a data directory is configured, events are appended to the session's
log file as they land, so a crash loses nothing already acknowledged.
"""

from __future__ import annotations

import asyncio
import threading
import time
import uuid
from pathlib import Path
from typing import Any, Optional

from fastapi import FastAPI, HTTPException, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse, PlainTextResponse, Response

from .agent import image_client_from_env
from .engine import Engine
from .logio import dumps_log, event_line, header_line
from .model import ActionEvent, Actor, EngineConfig, EventKind, Session, validate_event_stream
from .report import build_report, comparison_to_dict
from .svg import render_curve_svg, render_rhythm_svg, render_trends_svg

LIVE_TICK_SECONDS = 0.1


class SessionRuntime:
    def __init__(self, session: Session, data_dir: Optional[Path]):
        self.engine = Engine(session, image_client=image_client_from_env())
        self.lock = threading.Lock()
        self.started = time.monotonic()
        self.data_dir = data_dir
        self._persisted = 0
        if data_dir is not None:
            data_dir.mkdir(parents=True, exist_ok=True)
            self.log_path = data_dir / f"{session.id}.log"
            self.log_path.write_text(header_line(session) + "\n", encoding="utf-8")

    @property
    def session(self) -> Session:
        return self.engine.session

    def now_ms(self) -> int:
        return int((time.monotonic() - self.started) * 1000)

    def flush(self) -> None:
        if self.data_dir is None:
            return
        events = self.session.events
        if len(events) > self._persisted:
            with self.log_path.open("a", encoding="utf-8") as fp:
                for ev in events[self._persisted :]:
                    fp.write(event_line(ev) + "\n")
            self._persisted = len(events)

    def snapshot(self) -> Session:
        with self.lock:
            return Session(
                id=self.session.id,
                rng_seed=self.session.rng_seed,
                group_label=self.session.group_label,
                config=self.session.config,
                events=list(self.session.events),
            )


def _parse_event(record: dict[str, Any]) -> ActionEvent:
    try:
        return ActionEvent.from_record(record)
    except (KeyError, ValueError, TypeError) as exc:
        raise HTTPException(status_code=400, detail=f"malformed event: {exc}") from exc


def create_app(data_dir: Optional[str] = None) -> FastAPI:
    app = FastAPI(title="cosketch", version="0.1.0")
    sessions: dict[str, SessionRuntime] = {}
    root = Path(data_dir) if data_dir else None

    def runtime(session_id: str) -> SessionRuntime:
        rt = sessions.get(session_id)
        if rt is None:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id!r}")
        return rt

    @app.post("/sessions")
    def create_session(body: Optional[dict[str, Any]] = None) -> dict[str, Any]:
        body = body or {}
        try:
            config = EngineConfig.from_dict(body.get("config") or {})
        except (TypeError, ValueError) as exc:
            raise HTTPException(status_code=400, detail=f"bad config: {exc}") from exc
        session = Session(
            id=body.get("id") or uuid.uuid4().hex[:12],
            rng_seed=int(body.get("seed", 0)),
            group_label=body.get("group"),
            config=config,
        )
        if session.id in sessions:
            raise HTTPException(status_code=409, detail=f"session {session.id!r} exists")
        sessions[session.id] = SessionRuntime(session, root)
        return {"id": session.id, "config": config.to_dict()}

    @app.post("/sessions/{session_id}/events")
    def append_events(session_id: str, body: dict[str, Any]) -> dict[str, Any]:
        rt = runtime(session_id)
        records = body.get("events")
        if records is None:
            records = [body]
        events = [_parse_event(rec) for rec in records]
        violations = validate_event_stream(events)
        if violations and any("timestamps" in v.message for v in violations):
            raise HTTPException(
                status_code=400, detail=[str(v) for v in violations]
            )
        with rt.lock:
            try:
                for ev in events:
                    rt.engine.submit(ev)
                    rt.engine.tick(ev.t)
            except ValueError as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            rt.flush()
            emitted = rt.engine.take_outbox()
        return {"appended": len(events), "agent": emitted}

    @app.post("/sessions/{session_id}/tick")
    def tick_session(session_id: str, body: Optional[dict[str, Any]] = None) -> dict[str, Any]:
        rt = runtime(session_id)
        now = int((body or {}).get("now", rt.now_ms()))
        with rt.lock:
            rt.engine.tick(now)
            rt.flush()
            emitted = rt.engine.take_outbox()
        return {"now": now, "agent": emitted}

    @app.get("/sessions/{session_id}/analysis")
    def analysis(session_id: str) -> JSONResponse:
        snapshot = runtime(session_id).snapshot()
        return JSONResponse(build_report(snapshot))

    @app.get("/sessions/{session_id}/log")
    def export_log(session_id: str) -> PlainTextResponse:
        snapshot = runtime(session_id).snapshot()
        return PlainTextResponse(dumps_log(snapshot))

    @app.get("/sessions/{session_id}/strokes")
    def stroke_state(session_id: str) -> dict[str, Any]:
        snapshot = runtime(session_id).snapshot()
        return {
            "strokes": [
                {
                    "actor": s.actor.value,
                    "points": [[p.x, p.y] for p in s.points],
                    "width": s.width,
                    "color": list(s.color),
                }
                for s in snapshot.strokes()
            ]
        }

    def _actor(name: str) -> Actor:
        try:
            return Actor(name)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=f"unknown actor {name!r}") from exc

    @app.get("/sessions/{session_id}/curve.svg")
    def curve_svg(session_id: str, actor: str = "user", overlay: bool = False) -> Response:
        snapshot = runtime(session_id).snapshot()
        report = build_report(snapshot)
        curve = report["actors"][_actor(actor).value]["curve"]
        if not curve:
            raise HTTPException(status_code=404, detail="session has no coded ticks yet")
        markers = None
        if overlay:
            markers = [
                (min(ev.t // snapshot.config.tick_ms, len(curve) - 1), ev.kind.value)
                for ev in snapshot.events
                if ev.actor.value == actor
                and ev.kind not in (EventKind.PEN_MOVE, EventKind.PEN_DOWN, EventKind.PEN_UP)
            ]
        return Response(render_curve_svg(curve, markers), media_type="image/svg+xml")

    @app.get("/sessions/{session_id}/trends.svg")
    def trends_svg(session_id: str, actor: str = "user") -> Response:
        snapshot = runtime(session_id).snapshot()
        report = build_report(snapshot)
        segments = report["actors"][_actor(actor).value]["trend_segments"]
        return Response(render_trends_svg(segments), media_type="image/svg+xml")

    @app.get("/sessions/{session_id}/rhythm.svg")
    def rhythm_svg(session_id: str) -> Response:
        snapshot = runtime(session_id).snapshot()
        report = build_report(snapshot)
        return Response(render_rhythm_svg(report["rhythm"]), media_type="image/svg+xml")

    @app.post("/compare")
    def compare(body: dict[str, Any]) -> JSONResponse:
        ids_a = body.get("group_a") or []
        ids_b = body.get("group_b") or []
        alpha = float(body.get("alpha", 0.05))
        reports_a = [build_report(runtime(sid).snapshot()) for sid in ids_a]
        reports_b = [build_report(runtime(sid).snapshot()) for sid in ids_b]
        try:
            result = comparison_to_dict(reports_a, reports_b, alpha=alpha)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return JSONResponse(result)

    @app.websocket("/sessions/{session_id}/live")
    async def live(websocket: WebSocket, session_id: str) -> None:
        rt = sessions.get(session_id)
        if rt is None:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        try:
            while True:
                try:
                    message = await asyncio.wait_for(
                        websocket.receive_json(), timeout=LIVE_TICK_SECONDS
                    )
                except asyncio.TimeoutError:
                    message = None
                with rt.lock:
                    if message is not None and message.get("type") == "event":
                        record = message.get("event") or {}
                        try:
                            ev = ActionEvent.from_record(record)
                        except (KeyError, ValueError, TypeError) as exc:
                            await websocket.send_json({"type": "error", "detail": str(exc)})
                            continue
                        # live path tolerates slow clients by clamping time
                        last_t = rt.session.events[-1].t if rt.session.events else 0
                        if ev.t < last_t:
                            ev = ActionEvent(last_t, ev.actor, ev.kind, ev.payload)
                        rt.engine.submit(ev)
                        rt.engine.tick(ev.t)
                    else:
                        rt.engine.tick(rt.now_ms())
                    rt.flush()
                    out = rt.engine.take_outbox()
                for item in out:
                    await websocket.send_json(item)
        except WebSocketDisconnect:
            return

    return app


def serve(host: str = "127.0.0.1", port: int = 8000, data_dir: Optional[str] = None) -> None:
    import uvicorn

    uvicorn.run(create_app(data_dir), host=host, port=port, log_level="warning")


__all__ = ["create_app", "serve"]
