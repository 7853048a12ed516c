"""Append-friendly session log: one header line plus one event per line.

Line-delimited JSON keeps live sessions crash-safe (every event is flushed
as its own line) and diffable. Replaying a log reproduces the session's
derived turns, codes, and metrics exactly.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Union

from .model import ActionEvent, EngineConfig, Session

LOG_VERSION = "ccsm-log/1"


class LogFormatError(ValueError):
    """Raised for version, framing, or ordering problems in a session log."""


def header_line(session: Session) -> str:
    header = {
        "version": LOG_VERSION,
        "id": session.id,
        "group": session.group_label,
        "seed": session.rng_seed,
        "config": session.config.to_dict(),
    }
    return json.dumps(header, sort_keys=True, separators=(",", ":"))


def event_line(event: ActionEvent) -> str:
    return json.dumps(event.to_record(), sort_keys=True, separators=(",", ":"))


def dumps_log(session: Session) -> str:
    lines = [header_line(session)]
    lines.extend(event_line(ev) for ev in session.events)
    return "\n".join(lines) + "\n"


def loads_log(text: str) -> Session:
    lines = text.splitlines()
    if not lines or not lines[0].strip():
        raise LogFormatError("line 1: missing header")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise LogFormatError(f"line 1: malformed header ({exc.msg})") from exc
    version = header.get("version")
    if version != LOG_VERSION:
        raise LogFormatError(f"unsupported version {version!r} (expected {LOG_VERSION!r})")
    session = Session(
        id=str(header.get("id", "")),
        rng_seed=int(header.get("seed", 0)),
        group_label=header.get("group"),
        config=EngineConfig.from_dict(header.get("config") or {}),
    )
    prev_t = None
    for lineno, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        try:
            record = json.loads(raw)
            event = ActionEvent.from_record(record)
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise LogFormatError(f"line {lineno}: malformed event record ({exc})") from exc
        if prev_t is not None and event.t < prev_t:
            raise LogFormatError(f"line {lineno}: timestamp regression ({event.t} < {prev_t})")
        prev_t = event.t
        session.events.append(event)
    return session


def write_log(session: Session, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_log(session), encoding="utf-8")


def read_log(path: Union[str, Path]) -> Session:
    return loads_log(Path(path).read_text(encoding="utf-8"))


__all__ = ["LOG_VERSION", "LogFormatError", "dumps_log", "event_line", "header_line", "loads_log", "read_log", "write_log"]
