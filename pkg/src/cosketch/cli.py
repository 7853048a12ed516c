"""Command-line companion: analyze, compare, render, simulate, serve."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .logio import LogFormatError, read_log, write_log
from .model import EventKind
from .report import build_report, comparison_to_dict, serialize_report
from .simulate import PROFILES, simulate
from .svg import render_curve_svg, render_rhythm_svg, render_trends_svg


def _write_out(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load_group(directory: str) -> list[dict]:
    paths = sorted(Path(directory).glob("*.log"))
    if not paths:
        raise FileNotFoundError(f"no .log files in {directory!r}")
    return [build_report(read_log(p)) for p in paths]


def _cmd_analyze(args: argparse.Namespace) -> int:
    report = build_report(read_log(args.log))
    _write_out(serialize_report(report), args.out)
    return 0


def _cmd_compare(args: argparse.Namespace) -> int:
    reports_a = _load_group(args.dir_a)
    reports_b = _load_group(args.dir_b)
    result = comparison_to_dict(
        reports_a,
        reports_b,
        alpha=args.alpha,
        label_a=args.dir_a,
        label_b=args.dir_b,
    )
    _write_out(json.dumps(result, indent=2, sort_keys=True) + "\n", args.out)
    significant = [name for name, m in result["metrics"].items() if m["significant"]]
    sys.stderr.write(f"significant at alpha={args.alpha}: {', '.join(significant) or 'none'}\n")
    return 0


def _cmd_render(args: argparse.Namespace) -> int:
    session = read_log(args.log)
    report = build_report(session)
    if args.curve:
        curve = report["actors"][args.actor]["curve"]
        if not curve:
            raise ValueError("session has no coded ticks to plot")
        overlay = None
        if args.overlay:
            overlay = [
                (min(ev.t // session.config.tick_ms, len(curve) - 1), ev.kind.value)
                for ev in session.events
                if ev.actor.value == args.actor
                and ev.kind not in (EventKind.PEN_MOVE, EventKind.PEN_DOWN, EventKind.PEN_UP)
            ]
        svg = render_curve_svg(curve, overlay)
    elif args.trends:
        svg = render_trends_svg(report["actors"][args.actor]["trend_segments"])
    else:
        svg = render_rhythm_svg(report["rhythm"])
    _write_out(svg, args.out)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    sessions = simulate(args.profile, args.n, duration_s=args.duration, seed=args.seed)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    for session in sessions:
        write_log(session, out_dir / f"{session.id}.log")
    sys.stderr.write(f"wrote {len(sessions)} session log(s) to {out_dir}\n")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    from .server import serve

    serve(host=args.host, port=args.port, data_dir=args.data_dir)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cosketch",
        description="Co-creative drawing engine with quantified interaction analytics.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analysis report for one session log")
    p.add_argument("log")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("compare", help="two-group comparison over directories of logs")
    p.add_argument("dir_a")
    p.add_argument("dir_b")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_compare)

    p = sub.add_parser("render", help="SVG view of a session log")
    p.add_argument("log")
    view = p.add_mutually_exclusive_group(required=True)
    view.add_argument("--curve", action="store_true")
    view.add_argument("--trends", action="store_true")
    view.add_argument("--rhythm", action="store_true")
    p.add_argument("--actor", choices=["user", "agent"], default="user")
    p.add_argument("--overlay", action="store_true", help="action-history markers on the curve")
    p.add_argument("-o", "--out")
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("simulate", help="generate deterministic synthetic sessions")
    p.add_argument("--profile", choices=list(PROFILES), required=True)
    p.add_argument("--n", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--duration", type=int, default=300, help="seconds per session")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("serve", help="run the HTTP/WebSocket service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--data-dir", default=None)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, LogFormatError, ValueError, FileNotFoundError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
