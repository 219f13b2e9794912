"""Command line entry points: serve, validate, replay, metrics, selfplay."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .agent.comm import CommCondition
from .config import GameConfig
from .episodes import EpisodeLog
from .session import (
    SessionConfig,
    replay_log,
    run_session,
    run_validation,
    validation_table,
)


def _load_session_config(path: str | None) -> SessionConfig:
    if path is None:
        return SessionConfig()
    with open(path) as fh:
        doc = json.load(fh)
    kwargs = {}
    if "comm_condition" in doc:
        kwargs["comm_condition"] = CommCondition(doc["comm_condition"])
    for key in ("tom_enabled", "seed", "layout_name", "layout_text",
                "backend_mode", "mock_scripts", "live_config", "human_source"):
        if key in doc:
            kwargs[key] = doc[key]
    if "game" in doc:
        kwargs["game"] = GameConfig.from_dict(doc["game"])
    return SessionConfig(**kwargs)


def cmd_serve(args) -> int:
    import uvicorn

    from .server import create_app

    config = _load_session_config(args.config)
    app = create_app(config, logs_dir=args.logs_dir, static_dir=args.static)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def cmd_validate(args) -> int:
    results = []
    tom_values = {"on": [True], "off": [False], "both": [True, False]}[args.tom]
    for tom in tom_values:
        result = run_validation(
            n_games=args.games,
            tom_enabled=tom,
            backend_mode=args.backend,
            base_seed=args.seed,
        )
        results.append(result)
    print(validation_table(results))
    if args.json:
        Path(args.json).write_text(json.dumps(results, indent=2))
    return 0


def cmd_replay(args) -> int:
    log = EpisodeLog.load(args.log)
    report = replay_log(log)
    print(f"ticks verified : {report.ticks_verified}")
    print(f"replayed score : {report.replayed_score}")
    print(f"logged score   : {report.logged_score}")
    if report.first_mismatch_tick is not None:
        print(f"FIRST MISMATCH at tick {report.first_mismatch_tick}")
    print("verdict        : " + ("OK" if report.ok else "MISMATCH"))
    return 0 if report.ok else 1


def cmd_metrics(args) -> int:
    from .metrics import compute_report, report_csv_row, report_text

    log = EpisodeLog.load(args.log)
    report = compute_report(log)
    if args.csv:
        sys.stdout.write(report_csv_row(report, header=args.csv_header))
    else:
        print(report_text(report))
    return 0


def cmd_selfplay(args) -> int:
    human_source: dict
    if args.script:
        with open(args.script) as fh:
            doc = json.load(fh)
        human_source = {"type": "script", "actions": doc.get("actions", {}),
                        "messages": doc.get("messages", {})}
    elif args.random_human is not None:
        human_source = {"type": "random", "seed": args.random_human}
    else:
        human_source = {"type": "rule"}

    config = SessionConfig(
        comm_condition=CommCondition(args.comm),
        tom_enabled=args.tom == "on",
        seed=args.seed,
        backend_mode=args.backend,
        human_source=human_source,
    )
    log = run_session(config)
    print(f"final score : {log.footer['final_score']}")
    print(f"episode hash: {log.episode_hash()}")
    if args.out:
        log.save(args.out)
        print(f"log written : {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="coopkitchen")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the realtime session server")
    p.add_argument("--config", default=None, help="session config JSON")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--logs-dir", default="logs")
    p.add_argument("--static", default="frontend/dist", help="client bundle directory")
    p.set_defaults(fn=cmd_serve)

    p = sub.add_parser("validate", help="agent vs. rule-based teammate score tables")
    p.add_argument("--games", type=int, default=10)
    p.add_argument("--tom", choices=["on", "off", "both"], default="both")
    p.add_argument("--backend", choices=["mock", "live", "replay"], default="mock")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", default=None, help="also write results as JSON")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("replay", help="verify a logged episode replays exactly")
    p.add_argument("--log", required=True)
    p.set_defaults(fn=cmd_replay)

    p = sub.add_parser("metrics", help="metrics report for a logged episode")
    p.add_argument("--log", required=True)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--csv-header", action="store_true")
    p.set_defaults(fn=cmd_metrics)

    p = sub.add_parser("selfplay", help="headless episode with a scripted human")
    p.add_argument("--script", default=None, help="human action script JSON")
    p.add_argument("--random-human", type=int, default=None,
                   help="seeded random human instead of a script")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--comm", default="none",
                   choices=[c.value for c in CommCondition])
    p.add_argument("--tom", choices=["on", "off"], default="off")
    p.add_argument("--backend", choices=["mock", "live"], default="mock")
    p.add_argument("--out", default=None, help="write the episode log here")
    p.set_defaults(fn=cmd_selfplay)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
