"""Realtime session server: websocket wire protocol plus static client hosting.

One websocket connection drives one live session (or one replay stream).
The tick loop runs as an asyncio task at the configured tick rate; client
input lands in a queue the loop drains at tick boundaries, last key wins.
Frame schemas are documented in docs/protocol.md and mirrored by the
browser client.
"""

from __future__ import annotations

import asyncio
import json
import time
from dataclasses import replace
from pathlib import Path

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .agent.comm import CommCondition
from .config import GameConfig
from .env.state import ControlAction, GameState
from .episodes import EpisodeLog
from .messages import TEMPLATES
from .session import QueueSource, ReplayReport, SessionConfig, SessionRunner, replay_log

COUNTDOWN_SECONDS = 3

KEY_ACTIONS = {
    "up": ControlAction.UP,
    "down": ControlAction.DOWN,
    "left": ControlAction.LEFT,
    "right": ControlAction.RIGHT,
    "interact": ControlAction.INTERACT,
}


def client_state_view(state: GameState) -> dict:
    """State as the client sees it: full truth minus engine internals."""
    doc = state.to_dict()
    for key in ("rng_state", "next_item_id", "next_order_id", "pending_spawns"):
        doc.pop(key, None)
    return doc


def layout_view(state: GameState) -> dict:
    layout = state.layout
    return {
        "width": layout.width,
        "height": layout.height,
        "tiles": [[layout.tiles[r][c].value for c in range(layout.width)]
                  for r in range(layout.height)],
        "spawns": [list(s) for s in layout.spawn_points],
    }


def diff_view(prev: dict, current: dict) -> dict:
    """Top-level sections that changed since the previous view."""
    changes = {}
    for key, value in current.items():
        if prev.get(key) != value:
            changes[key] = value
    return changes


def progress_view(state: GameState) -> dict:
    cfg = state.config
    orders = []
    for order in state.orders:
        total = max(1, order.deadline_tick - order.created_tick)
        remaining = max(0, order.deadline_tick - state.tick)
        orders.append({
            "id": order.id,
            "kind": order.kind.value,
            "remaining": remaining,
            "total": total,
            "frac": remaining / total,
        })
    cook = []
    for cell, pan in sorted(state.pans.items()):
        entry = {"cell": list(cell), "on_fire": pan.on_fire}
        if pan.beef is None:
            entry["phase"] = "empty"
            entry["frac"] = 0.0
        else:
            entry["phase"] = pan.beef.state.value
            if pan.beef.state.value == "cooking":
                entry["frac"] = pan.beef.ticks / cfg.cook_duration
            elif pan.beef.state.value == "well_done":
                entry["frac"] = pan.beef.ticks / cfg.fire_delay
            else:
                entry["frac"] = 1.0
        if pan.on_fire:
            entry["extinguish_frac"] = pan.extinguish_progress / cfg.extinguish_duration
        cook.append(entry)
    chop = []
    for cell, lettuce in sorted(state.cutboards.items()):
        if lettuce is not None:
            chop.append({
                "cell": list(cell),
                "frac": lettuce.chop_progress / cfg.chop_count,
            })
    return {"orders": orders, "cook": cook, "chop": chop}


def create_app(config: SessionConfig, logs_dir: str = "logs",
               static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="coopkitchen")
    logs_path = Path(logs_dir)
    logs_path.mkdir(parents=True, exist_ok=True)

    @app.get("/healthz")
    def healthz():
        return JSONResponse({"ok": True})

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        try:
            join = await ws.receive_json()
        except WebSocketDisconnect:
            return
        if join.get("type") != "join":
            await ws.send_json({"type": "error", "code": "expected_join"})
            await ws.close()
            return
        if join.get("mode") == "replay":
            await _run_replay(ws, join, logs_path)
        else:
            await _run_live(ws, join, config, logs_path)

    if static_dir and Path(static_dir).is_dir():
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="client")
    return app


def _session_config_for(join: dict, base: SessionConfig) -> SessionConfig:
    overrides = {}
    if "seed" in join:
        overrides["seed"] = int(join["seed"])
    if "comm" in join:
        overrides["comm_condition"] = CommCondition(join["comm"])
    if "tom" in join:
        overrides["tom_enabled"] = bool(join["tom"])
    return replace(base, human_source={"type": "wire"}, **overrides)


async def _run_live(ws: WebSocket, join: dict, base: SessionConfig, logs_path: Path):
    config = _session_config_for(join, base)
    source = QueueSource()
    runner = SessionRunner(config, human_source=source)
    condition = config.comm_condition

    await ws.send_json({
        "type": "joined",
        "session": join.get("session", "default"),
        "condition": condition.value,
        "buttons_enabled": condition.human_may_send,
        "templates": {str(k): v for k, v in TEMPLATES.items()},
        "tick_hz": config.game.tick_hz,
        "episode_ticks": config.game.episode_ticks,
        "layout": layout_view(runner.state),
    })
    view = client_state_view(runner.state)
    await ws.send_json({"type": "state_full", "tick": runner.state.tick, "state": view})

    stop = asyncio.Event()

    async def input_loop():
        while not stop.is_set():
            try:
                frame = await ws.receive_json()
            except (WebSocketDisconnect, RuntimeError):
                stop.set()
                return
            kind = frame.get("type")
            if kind == "key":
                action = KEY_ACTIONS.get(frame.get("action"))
                if action is not None:
                    source.push_key(action)
            elif kind == "button":
                if not condition.human_may_send:
                    await ws.send_json({
                        "type": "error", "code": "message_forbidden",
                        "detail": "this session's condition disables human messages",
                    })
                    continue
                try:
                    source.push_button(int(frame.get("template_id")))
                except (TypeError, ValueError):
                    await ws.send_json({"type": "error", "code": "bad_template"})

    async def tick_loop():
        nonlocal view
        try:
            for remaining in range(COUNTDOWN_SECONDS, 0, -1):
                await ws.send_json({"type": "countdown", "seconds_left": remaining})
                await asyncio.sleep(1.0)
            await ws.send_json({"type": "countdown", "seconds_left": 0})
            period = 1.0 / config.game.tick_hz
            loop = asyncio.get_running_loop()
            while not runner.finished() and not stop.is_set():
                started = loop.time()
                record = runner.tick_once()
                new_view = client_state_view(runner.state)
                changes = diff_view(view, new_view)
                view = new_view
                await ws.send_json({"type": "state_delta", "tick": record.tick,
                                    "changes": changes})
                await ws.send_json({"type": "order_update", "tick": record.tick,
                                    **progress_view(runner.state)})
                if record.human_msg:
                    await ws.send_json({"type": "message", "sender": "human",
                                        "text": record.human_msg["text"],
                                        "template_id": record.human_msg["template_id"],
                                        "tick": record.tick})
                if record.agent_msg:
                    await ws.send_json({"type": "message", "sender": "agent",
                                        "text": record.agent_msg, "tick": record.tick})
                if record.reward_delta:
                    await ws.send_json({"type": "score", "tick": record.tick,
                                        "score": runner.state.score})
                await asyncio.sleep(max(0.0, period - (loop.time() - started)))
        except (WebSocketDisconnect, RuntimeError):
            pass  # client went away; fall through and persist the aborted log
        finally:
            stop.set()
            aborted = not runner.finished()
            log = runner.finalize(aborted=aborted)
            path = logs_path / f"episode_{int(time.time())}_{config.seed}.json"
            log.save(path)
            if not aborted:
                try:
                    await ws.send_json({
                        "type": "game_over",
                        "final_score": log.footer["final_score"],
                        "report": log.footer.get("metrics", {}),
                        "log_file": path.name,
                    })
                except (WebSocketDisconnect, RuntimeError):
                    pass

    ticker = asyncio.create_task(tick_loop())
    await input_loop()
    stop.set()
    try:
        await ticker
    except Exception:
        pass
    try:
        await ws.close()
    except Exception:
        pass


async def _run_replay(ws: WebSocket, join: dict, logs_path: Path):
    name = Path(str(join.get("log", ""))).name  # filenames only, no traversal
    path = logs_path / name
    if not path.is_file():
        await ws.send_json({"type": "error", "code": "log_not_found", "detail": name})
        await ws.close()
        return
    log = EpisodeLog.load(path)
    states: list[dict] = []
    report = replay_log(log, yield_states=lambda tick, s: states.append(client_state_view(s)))
    chat = []
    for record in log.ticks:
        if record.human_msg:
            chat.append({"tick": record.tick, "sender": "human",
                         "text": record.human_msg["text"]})
        if record.agent_msg:
            chat.append({"tick": record.tick, "sender": "agent", "text": record.agent_msg})

    # rebuild layout context for the renderer
    from .env.layout import load_layout
    from .env.engine import init_game

    layout_state = init_game(load_layout(log.header["layout_text"]),
                             GameConfig.from_dict(log.header["game_config"]),
                             log.header["seed"])
    await ws.send_json({
        "type": "replay_joined",
        "verified": report.ok,
        "ticks": len(states) - 1,
        "tick_hz": log.header["game_config"].get("tick_hz", 5),
        "final_score": log.footer.get("final_score", 0),
        "chat": chat,
        "layout": layout_view(layout_state),
    })
    cursor = 0
    playing = False
    await ws.send_json({"type": "state_full", "tick": 0, "state": states[0]})
    period = 1.0 / max(1, log.header["game_config"].get("tick_hz", 5))
    while True:
        try:
            if playing:
                frame = None
                try:
                    frame = await asyncio.wait_for(ws.receive_json(), timeout=period)
                except asyncio.TimeoutError:
                    pass
                if frame is None:
                    if cursor < len(states) - 1:
                        cursor += 1
                        await ws.send_json({"type": "state_full", "tick": cursor,
                                            "state": states[cursor]})
                    else:
                        playing = False
                        await ws.send_json({"type": "replay_done",
                                            "final_score": log.footer.get("final_score", 0)})
                    continue
            else:
                frame = await ws.receive_json()
        except (WebSocketDisconnect, RuntimeError):
            return
        if frame.get("type") != "replay_ctl":
            continue
        cmd = frame.get("cmd")
        if cmd == "play":
            playing = True
        elif cmd == "pause":
            playing = False
        elif cmd == "seek":
            cursor = max(0, min(len(states) - 1, int(frame.get("tick", 0))))
            await ws.send_json({"type": "state_full", "tick": cursor,
                                "state": states[cursor]})
