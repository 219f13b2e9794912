"""Wire protocol over a real websocket (in-process test client)."""

import json

import pytest
from starlette.testclient import TestClient

import coopkitchen.server as server_mod
from coopkitchen.agent.comm import CommCondition
from coopkitchen.config import GameConfig
from coopkitchen.session import SessionConfig, run_session
from coopkitchen.server import create_app


@pytest.fixture(autouse=True)
def fast_countdown(monkeypatch):
    monkeypatch.setattr(server_mod, "COUNTDOWN_SECONDS", 0)


def fast_config(comm=CommCondition.BI_COMM, ticks=30):
    return SessionConfig(
        comm_condition=comm,
        tom_enabled=False,
        seed=1,
        game=GameConfig(episode_ticks=ticks, tick_hz=200),
    )


def collect_until(ws, wanted, limit=3000):
    frames = []
    for _ in range(limit):
        frame = ws.receive_json()
        frames.append(frame)
        if frame["type"] == wanted:
            return frames
    raise AssertionError(f"never saw frame {wanted}")


def test_join_and_full_game(tmp_path):
    app = create_app(fast_config(), logs_dir=str(tmp_path))
    with TestClient(app) as client:
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "join", "session": "t1"})
            joined = ws.receive_json()
            assert joined["type"] == "joined"
            assert joined["buttons_enabled"] is True
            assert joined["templates"]["3"] == "We need Lettuce"
            assert joined["layout"]["width"] == 13

            full = ws.receive_json()
            assert full["type"] == "state_full"
            assert full["tick"] == 0
            assert "chefs" in full["state"]

            frames = collect_until(ws, "game_over")
            kinds = {f["type"] for f in frames}
            assert "state_delta" in kinds
            assert "order_update" in kinds
            game_over = frames[-1]
            assert "final_score" in game_over
            assert (tmp_path / game_over["log_file"]).is_file()


def test_key_frames_steer_the_chef(tmp_path):
    app = create_app(fast_config(ticks=40), logs_dir=str(tmp_path))
    with TestClient(app) as client:
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "join"})
            ws.receive_json()  # joined
            start = ws.receive_json()["state"]["chefs"]["human"]["position"]
            for _ in range(12):
                ws.send_json({"type": "key", "action": "up"})
            frames = collect_until(ws, "game_over")
            deltas = [f for f in frames if f["type"] == "state_delta"]
            moved = [f["changes"]["chefs"]["human"]["position"]
                     for f in deltas if "chefs" in f["changes"]]
            assert any(pos != start for pos in moved)


def test_button_forbidden_in_agent_only(tmp_path):
    app = create_app(fast_config(CommCondition.A_COMM, ticks=60), logs_dir=str(tmp_path))
    with TestClient(app) as client:
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "join"})
            ws.receive_json()
            ws.receive_json()
            ws.send_json({"type": "button", "template_id": 3})
            frames = collect_until(ws, "error", limit=400)
            assert frames[-1]["code"] == "message_forbidden"


def test_button_allowed_in_bicomm_shows_message(tmp_path):
    app = create_app(fast_config(CommCondition.BI_COMM, ticks=60), logs_dir=str(tmp_path))
    with TestClient(app) as client:
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "join"})
            ws.receive_json()
            ws.receive_json()
            ws.send_json({"type": "button", "template_id": 3})
            frames = collect_until(ws, "game_over")
            messages = [f for f in frames if f["type"] == "message"]
            assert any(m["sender"] == "human" and m["text"] == "We need Lettuce"
                       for m in messages)


def test_replay_stream_and_seek(tmp_path):
    # produce a log first
    config = SessionConfig(seed=2, game=GameConfig(episode_ticks=40),
                           human_source={"type": "random", "seed": 5})
    log = run_session(config)
    log_path = tmp_path / "ep.json"
    log.save(log_path)

    app = create_app(fast_config(), logs_dir=str(tmp_path))
    with TestClient(app) as client:
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "join", "mode": "replay", "log": "ep.json"})
            joined = ws.receive_json()
            assert joined["type"] == "replay_joined"
            assert joined["verified"] is True
            assert joined["ticks"] == 40
            assert joined["final_score"] == log.footer["final_score"]

            first = ws.receive_json()
            assert first["type"] == "state_full" and first["tick"] == 0

            ws.send_json({"type": "replay_ctl", "cmd": "seek", "tick": 25})
            frame = ws.receive_json()
            assert frame["tick"] == 25

            ws.send_json({"type": "replay_ctl", "cmd": "play"})
            seen = ws.receive_json()
            assert seen["type"] == "state_full" and seen["tick"] == 26


def test_replay_missing_log(tmp_path):
    app = create_app(fast_config(), logs_dir=str(tmp_path))
    with TestClient(app) as client:
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "join", "mode": "replay", "log": "nope.json"})
            frame = ws.receive_json()
            assert frame["type"] == "error" and frame["code"] == "log_not_found"


def test_disconnect_midgame_marks_log_aborted(tmp_path):
    import time as time_mod

    from coopkitchen.episodes import EpisodeLog

    app = create_app(fast_config(ticks=100000), logs_dir=str(tmp_path))
    with TestClient(app) as client:
        with client.websocket_connect("/ws") as ws:
            ws.send_json({"type": "join"})
            ws.receive_json()
            ws.receive_json()
            collect_until(ws, "state_delta")
            # leaving the context closes the socket mid-game
    for _ in range(100):
        logs = list(tmp_path.glob("episode_*.json"))
        if logs:
            break
        time_mod.sleep(0.05)
    assert logs, "aborted session never wrote a log"
    log = EpisodeLog.load(logs[0])
    assert log.footer["aborted"] is True
    assert 0 < len(log.ticks) < 100000
