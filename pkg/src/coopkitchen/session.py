"""Session orchestration: the tick loop, human sources, logging, replay.

A session couples the engine, the agent controller, a human action source
and an episode log. `SessionRunner.tick_once` advances exactly one tick and
is driven either by `run()` (headless, as fast as possible) or by the
realtime server loop. Message gating is structural: a human message is
rendered only when the session's communication condition allows that
direction, whatever the source (wire client or script).
"""

from __future__ import annotations

import random
import statistics
import time
from dataclasses import dataclass, field

from . import __version__
from .agent.comm import CommCondition
from .agent.controller import AgentController, RuleAgent
from .config import GameConfig
from .env.engine import init_game, step
from .env.layout import Layout, load_bundled, load_layout
from .env.state import ControlAction, GameState, Player, state_digest, state_hash
from .episodes import EpisodeLog, TickRecord
from .gateway import Gateway, make_backend
from .agent.history import HistoryRecord
from .messages import HumanMessage, render_template


@dataclass(frozen=True)
class SessionConfig:
    comm_condition: CommCondition = CommCondition.NO_COMM
    tom_enabled: bool = False
    seed: int = 0
    layout_name: str = "counter_circuit"
    layout_text: str | None = None  # overrides layout_name when set
    game: GameConfig = field(default_factory=GameConfig)
    backend_mode: str = "mock"  # mock | replay | live
    mock_scripts: dict | None = None
    live_config: dict | None = None
    human_source: dict = field(default_factory=lambda: {"type": "idle"})

    def layout(self) -> Layout:
        if self.layout_text is not None:
            return load_layout(self.layout_text)
        return load_bundled(self.layout_name)

    def echo(self) -> dict:
        return {
            "comm_condition": self.comm_condition.value,
            "tom_flags": {
                "enabled": self.tom_enabled,
                "infer_with_send_message": self.comm_condition.agent_may_send,
                "infer_with_receive_message": self.comm_condition.human_may_send,
            },
            "seed": self.seed,
            "layout_name": self.layout_name,
            "backend_mode": self.backend_mode,
            "human_source": dict(self.human_source),
            "game_config": self.game.to_dict(),
        }


# -- human sources ----------------------------------------------------------------


class IdleSource:
    """A human who never presses anything."""

    def next(self, state: GameState):
        return ControlAction.NOOP, None


class ScriptSource:
    """Fixed per-tick actions and message button presses."""

    def __init__(self, actions: dict[int, str], messages: dict[int, int] | None = None):
        self.actions = {int(k): ControlAction(v) for k, v in actions.items()}
        self.messages = {int(k): int(v) for k, v in (messages or {}).items()}

    def next(self, state: GameState):
        return (
            self.actions.get(state.tick, ControlAction.NOOP),
            self.messages.get(state.tick),
        )


class RandomScriptSource:
    """Seeded random keyboard mashing with occasional message presses.

    The full script is materialized up front so a given seed always produces
    the same inputs, run after run.
    """

    def __init__(self, seed: int, ticks: int, message_every: int = 80):
        rng = random.Random(seed)
        actions = list(ControlAction)
        self.script = [rng.choice(actions) for _ in range(ticks)]
        self.messages = {}
        tick = message_every
        while tick < ticks:
            self.messages[tick] = rng.randrange(1, 12)
            tick += message_every + rng.randrange(0, 40)

    def next(self, state: GameState):
        tick = state.tick
        action = self.script[tick] if tick < len(self.script) else ControlAction.NOOP
        return action, self.messages.get(tick)


class RuleSource:
    """The fixed rule-based teammate driving the human chef."""

    def __init__(self):
        self.agent = RuleAgent(Player.HUMAN)

    def next(self, state: GameState):
        return self.agent.decide(state), None


class QueueSource:
    """Wire-client input: latest key within the tick window wins."""

    def __init__(self):
        self._action: ControlAction | None = None
        self._message: int | None = None

    def push_key(self, action: ControlAction) -> None:
        self._action = action

    def push_button(self, template_id: int) -> None:
        self._message = template_id

    def next(self, state: GameState):
        action = self._action or ControlAction.NOOP
        message = self._message
        self._action = None
        self._message = None
        return action, message


def make_human_source(spec: dict, config: "SessionConfig"):
    kind = spec.get("type", "idle")
    if kind == "idle":
        return IdleSource()
    if kind == "script":
        return ScriptSource(spec.get("actions", {}), spec.get("messages"))
    if kind == "random":
        return RandomScriptSource(int(spec.get("seed", 0)), config.game.episode_ticks)
    if kind == "rule":
        return RuleSource()
    if kind == "wire":
        return QueueSource()
    raise ValueError(f"unknown human source {kind!r}")


# -- the runner ---------------------------------------------------------------------


class SessionRunner:
    def __init__(self, config: SessionConfig, human_source=None, transcript=None):
        self.config = config
        layout = config.layout()
        self.state: GameState = init_game(layout, config.game, config.seed)
        backend = make_backend(
            config.backend_mode,
            mock_scripts=config.mock_scripts,
            transcript=transcript,
            live_config=config.live_config,
        )
        self.gateway = Gateway(backend)
        self.controller = AgentController(
            self.gateway, config.comm_condition, config.tom_enabled
        )
        self.human_source = human_source or make_human_source(config.human_source, config)
        self.protocol_errors = 0
        self.log = EpisodeLog(header={
            **config.echo(),
            "layout_text": layout.text,
            "code_version": __version__,
            "initial_state_hash": state_hash(self.state),
            "started_at": time.time(),
        })

    def finished(self) -> bool:
        return self.state.finished()

    def tick_once(self) -> TickRecord:
        state = self.state
        tick = state.tick

        human_action, template_id = self.human_source.next(state)
        human_msg: HumanMessage | None = None
        if template_id is not None:
            if self.config.comm_condition.human_may_send:
                human_msg = render_template(template_id, tick)
                self.controller.receive_human_message(human_msg)
            else:
                self.protocol_errors += 1

        agent_action, agent_msg = self.controller.decide(state)
        digest = state_digest(state)
        new_state, events, reward = step(state, agent_action, human_action)

        record = HistoryRecord(
            tick=tick,
            state_digest=digest,
            a_agent_control=agent_action,
            a_human_control=human_action,
            a_agent_comm=agent_msg.text if agent_msg else None,
            a_human_comm=human_msg.text if human_msg else None,
            reward_delta=reward,
        )
        self.controller.observe(record, events)

        tick_record = TickRecord(
            tick=tick,
            state_digest=digest,
            a_agent=agent_action,
            a_human=human_action,
            agent_msg=agent_msg.text if agent_msg else None,
            human_msg=(
                {"template_id": human_msg.template_id, "text": human_msg.text}
                if human_msg else None
            ),
            reward_delta=reward,
            events=tuple(events),
            state_hash=state_hash(new_state),
        )
        self.log.ticks.append(tick_record)
        self.state = new_state
        return tick_record

    def finalize(self, aborted: bool = False) -> EpisodeLog:
        self.log.transcript = list(self.gateway.transcript)
        self.log.footer = {
            "final_score": self.state.score,
            "aborted": aborted,
            "protocol_errors": self.protocol_errors,
        }
        if not aborted:
            from .metrics import compute_report

            self.log.footer["metrics"] = compute_report(self.log).to_dict()
        return self.log

    def run(self) -> EpisodeLog:
        while not self.finished():
            self.tick_once()
        return self.finalize()


def run_session(config: SessionConfig, human_source=None, transcript=None) -> EpisodeLog:
    return SessionRunner(config, human_source=human_source, transcript=transcript).run()


# -- replay verification ----------------------------------------------------------------


@dataclass
class ReplayReport:
    ok: bool
    ticks_verified: int
    first_mismatch_tick: int | None
    replayed_score: int
    logged_score: int

    def to_dict(self) -> dict:
        return self.__dict__.copy()


def replay_log(log: EpisodeLog, yield_states=None) -> ReplayReport:
    """Re-execute the engine from the logged seed and actions, verifying
    every per-tick state hash. `yield_states(tick, state)` streams states."""
    layout = load_layout(log.header["layout_text"])
    config = GameConfig.from_dict(log.header["game_config"])
    state = init_game(layout, config, log.header["seed"])
    if state_hash(state) != log.header["initial_state_hash"]:
        return ReplayReport(False, 0, -1, state.score,
                            log.footer.get("final_score", 0))
    if yield_states:
        yield_states(0, state)
    verified = 0
    for record in log.ticks:
        state, _, _ = step(state, record.a_agent, record.a_human)
        if state_hash(state) != record.state_hash:
            return ReplayReport(False, verified, record.tick, state.score,
                                log.footer.get("final_score", 0))
        verified += 1
        if yield_states:
            yield_states(record.tick + 1, state)
    logged = log.footer.get("final_score", 0)
    return ReplayReport(state.score == logged, verified, None, state.score, logged)


# -- validation harness -------------------------------------------------------------------


def run_validation(
    n_games: int,
    tom_enabled: bool,
    backend_mode: str = "mock",
    base_seed: int = 0,
    live_config: dict | None = None,
) -> dict:
    """LLM agent vs. the fixed rule-based teammate, communication off."""
    scores: list[int] = []
    failures: list[dict] = []
    for i in range(n_games):
        config = SessionConfig(
            comm_condition=CommCondition.NO_COMM,
            tom_enabled=tom_enabled,
            seed=base_seed + i,
            backend_mode=backend_mode,
            live_config=live_config,
            human_source={"type": "rule"},
        )
        try:
            log = run_session(config)
            scores.append(log.footer["final_score"])
        except Exception as exc:  # backend failures must not sink the batch
            failures.append({"game": i, "error": str(exc)})
    result = {
        "tom": tom_enabled,
        "games": n_games,
        "scores": scores,
        "mean": statistics.mean(scores) if scores else None,
        "sd": statistics.stdev(scores) if len(scores) > 1 else 0.0,
        "failed": failures,
    }
    return result


def validation_table(results: list[dict]) -> str:
    """The two-row comparison table the validation harness prints."""
    lines = [f"{'agent':<12} {'games':>5} {'mean':>8} {'sd':>8}  scores"]
    for result in results:
        name = "with ToM" if result["tom"] else "without ToM"
        mean = f"{result['mean']:.1f}" if result["mean"] is not None else "n/a"
        lines.append(
            f"{name:<12} {len(result['scores']):>5} {mean:>8} {result['sd']:>8.2f}  "
            + ",".join(str(s) for s in result["scores"])
        )
        for failure in result["failed"]:
            lines.append(f"  game {failure['game']} failed: {failure['error']}")
    return "\n".join(lines)
