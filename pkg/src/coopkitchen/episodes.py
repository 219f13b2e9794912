"""Episode logs: append-only, replayable records of one 500-tick game.

The episode hash deliberately covers only behavior (seed, layout, config,
conditions, per-tick records, score, and the request/response transcript).
Backend mode, latencies and wall-clock timestamps are echoed in the header
for humans but excluded, so a Mock-recorded episode and its Replay re-run
hash identically.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

from .env.state import ControlAction, EnvEvent


@dataclass(frozen=True)
class TickRecord:
    tick: int
    state_digest: str
    a_agent: ControlAction
    a_human: ControlAction
    agent_msg: str | None
    human_msg: dict | None  # {"template_id": int, "text": str}
    reward_delta: int
    events: tuple[EnvEvent, ...]
    state_hash: str  # hash of the state after this tick's step

    def to_dict(self) -> dict:
        return {
            "tick": self.tick,
            "state_digest": self.state_digest,
            "a_agent": self.a_agent.value,
            "a_human": self.a_human.value,
            "agent_msg": self.agent_msg,
            "human_msg": self.human_msg,
            "reward_delta": self.reward_delta,
            "events": [e.to_dict() for e in self.events],
            "state_hash": self.state_hash,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TickRecord":
        return cls(
            tick=d["tick"],
            state_digest=d["state_digest"],
            a_agent=ControlAction(d["a_agent"]),
            a_human=ControlAction(d["a_human"]),
            agent_msg=d["agent_msg"],
            human_msg=d["human_msg"],
            reward_delta=d["reward_delta"],
            events=tuple(EnvEvent.from_dict(e) for e in d["events"]),
            state_hash=d["state_hash"],
        )


@dataclass(frozen=True)
class TranscriptEntry:
    seq: int  # per-purpose sequence number, used as the replay key
    purpose: str
    tick: int
    request: str
    response: str | None
    error: str | None = None
    latency_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "seq": self.seq,
            "purpose": self.purpose,
            "tick": self.tick,
            "request": self.request,
            "response": self.response,
            "error": self.error,
            "latency_ms": self.latency_ms,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "TranscriptEntry":
        return cls(d["seq"], d["purpose"], d["tick"], d["request"], d["response"],
                   d.get("error"), d.get("latency_ms", 0.0))


@dataclass
class EpisodeLog:
    header: dict
    ticks: list[TickRecord] = field(default_factory=list)
    transcript: list[TranscriptEntry] = field(default_factory=list)
    footer: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "header": self.header,
            "ticks": [t.to_dict() for t in self.ticks],
            "transcript": [t.to_dict() for t in self.transcript],
            "footer": self.footer,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EpisodeLog":
        return cls(
            header=d["header"],
            ticks=[TickRecord.from_dict(t) for t in d["ticks"]],
            transcript=[TranscriptEntry.from_dict(t) for t in d["transcript"]],
            footer=d["footer"],
        )

    def save(self, path) -> None:
        with open(path, "w") as fh:
            json.dump(self.to_dict(), fh)

    @classmethod
    def load(cls, path) -> "EpisodeLog":
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def episode_hash(self) -> str:
        doc = {
            "seed": self.header.get("seed"),
            "layout": self.header.get("layout_text"),
            "game_config": self.header.get("game_config"),
            "comm_condition": self.header.get("comm_condition"),
            "tom": self.header.get("tom_flags"),
            "initial_state_hash": self.header.get("initial_state_hash"),
            "aborted": self.footer.get("aborted", False),
            "final_score": self.footer.get("final_score"),
            "ticks": [t.to_dict() for t in self.ticks],
            "transcript": [
                {"purpose": t.purpose, "seq": t.seq, "tick": t.tick,
                 "request": t.request, "response": t.response, "error": t.error}
                for t in self.transcript
            ],
        }
        blob = json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()
        return hashlib.sha256(blob).hexdigest()
