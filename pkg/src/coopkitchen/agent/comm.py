"""The agent's verbal channel: decide whether to speak and what to say.

Silence is an explicit token the backend is instructed to emit, so a quiet
model is distinguishable from a failed call (both end in no message, but
only the failure is logged as an error). Messages are clipped to ten words.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from importlib import resources

from ..gateway import CompletionRequest, CompletionResult, Purpose

COMM_INTERVAL = 25
WORD_LIMIT = 10
SILENCE_TOKEN = "[SILENCE]"
REPLY_COOLDOWN = 10  # min ticks between agent messages


class CommCondition(str, Enum):
    BI_COMM = "bi"
    H_COMM = "human_only"
    A_COMM = "agent_only"
    NO_COMM = "none"

    @property
    def agent_may_send(self) -> bool:
        return self in (CommCondition.BI_COMM, CommCondition.A_COMM)

    @property
    def human_may_send(self) -> bool:
        return self in (CommCondition.BI_COMM, CommCondition.H_COMM)


@dataclass(frozen=True)
class AgentMessage:
    tick: int
    text: str
    trigger: str  # "periodic" | "human_message_reply"


def comm_due(tick: int, pending_human_message: bool, interval: int = COMM_INTERVAL) -> bool:
    if pending_human_message:
        return True
    return tick > 0 and tick % interval == 0


def word_count(text: str) -> int:
    return len([w for w in re.split(r"\s+", text.strip()) if w.strip(".,!?;:'\"()")])


def truncate_words(text: str, limit: int = WORD_LIMIT) -> str:
    words = text.strip().split()
    return " ".join(words[:limit])


def render_comm_prompt(history_summary: str, state_digest: str, belief_text: str | None,
                       guideline_text: str | None, human_message: str | None) -> str:
    template = resources.files("coopkitchen.prompts").joinpath("communication.txt").read_text()
    belief_section = (
        f"\nYour belief about the partner:\n{belief_text}\n" if belief_text else ""
    )
    guideline_section = (
        f"\nYour behavior guideline:\n{guideline_text}\n" if guideline_text else ""
    )
    human_section = (
        f'\nThe partner just sent: "{human_message}"\n' if human_message else ""
    )
    return template.format(
        window=COMM_INTERVAL,
        history_summary=history_summary,
        state_digest=state_digest,
        belief_section=belief_section,
        guideline_section=guideline_section,
        human_message_section=human_section,
        silence_token=SILENCE_TOKEN,
    )


def absorb_comm_result(result: CompletionResult, tick: int, trigger: str) -> tuple[AgentMessage | None, bool]:
    """(message, needs_retry): silence and failures give (None, False); an
    over-long reply asks for one retry before truncation."""
    if not result.ok or result.text is None:
        return None, False
    text = result.text.strip()
    if not text or SILENCE_TOKEN in text:
        return None, False
    if word_count(text) > WORD_LIMIT:
        return None, True
    return AgentMessage(tick=tick, text=text, trigger=trigger), False


def force_truncate(result: CompletionResult, tick: int, trigger: str) -> AgentMessage | None:
    """Second over-long answer: clip it rather than ask again."""
    if not result.ok or result.text is None:
        return None
    text = result.text.strip()
    if not text or SILENCE_TOKEN in text:
        return None
    return AgentMessage(tick=tick, text=truncate_words(text), trigger=trigger)


def comm_request(prompt: str, tick: int) -> CompletionRequest:
    return CompletionRequest(purpose=Purpose.COMMUNICATION, prompt=prompt,
                             temperature=0.7, max_tokens=60, request_tick=tick)
