"""Belief inference about the human partner from interaction history.

Inference runs on a fixed cadence (every 75 ticks by default). The rendered
prompt splices the send/receive-message sub-sections only when the session's
communication condition makes those channels exist, so the same module
serves every experimental cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from ..gateway import CompletionRequest, CompletionResult, Gateway, Purpose
from .history import HistoryBuffer, summarize_history

TOM_INTERVAL = 75
NO_PRIOR_BELIEF = "(no prior belief yet)"


@dataclass(frozen=True)
class Belief:
    index: int
    text: str
    generated_at_tick: int


@dataclass(frozen=True)
class ToMFlags:
    enabled: bool
    infer_with_send_message: bool = True
    infer_with_receive_message: bool = True


def tom_due(tick: int, interval: int = TOM_INTERVAL, warmup_at_zero: bool = False) -> bool:
    if tick == 0:
        return warmup_at_zero
    return tick % interval == 0


def _template(name: str) -> str:
    return resources.files("coopkitchen.prompts").joinpath(name).read_text()


def render_tom_prompt(history: HistoryBuffer, prev: Belief | None, flags: ToMFlags) -> str:
    send_section = _template("tom_send.txt") if flags.infer_with_send_message else ""
    receive_section = _template("tom_receive.txt") if flags.infer_with_receive_message else ""
    return _template("tom.txt").format(
        history_summary=summarize_history(history),
        prev_belief=prev.text if prev else NO_PRIOR_BELIEF,
        send_message_section=send_section,
        receive_message_section=receive_section,
    )


def absorb_tom_result(result: CompletionResult, prev: Belief | None, tick: int) -> Belief | None:
    """New belief on success; the previous one (index unchanged) on failure."""
    if not result.ok or not result.text or not result.text.strip():
        return prev
    return Belief(index=(prev.index + 1 if prev else 1),
                  text=result.text.strip(), generated_at_tick=tick)


def infer_belief(
    history: HistoryBuffer,
    prev: Belief | None,
    flags: ToMFlags,
    gateway: Gateway,
    tick: int,
) -> Belief | None:
    """Blocking render+complete+absorb; the tick loop uses the split pieces."""
    if not flags.enabled:
        raise ValueError("belief inference invoked with ToM disabled")
    request = CompletionRequest(
        purpose=Purpose.TOM_INFERENCE,
        prompt=render_tom_prompt(history, prev, flags),
        temperature=0.3,
        request_tick=tick,
    )
    return absorb_tom_result(gateway.complete(request), prev, tick)
