"""The agent's history buffer and its deterministic text summarizer."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..env.state import ControlAction, EnvEvent, EventKind


@dataclass(frozen=True)
class HistoryRecord:
    tick: int
    state_digest: str
    a_agent_control: ControlAction
    a_human_control: ControlAction
    a_agent_comm: str | None
    a_human_comm: str | None
    reward_delta: int


@dataclass(frozen=True)
class TickTrace:
    record: HistoryRecord
    events: tuple[EnvEvent, ...]


@dataclass
class HistoryBuffer:
    traces: list[TickTrace] = field(default_factory=list)

    def append(self, record: HistoryRecord, events) -> None:
        if self.traces and record.tick != self.traces[-1].record.tick + 1:
            raise ValueError("history ticks must be contiguous")
        if not self.traces and record.tick != 0:
            raise ValueError("history starts at tick 0")
        self.traces.append(TickTrace(record, tuple(events)))

    def window(self, ticks: int) -> list[TickTrace]:
        return self.traces[-ticks:]

    def __len__(self) -> int:
        return len(self.traces)


# events worth naming verbatim in the recent window
_SALIENT = {
    EventKind.SERVE, EventKind.ORDER_MISSED, EventKind.PAN_FIRE,
    EventKind.FIRE_EXTINGUISHED, EventKind.START_COOK, EventKind.BEEF_DONE,
    EventKind.BEEF_OVERCOOKED, EventKind.ASSEMBLE, EventKind.CHOP,
    EventKind.ORDER_SPAWNED,
}


def summarize_history(buffer: HistoryBuffer, budget_tokens: int = 1200,
                      recent_window: int = 75) -> str:
    """Deterministic summary: old history as per-actor event counts, the last
    `recent_window` ticks as salient event lines, newest state last."""
    if not buffer.traces:
        return "The game just started: no actions have been taken yet."

    recent = buffer.window(recent_window)
    older = buffer.traces[: max(0, len(buffer.traces) - recent_window)]

    lines: list[str] = []
    if older:
        counts: dict[tuple[str, str], int] = {}
        for trace in older:
            for event in trace.events:
                if event.kind in _SALIENT:
                    key = (event.actor, event.label or event.kind.value)
                    counts[key] = counts.get(key, 0) + 1
        msg_counts = {"agent": 0, "human": 0}
        for trace in older:
            if trace.record.a_agent_comm:
                msg_counts["agent"] += 1
            if trace.record.a_human_comm:
                msg_counts["human"] += 1
        lines.append(f"Earlier (ticks 0-{older[-1].record.tick}):")
        for (actor, label), count in sorted(counts.items()):
            lines.append(f"  {actor}: {label} x{count}")
        if msg_counts["agent"] or msg_counts["human"]:
            lines.append(
                f"  messages: agent {msg_counts['agent']}, human {msg_counts['human']}"
            )

    lines.append(f"Recent ticks {recent[0].record.tick}-{recent[-1].record.tick}:")
    for trace in recent:
        for event in trace.events:
            if event.kind in _SALIENT:
                lines.append(f"  t{event.tick} {event.actor}: {event.label or event.kind.value}")
        if trace.record.a_human_comm:
            lines.append(f'  t{trace.record.tick} human says: "{trace.record.a_human_comm}"')
        if trace.record.a_agent_comm:
            lines.append(f'  t{trace.record.tick} agent says: "{trace.record.a_agent_comm}"')
    lines.append("Now: " + buffer.traces[-1].record.state_digest)

    # crude token estimate: one token per 4 characters
    while len(lines) > 2 and sum(len(line) for line in lines) // 4 > budget_tokens:
        # drop the oldest recent-window detail lines first, never the state line
        for i, line in enumerate(lines):
            if line.startswith("  t"):
                del lines[i]
                break
        else:
            break
    return "\n".join(lines)
