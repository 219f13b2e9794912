"""Objective teamwork metrics from an episode log.

Key events are non-repeatable burger-preparation milestones. Each qualifying
interaction is classified by its action label, then attributed to the burger
lineage it belongs to (the served plate plus the ingredient items on it).
Within a lineage, each key-event kind is credited once, to the chef whose
action committed it (the last qualifying action).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from enum import Enum

from .env.state import EnvEvent, EventKind
from .episodes import EpisodeLog


class KeyEventKind(str, Enum):
    COOK_BEEF = "CookBeef"
    USE_BEEF = "UseBeef"
    PREPARE_LETTUCE = "PrepareLettuce"
    USE_LETTUCE = "UseLettuce"
    USE_BREAD = "UseBread"
    USE_PLATE = "UsePlate"
    SERVE = "Serve"


@dataclass(frozen=True)
class KeyEvent:
    kind: KeyEventKind
    actor: str
    tick: int
    label: str
    item_id: int
    burger_lineage_id: int | None = None  # order id of the correct serve


@dataclass
class MetricsReport:
    task_score: int
    agent_contribution_rate: float | None  # percent, None when no key events
    failure_count: dict = field(default_factory=dict)
    message_count: dict = field(default_factory=dict)
    key_events: dict = field(default_factory=dict)  # per-actor counts
    diagnostics: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "task_score": self.task_score,
            "agent_contribution_rate": self.agent_contribution_rate,
            "failure_count": self.failure_count,
            "message_count": self.message_count,
            "key_events": self.key_events,
            "diagnostics": self.diagnostics,
        }


def classify_key_actions(events: list[EnvEvent]) -> list[KeyEvent]:
    """Map qualifying interactions to key events; world/non-key events ignored."""
    out: list[KeyEvent] = []
    for ev in events:
        kind = _classify_one(ev)
        if kind is None:
            continue
        item_id = ev.payload.get("item_id", ev.payload.get("plate_id", 0))
        if kind == KeyEventKind.USE_PLATE or kind == KeyEventKind.SERVE:
            item_id = ev.payload.get("plate_id", ev.payload.get("item_id", 0))
        out.append(KeyEvent(kind=kind, actor=ev.actor, tick=ev.tick, label=ev.label,
                            item_id=item_id))
    return out


def _classify_one(ev: EnvEvent) -> KeyEventKind | None:
    label = ev.label
    if ev.kind == EventKind.START_COOK:
        return KeyEventKind.COOK_BEEF
    if label == "Get Beef from Station":
        return KeyEventKind.COOK_BEEF
    if label == "Plate Well-done Beef from Pan":
        return KeyEventKind.USE_BEEF
    if label in ("Get Lettuce from Station", "Put Lettuce onto Cutboard", "Chop Lettuce"):
        return KeyEventKind.PREPARE_LETTUCE
    if ev.kind == EventKind.ASSEMBLE:
        ingredient = ev.payload.get("ingredient")
        if ingredient == "lettuce":
            return KeyEventKind.USE_LETTUCE
        if ingredient == "bread":
            return KeyEventKind.USE_BREAD
        if ingredient == "beef":
            return KeyEventKind.USE_BEEF
    if label == "Get Bread from Station":
        return KeyEventKind.USE_BREAD
    if label == "Get Plate from Station":
        return KeyEventKind.USE_PLATE
    if ev.kind == EventKind.SERVE and ev.payload.get("result") == "correct":
        return KeyEventKind.SERVE
    return None


def attribute_lineage(
    events: list[EnvEvent], key_events: list[KeyEvent]
) -> tuple[list[KeyEvent], dict]:
    """Keep key events whose item belongs to a correctly served burger.

    For every correct serve, the engine records the served plate id and the
    ids of the ingredient items on it. Within each lineage the last
    qualifying action per kind wins (the committing action). Returns the
    retained key events plus diagnostics about orphans.
    """
    serves = [
        ev for ev in events
        if ev.kind == EventKind.SERVE and ev.payload.get("result") == "correct"
    ]
    retained: list[KeyEvent] = []
    served_items: set[int] = set()
    for serve in serves:
        lineage_id = serve.payload["order_id"]
        members = set(serve.payload["lineage"])
        served_items |= members
        by_kind: dict[KeyEventKind, KeyEvent] = {}
        for ke in key_events:
            if ke.item_id in members and ke.tick <= serve.tick:
                if ke.kind == KeyEventKind.SERVE and ke.tick != serve.tick:
                    continue
                by_kind[ke.kind] = ke  # events are tick-ordered: later wins
        for ke in by_kind.values():
            retained.append(
                KeyEvent(ke.kind, ke.actor, ke.tick, ke.label, ke.item_id, lineage_id)
            )
    retained.sort(key=lambda k: (k.tick, k.kind.value))
    orphan_count = sum(1 for ke in key_events if ke.item_id not in served_items)
    return retained, {"orphan_key_events": orphan_count, "lineages": len(serves)}


def contribution_rate(key_events: list[KeyEvent]) -> float | None:
    """Agent share of lineage-filtered key events, in percent; None when empty."""
    agent = sum(1 for k in key_events if k.actor == "agent")
    human = sum(1 for k in key_events if k.actor == "human")
    total = agent + human
    if total == 0:
        return None
    return agent / total * 100.0


def compute_report(log: EpisodeLog) -> MetricsReport:
    expected = log.header.get("game_config", {}).get("episode_ticks", 500)
    if len(log.ticks) != expected and not log.footer.get("aborted"):
        last = log.ticks[-1].tick if log.ticks else None
        raise ValueError(f"truncated log: expected {expected} ticks, last recorded tick {last}")

    events = [e for rec in log.ticks for e in rec.events]
    key_events = classify_key_actions(events)
    lineage_events, diagnostics = attribute_lineage(events, key_events)
    rate = contribution_rate(lineage_events)

    missed = sum(1 for e in events if e.kind == EventKind.ORDER_MISSED)
    wrong = sum(
        1 for e in events if e.kind == EventKind.SERVE and e.payload.get("result") == "wrong"
    )
    fires = sum(1 for e in events if e.kind == EventKind.PAN_FIRE)

    agent_msgs = sum(1 for rec in log.ticks if rec.agent_msg)
    human_msgs = 0
    by_template: dict[str, int] = {}
    for rec in log.ticks:
        if rec.human_msg:
            human_msgs += 1
            key = str(rec.human_msg["template_id"])
            by_template[key] = by_template.get(key, 0) + 1

    per_actor = {
        "agent": sum(1 for k in lineage_events if k.actor == "agent"),
        "human": sum(1 for k in lineage_events if k.actor == "human"),
    }
    score = log.footer.get("final_score", 0)
    return MetricsReport(
        task_score=score,
        agent_contribution_rate=rate,
        failure_count={
            "missed": missed,
            "wrong_serve": wrong,
            "fires": fires,
            "total": missed + wrong + fires,
        },
        message_count={"agent": agent_msgs, "human": human_msgs, "by_template": by_template},
        key_events=per_actor,
        diagnostics=diagnostics,
    )


def report_text(report: MetricsReport) -> str:
    lines = [
        "== episode metrics ==",
        f"task score           : {report.task_score}",
        f"agent contribution   : "
        + (f"{report.agent_contribution_rate:.2f}%" if report.agent_contribution_rate is not None
           else "n/a (no key events)"),
        f"key events agent     : {report.key_events.get('agent', 0)}",
        f"key events human     : {report.key_events.get('human', 0)}",
        f"failures             : {report.failure_count['total']}"
        f" (missed {report.failure_count['missed']},"
        f" wrong {report.failure_count['wrong_serve']},"
        f" fires {report.failure_count['fires']})",
        f"messages agent/human : {report.message_count['agent']}/{report.message_count['human']}",
    ]
    for template, count in sorted(report.message_count.get("by_template", {}).items(),
                                  key=lambda kv: int(kv[0])):
        lines.append(f"  template {template}: {count}")
    return "\n".join(lines)


CSV_FIELDS = [
    "task_score", "agent_contribution_rate", "key_events_agent", "key_events_human",
    "failures_total", "failures_missed", "failures_wrong", "failures_fires",
    "messages_agent", "messages_human",
]


def report_csv_row(report: MetricsReport, header: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    if header:
        writer.writerow(CSV_FIELDS)
    writer.writerow([
        report.task_score,
        f"{report.agent_contribution_rate:.4f}" if report.agent_contribution_rate is not None else "",
        report.key_events.get("agent", 0),
        report.key_events.get("human", 0),
        report.failure_count["total"],
        report.failure_count["missed"],
        report.failure_count["wrong_serve"],
        report.failure_count["fires"],
        report.message_count["agent"],
        report.message_count["human"],
    ])
    return buf.getvalue()
