"""Macro actions, the rule-based decision core, and code-as-policy snippets.

The rule policy is a small finite-state machine over operating contexts:
firefighting beats everything, rescuing well-done beef comes next, then the
highest-priority order is progressed by preparing missing ingredients,
assembling, and serving. LLM-generated snippets override the rule policy
whenever their condition holds and they have not expired; each fires once.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from enum import Enum

from ..env.items import BeefState, BurgerKind, Ingredient, RECIPES
from ..env.state import GameState, Player
from . import worldview as wv
from .conditions import Condition, ConditionError, parse_condition


class MacroVerb(str, Enum):
    PREPARE = "Prepare"
    ASSEMBLE = "Assemble"
    PASS_ON = "PassOn"
    SERVE = "Serve"
    PUTOUT_FIRE = "PutoutFire"
    IDLE = "Idle"


PREPARE_OBJECTS = ("Beef", "Lettuce", "Bread")
PASS_OBJECTS = ("Plate", "Bread")


@dataclass(frozen=True)
class MacroAction:
    verb: MacroVerb
    obj: str | None = None
    issued_tick: int = 0
    source: str = "fsm"  # fsm | snippet | human_message

    def key(self) -> tuple:
        return (self.verb, self.obj)

    def describe(self) -> str:
        return f"{self.verb.value}({self.obj})" if self.obj else self.verb.value


def parse_macro(text: str, issued_tick: int = 0, source: str = "snippet") -> MacroAction | None:
    """Parse "Prepare(Beef)" style macro names; None for anything invalid."""
    m = re.fullmatch(r"\s*([A-Za-z_ ]+?)\s*(?:\(\s*([A-Za-z_]+)\s*\))?\s*", text or "")
    if not m:
        return None
    verb_raw = m.group(1).replace(" ", "").replace("_", "").lower()
    obj = m.group(2)
    verbs = {v.value.lower(): v for v in MacroVerb}
    verbs["putoutfire"] = MacroVerb.PUTOUT_FIRE
    verbs["passon"] = MacroVerb.PASS_ON
    verb = verbs.get(verb_raw)
    if verb is None:
        return None
    if verb == MacroVerb.PREPARE:
        obj = (obj or "").capitalize()
        if obj not in PREPARE_OBJECTS:
            return None
    elif verb in (MacroVerb.ASSEMBLE, MacroVerb.SERVE):
        kind = _burger_from_name(obj or "")
        if kind is None:
            return None
        obj = kind.value
    elif verb == MacroVerb.PASS_ON:
        obj = (obj or "").capitalize()
        if obj not in PASS_OBJECTS:
            return None
    else:
        obj = None
    return MacroAction(verb=verb, obj=obj, issued_tick=issued_tick, source=source)


def _burger_from_name(name: str) -> BurgerKind | None:
    key = name.replace("_", "").lower()
    for kind in BurgerKind:
        if kind.value.lower() == key:
            return kind
    return None


@dataclass
class PolicySnippet:
    condition: Condition
    macro: MacroAction
    issued_tick: int
    expires_tick: int
    consumed: bool = False

    def live(self, tick: int) -> bool:
        return not self.consumed and tick < self.expires_tick


@dataclass(frozen=True)
class OrderPriority:
    kind: BurgerKind | None
    order_id: int | None
    issued_tick: int


@dataclass(frozen=True)
class BehaviorGuideline:
    index: int
    text: str
    generated_at_tick: int


def merge_guideline(prev: BehaviorGuideline | None, new_text: str, tick: int) -> BehaviorGuideline:
    """Append-merge: earlier guidance is never dropped."""
    new_text = new_text.strip()
    if prev is None or not prev.text:
        return BehaviorGuideline(index=(prev.index + 1 if prev else 1),
                                 text=new_text, generated_at_tick=tick)
    return BehaviorGuideline(index=prev.index + 1,
                             text=prev.text + "\n" + new_text, generated_at_tick=tick)


@dataclass(frozen=True)
class FsmState:
    context: str = "idle"
    entered_tick: int = 0


# -- rule policy ---------------------------------------------------------------


def fsm_decide(
    state: GameState,
    fsm: FsmState,
    priority: OrderPriority | None = None,
    player: Player = Player.AGENT,
) -> tuple[MacroAction, FsmState]:
    macro = _decide(state, priority, player)
    context = _context_of(macro)
    if context != fsm.context:
        fsm = FsmState(context=context, entered_tick=state.tick)
    return replace(macro, issued_tick=state.tick), fsm


def _context_of(macro: MacroAction) -> str:
    if macro.verb == MacroVerb.PUTOUT_FIRE:
        return "firefighting"
    if macro.verb == MacroVerb.PREPARE:
        return f"preparing_{macro.obj.lower()}"
    if macro.verb == MacroVerb.ASSEMBLE:
        return "assembling"
    if macro.verb == MacroVerb.SERVE:
        return "delivering"
    if macro.verb == MacroVerb.PASS_ON:
        return "passing"
    return "idle"


def _decide(state: GameState, priority: OrderPriority | None, player: Player) -> MacroAction:
    if wv.burning_pans(state):
        return MacroAction(MacroVerb.PUTOUT_FIRE)

    # rescue well-done beef before it burns
    if wv.pans_with(state, BeefState.WELL_DONE):
        kind = _beef_sink_kind(state, priority)
        return MacroAction(MacroVerb.ASSEMBLE, kind.value)

    target = _target_order_kind(state, priority)
    if target is None:
        return MacroAction(MacroVerb.IDLE)

    recipe = RECIPES[target]
    if wv.complete_plate_location(state, player, target) is not None:
        return MacroAction(MacroVerb.SERVE, target.value)

    needs_beef = Ingredient.BEEF in recipe and not wv.beef_available(state, player, target)
    needs_lettuce = Ingredient.LETTUCE in recipe and not wv.lettuce_available(state, player, target)

    if needs_beef and not wv.beef_underway(state):
        return MacroAction(MacroVerb.PREPARE, "Beef")
    if needs_lettuce:
        return MacroAction(MacroVerb.PREPARE, "Lettuce")
    if not needs_beef:
        return MacroAction(MacroVerb.ASSEMBLE, target.value)

    # beef still cooking: get ahead on lettuce for another order, else idle
    for order in sorted(state.orders, key=lambda o: (o.deadline_tick, o.id)):
        if Ingredient.LETTUCE in RECIPES[order.kind] and not wv.lettuce_available(
            state, player, order.kind
        ):
            return MacroAction(MacroVerb.PREPARE, "Lettuce")
    return MacroAction(MacroVerb.IDLE)


def _target_order_kind(state: GameState, priority: OrderPriority | None) -> BurgerKind | None:
    if not state.orders:
        return None
    if priority is not None:
        if priority.order_id is not None:
            for order in state.orders:
                if order.id == priority.order_id:
                    return order.kind
        if priority.kind is not None and any(o.kind == priority.kind for o in state.orders):
            return priority.kind
    earliest = min(state.orders, key=lambda o: (o.deadline_tick, o.id))
    return earliest.kind


def _beef_sink_kind(state: GameState, priority: OrderPriority | None) -> BurgerKind:
    """Order kind that uses the well-done beef; BeefBurger as the fallback."""
    beef_orders = [o for o in state.orders if Ingredient.BEEF in RECIPES[o.kind]]
    if priority is not None and priority.kind is not None:
        if any(o.kind == priority.kind for o in beef_orders):
            return priority.kind
    if beef_orders:
        return min(beef_orders, key=lambda o: (o.deadline_tick, o.id)).kind
    return BurgerKind.BEEF_BURGER


# -- snippet selection -----------------------------------------------------------


def select_macro(
    state: GameState,
    fsm: FsmState,
    snippets: list[PolicySnippet],
    priority: OrderPriority | None = None,
    player: Player = Player.AGENT,
) -> tuple[MacroAction, FsmState]:
    """First live snippet whose condition holds wins and is consumed."""
    for snippet in snippets:
        if not snippet.live(state.tick):
            continue
        if snippet.condition.evaluate(state):
            snippet.consumed = True
            macro = replace(snippet.macro, issued_tick=state.tick, source="snippet")
            context = _context_of(macro)
            if context != fsm.context:
                fsm = FsmState(context=context, entered_tick=state.tick)
            return macro, fsm
    return fsm_decide(state, fsm, priority, player)


def prune_snippets(snippets: list[PolicySnippet], tick: int) -> list[PolicySnippet]:
    return [s for s in snippets if s.live(tick)]


# -- parsing the generator output --------------------------------------------------


def parse_snippet_payload(
    text: str, tick: int, lifetime: int
) -> tuple[list[PolicySnippet], OrderPriority | None]:
    """Parse generator output into snippets and an optional order directive.

    Accepts either a bare JSON list of {condition, macro} objects or an
    object with "snippets" and "priority_order"/"order" keys. Anything
    unparseable yields no snippets (the rule policy continues).
    """
    doc = _extract_json(text)
    if doc is None:
        return [], None

    raw_snippets = []
    priority_name = None
    if isinstance(doc, list):
        raw_snippets = doc
    elif isinstance(doc, dict):
        raw_snippets = doc.get("snippets", [])
        priority_name = doc.get("priority_order") or doc.get("order")
    snippets: list[PolicySnippet] = []
    for entry in raw_snippets:
        if not isinstance(entry, dict):
            continue
        macro = parse_macro(str(entry.get("macro", "")), issued_tick=tick)
        if macro is None:
            continue
        try:
            condition = parse_condition(str(entry.get("condition", "")))
        except ConditionError:
            continue
        snippets.append(PolicySnippet(
            condition=condition, macro=macro,
            issued_tick=tick, expires_tick=tick + lifetime,
        ))

    priority = None
    if priority_name:
        if isinstance(priority_name, int):
            priority = OrderPriority(kind=None, order_id=priority_name, issued_tick=tick)
        else:
            kind = _burger_from_name(str(priority_name))
            if kind is not None:
                priority = OrderPriority(kind=kind, order_id=None, issued_tick=tick)
    return snippets, priority


def _extract_json(text: str):
    """First balanced JSON value found in the text, tolerant of prose around it."""
    if not text:
        return None
    pairs = {"[": "]", "{": "}"}
    for start, ch in enumerate(text):
        if ch not in pairs:
            continue
        closer = pairs[ch]
        depth = 0
        for i in range(start, len(text)):
            if text[i] == ch:
                depth += 1
            elif text[i] == closer:
                depth -= 1
                if depth == 0:
                    try:
                        return json.loads(text[start:i + 1])
                    except json.JSONDecodeError:
                        break
    return None
