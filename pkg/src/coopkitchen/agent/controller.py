"""Per-tick agent orchestration.

Each tick, in order: absorb finished gateway work (beliefs, snippets,
guidelines, messages), note an incoming human message, schedule whatever is
due (never more than one in-flight request per purpose), then pick and
execute a macro. Exactly one control action comes out every tick no matter
what the gateway is doing, and completions are only ever applied at a tick
at or after the tick that requested them.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from importlib import resources

from ..env.state import ControlAction, GameState, Player, state_digest
from ..gateway import CompletionRequest, Gateway, Purpose
from ..messages import HumanMessage, macro_for_template
from . import comm as comm_mod
from .comm import AgentMessage, CommCondition, SILENCE_TOKEN
from .executor import MacroStatus, execute_macro
from .history import HistoryBuffer, HistoryRecord, summarize_history
from .policy import (
    BehaviorGuideline,
    FsmState,
    MacroAction,
    MacroVerb,
    OrderPriority,
    PolicySnippet,
    merge_guideline,
    parse_macro,
    parse_snippet_payload,
    prune_snippets,
    select_macro,
)
from .tom import Belief, ToMFlags, absorb_tom_result, render_tom_prompt, tom_due

SNIPPET_INTERVAL = 25
SNIPPET_LIFETIME = 25
REFLECTION_INTERVAL = 75
REFLECTION_OFFSET = 38  # half a ToM interval, so the two never burst together
FSM_REEVAL_INTERVAL = 25


def derive_tom_flags(tom_enabled: bool, condition: CommCondition) -> ToMFlags:
    return ToMFlags(
        enabled=tom_enabled,
        infer_with_send_message=condition.agent_may_send,
        infer_with_receive_message=condition.human_may_send,
    )


from ..env.state import DIRECTION_ORDER, Direction  # noqa: E402

_DIR_ACTIONS = {
    Direction.UP: ControlAction.UP,
    Direction.DOWN: ControlAction.DOWN,
    Direction.LEFT: ControlAction.LEFT,
    Direction.RIGHT: ControlAction.RIGHT,
}

_JIGGLE_ORDER = {
    Player.AGENT: (Direction.UP, Direction.DOWN, Direction.LEFT, Direction.RIGHT),
    Player.HUMAN: (Direction.DOWN, Direction.UP, Direction.RIGHT, Direction.LEFT),
}


class _StallGuard:
    """Breaks symmetric movement deadlocks between two scripted chefs.

    When both chefs contend for the same cell every tick, the engine blocks
    both forever. After a few consecutive blocked move attempts (thresholds
    differ per player slot, so exactly one side yields first) the chef takes
    a deterministic sidestep instead.
    """

    def __init__(self, player: Player):
        self.player = player
        self.threshold = 2 if player == Player.AGENT else 3
        self.prev_pos = None
        self.prev_was_move = False
        self.blocked = 0

    def adjust(self, state: GameState, action: ControlAction) -> ControlAction:
        pos = state.chefs[self.player].position
        if self.prev_was_move and self.prev_pos == pos:
            self.blocked += 1
        else:
            self.blocked = 0
        direction = action.direction()
        self.prev_pos = pos
        self.prev_was_move = direction is not None

        if direction is not None and self.blocked >= self.threshold:
            other = state.chefs[self.player.other()].position
            for alt in _JIGGLE_ORDER[self.player]:
                if alt == direction:
                    continue
                dr, dc = alt.delta
                cell = (pos[0] + dr, pos[1] + dc)
                if state.layout.is_floor(cell) and cell != other:
                    self.blocked = 0
                    return _DIR_ACTIONS[alt]
        return action


class RuleAgent:
    """FSM-only controller: no gateway, no snippets, no belief, no messages.

    Serves as the fixed rule-based teammate in validation runs and as a
    scripted stand-in for the human chef.
    """

    def __init__(self, player: Player):
        self.player = player
        self.fsm = FsmState()
        self.current: MacroAction | None = None
        self._stall = _StallGuard(player)

    def decide(self, state: GameState) -> ControlAction:
        for _ in range(4):
            if self.current is None:
                self.current, self.fsm = select_macro(state, self.fsm, [], None, self.player)
            elif state.tick > 0 and state.tick % FSM_REEVAL_INTERVAL == 0:
                candidate, fsm = select_macro(state, self.fsm, [], None, self.player)
                if candidate.key() != self.current.key():
                    self.current, self.fsm = candidate, fsm
            result = execute_macro(self.current, state, self.player)
            if result.status == MacroStatus.IN_PROGRESS:
                return self._stall.adjust(state, result.action)
            self.current = None
        return ControlAction.NOOP


@dataclass
class _CommAttempt:
    trigger: str
    human_text: str | None
    retried: bool = False
    prompt: str = ""


class AgentController:
    """The full LLM-driven agent for one player slot."""

    def __init__(
        self,
        gateway: Gateway,
        comm_condition: CommCondition,
        tom_enabled: bool,
        player: Player = Player.AGENT,
    ):
        self.gateway = gateway
        self.condition = comm_condition
        self.flags = derive_tom_flags(tom_enabled, comm_condition)
        self.player = player

        self.history = HistoryBuffer()
        self.belief: Belief | None = None
        self.guideline: BehaviorGuideline | None = None
        self.snippets: list[PolicySnippet] = []
        self.priority: OrderPriority | None = None
        self.fsm = FsmState()
        self.current: MacroAction | None = None

        self.outgoing: deque[AgentMessage] = deque()
        self.last_message_tick = -(10 ** 9)
        self._human_msg: HumanMessage | None = None
        self._pending_tom_tick: int | None = None
        self._comm_attempt: _CommAttempt | None = None
        self._stall = _StallGuard(player)

    # -- wiring ------------------------------------------------------------

    def observe(self, record: HistoryRecord, events) -> None:
        self.history.append(record, events)

    def receive_human_message(self, message: HumanMessage) -> None:
        self._human_msg = message

    # -- tick entry point -----------------------------------------------------

    def decide(self, state: GameState) -> tuple[ControlAction, AgentMessage | None]:
        tick = state.tick
        self._absorb_results(tick)
        handler_macro = self._handle_human_message(state)
        self._schedule(state, tick)
        action = self._act(state, handler_macro)
        message = None
        if self.outgoing:
            message = self.outgoing.popleft()
            self.last_message_tick = tick
        self._human_msg = None
        return action, message

    # -- gateway result absorption ----------------------------------------------

    def _absorb_results(self, tick: int) -> None:
        result = self.gateway.poll(Purpose.TOM_INFERENCE)
        if result is not None:
            requested = self._pending_tom_tick if self._pending_tom_tick is not None else tick
            self.belief = absorb_tom_result(result, self.belief, requested)
            self._pending_tom_tick = None

        result = self.gateway.poll(Purpose.CODE_AS_POLICY)
        if result is not None and result.ok and result.text:
            snippets, priority = parse_snippet_payload(result.text, tick, SNIPPET_LIFETIME)
            self.snippets.extend(snippets)
            if priority is not None:
                self.priority = priority

        result = self.gateway.poll(Purpose.REFLECTION)
        if result is not None and result.ok and result.text and result.text.strip():
            self.guideline = merge_guideline(self.guideline, result.text, tick)

        result = self.gateway.poll(Purpose.COMMUNICATION)
        if result is not None and self._comm_attempt is not None:
            attempt = self._comm_attempt
            if attempt.retried:
                message = comm_mod.force_truncate(result, tick, attempt.trigger)
                self._comm_attempt = None
                if message is not None:
                    self.outgoing.append(message)
            else:
                message, needs_retry = comm_mod.absorb_comm_result(result, tick, attempt.trigger)
                if needs_retry:
                    attempt.retried = True
                    self.gateway.submit(comm_mod.comm_request(attempt.prompt, tick))
                else:
                    self._comm_attempt = None
                    if message is not None:
                        self.outgoing.append(message)

    # -- scheduling ----------------------------------------------------------------

    def _schedule(self, state: GameState, tick: int) -> None:
        human_arrived = self._human_msg is not None

        if self.flags.enabled and tom_due(tick) and not self.gateway.busy(Purpose.TOM_INFERENCE):
            prompt = render_tom_prompt(self.history, self.belief, self.flags)
            if self.gateway.submit(CompletionRequest(
                purpose=Purpose.TOM_INFERENCE, prompt=prompt,
                temperature=0.3, request_tick=tick,
            )):
                self._pending_tom_tick = tick

        snippet_due = (tick > 0 and tick % SNIPPET_INTERVAL == 0) or human_arrived
        if snippet_due and not self.gateway.busy(Purpose.CODE_AS_POLICY):
            self.gateway.submit(CompletionRequest(
                purpose=Purpose.CODE_AS_POLICY,
                prompt=self._render_code_policy_prompt(state),
                temperature=0.0, request_tick=tick,
            ))

        if tick % REFLECTION_INTERVAL == REFLECTION_OFFSET and \
                not self.gateway.busy(Purpose.REFLECTION):
            self.gateway.submit(CompletionRequest(
                purpose=Purpose.REFLECTION,
                prompt=self._render_reflection_prompt(),
                temperature=0.3, request_tick=tick,
            ))

        if self.condition.agent_may_send and \
                comm_mod.comm_due(tick, human_arrived) and \
                not self.gateway.busy(Purpose.COMMUNICATION) and \
                self._comm_attempt is None and \
                tick - self.last_message_tick >= comm_mod.REPLY_COOLDOWN:
            trigger = "human_message_reply" if human_arrived else "periodic"
            human_text = self._human_msg.text if self._human_msg else None
            prompt = comm_mod.render_comm_prompt(
                summarize_history(self.history, recent_window=comm_mod.COMM_INTERVAL),
                state_digest(state),
                self.belief.text if self.belief else None,
                self.guideline.text if self.guideline else None,
                human_text,
            )
            self._comm_attempt = _CommAttempt(trigger=trigger, human_text=human_text,
                                              prompt=prompt)
            self.gateway.submit(comm_mod.comm_request(prompt, tick))

    # -- macro selection and execution ------------------------------------------------

    def _handle_human_message(self, state: GameState) -> MacroAction | None:
        if self._human_msg is None:
            return None
        macro_text = macro_for_template(self._human_msg.template_id, state)
        if macro_text is None:
            return None
        return parse_macro(macro_text, issued_tick=state.tick, source="human_message")

    def _check_snippets(self, state: GameState) -> MacroAction | None:
        """Consume and return the first live snippet whose condition holds."""
        self.snippets = prune_snippets(self.snippets, state.tick)
        for snippet in self.snippets:
            if snippet.live(state.tick) and snippet.condition.evaluate(state):
                snippet.consumed = True
                macro = MacroAction(snippet.macro.verb, snippet.macro.obj,
                                    issued_tick=state.tick, source="snippet")
                return macro
        return None

    def _act(self, state: GameState, handler_macro: MacroAction | None) -> ControlAction:
        from .policy import fsm_decide
        from .worldview import burning_pans

        if handler_macro is not None:
            self.current = handler_macro
        else:
            snippet_macro = self._check_snippets(state)
            if snippet_macro is not None:
                self.current = snippet_macro
            elif self.current is not None:
                if burning_pans(state) and self.current.verb != MacroVerb.PUTOUT_FIRE:
                    self.current, self.fsm = fsm_decide(state, self.fsm, self.priority,
                                                        self.player)
                elif state.tick > 0 and state.tick % FSM_REEVAL_INTERVAL == 0 and \
                        self.current.source == "fsm":
                    candidate, fsm = fsm_decide(state, self.fsm, self.priority, self.player)
                    if candidate.key() != self.current.key():
                        self.current, self.fsm = candidate, fsm

        for _ in range(4):
            if self.current is None:
                self.current, self.fsm = select_macro(
                    state, self.fsm, self.snippets, self.priority, self.player
                )
            result = execute_macro(self.current, state, self.player)
            if result.status == MacroStatus.IN_PROGRESS:
                return self._stall.adjust(state, result.action)
            self.current = None
        return ControlAction.NOOP

    # -- prompt rendering -----------------------------------------------------------

    def _render_code_policy_prompt(self, state: GameState) -> str:
        template = resources.files("coopkitchen.prompts").joinpath("code_policy.txt").read_text()
        belief_section = (
            f"\nYour belief about the partner:\n{self.belief.text}\n" if self.belief else ""
        )
        guideline_section = (
            f"\nYour behavior guideline:\n{self.guideline.text}\n" if self.guideline else ""
        )
        return template.format(
            window=SNIPPET_INTERVAL,
            history_summary=summarize_history(self.history, recent_window=SNIPPET_INTERVAL),
            state_digest=state_digest(state),
            belief_section=belief_section,
            guideline_section=guideline_section,
        )

    def _render_reflection_prompt(self) -> str:
        template = resources.files("coopkitchen.prompts").joinpath("reflection.txt").read_text()
        belief_section = (
            f"\nYour belief about the partner:\n{self.belief.text}\n" if self.belief else ""
        )
        return template.format(
            history_summary=summarize_history(self.history),
            belief_section=belief_section,
            prev_guideline=self.guideline.text if self.guideline else "(none yet)",
        )
