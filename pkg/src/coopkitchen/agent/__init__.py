from .comm import AgentMessage, CommCondition, SILENCE_TOKEN, comm_due
from .controller import AgentController, RuleAgent, derive_tom_flags
from .executor import ExecResult, MacroStatus, execute_macro
from .history import HistoryBuffer, HistoryRecord, summarize_history
from .pathing import plan_path
from .policy import (
    BehaviorGuideline,
    FsmState,
    MacroAction,
    MacroVerb,
    OrderPriority,
    PolicySnippet,
    fsm_decide,
    parse_macro,
    parse_snippet_payload,
    select_macro,
)
from .tom import Belief, ToMFlags, infer_belief, render_tom_prompt, tom_due

__all__ = [
    "AgentMessage", "CommCondition", "SILENCE_TOKEN", "comm_due",
    "AgentController", "RuleAgent", "derive_tom_flags",
    "ExecResult", "MacroStatus", "execute_macro",
    "HistoryBuffer", "HistoryRecord", "summarize_history",
    "plan_path",
    "BehaviorGuideline", "FsmState", "MacroAction", "MacroVerb", "OrderPriority",
    "PolicySnippet", "fsm_decide", "parse_macro", "parse_snippet_payload", "select_macro",
    "Belief", "ToMFlags", "infer_belief", "render_tom_prompt", "tom_due",
]
