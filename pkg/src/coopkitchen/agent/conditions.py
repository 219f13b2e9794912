"""Restricted predicate DSL for code-as-policy snippet conditions.

Grammar (documented for prompt templates and the README):

    expr     := or_expr
    or_expr  := and_expr ("or" and_expr)*
    and_expr := unary ("and" unary)*
    unary    := "not" unary | atom
    atom     := "(" expr ")" | comparison | predicate
    comparison := numeric (  "<" | "<=" | ">" | ">=" | "==" | "!=" ) numeric
    numeric  := integer | "tick" | "score" | "active_orders"
              | "order_remaining" "(" burger ")"
    predicate:= "pan_on_fire" | "pan_empty" | "pan_cooking"
              | "pan_has_welldone" | "pan_has_overcooked"
              | "cutboard_has_chopped_lettuce"
              | "order" "(" burger ")"
              | ("agent_holds" | "human_holds") "(" item ")"
              | "counter_has" "(" item ")"
    item     := "nothing" | "bread" | "lettuce" | "chopped_lettuce" | "beef"
              | "plate" | "extinguisher" | "burger" | burger
    burger   := "BeefBurger" | "LettuceBurger" | "BeefLettuceBurger"

Conditions are parsed once and evaluated natively: no foreign code runs.
Evaluation is total; a reference to a vanished entity (an order kind with no
active order) makes the enclosing comparison false.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..env.items import Beef, BeefState, Bread, BurgerKind, FireExtinguisher, Lettuce, Plate
from ..env.state import GameState, Player


class ConditionError(ValueError):
    """Unparseable condition text."""


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(<=|>=|==|!=|<|>|\(|\)))")

_COMPARATORS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}

_BOOL_PREDICATES = (
    "pan_on_fire", "pan_empty", "pan_cooking", "pan_has_welldone",
    "pan_has_overcooked", "cutboard_has_chopped_lettuce",
)
_NUMERIC_ATOMS = ("tick", "score", "active_orders")


def _tokenize(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ConditionError(f"bad token at {rest[:12]!r}")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return tokens


def _normalize_burger(name: str) -> BurgerKind:
    key = name.replace("_", "").lower()
    for kind in BurgerKind:
        if kind.value.lower() == key:
            return kind
    raise ConditionError(f"unknown burger kind {name!r}")


# AST nodes are tuples: ("or"|"and", left, right), ("not", x),
# ("pred", name, arg), ("cmp", op, left, right), ("num", name, arg), ("int", n)


@dataclass(frozen=True)
class Condition:
    source: str
    ast: tuple

    def evaluate(self, state: GameState) -> bool:
        return bool(_eval(self.ast, state))


def parse_condition(text: str) -> Condition:
    tokens = _tokenize(text)
    if not tokens:
        raise ConditionError("empty condition")
    parser = _Parser(tokens)
    ast = parser.parse_expr()
    if parser.peek() is not None:
        raise ConditionError(f"trailing input at {parser.peek()!r}")
    return Condition(source=text, ast=ast)


class _Parser:
    def __init__(self, tokens: list[str]):
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self, expected=None):
        tok = self.peek()
        if tok is None:
            raise ConditionError("unexpected end of condition")
        if expected is not None and tok != expected:
            raise ConditionError(f"expected {expected!r}, found {tok!r}")
        self.pos += 1
        return tok

    def parse_expr(self):
        node = self.parse_and()
        while self.peek() == "or":
            self.take()
            node = ("or", node, self.parse_and())
        return node

    def parse_and(self):
        node = self.parse_unary()
        while self.peek() == "and":
            self.take()
            node = ("and", node, self.parse_unary())
        return node

    def parse_unary(self):
        if self.peek() == "not":
            self.take()
            return ("not", self.parse_unary())
        return self.parse_atom()

    def parse_atom(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            node = self.parse_expr()
            self.take(")")
            return node
        node = self.parse_operand()
        if self.peek() in _COMPARATORS:
            op = self.take()
            right = self.parse_operand()
            for side in (node, right):
                if side[0] not in ("num", "int"):
                    raise ConditionError("comparison needs numeric operands")
            return ("cmp", op, node, right)
        if node[0] in ("num", "int"):
            raise ConditionError("numeric value used where a predicate is required")
        return node

    def parse_operand(self):
        tok = self.take()
        if tok.isdigit():
            return ("int", int(tok))
        if tok in _NUMERIC_ATOMS:
            return ("num", tok, None)
        if tok == "order_remaining":
            self.take("(")
            kind = _normalize_burger(self.take())
            self.take(")")
            return ("num", "order_remaining", kind)
        if tok in _BOOL_PREDICATES:
            return ("pred", tok, None)
        if tok == "order":
            self.take("(")
            kind = _normalize_burger(self.take())
            self.take(")")
            return ("pred", "order", kind)
        if tok in ("agent_holds", "human_holds", "counter_has"):
            self.take("(")
            arg = self.take().lower()
            self.take(")")
            simple = ("nothing", "bread", "lettuce", "chopped_lettuce", "beef",
                      "plate", "extinguisher", "burger")
            if arg not in simple:
                _normalize_burger(arg)  # raises for anything else
            return ("pred", tok, arg)
        raise ConditionError(f"unknown name {tok!r}")


def _eval(node: tuple, state: GameState):
    op = node[0]
    if op == "or":
        return _eval(node[1], state) or _eval(node[2], state)
    if op == "and":
        return _eval(node[1], state) and _eval(node[2], state)
    if op == "not":
        return not _eval(node[1], state)
    if op == "cmp":
        left = _eval_num(node[2], state)
        right = _eval_num(node[3], state)
        if left is None or right is None:
            return False  # vanished entity
        return _COMPARATORS[node[1]](left, right)
    if op == "pred":
        return _eval_pred(node[1], node[2], state)
    raise AssertionError(f"bad node {node!r}")


def _eval_num(node: tuple, state: GameState):
    if node[0] == "int":
        return node[1]
    name, arg = node[1], node[2]
    if name == "tick":
        return state.tick
    if name == "score":
        return state.score
    if name == "active_orders":
        return len(state.orders)
    if name == "order_remaining":
        remaining = [o.deadline_tick - state.tick for o in state.orders if o.kind == arg]
        return min(remaining) if remaining else None
    raise AssertionError(name)


def _eval_pred(name: str, arg, state: GameState) -> bool:
    if name == "pan_on_fire":
        return any(p.on_fire for p in state.pans.values())
    if name == "pan_empty":
        return any(p.beef is None and not p.on_fire for p in state.pans.values())
    if name == "pan_cooking":
        return any(
            p.beef is not None and p.beef.state == BeefState.COOKING
            for p in state.pans.values()
        )
    if name == "pan_has_welldone":
        return any(
            p.beef is not None and p.beef.state == BeefState.WELL_DONE and not p.on_fire
            for p in state.pans.values()
        )
    if name == "pan_has_overcooked":
        return any(
            p.beef is not None and p.beef.state == BeefState.OVERCOOKED
            for p in state.pans.values()
        )
    if name == "cutboard_has_chopped_lettuce":
        return any(
            lettuce is not None and lettuce.chop_progress >= state.config.chop_count
            for lettuce in state.cutboards.values()
        )
    if name == "order":
        return any(o.kind == arg for o in state.orders)
    if name in ("agent_holds", "human_holds"):
        player = Player.AGENT if name == "agent_holds" else Player.HUMAN
        return _match_item(state.chefs[player].held, arg, state)
    if name == "counter_has":
        return any(_match_item(item, arg, state) for item in state.counters.values())
    raise AssertionError(name)


def _match_item(item, spec: str, state: GameState) -> bool:
    if spec == "nothing":
        return item is None
    if item is None:
        return False
    if spec == "bread":
        return isinstance(item, Bread)
    if spec == "lettuce":
        return isinstance(item, Lettuce)
    if spec == "chopped_lettuce":
        return isinstance(item, Lettuce) and item.chop_progress >= state.config.chop_count
    if spec == "beef":
        return isinstance(item, Beef)
    if spec == "plate":
        return isinstance(item, Plate)
    if spec == "extinguisher":
        return isinstance(item, FireExtinguisher)
    if spec == "burger":
        return isinstance(item, Plate) and item.burger_kind() is not None
    try:
        kind = _normalize_burger(spec)
    except ConditionError:
        return False
    return isinstance(item, Plate) and item.burger_kind() == kind
