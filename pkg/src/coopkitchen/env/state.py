"""Tick-indexed world state, events, and canonical snapshots.

Snapshots are canonical JSON (sorted keys, fixed field order inside lists)
so equal states serialize to identical bytes and hash equal.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field, replace
from enum import Enum

from ..config import GameConfig
from ..rng import SplitMix64
from .items import (
    Beef,
    BeefState,
    BurgerKind,
    FireExtinguisher,
    Item,
    Lettuce,
    Plate,
    item_from_dict,
    item_to_dict,
)
from .layout import Cell, Layout, TileKind, load_layout


class Player(str, Enum):
    AGENT = "agent"
    HUMAN = "human"

    def other(self) -> "Player":
        return Player.HUMAN if self is Player.AGENT else Player.AGENT


class Direction(str, Enum):
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"

    @property
    def delta(self) -> Cell:
        return _DELTAS[self]


_DELTAS = {
    Direction.UP: (-1, 0),
    Direction.DOWN: (1, 0),
    Direction.LEFT: (0, -1),
    Direction.RIGHT: (0, 1),
}

# Fixed tie-break order everywhere neighbours are scanned.
DIRECTION_ORDER = (Direction.UP, Direction.DOWN, Direction.LEFT, Direction.RIGHT)


class ControlAction(str, Enum):
    UP = "up"
    DOWN = "down"
    LEFT = "left"
    RIGHT = "right"
    INTERACT = "interact"
    NOOP = "noop"

    def direction(self) -> Direction | None:
        try:
            return Direction(self.value)
        except ValueError:
            return None


class EventKind(str, Enum):
    PICK_UP = "pick_up"
    PUT_DOWN = "put_down"
    START_COOK = "start_cook"
    BEEF_DONE = "beef_done"
    BEEF_OVERCOOKED = "beef_overcooked"
    PAN_FIRE = "pan_fire"
    FIRE_EXTINGUISHED = "fire_extinguished"
    CHOP = "chop"
    ASSEMBLE = "assemble"
    SERVE = "serve"
    ORDER_SPAWNED = "order_spawned"
    ORDER_MISSED = "order_missed"


@dataclass(frozen=True)
class EnvEvent:
    tick: int
    actor: str  # "agent" | "human" | "world"
    kind: EventKind
    label: str = ""  # interaction name in the key-action vocabulary
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "tick": self.tick,
            "actor": self.actor,
            "kind": self.kind.value,
            "label": self.label,
            "payload": self.payload,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "EnvEvent":
        return cls(d["tick"], d["actor"], EventKind(d["kind"]), d["label"], d["payload"])


@dataclass(frozen=True)
class ChefState:
    player: Player
    position: Cell
    facing: Direction
    held: Item | None = None

    def target_cell(self) -> Cell:
        dr, dc = self.facing.delta
        return (self.position[0] + dr, self.position[1] + dc)


@dataclass(frozen=True)
class Order:
    id: int
    kind: BurgerKind
    created_tick: int
    deadline_tick: int


@dataclass(frozen=True)
class PanState:
    beef: Beef | None = None
    on_fire: bool = False
    extinguish_progress: int = 0
    last_extinguish_tick: int = -2  # tick of the most recent extinguish interact


@dataclass
class GameState:
    layout: Layout
    config: GameConfig
    tick: int = 0
    score: int = 0
    chefs: dict[Player, ChefState] = field(default_factory=dict)
    pans: dict[Cell, PanState] = field(default_factory=dict)
    cutboards: dict[Cell, Lettuce | None] = field(default_factory=dict)
    counters: dict[Cell, Item] = field(default_factory=dict)  # occupied cells only
    extinguisher_docks: dict[Cell, bool] = field(default_factory=dict)  # docked?
    orders: list[Order] = field(default_factory=list)
    pending_spawns: list[int] = field(default_factory=list)  # spawn ticks, sorted
    next_item_id: int = 1
    next_order_id: int = 1
    rng: SplitMix64 = field(default_factory=lambda: SplitMix64(0))

    # -- item creation ---------------------------------------------------
    def new_id(self) -> int:
        iid = self.next_item_id
        self.next_item_id += 1
        return iid

    # -- queries ----------------------------------------------------------
    def chef(self, player: Player) -> ChefState:
        return self.chefs[player]

    def cell_free_for_chef(self, cell: Cell, mover: Player) -> bool:
        if not self.layout.is_floor(cell):
            return False
        return self.chefs[mover.other()].position != cell

    def active_orders_of(self, kind: BurgerKind) -> list[Order]:
        return [o for o in self.orders if o.kind == kind]

    def finished(self) -> bool:
        return self.tick >= self.config.episode_ticks

    # -- cloning ----------------------------------------------------------
    def clone(self) -> "GameState":
        """Shallow container copy; item/chef values are immutable."""
        return GameState(
            layout=self.layout,
            config=self.config,
            tick=self.tick,
            score=self.score,
            chefs=dict(self.chefs),
            pans=dict(self.pans),
            cutboards=dict(self.cutboards),
            counters=dict(self.counters),
            extinguisher_docks=dict(self.extinguisher_docks),
            orders=list(self.orders),
            pending_spawns=list(self.pending_spawns),
            next_item_id=self.next_item_id,
            next_order_id=self.next_order_id,
            rng=self.rng.clone(),
        )

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        def cell_key(cell: Cell) -> str:
            return f"{cell[0]},{cell[1]}"

        return {
            "tick": self.tick,
            "score": self.score,
            "chefs": {
                p.value: {
                    "position": list(self.chefs[p].position),
                    "facing": self.chefs[p].facing.value,
                    "held": item_to_dict(self.chefs[p].held),
                }
                for p in sorted(self.chefs, key=lambda p: p.value)
            },
            "pans": {
                cell_key(cell): {
                    "beef": item_to_dict(pan.beef),
                    "on_fire": pan.on_fire,
                    "extinguish_progress": pan.extinguish_progress,
                    "last_extinguish_tick": pan.last_extinguish_tick,
                }
                for cell, pan in sorted(self.pans.items())
            },
            "cutboards": {
                cell_key(cell): item_to_dict(lettuce)
                for cell, lettuce in sorted(self.cutboards.items())
            },
            "counters": {
                cell_key(cell): item_to_dict(item)
                for cell, item in sorted(self.counters.items())
            },
            "extinguisher_docks": {
                cell_key(cell): docked
                for cell, docked in sorted(self.extinguisher_docks.items())
            },
            "orders": [
                {
                    "id": o.id,
                    "kind": o.kind.value,
                    "created_tick": o.created_tick,
                    "deadline_tick": o.deadline_tick,
                }
                for o in self.orders
            ],
            "pending_spawns": list(self.pending_spawns),
            "next_item_id": self.next_item_id,
            "next_order_id": self.next_order_id,
            "rng_state": self.rng.state,
        }


def snapshot(state: GameState) -> bytes:
    """Canonical bytes for a state; equal states snapshot identically."""
    doc = {
        "layout": state.layout.text,
        "config": state.config.to_dict(),
        "state": state.to_dict(),
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":")).encode()


def state_hash(state: GameState) -> str:
    return hashlib.sha256(snapshot(state)).hexdigest()


def restore(data: bytes) -> GameState:
    try:
        doc = json.loads(data.decode())
        layout = load_layout(doc["layout"])
        config = GameConfig.from_dict(doc["config"])
        s = doc["state"]
    except (ValueError, KeyError, UnicodeDecodeError) as exc:
        raise ValueError(f"malformed snapshot: {exc}") from exc

    def parse_cell(key: str) -> Cell:
        r, c = key.split(",")
        return (int(r), int(c))

    state = GameState(layout=layout, config=config)
    state.tick = s["tick"]
    state.score = s["score"]
    for pval, chef in s["chefs"].items():
        player = Player(pval)
        state.chefs[player] = ChefState(
            player=player,
            position=tuple(chef["position"]),
            facing=Direction(chef["facing"]),
            held=item_from_dict(chef["held"]),
        )
    for key, pan in s["pans"].items():
        state.pans[parse_cell(key)] = PanState(
            beef=item_from_dict(pan["beef"]),
            on_fire=pan["on_fire"],
            extinguish_progress=pan["extinguish_progress"],
            last_extinguish_tick=pan["last_extinguish_tick"],
        )
    for key, lettuce in s["cutboards"].items():
        state.cutboards[parse_cell(key)] = item_from_dict(lettuce)
    for key, item in s["counters"].items():
        state.counters[parse_cell(key)] = item_from_dict(item)
    for key, docked in s["extinguisher_docks"].items():
        state.extinguisher_docks[parse_cell(key)] = docked
    state.orders = [
        Order(o["id"], BurgerKind(o["kind"]), o["created_tick"], o["deadline_tick"])
        for o in s["orders"]
    ]
    state.pending_spawns = list(s["pending_spawns"])
    state.next_item_id = s["next_item_id"]
    state.next_order_id = s["next_order_id"]
    state.rng = SplitMix64(s["rng_state"])
    return state


def state_digest(state: GameState) -> str:
    """One-line textual description used in agent history buffers."""
    parts = []
    for player in (Player.AGENT, Player.HUMAN):
        chef = state.chefs[player]
        held = _item_brief(chef.held)
        parts.append(f"{player.value}@{chef.position} {chef.facing.value} holds {held}")
    for cell, pan in sorted(state.pans.items()):
        if pan.on_fire:
            parts.append(f"pan{cell} ON FIRE")
        elif pan.beef is None:
            parts.append(f"pan{cell} empty")
        else:
            b = pan.beef
            parts.append(f"pan{cell} {b.state.value} {b.ticks}t")
    for cell, lettuce in sorted(state.cutboards.items()):
        if lettuce is not None:
            parts.append(f"cutboard{cell} lettuce {lettuce.chop_progress}/{state.config.chop_count}")
    counters = [f"{_item_brief(item)}@{cell}" for cell, item in sorted(state.counters.items())]
    if counters:
        parts.append("counters: " + ", ".join(counters))
    orders = [
        f"#{o.id} {o.kind.value} {o.deadline_tick - state.tick}t left" for o in state.orders
    ]
    parts.append("orders: " + (", ".join(orders) if orders else "none"))
    parts.append(f"score {state.score}")
    return "; ".join(parts)


def _item_brief(item: Item | None) -> str:
    if item is None:
        return "nothing"
    if isinstance(item, Plate):
        kind = item.burger_kind()
        if kind:
            return kind.value
        inside = "+".join(sorted(e.ingredient.value for e in item.entries)) or "empty"
        if item.garbage_id is not None:
            inside += "+burnt-beef"
        return f"plate[{inside}]"
    if isinstance(item, Beef):
        return f"beef({item.state.value})"
    if isinstance(item, Lettuce):
        return "chopped-lettuce" if item.chop_progress >= 3 else f"lettuce({item.chop_progress})"
    if isinstance(item, FireExtinguisher):
        return "extinguisher"
    return type(item).__name__.lower()
