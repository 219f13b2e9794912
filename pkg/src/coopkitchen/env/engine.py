"""Deterministic two-chef kitchen engine.

One tick applies, in order: movement resolution, the agent's interact, the
human's interact, then world timers (cooking, fire, order deadlines and
spawning). `step` never mutates its input state.
"""

from __future__ import annotations

from dataclasses import replace

from ..config import GameConfig
from ..rng import SplitMix64
from .items import (
    Beef,
    BeefState,
    Bread,
    BurgerKind,
    FireExtinguisher,
    Ingredient,
    Lettuce,
    MISSED_ORDER_PENALTY,
    Plate,
    REWARDS,
    WRONG_SERVE_PENALTY,
    burger_for,
)
from .layout import Cell, Layout, TileKind
from .state import (
    ChefState,
    ControlAction,
    Direction,
    EnvEvent,
    EventKind,
    GameState,
    Order,
    PanState,
    Player,
)

BURGER_KINDS = (BurgerKind.LETTUCE_BURGER, BurgerKind.BEEF_BURGER, BurgerKind.BEEF_LETTUCE_BURGER)


class GameOver(RuntimeError):
    """Raised when stepping a finished game."""


def init_game(layout: Layout, config: GameConfig, seed: int) -> GameState:
    """Fresh state at tick 0: chefs at spawns, stations stocked, initial orders."""
    state = GameState(layout=layout, config=config, rng=SplitMix64(seed & (1 << 64) - 1))
    for player, spawn in zip((Player.AGENT, Player.HUMAN), layout.spawn_points):
        state.chefs[player] = ChefState(player=player, position=spawn, facing=Direction.DOWN)
    for cell in layout.cells_of(TileKind.PAN):
        state.pans[cell] = PanState()
    for cell in layout.cells_of(TileKind.CUTBOARD):
        state.cutboards[cell] = None
    for cell in layout.cells_of(TileKind.EXTINGUISHER):
        state.extinguisher_docks[cell] = True

    events: list[EnvEvent] = []
    if config.order_script is not None:
        for entry in config.order_script:
            if entry.tick == 0:
                _spawn_order(state, events, BurgerKind(entry.kind), entry.lifetime)
    else:
        for _ in range(config.orders.initial):
            _spawn_order(state, events, None, config.orders.lifetime)
    return state


def step(
    state: GameState, a_agent: ControlAction, a_human: ControlAction
) -> tuple[GameState, list[EnvEvent], int]:
    """Advance one tick. Returns (new state, events, reward delta)."""
    if state.finished():
        raise GameOver(f"game already finished at tick {state.tick}")

    s = state.clone()
    events: list[EnvEvent] = []
    score_before = s.score

    _resolve_movement(s, a_agent, a_human)
    for player, action in ((Player.AGENT, a_agent), (Player.HUMAN, a_human)):
        if action == ControlAction.INTERACT:
            events.extend(interact_outcome(s, player))
    events.extend(advance_world(s))

    s.tick += 1
    return s, events, s.score - score_before


# -- movement ---------------------------------------------------------------


def _resolve_movement(state: GameState, a_agent: ControlAction, a_human: ControlAction) -> None:
    """Simultaneous movement: same-target and swap conflicts block both movers."""
    proposals: dict[Player, Cell] = {}
    for player, action in ((Player.AGENT, a_agent), (Player.HUMAN, a_human)):
        chef = state.chefs[player]
        direction = action.direction()
        if direction is None:
            proposals[player] = chef.position
            continue
        state.chefs[player] = chef = replace(chef, facing=direction)
        dr, dc = direction.delta
        target = (chef.position[0] + dr, chef.position[1] + dc)
        blocked = (
            not state.layout.is_floor(target)
            or target == state.chefs[player.other()].position
        )
        proposals[player] = chef.position if blocked else target

    a_to, h_to = proposals[Player.AGENT], proposals[Player.HUMAN]
    a_from = state.chefs[Player.AGENT].position
    h_from = state.chefs[Player.HUMAN].position
    if a_to == h_to or (a_to == h_from and h_to == a_from):
        return  # conflict: both stay (facing already updated)
    state.chefs[Player.AGENT] = replace(state.chefs[Player.AGENT], position=a_to)
    state.chefs[Player.HUMAN] = replace(state.chefs[Player.HUMAN], position=h_to)


# -- interactions -------------------------------------------------------------


def interact_outcome(state: GameState, player: Player) -> list[EnvEvent]:
    """Apply `player`'s interact against the faced cell. Mutates state.

    Impossible interactions return an empty list.
    """
    chef = state.chefs[player]
    target = chef.target_cell()
    if not state.layout.in_bounds(target):
        return []
    tile = state.layout.tile(target)

    if tile in (TileKind.COUNTER, TileKind.CENTER_COUNTER):
        return _interact_counter(state, player, target)
    if tile == TileKind.PAN:
        return _interact_pan(state, player, target)
    if tile == TileKind.CUTBOARD:
        return _interact_cutboard(state, player, target)
    if tile in (TileKind.BREAD, TileKind.BEEF, TileKind.LETTUCE):
        return _interact_dispenser(state, player, target, tile)
    if tile == TileKind.PLATE:
        return _interact_plate_station(state, player, target)
    if tile == TileKind.SERVE:
        return _interact_serve(state, player, target)
    if tile == TileKind.EXTINGUISHER:
        return _interact_extinguisher_dock(state, player, target)
    return []


def _event(state: GameState, player: Player, kind: EventKind, label: str, **payload) -> EnvEvent:
    return EnvEvent(tick=state.tick, actor=player.value, kind=kind, label=label, payload=payload)


def _set_held(state: GameState, player: Player, item) -> None:
    state.chefs[player] = replace(state.chefs[player], held=item)


def _plate_accepts(plate: Plate, ingredient: Ingredient) -> bool:
    return plate.garbage_id is None and not plate.has(ingredient)


def _assemble_label(ingredient: Ingredient, plate: Plate, source: str) -> str:
    """Key-action name for adding `ingredient` to `plate` (pre-add contents)."""
    contents = plate.contents
    names = {Ingredient.BREAD: "Bread", Ingredient.LETTUCE: "Lettuce", Ingredient.BEEF: "Beef"}
    name = names[ingredient]
    if contents == {Ingredient.BREAD, Ingredient.BEEF} and ingredient == Ingredient.LETTUCE:
        return "Put onto Plate with BeefBurger"
    if contents == {Ingredient.LETTUCE, Ingredient.BEEF} and ingredient == Ingredient.BREAD:
        return "Put onto Plate with BeefLettuce"
    if contents == {Ingredient.BREAD}:
        return "Put onto Plate with Bread"
    if contents == {Ingredient.LETTUCE}:
        return "Put onto Plate with Lettuce"
    if contents == {Ingredient.BEEF}:
        return f"Put {name} onto Plate with Beef"
    if not contents:
        if source == "cutboard":
            return "Plate Lettuce Done from Cutboard"
        if source == "counter":
            return f"Plate {name} from Counter"
        if source == "station":
            return f"Get {name} from Station"
        return f"Put {name} onto Plate"
    return f"Put {name} onto Plate"


def _add_to_plate(
    state: GameState,
    player: Player,
    plate: Plate,
    ingredient: Ingredient,
    item_id: int,
    source: str,
) -> tuple[Plate, EnvEvent]:
    label = _assemble_label(ingredient, plate, source)
    new_plate = plate.with_entry(ingredient, item_id)
    event = _event(
        state,
        player,
        EventKind.ASSEMBLE,
        label,
        plate_id=plate.id,
        ingredient=ingredient.value,
        item_id=item_id,
    )
    return new_plate, event


def _plateable(item) -> tuple[Ingredient, int] | None:
    """Loose items that may join a plate: bread, chopped lettuce, nothing else."""
    if isinstance(item, Bread):
        return (Ingredient.BREAD, item.id)
    if isinstance(item, Lettuce) and item.chop_progress > 0:
        return (Ingredient.LETTUCE, item.id)
    return None


def _interact_counter(state: GameState, player: Player, cell: Cell) -> list[EnvEvent]:
    chef = state.chefs[player]
    held = chef.held
    on_counter = state.counters.get(cell)

    if held is None and on_counter is not None:
        del state.counters[cell]
        _set_held(state, player, on_counter)
        return [_event(state, player, EventKind.PICK_UP, "Pick Up from Counter",
                       item_id=on_counter.id, cell=list(cell))]

    if held is not None and on_counter is None:
        state.counters[cell] = held
        _set_held(state, player, None)
        return [_event(state, player, EventKind.PUT_DOWN, "Put Down on Counter",
                       item_id=held.id, cell=list(cell))]

    if held is not None and on_counter is not None:
        # held ingredient onto a counter plate
        if isinstance(on_counter, Plate):
            plateable = _plateable(held)
            if plateable is not None:
                ingredient, item_id = plateable
                if ingredient == Ingredient.LETTUCE and not held.chopped(state.config.chop_count):
                    return []
                if _plate_accepts(on_counter, ingredient):
                    new_plate, event = _add_to_plate(
                        state, player, on_counter, ingredient, item_id, "held"
                    )
                    state.counters[cell] = new_plate
                    _set_held(state, player, None)
                    return [event]
            return []
        # held plate takes a counter ingredient
        if isinstance(held, Plate):
            plateable = _plateable(on_counter)
            if plateable is not None:
                ingredient, item_id = plateable
                if ingredient == Ingredient.LETTUCE and not on_counter.chopped(
                    state.config.chop_count
                ):
                    return []
                if _plate_accepts(held, ingredient):
                    new_plate, event = _add_to_plate(
                        state, player, held, ingredient, item_id, "counter"
                    )
                    del state.counters[cell]
                    _set_held(state, player, new_plate)
                    return [event]
        return []
    return []


def _interact_pan(state: GameState, player: Player, cell: Cell) -> list[EnvEvent]:
    pan = state.pans[cell]
    chef = state.chefs[player]
    held = chef.held

    if pan.on_fire:
        if isinstance(held, FireExtinguisher):
            consecutive = pan.last_extinguish_tick == state.tick - 1
            progress = pan.extinguish_progress + 1 if consecutive else 1
            if progress >= state.config.extinguish_duration:
                state.pans[cell] = replace(
                    pan, on_fire=False, extinguish_progress=0, last_extinguish_tick=state.tick
                )
                return [_event(state, player, EventKind.FIRE_EXTINGUISHED, "Extinguish Fire",
                               cell=list(cell))]
            state.pans[cell] = replace(
                pan, extinguish_progress=progress, last_extinguish_tick=state.tick
            )
            return []
        return []

    if isinstance(held, Beef) and held.state == BeefState.FRESH and pan.beef is None:
        cooking = replace(held, state=BeefState.COOKING, ticks=0)
        state.pans[cell] = replace(pan, beef=cooking)
        _set_held(state, player, None)
        return [_event(state, player, EventKind.START_COOK, "Put Beef onto Pan",
                       item_id=held.id, cell=list(cell))]

    if isinstance(held, Plate) and pan.beef is not None:
        beef = pan.beef
        if beef.state == BeefState.WELL_DONE and _plate_accepts(held, Ingredient.BEEF):
            new_plate = held.with_entry(Ingredient.BEEF, beef.id)
            state.pans[cell] = replace(pan, beef=None)
            _set_held(state, player, new_plate)
            return [_event(state, player, EventKind.ASSEMBLE, "Plate Well-done Beef from Pan",
                           plate_id=held.id, ingredient=Ingredient.BEEF.value, item_id=beef.id)]
        if beef.state == BeefState.OVERCOOKED and held.garbage_id is None:
            state.pans[cell] = replace(pan, beef=None)
            _set_held(state, player, replace(held, garbage_id=beef.id))
            return [_event(state, player, EventKind.PICK_UP, "Plate Overcooked Beef from Pan",
                           plate_id=held.id, item_id=beef.id)]
    return []


def _interact_cutboard(state: GameState, player: Player, cell: Cell) -> list[EnvEvent]:
    board = state.cutboards[cell]
    chef = state.chefs[player]
    held = chef.held
    chop_count = state.config.chop_count

    if isinstance(held, Lettuce) and board is None:
        state.cutboards[cell] = held
        _set_held(state, player, None)
        return [_event(state, player, EventKind.PUT_DOWN, "Put Lettuce onto Cutboard",
                       item_id=held.id, cell=list(cell))]

    if held is None and board is not None:
        if board.chop_progress < chop_count:
            chopped = replace(board, chop_progress=board.chop_progress + 1)
            state.cutboards[cell] = chopped
            return [_event(state, player, EventKind.CHOP, "Chop Lettuce",
                           item_id=board.id, progress=chopped.chop_progress,
                           done=chopped.chop_progress >= chop_count)]
        state.cutboards[cell] = None
        _set_held(state, player, board)
        return [_event(state, player, EventKind.PICK_UP, "Pick Up Lettuce from Cutboard",
                       item_id=board.id, cell=list(cell))]

    if isinstance(held, Plate) and board is not None and board.chop_progress >= chop_count:
        if _plate_accepts(held, Ingredient.LETTUCE):
            new_plate, event = _add_to_plate(
                state, player, held, Ingredient.LETTUCE, board.id, "cutboard"
            )
            state.cutboards[cell] = None
            _set_held(state, player, new_plate)
            return [event]
    return []


_DISPENSER_NAMES = {
    TileKind.BREAD: "Bread",
    TileKind.BEEF: "Beef",
    TileKind.LETTUCE: "Lettuce",
}


def _interact_dispenser(
    state: GameState, player: Player, cell: Cell, tile: TileKind
) -> list[EnvEvent]:
    chef = state.chefs[player]
    held = chef.held
    name = _DISPENSER_NAMES[tile]

    if held is None:
        if tile == TileKind.BREAD:
            item = Bread(state.new_id())
        elif tile == TileKind.BEEF:
            item = Beef(state.new_id())
        else:
            item = Lettuce(state.new_id())
        _set_held(state, player, item)
        return [_event(state, player, EventKind.PICK_UP, f"Get {name} from Station",
                       item_id=item.id)]

    if isinstance(held, Plate):
        # stations double as the trash for plated overcooked beef
        if held.garbage_id is not None:
            burnt = held.garbage_id
            _set_held(state, player, replace(held, garbage_id=None))
            return [_event(state, player, EventKind.PUT_DOWN, "Discard Overcooked Beef",
                           item_id=burnt)]
        if tile == TileKind.BREAD and _plate_accepts(held, Ingredient.BREAD):
            bread_id = state.new_id()
            new_plate, event = _add_to_plate(
                state, player, held, Ingredient.BREAD, bread_id, "station"
            )
            _set_held(state, player, new_plate)
            return [event]
    return []


def _interact_plate_station(state: GameState, player: Player, cell: Cell) -> list[EnvEvent]:
    chef = state.chefs[player]
    if chef.held is None:
        plate = Plate(state.new_id())
        _set_held(state, player, plate)
        return [_event(state, player, EventKind.PICK_UP, "Get Plate from Station",
                       item_id=plate.id)]
    return []


def _interact_serve(state: GameState, player: Player, cell: Cell) -> list[EnvEvent]:
    chef = state.chefs[player]
    held = chef.held
    if held is None or isinstance(held, FireExtinguisher):
        return []

    kind = held.burger_kind() if isinstance(held, Plate) else None
    _set_held(state, player, None)

    if kind is not None:
        matching = state.active_orders_of(kind)
        if matching:
            order = min(matching, key=lambda o: (o.deadline_tick, o.id))
            state.orders.remove(order)
            state.score += REWARDS[kind]
            _schedule_replacement(state)
            lineage = [held.id] + [e.item_id for e in held.entries]
            return [_event(state, player, EventKind.SERVE, "Deliver Burger",
                           result="correct", burger=kind.value, order_id=order.id,
                           reward=REWARDS[kind], plate_id=held.id, lineage=lineage)]

    state.score += WRONG_SERVE_PENALTY
    return [_event(state, player, EventKind.SERVE, "Deliver Burger",
                   result="wrong", item_id=held.id, reward=WRONG_SERVE_PENALTY)]


def _interact_extinguisher_dock(state: GameState, player: Player, cell: Cell) -> list[EnvEvent]:
    chef = state.chefs[player]
    docked = state.extinguisher_docks[cell]
    if chef.held is None and docked:
        state.extinguisher_docks[cell] = False
        item = FireExtinguisher(state.new_id())
        _set_held(state, player, item)
        return [_event(state, player, EventKind.PICK_UP, "Get Fire Extinguisher",
                       item_id=item.id)]
    if isinstance(chef.held, FireExtinguisher) and not docked:
        state.extinguisher_docks[cell] = True
        item_id = chef.held.id
        _set_held(state, player, None)
        return [_event(state, player, EventKind.PUT_DOWN, "Dock Fire Extinguisher",
                       item_id=item_id)]
    return []


# -- world timers -------------------------------------------------------------


def advance_world(state: GameState) -> list[EnvEvent]:
    """Cooking/fire timers and the order queue. Called once per tick by step."""
    events: list[EnvEvent] = []
    cfg = state.config

    for cell, pan in sorted(state.pans.items()):
        beef = pan.beef
        if beef is None or pan.on_fire:
            continue
        if beef.state == BeefState.COOKING:
            ticks = beef.ticks + 1
            if ticks >= cfg.cook_duration:
                state.pans[cell] = replace(pan, beef=replace(beef, state=BeefState.WELL_DONE, ticks=0))
                events.append(EnvEvent(state.tick, "world", EventKind.BEEF_DONE, "Beef Well-done",
                                       {"item_id": beef.id, "cell": list(cell)}))
            else:
                state.pans[cell] = replace(pan, beef=replace(beef, ticks=ticks))
        elif beef.state == BeefState.WELL_DONE:
            ticks = beef.ticks + 1
            if ticks >= cfg.fire_delay:
                burnt = replace(beef, state=BeefState.OVERCOOKED, ticks=0)
                state.pans[cell] = replace(pan, beef=burnt, on_fire=True, extinguish_progress=0)
                events.append(EnvEvent(state.tick, "world", EventKind.BEEF_OVERCOOKED,
                                       "Beef Overcooked", {"item_id": beef.id, "cell": list(cell)}))
                events.append(EnvEvent(state.tick, "world", EventKind.PAN_FIRE, "Pan Fire",
                                       {"cell": list(cell)}))
            else:
                state.pans[cell] = replace(pan, beef=replace(beef, ticks=ticks))

    events.extend(_advance_orders(state))
    return events


def _advance_orders(state: GameState) -> list[EnvEvent]:
    events: list[EnvEvent] = []
    cfg = state.config

    for order in [o for o in state.orders if o.deadline_tick <= state.tick]:
        state.orders.remove(order)
        state.score += MISSED_ORDER_PENALTY
        events.append(EnvEvent(state.tick, "world", EventKind.ORDER_MISSED, "Miss Order",
                               {"order_id": order.id, "kind": order.kind.value,
                                "reward": MISSED_ORDER_PENALTY}))
        _schedule_replacement(state)

    if state.config.order_script is not None:
        for entry in state.config.order_script:
            if entry.tick == state.tick and entry.tick > 0:  # tick-0 entries spawn in init_game
                _spawn_order(state, events, BurgerKind(entry.kind), entry.lifetime)
        return events

    due = [t for t in state.pending_spawns if t <= state.tick]
    state.pending_spawns = [t for t in state.pending_spawns if t > state.tick]
    for _ in due:
        if len(state.orders) < cfg.orders.max_active:
            _spawn_order(state, events, None, cfg.orders.lifetime)

    if (
        cfg.orders.topup_interval
        and state.tick > 0
        and state.tick % cfg.orders.topup_interval == 0
        and len(state.orders) + len(state.pending_spawns) < cfg.orders.max_active
    ):
        _spawn_order(state, events, None, cfg.orders.lifetime)
    return events


def _spawn_order(
    state: GameState, events: list[EnvEvent], kind: BurgerKind | None, lifetime: int
) -> EnvEvent:
    if kind is None:
        kind = BURGER_KINDS[state.rng.randrange(len(BURGER_KINDS))]
    order = Order(
        id=state.next_order_id,
        kind=kind,
        created_tick=state.tick,
        deadline_tick=state.tick + lifetime,
    )
    state.next_order_id += 1
    state.orders.append(order)
    event = EnvEvent(state.tick, "world", EventKind.ORDER_SPAWNED, "Order Spawned",
                     {"order_id": order.id, "kind": kind.value,
                      "deadline_tick": order.deadline_tick})
    events.append(event)
    return event


def _schedule_replacement(state: GameState) -> None:
    if state.config.order_script is not None:
        return
    state.pending_spawns.append(state.tick + state.config.orders.replacement_gap)
    state.pending_spawns.sort()
