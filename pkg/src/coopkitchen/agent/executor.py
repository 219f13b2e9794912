"""Action executor: turns the current macro into one atomic action per tick.

The executor is stateless across ticks: every call re-reads the world and
re-plans, so vanished preconditions are noticed immediately (the macro is
reported abandoned and control returns to macro selection). Exactly one
ControlAction comes out of every call.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..env.items import Beef, BeefState, Bread, BurgerKind, FireExtinguisher, Ingredient, Lettuce, Plate, RECIPES
from ..env.layout import Cell, TileKind
from ..env.state import ControlAction, DIRECTION_ORDER, Direction, GameState, Player
from . import worldview as wv
from .pathing import adjacent_floor_cells, distance_map, facing_direction, plan_path
from .policy import MacroAction, MacroVerb

_DIR_TO_ACTION = {
    Direction.UP: ControlAction.UP,
    Direction.DOWN: ControlAction.DOWN,
    Direction.LEFT: ControlAction.LEFT,
    Direction.RIGHT: ControlAction.RIGHT,
}


class MacroStatus(str, Enum):
    IN_PROGRESS = "in_progress"
    COMPLETE = "complete"
    ABANDONED = "abandoned"


@dataclass(frozen=True)
class ExecResult:
    action: ControlAction
    status: MacroStatus
    note: str = ""


_NOOP_IN_PROGRESS = ExecResult(ControlAction.NOOP, MacroStatus.IN_PROGRESS)


def execute_macro(macro: MacroAction, state: GameState, player: Player) -> ExecResult:
    handler = {
        MacroVerb.PREPARE: _exec_prepare,
        MacroVerb.ASSEMBLE: _exec_assemble,
        MacroVerb.PASS_ON: _exec_pass_on,
        MacroVerb.SERVE: _exec_serve,
        MacroVerb.PUTOUT_FIRE: _exec_putout_fire,
        MacroVerb.IDLE: _exec_idle,
    }[macro.verb]
    return handler(macro, state, player)


# -- movement primitives -------------------------------------------------------


def _approach(state: GameState, player: Player, target: Cell, interact: bool) -> ExecResult:
    """Move toward `target`, face it when adjacent, optionally interact."""
    chef = state.chefs[player]
    other = state.chefs[player.other()].position
    facing = facing_direction(chef.position, target)
    if facing is not None:
        if chef.facing != facing:
            return ExecResult(_DIR_TO_ACTION[facing], MacroStatus.IN_PROGRESS)
        if interact:
            return ExecResult(ControlAction.INTERACT, MacroStatus.IN_PROGRESS)
        return _NOOP_IN_PROGRESS

    path = plan_path(state.layout, {other}, chef.position, target)
    if path:
        return ExecResult(_DIR_TO_ACTION[path[0]], MacroStatus.IN_PROGRESS)
    if path is not None:
        # plan_path returned []: already adjacent (handled above) — defensive
        return _NOOP_IN_PROGRESS

    static = plan_path(state.layout, set(), chef.position, target)
    if static is None:
        return ExecResult(ControlAction.NOOP, MacroStatus.ABANDONED, "unreachable")
    # the other chef blocks the corridor: sidestep if possible, else wait
    return _sidestep_or_wait(state, player)


def _sidestep_or_wait(state: GameState, player: Player) -> ExecResult:
    chef = state.chefs[player]
    other = state.chefs[player.other()].position
    if abs(chef.position[0] - other[0]) + abs(chef.position[1] - other[1]) == 1:
        for direction in DIRECTION_ORDER:
            dr, dc = direction.delta
            cell = (chef.position[0] + dr, chef.position[1] + dc)
            if state.layout.is_floor(cell) and cell != other:
                return ExecResult(_DIR_TO_ACTION[direction], MacroStatus.IN_PROGRESS, "sidestep")
    return ExecResult(ControlAction.NOOP, MacroStatus.IN_PROGRESS, "waiting")


def _nearest(state: GameState, player: Player, cells: list[Cell]) -> Cell | None:
    """Closest target by walking distance, ties broken by cell order."""
    chef = state.chefs[player]
    other = state.chefs[player.other()].position
    dist = distance_map(state.layout, {other}, chef.position)
    best, best_dist = None, None
    for cell in cells:
        reach = [
            dist[adj] for adj in adjacent_floor_cells(state.layout, cell) if adj in dist
        ]
        if not reach:
            continue
        d = min(reach)
        if best_dist is None or d < best_dist or (d == best_dist and cell < best):
            best, best_dist = cell, d
    if best is None and cells:
        # all blocked by the other chef right now; keep heading to the first
        return cells[0]
    return best


def _go_use(state: GameState, player: Player, cells: list[Cell]) -> ExecResult:
    target = _nearest(state, player, cells)
    if target is None:
        return ExecResult(ControlAction.NOOP, MacroStatus.ABANDONED, "no target")
    return _approach(state, player, target, interact=True)


def _put_held_somewhere(state: GameState, player: Player) -> ExecResult:
    """Free the hands: drop the held item on the nearest free counter."""
    free = wv.free_counter_cells(state)
    if not free:
        return _NOOP_IN_PROGRESS
    return _go_use(state, player, free)


def _station(state: GameState, tile: TileKind) -> list[Cell]:
    return state.layout.cells_of(tile)


# -- macro handlers --------------------------------------------------------------


def _exec_prepare(macro: MacroAction, state: GameState, player: Player) -> ExecResult:
    if macro.obj == "Beef":
        return _prepare_beef(state, player)
    if macro.obj == "Lettuce":
        return _prepare_lettuce(state, player)
    return _prepare_bread(state, player)


def _prepare_beef(state: GameState, player: Player) -> ExecResult:
    if wv.beef_underway(state):
        return ExecResult(ControlAction.NOOP, MacroStatus.COMPLETE)
    held = state.chefs[player].held
    empty_pans = wv.usable_empty_pans(state)

    if empty_pans:
        if isinstance(held, Beef) and held.state == BeefState.FRESH:
            return _go_use(state, player, empty_pans)
        if held is None:
            return _go_use(state, player, _station(state, TileKind.BEEF))
        return _put_held_somewhere(state, player)

    blocked = wv.pans_with(state, BeefState.OVERCOOKED)
    if blocked:
        # clear a pan: plate the burnt beef, then discard it at a station
        if isinstance(held, Plate):
            if held.garbage_id is not None:
                return _go_use(state, player, _station(state, TileKind.BEEF))
            return _go_use(state, player, blocked)
        if held is None:
            return _go_use(state, player, _station(state, TileKind.PLATE))
        return _put_held_somewhere(state, player)
    return ExecResult(ControlAction.NOOP, MacroStatus.ABANDONED, "no usable pan")


def _prepare_lettuce(state: GameState, player: Player) -> ExecResult:
    held = state.chefs[player].held
    if wv.chopped_lettuce_sites(state) or (
        isinstance(held, Lettuce) and held.chop_progress >= state.config.chop_count
    ):
        return ExecResult(ControlAction.NOOP, MacroStatus.COMPLETE)

    boards = wv.boards_with_unchopped(state)
    if boards:
        if held is None:
            return _go_use(state, player, boards)
        return _put_held_somewhere(state, player)

    if isinstance(held, Lettuce):
        empty = wv.empty_cutboards(state)
        if empty:
            return _go_use(state, player, empty)
        return ExecResult(ControlAction.NOOP, MacroStatus.ABANDONED, "no free cutboard")
    if held is None:
        return _go_use(state, player, _station(state, TileKind.LETTUCE))
    return _put_held_somewhere(state, player)


def _prepare_bread(state: GameState, player: Player) -> ExecResult:
    held = state.chefs[player].held
    if isinstance(held, Bread) or wv.loose_bread_sites(state):
        return ExecResult(ControlAction.NOOP, MacroStatus.COMPLETE)
    if held is None:
        return _go_use(state, player, _station(state, TileKind.BREAD))
    return _put_held_somewhere(state, player)


def _exec_assemble(macro: MacroAction, state: GameState, player: Player) -> ExecResult:
    kind = BurgerKind(macro.obj)
    recipe = RECIPES[kind]
    held = state.chefs[player].held

    if isinstance(held, Plate) and held.burger_kind() == kind:
        return ExecResult(ControlAction.NOOP, MacroStatus.COMPLETE)

    candidates = wv.plate_candidates(state, player, kind)

    # holding a garbage plate: get rid of the burnt beef first
    if isinstance(held, Plate) and held.garbage_id is not None:
        return _go_use(state, player, _station(state, TileKind.BEEF))

    if not candidates:
        if held is None:
            return _go_use(state, player, _station(state, TileKind.PLATE))
        # maybe the held ingredient still fits the recipe through a future plate
        return _put_held_somewhere(state, player)

    location, plate = candidates[0]
    missing = recipe - plate.contents

    if location != "hand":
        # ingredient-into-plate route when we already hold a missing piece
        if isinstance(held, Lettuce) and Ingredient.LETTUCE in missing and \
                held.chop_progress >= state.config.chop_count:
            return _approach(state, player, location, interact=True)
        if isinstance(held, Bread) and Ingredient.BREAD in missing:
            return _approach(state, player, location, interact=True)
        if held is None:
            return _approach(state, player, location, interact=True)  # pick the plate up
        return _put_held_somewhere(state, player)

    # plate in hand: fetch missing pieces, most perishable first
    if Ingredient.BEEF in missing:
        ready = wv.pans_with(state, BeefState.WELL_DONE)
        if ready:
            return _go_use(state, player, ready)
        cooking = wv.pans_with(state, BeefState.COOKING)
        if cooking:
            target = _nearest(state, player, cooking)
            return _approach(state, player, target, interact=False)  # wait beside the pan
        return ExecResult(ControlAction.NOOP, MacroStatus.ABANDONED, "no beef underway")
    if Ingredient.LETTUCE in missing:
        sites = wv.chopped_lettuce_sites(state)
        if sites:
            return _go_use(state, player, sites)
        return ExecResult(ControlAction.NOOP, MacroStatus.ABANDONED, "no chopped lettuce")
    if Ingredient.BREAD in missing:
        loose = wv.loose_bread_sites(state)
        if loose:
            return _go_use(state, player, loose)
        return _go_use(state, player, _station(state, TileKind.BREAD))
    return ExecResult(ControlAction.NOOP, MacroStatus.COMPLETE)


def _exec_serve(macro: MacroAction, state: GameState, player: Player) -> ExecResult:
    kind = BurgerKind(macro.obj)
    if not any(o.kind == kind for o in state.orders):
        return ExecResult(ControlAction.NOOP, MacroStatus.ABANDONED, "order gone")
    held = state.chefs[player].held
    if isinstance(held, Plate) and held.burger_kind() == kind:
        return _go_use(state, player, _station(state, TileKind.SERVE))

    location = wv.complete_plate_location(state, player, kind)
    if location == "hand":
        return _go_use(state, player, _station(state, TileKind.SERVE))
    if location is None:
        return ExecResult(ControlAction.NOOP, MacroStatus.ABANDONED, "burger vanished")
    if held is None:
        return _approach(state, player, location, interact=True)
    return _put_held_somewhere(state, player)


def _exec_pass_on(macro: MacroAction, state: GameState, player: Player) -> ExecResult:
    held = state.chefs[player].held
    wants_plate = macro.obj == "Plate"
    holding_obj = isinstance(held, Plate) if wants_plate else isinstance(held, Bread)

    if holding_obj:
        if wants_plate and held.garbage_id is not None:
            return _go_use(state, player, _station(state, TileKind.BEEF))
        centers = wv.empty_center_cells(state)
        if not centers:
            return ExecResult(ControlAction.NOOP, MacroStatus.ABANDONED, "center counters full")
        human = state.chefs[Player.HUMAN].position
        centers.sort(key=lambda c: (abs(c[0] - human[0]) + abs(c[1] - human[1]), c))
        return _approach(state, player, centers[0], interact=True)

    # completion: the object already sits on a center counter
    for cell in state.layout.cells_of(TileKind.CENTER_COUNTER):
        item = state.counters.get(cell)
        if item is not None and (isinstance(item, Plate) if wants_plate else isinstance(item, Bread)):
            return ExecResult(ControlAction.NOOP, MacroStatus.COMPLETE)

    if held is None:
        station = TileKind.PLATE if wants_plate else TileKind.BREAD
        return _go_use(state, player, _station(state, station))
    return _put_held_somewhere(state, player)


def _exec_putout_fire(macro: MacroAction, state: GameState, player: Player) -> ExecResult:
    fires = wv.burning_pans(state)
    if not fires:
        return ExecResult(ControlAction.NOOP, MacroStatus.COMPLETE)
    held = state.chefs[player].held
    if isinstance(held, FireExtinguisher):
        return _go_use(state, player, fires)
    source = wv.extinguisher_location(state, player)
    if source is None:
        return _NOOP_IN_PROGRESS  # the other chef carries it; wait
    if held is not None:
        return _put_held_somewhere(state, player)
    return _approach(state, player, source, interact=True)


def _exec_idle(macro: MacroAction, state: GameState, player: Player) -> ExecResult:
    return ExecResult(ControlAction.NOOP, MacroStatus.COMPLETE)
