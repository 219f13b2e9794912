"""Read-only queries over GameState shared by the rule policy and executor."""

from __future__ import annotations

from ..env.items import Beef, BeefState, Bread, BurgerKind, FireExtinguisher, Ingredient, Lettuce, Plate, RECIPES
from ..env.layout import Cell, TileKind
from ..env.state import GameState, Player


def burning_pans(state: GameState) -> list[Cell]:
    return [cell for cell, pan in sorted(state.pans.items()) if pan.on_fire]


def usable_empty_pans(state: GameState) -> list[Cell]:
    return [
        cell for cell, pan in sorted(state.pans.items())
        if pan.beef is None and not pan.on_fire
    ]


def pans_with(state: GameState, beef_state: BeefState, include_burning=False) -> list[Cell]:
    return [
        cell for cell, pan in sorted(state.pans.items())
        if pan.beef is not None and pan.beef.state == beef_state
        and (include_burning or not pan.on_fire)
    ]


def boards_with_unchopped(state: GameState) -> list[Cell]:
    return [
        cell for cell, lettuce in sorted(state.cutboards.items())
        if lettuce is not None and lettuce.chop_progress < state.config.chop_count
    ]


def empty_cutboards(state: GameState) -> list[Cell]:
    return [cell for cell, lettuce in sorted(state.cutboards.items()) if lettuce is None]


def chopped_lettuce_sites(state: GameState) -> list[Cell]:
    """Cutboard or counter cells holding fully chopped lettuce."""
    sites = [
        cell for cell, lettuce in sorted(state.cutboards.items())
        if lettuce is not None and lettuce.chop_progress >= state.config.chop_count
    ]
    sites += [
        cell for cell, item in sorted(state.counters.items())
        if isinstance(item, Lettuce) and item.chop_progress >= state.config.chop_count
    ]
    return sites


def loose_bread_sites(state: GameState) -> list[Cell]:
    return [
        cell for cell, item in sorted(state.counters.items()) if isinstance(item, Bread)
    ]


def plate_candidates(state: GameState, player: Player, kind: BurgerKind):
    """Plates usable toward `kind`: own hand first, then counters.

    Returns (location, plate) pairs where location is "hand" or a cell;
    sorted by how much of the recipe is already present (more first).
    """
    recipe = RECIPES[kind]
    found = []
    held = state.chefs[player].held
    if isinstance(held, Plate) and held.garbage_id is None and held.contents <= recipe:
        found.append(("hand", held))
    for cell, item in sorted(state.counters.items()):
        if isinstance(item, Plate) and item.garbage_id is None and item.contents <= recipe:
            found.append((cell, item))
    found.sort(key=lambda lp: (-len(lp[1].contents), 0 if lp[0] == "hand" else 1))
    return found


def complete_plate_location(state: GameState, player: Player, kind: BurgerKind):
    """Where a finished burger of `kind` sits: "hand", a counter cell, or None."""
    held = state.chefs[player].held
    if isinstance(held, Plate) and held.burger_kind() == kind:
        return "hand"
    for cell, item in sorted(state.counters.items()):
        if isinstance(item, Plate) and item.burger_kind() == kind:
            return cell
    return None


def extinguisher_location(state: GameState, player: Player):
    """"hand", a dock/counter cell, or None (other chef carries it)."""
    if isinstance(state.chefs[player].held, FireExtinguisher):
        return "hand"
    for cell, docked in sorted(state.extinguisher_docks.items()):
        if docked:
            return cell
    for cell, item in sorted(state.counters.items()):
        if isinstance(item, FireExtinguisher):
            return cell
    return None


def free_counter_cells(state: GameState) -> list[Cell]:
    cells = []
    for r in range(state.layout.height):
        for c in range(state.layout.width):
            cell = (r, c)
            if state.layout.holds_items(cell) and cell not in state.counters:
                cells.append(cell)
    return cells


def empty_center_cells(state: GameState) -> list[Cell]:
    return [
        cell for cell in state.layout.cells_of(TileKind.CENTER_COUNTER)
        if cell not in state.counters
    ]


def beef_underway(state: GameState) -> bool:
    return bool(
        pans_with(state, BeefState.COOKING) or pans_with(state, BeefState.WELL_DONE)
    )


def lettuce_available(state: GameState, player: Player, kind: BurgerKind) -> bool:
    """Chopped lettuce reachable for assembly, or already on a usable plate."""
    if chopped_lettuce_sites(state):
        return True
    held = state.chefs[player].held
    if isinstance(held, Lettuce) and held.chop_progress >= state.config.chop_count:
        return True
    return any(p.has(Ingredient.LETTUCE) for _, p in plate_candidates(state, player, kind))


def beef_available(state: GameState, player: Player, kind: BurgerKind) -> bool:
    if pans_with(state, BeefState.WELL_DONE):
        return True
    return any(p.has(Ingredient.BEEF) for _, p in plate_candidates(state, player, kind))


def station_cells(state: GameState, tile: TileKind) -> list[Cell]:
    return state.layout.cells_of(tile)
