"""Items, ingredients and burger recipes.

Every item carries a stable integer id assigned at creation; ids survive
state transitions (chopping, cooking) so served burgers can be traced back
to the interactions that built them.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum


class Ingredient(str, Enum):
    BREAD = "bread"
    LETTUCE = "lettuce"  # chopped
    BEEF = "beef"  # well-done


class BurgerKind(str, Enum):
    LETTUCE_BURGER = "LettuceBurger"
    BEEF_BURGER = "BeefBurger"
    BEEF_LETTUCE_BURGER = "BeefLettuceBurger"


RECIPES: dict[BurgerKind, frozenset[Ingredient]] = {
    BurgerKind.LETTUCE_BURGER: frozenset({Ingredient.BREAD, Ingredient.LETTUCE}),
    BurgerKind.BEEF_BURGER: frozenset({Ingredient.BREAD, Ingredient.BEEF}),
    BurgerKind.BEEF_LETTUCE_BURGER: frozenset(
        {Ingredient.BREAD, Ingredient.LETTUCE, Ingredient.BEEF}
    ),
}

REWARDS: dict[BurgerKind, int] = {
    BurgerKind.LETTUCE_BURGER: 15,
    BurgerKind.BEEF_BURGER: 20,
    BurgerKind.BEEF_LETTUCE_BURGER: 25,
}
WRONG_SERVE_PENALTY = -10
MISSED_ORDER_PENALTY = -10


def burger_for(contents: frozenset[Ingredient]):
    """BurgerKind whose recipe is exactly `contents`, else None."""
    for kind, recipe in RECIPES.items():
        if contents == recipe:
            return kind
    return None


class BeefState(str, Enum):
    FRESH = "fresh"
    COOKING = "cooking"
    WELL_DONE = "well_done"
    OVERCOOKED = "overcooked"


@dataclass(frozen=True)
class Bread:
    id: int


@dataclass(frozen=True)
class Lettuce:
    id: int
    chop_progress: int = 0

    def chopped(self, chop_count: int) -> bool:
        return self.chop_progress >= chop_count


@dataclass(frozen=True)
class Beef:
    id: int
    state: BeefState = BeefState.FRESH
    ticks: int = 0  # cooking ticks, or ticks since done for WELL_DONE


@dataclass(frozen=True)
class PlateEntry:
    ingredient: Ingredient
    item_id: int


@dataclass(frozen=True)
class Plate:
    id: int
    entries: tuple[PlateEntry, ...] = ()
    # an overcooked beef sits on top; blocks further assembly until discarded
    garbage_id: int | None = None

    @property
    def contents(self) -> frozenset[Ingredient]:
        return frozenset(e.ingredient for e in self.entries)

    def has(self, ingredient: Ingredient) -> bool:
        return any(e.ingredient == ingredient for e in self.entries)

    def burger_kind(self):
        if self.garbage_id is not None:
            return None
        return burger_for(self.contents)

    def with_entry(self, ingredient: Ingredient, item_id: int) -> "Plate":
        entries = tuple(sorted(self.entries + (PlateEntry(ingredient, item_id),),
                               key=lambda e: e.ingredient.value))
        return replace(self, entries=entries)


@dataclass(frozen=True)
class FireExtinguisher:
    id: int


Item = Bread | Lettuce | Beef | Plate | FireExtinguisher


def item_to_dict(item: Item | None):
    if item is None:
        return None
    if isinstance(item, Bread):
        return {"type": "bread", "id": item.id}
    if isinstance(item, Lettuce):
        return {"type": "lettuce", "id": item.id, "chop_progress": item.chop_progress}
    if isinstance(item, Beef):
        return {"type": "beef", "id": item.id, "state": item.state.value, "ticks": item.ticks}
    if isinstance(item, Plate):
        return {
            "type": "plate",
            "id": item.id,
            "entries": [[e.ingredient.value, e.item_id] for e in item.entries],
            "garbage_id": item.garbage_id,
            "burger": item.burger_kind().value if item.burger_kind() else None,
        }
    if isinstance(item, FireExtinguisher):
        return {"type": "extinguisher", "id": item.id}
    raise TypeError(f"unknown item {item!r}")


def item_from_dict(data) -> Item | None:
    if data is None:
        return None
    t = data["type"]
    if t == "bread":
        return Bread(data["id"])
    if t == "lettuce":
        return Lettuce(data["id"], data["chop_progress"])
    if t == "beef":
        return Beef(data["id"], BeefState(data["state"]), data["ticks"])
    if t == "plate":
        return Plate(
            data["id"],
            tuple(PlateEntry(Ingredient(i), iid) for i, iid in data["entries"]),
            data.get("garbage_id"),
        )
    if t == "extinguisher":
        return FireExtinguisher(data["id"])
    raise ValueError(f"unknown item type {t!r}")
