from .engine import GameOver, advance_world, init_game, interact_outcome, step
from .items import (
    Beef,
    BeefState,
    Bread,
    BurgerKind,
    FireExtinguisher,
    Ingredient,
    Lettuce,
    Plate,
    RECIPES,
    REWARDS,
)
from .layout import Layout, LayoutError, TileKind, load_bundled, load_layout
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
    restore,
    snapshot,
    state_digest,
    state_hash,
)

__all__ = [
    "GameOver", "advance_world", "init_game", "interact_outcome", "step",
    "Beef", "BeefState", "Bread", "BurgerKind", "FireExtinguisher", "Ingredient",
    "Lettuce", "Plate", "RECIPES", "REWARDS",
    "Layout", "LayoutError", "TileKind", "load_bundled", "load_layout",
    "ChefState", "ControlAction", "Direction", "EnvEvent", "EventKind", "GameState",
    "Order", "PanState", "Player", "restore", "snapshot", "state_digest", "state_hash",
]
