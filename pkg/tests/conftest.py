import pytest

from coopkitchen.config import GameConfig, OrderScriptEntry
from coopkitchen.env import (
    ControlAction,
    Direction,
    GameState,
    Player,
    TileKind,
    init_game,
    load_layout,
    step,
)

# Compact kitchen used by scripted scenarios: every station one step away.
MINI_LAYOUT = """\
#PBMLS#
#.....#
C.===.D
#1.2..#
##F####
"""

DIR_ACTIONS = {
    Direction.UP: ControlAction.UP,
    Direction.DOWN: ControlAction.DOWN,
    Direction.LEFT: ControlAction.LEFT,
    Direction.RIGHT: ControlAction.RIGHT,
}


def bfs_path(layout, start, goals, blocked=frozenset()):
    """Shortest path (list of cells, start excluded) to any goal cell.

    Plain breadth-first search, independent of the package's A* planner.
    """
    goals = set(goals)
    if start in goals:
        return []
    frontier = [start]
    came = {start: None}
    while frontier:
        nxt = []
        for cell in frontier:
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
                n = (cell[0] + dr, cell[1] + dc)
                if n in came or n in blocked or not layout.is_floor(n):
                    continue
                came[n] = cell
                if n in goals:
                    path = [n]
                    while came[path[-1]] != start and came[path[-1]] is not None:
                        path.append(came[path[-1]])
                    path.reverse()
                    return path
                nxt.append(n)
        frontier = nxt
    return None


def direction_between(a, b):
    dr, dc = b[0] - a[0], b[1] - a[1]
    return {(-1, 0): Direction.UP, (1, 0): Direction.DOWN,
            (0, -1): Direction.LEFT, (0, 1): Direction.RIGHT}[(dr, dc)]


class Driver:
    """Step-by-step scenario driver with BFS navigation for scripted tests."""

    def __init__(self, state: GameState):
        self.state = state
        self.events = []
        self.reward = 0

    def do(self, a_agent=ControlAction.NOOP, a_human=ControlAction.NOOP):
        self.state, events, reward = step(self.state, a_agent, a_human)
        self.events.extend(events)
        self.reward += reward
        return events

    def wait(self, ticks):
        for _ in range(ticks):
            self.do()

    def _move_actions(self, player, target):
        """Actions walking `player` adjacent to `target` and facing it."""
        chef = self.state.chefs[player]
        other = self.state.chefs[player.other()].position
        adj = [
            (target[0] + dr, target[1] + dc)
            for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1))
            if self.state.layout.is_floor((target[0] + dr, target[1] + dc))
        ]
        path = bfs_path(self.state.layout, chef.position, adj, blocked={other})
        assert path is not None, f"no path from {chef.position} to {target}"
        actions = []
        pos = chef.position
        for cell in path:
            actions.append(DIR_ACTIONS[direction_between(pos, cell)])
            pos = cell
        facing = direction_between(pos, target)
        actions.append(DIR_ACTIONS[facing])  # blocked move onto the station = turn
        return actions

    def goto_face(self, player, target):
        for action in self._move_actions(player, target):
            if player == Player.AGENT:
                self.do(a_agent=action)
            else:
                self.do(a_human=action)

    def goto_cell(self, player, cell):
        """Walk `player` onto a floor cell (parking between scenario phases)."""
        chef = self.state.chefs[player]
        other = self.state.chefs[player.other()].position
        path = bfs_path(self.state.layout, chef.position, {cell}, blocked={other})
        assert path is not None, f"no path from {chef.position} onto {cell}"
        pos = chef.position
        for nxt in path:
            action = DIR_ACTIONS[direction_between(pos, nxt)]
            if player == Player.AGENT:
                self.do(a_agent=action)
            else:
                self.do(a_human=action)
            pos = nxt

    def interact(self, player):
        if player == Player.AGENT:
            return self.do(a_agent=ControlAction.INTERACT)
        return self.do(a_human=ControlAction.INTERACT)

    def use(self, player, target, times=1):
        """Walk to `target`, face it, interact `times` ticks."""
        self.goto_face(player, target)
        events = []
        for _ in range(times):
            events.extend(self.interact(player))
        return events

    def station(self, kind: TileKind, index=0):
        return self.state.layout.cells_of(kind)[index]


@pytest.fixture
def mini_layout():
    return load_layout(MINI_LAYOUT)


@pytest.fixture
def quiet_config():
    """No random orders: scripted order list only (empty by default)."""
    return GameConfig(order_script=())


def scripted_config(*entries, **overrides):
    script = tuple(OrderScriptEntry(tick=t, kind=k, lifetime=life) for t, k, life in entries)
    return GameConfig(order_script=script, **overrides)


@pytest.fixture
def mini_game(mini_layout, quiet_config):
    return init_game(mini_layout, quiet_config, seed=1)
