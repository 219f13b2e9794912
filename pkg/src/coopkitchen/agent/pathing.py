"""A* route planning on the kitchen grid.

Plans from a floor cell to any floor cell orthogonally adjacent to a target
station, treating the other chef's cell as impassable. Unit step cost,
Manhattan heuristic, neighbour expansion in the fixed Up/Down/Left/Right
order with an insertion counter as the final heap tie-break, so plans are
deterministic.
"""

from __future__ import annotations

import heapq

from ..env.layout import Cell, Layout
from ..env.state import DIRECTION_ORDER, Direction


def adjacent_floor_cells(layout: Layout, target: Cell) -> list[Cell]:
    cells = []
    for direction in DIRECTION_ORDER:
        dr, dc = direction.delta
        cell = (target[0] + dr, target[1] + dc)
        if layout.is_floor(cell):
            cells.append(cell)
    return cells


def plan_path(
    layout: Layout,
    occupied: set[Cell],
    start: Cell,
    target: Cell,
) -> list[Direction] | None:
    """Directions from `start` to some floor cell adjacent to `target`.

    Empty list when already adjacent; None when unreachable.
    """
    goals = {c for c in adjacent_floor_cells(layout, target) if c not in occupied or c == start}
    if not goals:
        return None
    if start in goals:
        return []

    counter = 0
    open_heap: list[tuple[int, int, Cell]] = []
    g_cost: dict[Cell, int] = {start: 0}
    came: dict[Cell, tuple[Cell, Direction]] = {}

    def heuristic(cell: Cell) -> int:
        return min(abs(cell[0] - g[0]) + abs(cell[1] - g[1]) for g in goals)

    heapq.heappush(open_heap, (heuristic(start), counter, start))
    closed: set[Cell] = set()

    while open_heap:
        _, _, current = heapq.heappop(open_heap)
        if current in closed:
            continue
        closed.add(current)
        if current in goals:
            return _rebuild(came, start, current)
        for direction in DIRECTION_ORDER:
            dr, dc = direction.delta
            nxt = (current[0] + dr, current[1] + dc)
            if not layout.is_floor(nxt) or nxt in occupied:
                continue
            tentative = g_cost[current] + 1
            if tentative < g_cost.get(nxt, 1 << 30):
                g_cost[nxt] = tentative
                came[nxt] = (current, direction)
                counter += 1
                heapq.heappush(open_heap, (tentative + heuristic(nxt), counter, nxt))
    return None


def _rebuild(came, start: Cell, goal: Cell) -> list[Direction]:
    path: list[Direction] = []
    cell = goal
    while cell != start:
        prev, direction = came[cell]
        path.append(direction)
        cell = prev
    path.reverse()
    return path


def facing_direction(from_cell: Cell, target: Cell) -> Direction | None:
    """Direction that makes a chef on `from_cell` face `target`, if adjacent."""
    dr, dc = target[0] - from_cell[0], target[1] - from_cell[1]
    for direction in DIRECTION_ORDER:
        if direction.delta == (dr, dc):
            return direction
    return None


def path_distance(layout: Layout, occupied: set[Cell], start: Cell, target: Cell) -> int | None:
    path = plan_path(layout, occupied, start, target)
    if path is None:
        return None
    return len(path)


def distance_map(layout: Layout, occupied: set[Cell], start: Cell) -> dict[Cell, int]:
    """Floor-cell distances from `start` (single flood fill)."""
    dist = {start: 0}
    frontier = [start]
    d = 0
    while frontier:
        d += 1
        nxt = []
        for cell in frontier:
            for direction in DIRECTION_ORDER:
                dr, dc = direction.delta
                n = (cell[0] + dr, cell[1] + dc)
                if n in dist or n in occupied or not layout.is_floor(n):
                    continue
                dist[n] = d
                nxt.append(n)
        frontier = nxt
    return dist
