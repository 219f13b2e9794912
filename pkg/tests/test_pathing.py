"""A* planner against the BFS oracle, plus edge cases."""

from coopkitchen.agent.pathing import adjacent_floor_cells, distance_map, plan_path
from coopkitchen.env import Direction, TileKind, load_bundled, load_layout

from conftest import MINI_LAYOUT, bfs_path


def walk(layout, start, directions):
    pos = start
    for direction in directions:
        dr, dc = direction.delta
        pos = (pos[0] + dr, pos[1] + dc)
        assert layout.is_floor(pos), f"path leaves the floor at {pos}"
    return pos


def test_already_adjacent_gives_empty_path():
    layout = load_layout(MINI_LAYOUT)
    pan = layout.cells_of(TileKind.PAN)[0]  # (0,1)
    assert plan_path(layout, set(), (1, 1), pan) == []


def test_path_lengths_match_bfs_oracle_mini():
    layout = load_layout(MINI_LAYOUT)
    floors = [
        (r, c) for r in range(layout.height) for c in range(layout.width)
        if layout.is_floor((r, c))
    ]
    targets = [
        (r, c) for r in range(layout.height) for c in range(layout.width)
        if not layout.is_floor((r, c)) and adjacent_floor_cells(layout, (r, c))
    ]
    for start in floors:
        for target in targets:
            path = plan_path(layout, set(), start, target)
            goals = set(adjacent_floor_cells(layout, target))
            oracle = bfs_path(layout, start, goals)
            if oracle is None:
                assert path is None
            else:
                assert path is not None
                assert len(path) == len(oracle)
                end = walk(layout, start, path)
                assert end in goals


def test_paths_route_around_center_counter():
    layout = load_bundled()
    # agent spawn is top-left; serve spot is on the right wall
    serve = layout.cells_of(TileKind.SERVE)[0]
    start = layout.spawn_points[0]
    path = plan_path(layout, set(), start, serve)
    oracle = bfs_path(layout, start, set(adjacent_floor_cells(layout, serve)))
    assert len(path) == len(oracle)


def test_other_chef_blocks_only_corridor():
    layout = load_layout(MINI_LAYOUT)
    # (2,1) is the single cell linking the left side of the ring rows
    assert plan_path(layout, {(2, 1), (2, 5)}, (3, 1), (0, 1)) is None
    assert plan_path(layout, {(2, 5)}, (3, 1), (0, 1)) is not None


def test_deterministic_tie_break():
    layout = load_bundled()
    target = layout.cells_of(TileKind.CENTER_COUNTER)[2]
    paths = {tuple(plan_path(layout, set(), layout.spawn_points[0], target)) for _ in range(5)}
    assert len(paths) == 1


def test_distance_map_matches_bfs():
    layout = load_bundled()
    start = layout.spawn_points[0]
    dist = distance_map(layout, set(), start)
    for cell, d in dist.items():
        oracle = bfs_path(layout, start, {cell})
        assert (oracle is not None and len(oracle) == d) or (cell == start and d == 0)
