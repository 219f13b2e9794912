import pytest

from coopkitchen.env import LayoutError, TileKind, load_bundled, load_layout

from conftest import MINI_LAYOUT


def test_bundled_layout_valid():
    layout = load_bundled()
    assert layout.width == 13 and layout.height == 9
    for kind in (TileKind.PAN, TileKind.CUTBOARD, TileKind.BREAD, TileKind.BEEF,
                 TileKind.LETTUCE, TileKind.PLATE, TileKind.SERVE, TileKind.EXTINGUISHER):
        assert layout.cells_of(kind), f"bundled layout lacks {kind}"
    assert len(layout.cells_of(TileKind.PAN)) == 2
    assert layout.spawn_points[0] != layout.spawn_points[1]
    for spawn in layout.spawn_points:
        assert layout.is_floor(spawn)


def test_bundled_center_block_is_5x1():
    layout = load_bundled()
    center = layout.cells_of(TileKind.CENTER_COUNTER)
    assert len(center) == 5
    rows = {r for r, _ in center}
    assert len(rows) == 1


def test_all_counter_grid_has_no_ring():
    with pytest.raises(LayoutError, match="no floor ring"):
        load_layout("###\n###\n###")


def test_two_pans_accepted():
    text = MINI_LAYOUT.replace("#PBMLS#", "PPBMLS#")
    layout = load_layout(text)
    assert len(layout.cells_of(TileKind.PAN)) == 2


def test_non_rectangular_rejected():
    with pytest.raises(LayoutError, match="row 1"):
        load_layout("###\n##\n###")


def test_unknown_character_named_with_position():
    bad = MINI_LAYOUT.replace(".", "?", 1)
    with pytest.raises(LayoutError, match="'\\?'"):
        load_layout(bad)


def test_missing_station_rejected():
    text = MINI_LAYOUT.replace("F", "#")
    with pytest.raises(LayoutError, match="extinguisher"):
        load_layout(text)


def test_missing_spawn_rejected():
    text = MINI_LAYOUT.replace("2", ".")
    with pytest.raises(LayoutError, match="spawn"):
        load_layout(text)


def test_ring_broken_by_counter_rejected():
    # put a counter into the walkway ring around the center block
    text = MINI_LAYOUT.replace("#.....#", "#..#..#")
    with pytest.raises(LayoutError, match="no floor ring"):
        load_layout(text)
