"""Kitchen layouts: ASCII grid parsing and validation.

Legend (one character per tile):

    ``.`` floor        ``#`` counter        ``=`` center counter
    ``P`` pan          ``C`` cutboard       ``B`` bread station
    ``M`` beef station ``L`` lettuce station``D`` plate station
    ``S`` serve spot   ``F`` extinguisher   ``1``/``2`` spawn points (floor)

A valid kitchen has a block of center counters fully surrounded by a
walkable ring of floor, at least one tile of every station kind, and two
distinct spawn points on floor cells.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from importlib import resources

Cell = tuple[int, int]  # (row, col)


class TileKind(str, Enum):
    FLOOR = "floor"
    COUNTER = "counter"
    CENTER_COUNTER = "center_counter"
    PAN = "pan"
    CUTBOARD = "cutboard"
    BREAD = "bread"
    BEEF = "beef"
    LETTUCE = "lettuce"
    PLATE = "plate"
    SERVE = "serve"
    EXTINGUISHER = "extinguisher"


LEGEND = {
    ".": TileKind.FLOOR,
    "#": TileKind.COUNTER,
    "=": TileKind.CENTER_COUNTER,
    "P": TileKind.PAN,
    "C": TileKind.CUTBOARD,
    "B": TileKind.BREAD,
    "M": TileKind.BEEF,
    "L": TileKind.LETTUCE,
    "D": TileKind.PLATE,
    "S": TileKind.SERVE,
    "F": TileKind.EXTINGUISHER,
}

# Spawn markers sit on floor tiles.
SPAWN_CHARS = ("1", "2")

STATION_KINDS = (
    TileKind.COUNTER,
    TileKind.CENTER_COUNTER,
    TileKind.PAN,
    TileKind.CUTBOARD,
    TileKind.BREAD,
    TileKind.BEEF,
    TileKind.LETTUCE,
    TileKind.PLATE,
    TileKind.SERVE,
    TileKind.EXTINGUISHER,
)


class LayoutError(ValueError):
    """Raised for malformed or invalid layout text."""


@dataclass(frozen=True)
class Layout:
    width: int
    height: int
    tiles: tuple[tuple[TileKind, ...], ...]  # tiles[row][col]
    spawn_points: tuple[Cell, Cell]
    text: str  # original grid, used for hashing/echo

    def tile(self, cell: Cell) -> TileKind:
        r, c = cell
        return self.tiles[r][c]

    def in_bounds(self, cell: Cell) -> bool:
        r, c = cell
        return 0 <= r < self.height and 0 <= c < self.width

    def is_floor(self, cell: Cell) -> bool:
        return self.in_bounds(cell) and self.tile(cell) == TileKind.FLOOR

    def cells_of(self, kind: TileKind) -> list[Cell]:
        return [
            (r, c)
            for r in range(self.height)
            for c in range(self.width)
            if self.tiles[r][c] == kind
        ]

    def holds_items(self, cell: Cell) -> bool:
        """Counter-like cells that can hold one loose item."""
        return self.tile(cell) in (TileKind.COUNTER, TileKind.CENTER_COUNTER)


def load_layout(text: str) -> Layout:
    """Parse and validate an ASCII layout grid."""
    lines = [line for line in text.rstrip("\n").split("\n")]
    if not lines or not lines[0]:
        raise LayoutError("empty layout")
    width = len(lines[0])
    for r, line in enumerate(lines):
        if len(line) != width:
            raise LayoutError(f"non-rectangular grid: row {r} has {len(line)} columns, expected {width}")

    spawns: list[Cell] = [None, None]  # type: ignore[list-item]
    rows: list[tuple[TileKind, ...]] = []
    for r, line in enumerate(lines):
        row: list[TileKind] = []
        for c, ch in enumerate(line):
            if ch in SPAWN_CHARS:
                idx = SPAWN_CHARS.index(ch)
                if spawns[idx] is not None:
                    raise LayoutError(f"duplicate spawn marker '{ch}' at row {r} col {c}")
                spawns[idx] = (r, c)
                row.append(TileKind.FLOOR)
            elif ch in LEGEND:
                row.append(LEGEND[ch])
            else:
                raise LayoutError(f"unknown character {ch!r} at row {r} col {c}")
        rows.append(tuple(row))

    layout = Layout(
        width=width,
        height=len(lines),
        tiles=tuple(rows),
        spawn_points=(spawns[0] or (-1, -1), spawns[1] or (-1, -1)),
        text="\n".join(lines),
    )
    _validate(layout, spawns)
    return layout


def _validate(layout: Layout, spawns: list[Cell]) -> None:
    center = layout.cells_of(TileKind.CENTER_COUNTER)
    if not center:
        raise LayoutError("no floor ring: layout has no center counter block")
    ring = _ring_cells(layout, center)
    for cell in ring:
        if not layout.in_bounds(cell):
            raise LayoutError(f"no floor ring: center counter touches the edge at {cell}")
        if layout.tile(cell) != TileKind.FLOOR:
            raise LayoutError(
                f"no floor ring: expected floor around the center counter at row {cell[0]} col {cell[1]}"
            )
    if not _floor_connected(layout):
        raise LayoutError("floor cells are not a single connected region")

    for kind in STATION_KINDS:
        if not layout.cells_of(kind):
            raise LayoutError(f"missing required station: {kind.value}")

    if spawns[0] is None or spawns[1] is None:
        raise LayoutError("layout needs two spawn markers '1' and '2'")
    if spawns[0] == spawns[1]:
        raise LayoutError("spawn points must be distinct")


def _ring_cells(layout: Layout, center: list[Cell]) -> set[Cell]:
    """Cells at Chebyshev distance 1 from the center block (its walkable loop)."""
    block = set(center)
    ring: set[Cell] = set()
    for r, c in center:
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                cell = (r + dr, c + dc)
                if cell not in block:
                    ring.add(cell)
    return ring


def _floor_connected(layout: Layout) -> bool:
    floors = set(layout.cells_of(TileKind.FLOOR))
    if not floors:
        return False
    stack = [next(iter(sorted(floors)))]
    seen = set(stack)
    while stack:
        r, c = stack.pop()
        for nxt in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
            if nxt in floors and nxt not in seen:
                seen.add(nxt)
                stack.append(nxt)
    return seen == floors


def bundled_layout_text(name: str = "counter_circuit") -> str:
    return resources.files("coopkitchen.layouts").joinpath(f"{name}.layout").read_text()


def load_bundled(name: str = "counter_circuit") -> Layout:
    return load_layout(bundled_layout_text(name))
