"""Kitchen layouts: plain-text grids plus agent spawn points.

Tile characters: ``.`` floor, ``X`` counter, ``O`` onion pile, ``P`` pot,
``D`` plate pile, ``S`` serve. ``1`` and ``2`` optionally mark spawn cells
(treated as floor); without markers, agents spawn on the first two floor
cells in row-major order.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

FLOOR, COUNTER, ONION_PILE, POT, PLATE_PILE, SERVE = ".", "X", "O", "P", "D", "S"
TILE_KINDS = (FLOOR, COUNTER, ONION_PILE, POT, PLATE_PILE, SERVE)

_CRAMPED_ROOM = """\
XXPXX
O1.2O
X...D
XXSXX
"""

_LARGE_ROOM = """\
XXXPXXX
O1....O
X.....X
X.....X
O....2D
X.....X
XXXSXXX
"""

# Split layout: agent 1 can only reach onion/plate piles, agent 2 only pot
# and serve; the middle counter column is the hand-off surface.
_FORCED_COORD = """\
XXXXX
O1X.P
D.X2S
OXXPX
XXXXX
"""

BUILTIN_LAYOUTS = {
    "cramped_room": _CRAMPED_ROOM,
    "large_room": _LARGE_ROOM,
    "forced_coord": _FORCED_COORD,
}


@dataclass(frozen=True)
class Layout:
    layout_id: str
    grid: tuple[str, ...]  # rows of tile characters, spawn markers removed
    starts: tuple[tuple[int, int], tuple[int, int]]

    @property
    def height(self) -> int:
        return len(self.grid)

    @property
    def width(self) -> int:
        return len(self.grid[0])

    def tile(self, row: int, col: int) -> str:
        return self.grid[row][col]

    def cells_of(self, kind: str) -> list[tuple[int, int]]:
        """All (row, col) positions of a tile kind, row-major."""
        return [
            (r, c)
            for r in range(self.height)
            for c in range(self.width)
            if self.grid[r][c] == kind
        ]

    def floor_cells(self) -> list[tuple[int, int]]:
        return self.cells_of(FLOOR)


def parse_layout(text: str, layout_id: str) -> Layout:
    rows = [line for line in text.splitlines() if line.strip()]
    if not rows:
        raise ValueError(f"layout {layout_id!r} is empty")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise ValueError(f"layout {layout_id!r} rows have unequal widths")

    starts: dict[int, tuple[int, int]] = {}
    grid_rows = []
    for r, row in enumerate(rows):
        out = []
        for c, ch in enumerate(row):
            if ch in ("1", "2"):
                starts[int(ch)] = (r, c)
                out.append(FLOOR)
            elif ch in TILE_KINDS:
                out.append(ch)
            else:
                raise ValueError(f"layout {layout_id!r}: unknown tile {ch!r} at {(r, c)}")
        grid_rows.append("".join(out))

    layout = Layout(layout_id, tuple(grid_rows), ((0, 0), (0, 0)))
    floors = layout.floor_cells()
    if len(floors) < 2:
        raise ValueError(f"layout {layout_id!r} needs at least two floor cells")
    start1 = starts.get(1, floors[0])
    start2 = starts.get(2, next(p for p in floors if p != start1))
    if start1 == start2:
        raise ValueError(f"layout {layout_id!r}: both agents spawn at {start1}")
    return Layout(layout_id, tuple(grid_rows), (start1, start2))


def builtin_layout(name: str) -> Layout:
    if name not in BUILTIN_LAYOUTS:
        raise ValueError(f"unknown layout {name!r}; have {sorted(BUILTIN_LAYOUTS)}")
    return parse_layout(BUILTIN_LAYOUTS[name], name)


def load_layout(path: str | Path) -> Layout:
    """Load a layout from a plain-text grid file."""
    path = Path(path)
    return parse_layout(path.read_text(), path.stem)
