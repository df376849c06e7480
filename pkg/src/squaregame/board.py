"""Board substrate for the square achievement game.

An n-by-n grid of cells owned by nobody, player 1, or player 2.  A player
wins by occupying the four vertices (r,c), (r,c+d), (r+d,c), (r+d,c+d) of
an axis-aligned square of size d >= 1.  This module provides the grid with
incremental per-square occupancy counts, square enumeration, win/threat
queries, and the 8 dihedral symmetry transforms with a canonical encoding.

Everything here is pure state with no game-flow policy: arbitrary cell
configurations are accepted so that positions can be set up directly in
tests.  Alternation legality is enforced by callers.
"""
from __future__ import annotations

from enum import IntEnum
from functools import lru_cache
from math import isqrt
from typing import Iterator, NamedTuple


class CellValue(IntEnum):
    EMPTY = 0
    P1 = 1
    P2 = 2


EMPTY = CellValue.EMPTY
P1 = CellValue.P1
P2 = CellValue.P2

STATE_CHARS = "012"


def opponent(v: CellValue) -> CellValue:
    if v == P1:
        return P2
    if v == P2:
        return P1
    raise ValueError(f"no opponent for cell value {v!r}")


class Position(NamedTuple):
    r: int
    c: int


class SquareSpec(NamedTuple):
    """A winning configuration: top-left vertex (r, c) and side length d."""

    r: int
    c: int
    d: int

    def vertices(self) -> tuple[Position, Position, Position, Position]:
        r, c, d = self
        return (
            Position(r, c),
            Position(r, c + d),
            Position(r + d, c),
            Position(r + d, c + d),
        )


class IllegalMoveError(ValueError):
    """A placement or retraction that the board state does not allow."""


def enumerate_squares(n: int) -> list[SquareSpec]:
    """All squares on an n-by-n board, ordered by (r, c, ascending d).

    The count is sum over d of (n-d)^2.  The fixed order makes every
    "first/smallest square" result in this package deterministic.
    """
    if n < 1:
        raise ValueError(f"board dimension must be >= 1, got {n}")
    out = []
    for r in range(n):
        for c in range(n):
            for d in range(1, n - max(r, c)):
                out.append(SquareSpec(r, c, d))
    return out


class Transform(IntEnum):
    """The 8 dihedral symmetries of the board, a group of order 8."""

    IDENTITY = 0
    ROT90 = 1
    ROT180 = 2
    ROT270 = 3
    FLIP_COLS = 4
    FLIP_ROWS = 5
    FLIP_MAIN_DIAG = 6
    FLIP_ANTI_DIAG = 7

    def apply(self, pos: Position | tuple[int, int], n: int) -> Position:
        """Image of a board position under this motion."""
        r, c = pos
        m = n - 1
        if self == Transform.IDENTITY:
            return Position(r, c)
        if self == Transform.ROT90:  # clockwise
            return Position(c, m - r)
        if self == Transform.ROT180:
            return Position(m - r, m - c)
        if self == Transform.ROT270:
            return Position(m - c, r)
        if self == Transform.FLIP_COLS:
            return Position(r, m - c)
        if self == Transform.FLIP_ROWS:
            return Position(m - r, c)
        if self == Transform.FLIP_MAIN_DIAG:
            return Position(c, r)
        return Position(m - c, m - r)  # FLIP_ANTI_DIAG

    @property
    def inverse(self) -> "Transform":
        if self == Transform.ROT90:
            return Transform.ROT270
        if self == Transform.ROT270:
            return Transform.ROT90
        return self


TRANSFORMS: tuple[Transform, ...] = tuple(Transform)


class BoardGeometry:
    """Shared, immutable lookup tables for one board dimension.

    Built once per n: the square list, the 4 vertex cell indices of each
    square, the squares through each cell, and the position permutation of
    each dihedral transform.
    """

    def __init__(self, n: int):
        self.n = n
        self.size = n * n
        self.mid_col = (n - 1) // 2
        self.middle_idx = (n // 2) * n + (n // 2) if n % 2 == 1 else -1
        self.squares = tuple(enumerate_squares(n))
        self.vertex_idx = tuple(
            tuple(r * n + c for r, c in sq.vertices()) for sq in self.squares
        )
        through: list[list[int]] = [[] for _ in range(self.size)]
        for s, verts in enumerate(self.vertex_idx):
            for i in verts:
                through[i].append(s)
        self.cell_squares = tuple(tuple(v) for v in through)
        # perm[t][i] = image cell index of cell i under transform t
        self.perm = tuple(
            tuple(
                t.apply((i // n, i % n), n).r * n + t.apply((i // n, i % n), n).c
                for i in range(self.size)
            )
            for t in TRANSFORMS
        )
        # src[t][j] = preimage cell index of cell j (for string rebuilding)
        src: list[list[int]] = [[0] * self.size for _ in TRANSFORMS]
        for t in TRANSFORMS:
            for i, j in enumerate(self.perm[t]):
                src[t][j] = i
        self.src = tuple(tuple(row) for row in src)


@lru_cache(maxsize=None)
def geometry(n: int) -> BoardGeometry:
    return BoardGeometry(n)


class Grid:
    """Mutable n-by-n board with incremental per-square occupancy counts.

    For every square the number of player-1 and player-2 vertices is kept
    up to date on each placement/retraction, together with the number of
    squares still free of each opponent (the "live" squares).  place and
    undo_last are exact inverses over the full state including history.
    """

    __slots__ = (
        "geo", "n", "cells", "cnt1", "cnt2",
        "live_p1", "live_p2", "total1", "total2", "history",
    )

    def __init__(self, n: int):
        if n < 1:
            raise ValueError(f"board dimension must be >= 1, got {n}")
        geo = geometry(n)
        self.geo = geo
        self.n = n
        self.cells: list[int] = [0] * geo.size
        self.cnt1: list[int] = [0] * len(geo.squares)
        self.cnt2: list[int] = [0] * len(geo.squares)
        self.live_p1 = len(geo.squares)  # squares with no P2 vertex
        self.live_p2 = len(geo.squares)  # squares with no P1 vertex
        self.total1 = 0
        self.total2 = 0
        self.history: list[tuple[int, int]] = []

    # -- construction / encoding ------------------------------------------

    @classmethod
    def from_state(cls, state: str) -> "Grid":
        """Rebuild a grid from its row-major '0'/'1'/'2' state string.

        The result has correct occupancy counts but an empty move history
        (the order of placements is not recoverable from a state string).
        """
        n = isqrt(len(state))
        if n * n != len(state):
            raise ValueError(f"state length {len(state)} is not a perfect square")
        g = cls(n)
        for i, ch in enumerate(state):
            if ch == "0":
                continue
            if ch not in "12":
                raise ValueError(f"invalid state character {ch!r} at cell {i}")
            g._place_idx(i, int(ch))
        g.history.clear()
        return g

    def state_string(self) -> str:
        """Row-major encoding: '0' empty, '1' player 1, '2' player 2."""
        return "".join(STATE_CHARS[v] for v in self.cells)

    def copy(self) -> "Grid":
        g = Grid.__new__(Grid)
        g.geo = self.geo
        g.n = self.n
        g.cells = self.cells.copy()
        g.cnt1 = self.cnt1.copy()
        g.cnt2 = self.cnt2.copy()
        g.live_p1 = self.live_p1
        g.live_p2 = self.live_p2
        g.total1 = self.total1
        g.total2 = self.total2
        g.history = self.history.copy()
        return g

    # -- cell access -------------------------------------------------------

    def index(self, pos: Position | tuple[int, int]) -> int:
        r, c = pos
        if not (0 <= r < self.n and 0 <= c < self.n):
            raise ValueError(f"position {(r, c)} outside {self.n}x{self.n} board")
        return r * self.n + c

    def cell(self, pos: Position | tuple[int, int]) -> CellValue:
        return CellValue(self.cells[self.index(pos)])

    def empty_positions(self) -> Iterator[Position]:
        n = self.n
        for i, v in enumerate(self.cells):
            if v == 0:
                yield Position(i // n, i % n)

    def stones(self) -> int:
        return self.total1 + self.total2

    def to_move(self) -> CellValue:
        """Side to move under alternating play starting with player 1."""
        return P1 if self.total1 == self.total2 else P2

    # -- mutation ----------------------------------------------------------

    def _place_idx(self, i: int, v: int) -> None:
        self.cells[i] = v
        if v == 1:
            cnt = self.cnt1
            self.total1 += 1
            for s in self.geo.cell_squares[i]:
                cnt[s] += 1
                if cnt[s] == 1:
                    self.live_p2 -= 1
        else:
            cnt = self.cnt2
            self.total2 += 1
            for s in self.geo.cell_squares[i]:
                cnt[s] += 1
                if cnt[s] == 1:
                    self.live_p1 -= 1
        self.history.append((i, v))

    def _undo_idx(self) -> tuple[int, int]:
        i, v = self.history.pop()
        self.cells[i] = 0
        if v == 1:
            cnt = self.cnt1
            self.total1 -= 1
            for s in self.geo.cell_squares[i]:
                cnt[s] -= 1
                if cnt[s] == 0:
                    self.live_p2 += 1
        else:
            cnt = self.cnt2
            self.total2 -= 1
            for s in self.geo.cell_squares[i]:
                cnt[s] -= 1
                if cnt[s] == 0:
                    self.live_p1 += 1
        return i, v

    def place(self, pos: Position | tuple[int, int], v: CellValue | int) -> None:
        """Put a player-1 or player-2 stone on an empty cell."""
        if v not in (1, 2):
            raise ValueError(f"can only place P1 or P2, got {v!r}")
        i = self.index(pos)
        if self.cells[i] != 0:
            raise IllegalMoveError(f"cell {tuple(pos)} is already occupied")
        self._place_idx(i, int(v))

    def undo_last(self) -> tuple[Position, CellValue]:
        """Retract the most recent placement; exact inverse of place."""
        if not self.history:
            raise IllegalMoveError("no moves to undo")
        i, v = self._undo_idx()
        return Position(i // self.n, i % self.n), CellValue(v)

    # -- win / threat queries ------------------------------------------------

    def _cnt(self, v: int) -> list[int]:
        return self.cnt1 if v == 1 else self.cnt2

    def completed_square(self, v: CellValue | int) -> SquareSpec | None:
        """First (in enumeration order) square fully occupied by v, if any."""
        cnt = self._cnt(v)
        for s, k in enumerate(cnt):
            if k == 4:
                return self.geo.squares[s]
        return None

    def completing_cells(self, v: CellValue | int) -> set[Position]:
        """Empty cells where a v stone would complete at least one square.

        Exactly the single empty vertex of each square holding three v
        stones and no opponent stone.
        """
        mine = self._cnt(v)
        theirs = self.cnt2 if v == 1 else self.cnt1
        n = self.n
        cells = self.cells
        out: set[Position] = set()
        for s in range(len(mine)):
            if mine[s] == 3 and theirs[s] == 0:
                for i in self.geo.vertex_idx[s]:
                    if cells[i] == 0:
                        out.add(Position(i // n, i % n))
                        break
        return out

    def has_live_square(self, v: CellValue | int) -> bool:
        """True while some square has no vertex of v's opponent."""
        if v == 1:
            return self.live_p1 > 0
        if v == 2:
            return self.live_p2 > 0
        raise ValueError(f"expected P1 or P2, got {v!r}")

    # -- symmetry ------------------------------------------------------------

    def is_column_symmetric(self) -> bool:
        """True iff mirroring in columns leaves the grid unchanged."""
        n = self.n
        cells = self.cells
        for r in range(n):
            row = r * n
            for c in range((n + 1) // 2):
                if cells[row + c] != cells[row + n - 1 - c]:
                    return False
        return True

    def transformed(self, t: Transform) -> "Grid":
        """New grid with cell contents (and history positions) moved by t."""
        g = Grid(self.n)
        perm = self.geo.perm[t]
        if len(self.history) == self.stones():
            for i, v in self.history:
                g._place_idx(perm[i], v)
        else:
            # state not built by placements alone: map raw cells instead
            for i, v in enumerate(self.cells):
                if v:
                    g._place_idx(perm[i], v)
            g.history.clear()
        return g

    def canonical_form(self) -> tuple[str, Transform]:
        """Least state string over the 8 transforms, and a transform reaching it.

        Ties between transforms are broken by enum order, so the returned
        transform is deterministic; the string itself is orbit-invariant.
        """
        s = self.state_string()
        best = s
        best_t = Transform.IDENTITY
        for t in TRANSFORMS[1:]:
            src = self.geo.src[t]
            cand = "".join(s[j] for j in src)
            if cand < best:
                best = cand
                best_t = t
        return best, best_t

    # -- misc ------------------------------------------------------------------

    def render(self, *, marks: dict[Position, str] | None = None) -> str:
        """ASCII picture with O for player 1 and X for player 2."""
        glyphs = {0: ".", 1: "O", 2: "X"}
        rows = []
        header = "   " + " ".join(str(c) for c in range(self.n))
        rows.append(header)
        for r in range(self.n):
            line = [f"{r}  "]
            for c in range(self.n):
                ch = glyphs[self.cells[r * self.n + c]]
                if marks and Position(r, c) in marks:
                    ch = marks[Position(r, c)]
                line.append(ch + " ")
            rows.append("".join(line).rstrip())
        return "\n".join(rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Grid):
            return NotImplemented
        return (
            self.n == other.n
            and self.cells == other.cells
            and self.history == other.history
        )

    def __hash__(self):  # grids are mutable; identity hashing only
        return id(self)

    def __repr__(self) -> str:
        return f"Grid(n={self.n}, state={self.state_string()!r})"
