"""Live opponent built on a strategy table.

Move resolution order: forced-move pipeline first (win now, block the only
threat, create a double threat), then the strategy table via canonical
lookup, then a bounded fallback search, then the first empty cell.  With a
verified table for the engine's side and board size the play carries the
table's guarantee; any other combination is best effort.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .board import Grid, Position, opponent
from .rules import (
    GameStatus,
    StatusKind,
    SCAN_DILEMMA_WIN,
    SCAN_FORCED_BLOCK,
    SCAN_INSTANT_LOSS,
    SCAN_INSTANT_WIN,
    _scan,
    game_status,
)
from .strategy import StrategyTable, lookup_move


@dataclass(frozen=True)
class EngineProfile:
    n: int
    engine_side: int
    table: StrategyTable | None = None
    fallback_depth: int = 4

    def __post_init__(self):
        if self.engine_side not in (1, 2):
            raise ValueError(f"engine_side must be P1 or P2, got {self.engine_side!r}")
        if self.table is not None:
            if self.table.n != self.n:
                raise ValueError(f"table is for n={self.table.n}, profile is n={self.n}")
            if self.table.side != self.engine_side:
                raise ValueError(
                    f"table plays side {self.table.side}, engine is side {self.engine_side}"
                )


def engine_move(g: Grid, prof: EngineProfile) -> Position:
    """The engine's move for the current position.

    Deterministic for a fixed profile; never declines a one-move win and
    never returns an occupied cell.
    """
    status = game_status(g)
    if status.kind is not StatusKind.ONGOING:
        raise ValueError("game is already over")
    if g.to_move() != prof.engine_side:
        raise ValueError("it is not the engine's turn")

    code, idx = _scan(g, prof.engine_side)
    if code in (SCAN_INSTANT_WIN, SCAN_FORCED_BLOCK, SCAN_DILEMMA_WIN):
        return Position(idx // g.n, idx % g.n)

    if prof.table is not None:
        pos = lookup_move(prof.table, g)
        if pos is not None:
            return pos

    pos = _search_move(g, prof.engine_side, prof.fallback_depth)
    if pos is not None:
        return pos
    for p in g.empty_positions():
        return p
    raise ValueError("no empty cell to play")


# fallback values, best for the mover first
_WIN, _UNKNOWN, _LOSS = 2, 1, 0


def _search_move(g: Grid, side: int, depth: int) -> Position | None:
    """First empty cell achieving the best provable value within `depth`."""
    best_pos = None
    best_val = -1
    for i in range(len(g.cells)):
        if g.cells[i] != 0:
            continue
        g._place_idx(i, side)
        val = _negate(_value(g, opponent(side), depth - 1))
        g._undo_idx()
        if val > best_val:
            best_val = val
            best_pos = Position(i // g.n, i % g.n)
            if val == _WIN:
                break
    return best_pos


def _negate(v: int) -> int:
    return 2 - v


def _value(g: Grid, mover: int, depth: int) -> int:
    """Bounded value for the mover under the forced-move discipline."""
    if g.completed_square(3 - mover) is not None:
        return _LOSS
    code, idx = _scan(g, mover)
    if code in (SCAN_INSTANT_WIN, SCAN_DILEMMA_WIN):
        return _WIN
    if code == SCAN_INSTANT_LOSS:
        return _LOSS
    if depth <= 0:
        return _UNKNOWN
    if code == SCAN_FORCED_BLOCK:
        g._place_idx(idx, mover)
        val = _negate(_value(g, 3 - mover, depth - 1))
        g._undo_idx()
        return val
    best = -1
    for i in range(len(g.cells)):
        if g.cells[i] != 0:
            continue
        g._place_idx(i, mover)
        val = _negate(_value(g, 3 - mover, depth - 1))
        g._undo_idx()
        if val > best:
            best = val
            if best == _WIN:
                return _WIN
    if best < 0:
        return _UNKNOWN  # full board: a draw, which outranks a loss
    return best


@dataclass
class GameRecord:
    n: int
    moves: list[Position] = field(default_factory=list)
    status: GameStatus | None = None


def play_out(prof_a: EngineProfile, prof_b: EngineProfile) -> GameRecord:
    """Alternate engine moves until the game ends; returns the full record."""
    if prof_a.n != prof_b.n:
        raise ValueError("profiles must share the board size")
    if prof_a.engine_side == prof_b.engine_side:
        raise ValueError("profiles must play opposite sides")
    by_side = {prof_a.engine_side: prof_a, prof_b.engine_side: prof_b}
    g = Grid(prof_a.n)
    record = GameRecord(n=prof_a.n)
    status = game_status(g)
    while status.kind is StatusKind.ONGOING:
        mover = g.to_move()
        pos = engine_move(g, by_side[mover])
        g.place(pos, mover)
        record.moves.append(pos)
        status = game_status(g)
    record.status = status
    return record
