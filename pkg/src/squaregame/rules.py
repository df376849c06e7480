"""Move discipline for optimal play.

The forced-move pipeline evaluated before any free choice, in this exact
order:

  1. InstantWin     the mover can complete a square right now;
  2. InstantLoss    the opponent has two or more distinct completing cells
                    (a dilemma) - the mover cannot block both;
  3. ForcedBlock    the opponent has exactly one completing cell, which the
                    mover must occupy;
  4. DilemmaWin     the mover can create two or more distinct completing
                    cells with one stone, winning on the move after next;
  5. Free           none of the above.

Deliberately absent: a rule forcing a player to occupy a cell merely
because the opponent could use it to create a dilemma on their next move.
Pre-empting a future dilemma is an ordinary free-choice option; sometimes
the better reply is to build a counter-threat instead, and forcing the
block here turns provable draws into losses.

legal_candidates applies the move restrictions that keep exhaustive search
tractable without changing the game value:

  (a) while the board equals its left-right mirror, only columns up to the
      middle may be used;
  (b) the first move must satisfy r <= c, and so must the second move when
      the first occupied the exact middle cell of an odd board;
  (c) where configured per (n, player), moves are limited to cells lying on
      some square still free of player-2 stones, whenever such a cell
      exists.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .board import CellValue, Grid, P1, P2, Position, SquareSpec

# scan result codes shared with the search hot loops
SCAN_INSTANT_WIN = 0
SCAN_INSTANT_LOSS = 1
SCAN_FORCED_BLOCK = 2
SCAN_DILEMMA_WIN = 3
SCAN_FREE = 4


class ForcedKind(Enum):
    INSTANT_WIN = "instant-win"
    INSTANT_LOSS = "instant-loss"
    FORCED_BLOCK = "forced-block"
    DILEMMA_WIN = "dilemma-win"
    FREE = "free"


_KIND_BY_CODE = (
    ForcedKind.INSTANT_WIN,
    ForcedKind.INSTANT_LOSS,
    ForcedKind.FORCED_BLOCK,
    ForcedKind.DILEMMA_WIN,
    ForcedKind.FREE,
)


@dataclass(frozen=True)
class ForcedStatus:
    kind: ForcedKind
    cell: Position | None = None


MOVE_ORDERINGS = ("row-major", "center-first")


@dataclass(frozen=True)
class RuleConfig:
    """Which move restrictions are active, and how candidates are ordered.

    The defaults enable the symmetry and first-move restrictions everywhere
    and the useful-vertex restriction for player 2 on 4x4 boards and player
    1 on 5x5 boards.
    """

    use_symmetry_restriction: bool = True
    use_diagonal_first_move_restriction: bool = True
    useful_vertex_restriction_for: frozenset[tuple[int, int]] = frozenset(
        {(4, P2), (5, P1)}
    )
    move_ordering: str = "row-major"

    def __post_init__(self):
        if self.move_ordering not in MOVE_ORDERINGS:
            raise ValueError(
                f"unknown move ordering {self.move_ordering!r}; "
                f"expected one of {MOVE_ORDERINGS}"
            )


DEFAULT_RULES = RuleConfig()
UNRESTRICTED_RULES = RuleConfig(
    use_symmetry_restriction=False,
    use_diagonal_first_move_restriction=False,
    useful_vertex_restriction_for=frozenset(),
)


def _scan(g: Grid, mover: int) -> tuple[int, int]:
    """Forced-move pipeline on raw cell indices: (code, cell index or -1)."""
    if mover == 1:
        cnt_m, cnt_o = g.cnt1, g.cnt2
    else:
        cnt_m, cnt_o = g.cnt2, g.cnt1
    cells = g.cells
    vertex_idx = g.geo.vertex_idx

    win_cell = -1
    opp_threats: set[int] = set()
    for s in range(len(cnt_m)):
        cm = cnt_m[s]
        co = cnt_o[s]
        if cm == 3 and co == 0:
            for i in vertex_idx[s]:
                if cells[i] == 0:
                    if win_cell < 0 or i < win_cell:
                        win_cell = i
                    break
        elif co == 3 and cm == 0:
            for i in vertex_idx[s]:
                if cells[i] == 0:
                    opp_threats.add(i)
                    break
    if win_cell >= 0:
        return SCAN_INSTANT_WIN, win_cell
    if len(opp_threats) >= 2:
        return SCAN_INSTANT_LOSS, -1
    if opp_threats:
        return SCAN_FORCED_BLOCK, opp_threats.pop()

    # dilemma creation: a placement leaving two or more distinct threats
    cell_squares = g.geo.cell_squares
    for i in range(len(cells)):
        if cells[i] != 0:
            continue
        first = -1
        for s in cell_squares[i]:
            if cnt_m[s] == 2 and cnt_o[s] == 0:
                for j in vertex_idx[s]:
                    if cells[j] == 0 and j != i:
                        if first < 0:
                            first = j
                        elif j != first:
                            return SCAN_DILEMMA_WIN, i
                        break
    return SCAN_FREE, -1


def forced_status(g: Grid, mover: CellValue | int) -> ForcedStatus:
    """Evaluate the forced-move pipeline for the side about to move.

    Assumes the game is not already won.  Cell tie-breaks (which winning or
    dilemma-creating cell is reported) are row-major.
    """
    if mover not in (1, 2):
        raise ValueError(f"mover must be P1 or P2, got {mover!r}")
    code, idx = _scan(g, int(mover))
    cell = Position(idx // g.n, idx % g.n) if idx >= 0 else None
    return ForcedStatus(_KIND_BY_CODE[code], cell)


def _diag_restriction_applies(g: Grid) -> bool:
    stones = g.total1 + g.total2
    if stones == 0:
        return True
    if stones == 1 and g.n % 2 == 1:
        return g.cells[g.geo.middle_idx] != 0
    return False


def candidate_indices(g: Grid, mover: int, cfg: RuleConfig) -> list[int]:
    """legal_candidates on raw cell indices (shared with the search loops)."""
    n = g.n
    cells = g.cells
    cand = [i for i in range(len(cells)) if cells[i] == 0]

    if cfg.use_symmetry_restriction and g.is_column_symmetric():
        mid = g.geo.mid_col
        cand = [i for i in cand if i % n <= mid]

    if cfg.use_diagonal_first_move_restriction and _diag_restriction_applies(g):
        cand = [i for i in cand if i // n <= i % n]

    if (n, mover) in cfg.useful_vertex_restriction_for:
        cnt2 = g.cnt2
        cell_squares = g.geo.cell_squares
        useful = [
            i for i in cand if any(cnt2[s] == 0 for s in cell_squares[i])
        ]
        if useful:
            cand = useful

    if cfg.move_ordering == "center-first":
        m = n - 1  # doubled Chebyshev distance avoids fractional centers
        cand.sort(key=lambda i: (max(abs(2 * (i // n) - m), abs(2 * (i % n) - m)), i))
    return cand


def legal_candidates(
    g: Grid, mover: CellValue | int, cfg: RuleConfig = DEFAULT_RULES
) -> list[Position]:
    """Ordered candidate moves for a side whose pipeline status is Free.

    An empty result is valid: the board is full or every empty cell was
    filtered out; callers treat it as "no move".
    """
    if mover not in (1, 2):
        raise ValueError(f"mover must be P1 or P2, got {mover!r}")
    n = g.n
    return [Position(i // n, i % n) for i in candidate_indices(g, int(mover), cfg)]


class StatusKind(Enum):
    ONGOING = "ongoing"
    WON = "won"
    DRAW = "draw"


@dataclass(frozen=True)
class GameStatus:
    kind: StatusKind
    winner: CellValue | None = None
    square: SquareSpec | None = None


def game_status(g: Grid) -> GameStatus:
    """Won / draw / ongoing for live play.

    A draw is declared on a full board, and also early once neither player
    has any square free of opponent stones (nobody can ever win).
    """
    sq = g.completed_square(P1)
    if sq is not None:
        return GameStatus(StatusKind.WON, P1, sq)
    sq = g.completed_square(P2)
    if sq is not None:
        return GameStatus(StatusKind.WON, P2, sq)
    if g.stones() == g.geo.size:
        return GameStatus(StatusKind.DRAW)
    if not g.has_live_square(P1) and not g.has_live_square(P2):
        return GameStatus(StatusKind.DRAW)
    return GameStatus(StatusKind.ONGOING)
