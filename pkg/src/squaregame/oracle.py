"""Unrestricted minimax oracle over the raw game rules.

An independent check that the search shortcuts (forced-move pipeline, move
restrictions, cutoffs) do not change the game value.  Only the raw rules
exist here: players alternate, completing a square wins, a full board is a
draw.  The module recomputes its own square lists and symmetry
permutations from scratch instead of sharing the board module's tables.

Feasible for n up to 4 (with canonical-form memoization); larger boards
are refused.
"""
from __future__ import annotations

from enum import Enum
from functools import lru_cache


class OracleValue(Enum):
    P1_WIN = "p1-win"
    P2_WIN = "p2-win"
    DRAW = "draw"


@lru_cache(maxsize=None)
def _square_vertex_sets(n: int) -> tuple[tuple[int, int, int, int], ...]:
    out = []
    for r in range(n):
        for c in range(n):
            for d in range(1, n):
                if r + d < n and c + d < n:
                    out.append(
                        (r * n + c, r * n + c + d, (r + d) * n + c, (r + d) * n + c + d)
                    )
    return tuple(out)


@lru_cache(maxsize=None)
def _perms(n: int) -> tuple[tuple[int, ...], ...]:
    """Index permutations of the 8 dihedral motions: perm[new] = old."""
    m = n - 1
    maps = (
        lambda r, c: (r, c),
        lambda r, c: (c, m - r),
        lambda r, c: (m - r, m - c),
        lambda r, c: (m - c, r),
        lambda r, c: (r, m - c),
        lambda r, c: (m - r, c),
        lambda r, c: (c, r),
        lambda r, c: (m - c, m - r),
    )
    perms = []
    for f in maps:
        src = [0] * (n * n)
        for i in range(n * n):
            r2, c2 = f(i // n, i % n)
            src[r2 * n + c2] = i
        perms.append(tuple(src))
    return tuple(perms)


@lru_cache(maxsize=None)
def _pow3(n: int) -> tuple[int, ...]:
    return tuple(3**i for i in range(n * n))


def _canonical_key(cells: list[int], n: int) -> int:
    pow3 = _pow3(n)
    best = None
    for src in _perms(n):
        packed = 0
        for j, i in enumerate(src):
            v = cells[i]
            if v:
                packed += v * pow3[j]
        if best is None or packed < best:
            best = packed
    return best


def _has_square(cells: list[int], n: int, v: int) -> bool:
    for a, b, c, d in _square_vertex_sets(n):
        if cells[a] == v and cells[b] == v and cells[c] == v and cells[d] == v:
            return True
    return False


def _alive(cells: list[int], n: int, v: int) -> bool:
    opp = 3 - v
    for quad in _square_vertex_sets(n):
        if all(cells[i] != opp for i in quad):
            return True
    return False


def game_value(n: int, cells: list[int] | str, mover: int) -> OracleValue:
    """Exact value of an arbitrary position under optimal raw-rules play.

    A position where a player already owns a square is decided immediately
    (player 1 checked first).  No move discipline of any kind is applied.
    """
    if isinstance(cells, str):
        cells = [int(ch) for ch in cells]
    else:
        cells = list(cells)
    if mover not in (1, 2):
        raise ValueError(f"mover must be 1 or 2, got {mover!r}")
    if _has_square(cells, n, 1):
        return OracleValue.P1_WIN
    if _has_square(cells, n, 2):
        return OracleValue.P2_WIN
    result = _minimax(cells, n, mover, _memo_for(n))
    return (OracleValue.DRAW, OracleValue.P1_WIN, OracleValue.P2_WIN)[result]


_MEMOS: dict[int, dict] = {}


def _memo_for(n: int) -> dict:
    """Values depend only on the position, so the memo persists across calls."""
    return _MEMOS.setdefault(n, {})


def _minimax(cells: list[int], n: int, mover: int, memo: dict) -> int:
    """0 draw, 1 player-1 wins, 2 player-2 wins; entered with no square yet."""
    key = (_canonical_key(cells, n), mover)
    cached = memo.get(key)
    if cached is not None:
        return cached

    empties = [i for i, v in enumerate(cells) if v == 0]
    if not empties:
        memo[key] = 0
        return 0
    # win-in-one and dead-board shortcuts are value-exact
    through = _cell_square_map(n)
    for i in empties:
        for quad in through[i]:
            if all(cells[j] == mover for j in quad if j != i):
                memo[key] = mover
                return mover
    if not _alive(cells, n, 1) and not _alive(cells, n, 2):
        memo[key] = 0
        return 0

    opp = 3 - mover
    best = opp  # worst case until a better child shows up
    for i in empties:
        cells[i] = mover
        r = _minimax(cells, n, opp, memo)
        cells[i] = 0
        if r == mover:
            best = mover
            break
        if r == 0:
            best = 0
    memo[key] = best
    return best


@lru_cache(maxsize=None)
def _cell_square_map(n: int) -> tuple[tuple[tuple[int, int, int, int], ...], ...]:
    through: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n * n)]
    for quad in _square_vertex_sets(n):
        for i in quad:
            through[i].append(quad)
    return tuple(tuple(x) for x in through)


def oracle_minimax(n: int) -> OracleValue:
    """Game value from the empty board: draw for n=2 and n=3.

    n=4 is permitted (minutes of work, memoized on canonical forms);
    n >= 5 is refused as infeasible for a raw-rules sweep.
    """
    if not 2 <= n <= 4:
        raise ValueError(f"oracle supports n in 2..4, got {n}")
    return game_value(n, [0] * (n * n), 1)
