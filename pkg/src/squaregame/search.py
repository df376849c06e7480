"""Exhaustive backtracking search for "can player 1 force a square?".

The search walks all game runs allowed by the forced-move pipeline and the
move restrictions, depth-first with in-place undo.  Player 1 succeeds at a
node if some candidate leads to a player-1 win; player 2 succeeds if some
candidate avoids one.  A branch ends without a player-1 win when a player-2
square is completed, when player 1 has no live square left, when the move
limit is reached, or when no candidate remains.

Counters: moves_total counts every placement performed; a player's
backtrack counter counts each of their placements retracted after its
subtree came out against that player's aim, so a player executing a
proven strategy backtracks exactly zero times.

No transposition table: identical configurations reached on different
paths are re-searched, which keeps the counters well defined.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Optional, TYPE_CHECKING

from .board import Grid, Position
from .rules import (
    DEFAULT_RULES,
    RuleConfig,
    SCAN_DILEMMA_WIN,
    SCAN_FORCED_BLOCK,
    SCAN_INSTANT_LOSS,
    SCAN_INSTANT_WIN,
    _scan,
    candidate_indices,
)

if TYPE_CHECKING:
    from .strategy import StrategyTable


class Outcome(Enum):
    P1_WIN = "win"
    NO_P1_WIN = "draw"

    @property
    def label(self) -> str:
        return self.value


#: move-limit policies: "none" (the n^2 natural limit), "paper-n5"
#: (second-move-dependent limits on the 5x5 board), or an int for a fixed cap.
POLICY_NONE = "none"
POLICY_N5 = "paper-n5"

# 5x5 limits keyed by the game's second move; any other second move gets
# the default.  These bound how long player 1 may take to finish a game.
_N5_LIMITS = {(0, 2): 17, (0, 0): 13, (1, 2): 13}
_N5_DEFAULT_LIMIT = 11


def max_moves_for(
    second_move: Position | tuple[int, int] | None,
    policy: int | str,
    n: int,
) -> int:
    """Maximum game length once the second move is known.

    Under "paper-n5" (5x5 only): second move (0,2) allows 17 moves, (0,0)
    and (1,2) allow 13, anything else 11.
    """
    if policy == POLICY_NONE:
        return n * n
    if policy == POLICY_N5:
        if n != 5:
            raise ValueError(f"policy {POLICY_N5!r} is only valid for n=5, got n={n}")
        if second_move is None:
            return n * n
        return _N5_LIMITS.get(tuple(second_move), _N5_DEFAULT_LIMIT)
    k = int(policy)
    if not 1 <= k <= n * n:
        raise ValueError(f"fixed move limit must be in 1..{n * n}, got {k}")
    return k


@dataclass
class SearchConfig:
    n: int
    rules: RuleConfig = DEFAULT_RULES
    max_moves_policy: int | str = POLICY_NONE
    progress_interval: int = 100_000
    strategy: Optional["StrategyTable"] = None

    def __post_init__(self):
        if self.strategy is not None and self.strategy.n != self.n:
            raise ValueError(
                f"strategy table is for n={self.strategy.n}, search is n={self.n}"
            )
        # fail early on a policy/n mismatch or a bad fixed limit
        max_moves_for(None, self.max_moves_policy, self.n)


@dataclass
class SearchReport:
    outcome: Outcome
    moves_total: int
    backtracks_p1: int
    backtracks_p2: int
    n: int
    elapsed: float = field(compare=False, default=0.0)


class SearchInterrupted(Exception):
    """Raised on Ctrl-C; carries the partial counters gathered so far."""

    def __init__(self, partial: SearchReport):
        super().__init__("search interrupted")
        self.partial = partial


def solve(
    cfg: SearchConfig,
    on_progress: Callable[[int], None] | None = None,
) -> SearchReport:
    """Decide whether player 1 can force a win under the move discipline.

    With cfg.strategy set, that side's free choices are fixed to the table
    move whenever the current configuration has an entry, which turns the
    search into a verification-style run for that side.
    """
    if cfg.n < 3:
        raise ValueError(f"solving requires n >= 3, got {cfg.n}")

    g = Grid(cfg.n)
    searcher = _Searcher(g, cfg, on_progress)
    start = time.perf_counter()
    try:
        p1_wins = searcher.run()
    except KeyboardInterrupt:
        raise SearchInterrupted(
            SearchReport(
                outcome=Outcome.NO_P1_WIN,
                moves_total=searcher.moves_total,
                backtracks_p1=searcher.backtracks[1],
                backtracks_p2=searcher.backtracks[2],
                n=cfg.n,
                elapsed=time.perf_counter() - start,
            )
        ) from None
    elapsed = time.perf_counter() - start
    assert not g.history, "search must retract every placement"
    return SearchReport(
        outcome=Outcome.P1_WIN if p1_wins else Outcome.NO_P1_WIN,
        moves_total=searcher.moves_total,
        backtracks_p1=searcher.backtracks[1],
        backtracks_p2=searcher.backtracks[2],
        n=cfg.n,
        elapsed=elapsed,
    )


class _Searcher:
    def __init__(self, g: Grid, cfg: SearchConfig, on_progress=None):
        self.g = g
        self.cfg = cfg
        self.on_progress = on_progress
        self.moves_total = 0
        self.backtracks = [0, 0, 0]  # indexed by player
        self.table = cfg.strategy

    def run(self) -> bool:
        return self._p1_can_win(max_moves_for(None, self.cfg.max_moves_policy, self.cfg.n))

    def _limit_after(self, limit: int) -> int:
        # the move limit locks in once the second stone is on the board
        if self.g.stones() == 2 and self.cfg.max_moves_policy == POLICY_N5:
            i, _ = self.g.history[1]
            n = self.g.n
            return max_moves_for((i // n, i % n), POLICY_N5, n)
        return limit

    def _place(self, i: int, v: int) -> None:
        self.g._place_idx(i, v)
        self.moves_total += 1
        if self.on_progress is not None and self.moves_total % self.cfg.progress_interval == 0:
            self.on_progress(self.moves_total)

    def _p1_can_win(self, limit: int) -> bool:
        g = self.g
        if g.live_p1 == 0:
            return False
        stones = g.total1 + g.total2
        if stones >= limit:
            return False
        mover = 1 if g.total1 == g.total2 else 2

        code, idx = _scan(g, mover)
        if code == SCAN_INSTANT_WIN or code == SCAN_DILEMMA_WIN:
            return mover == 1
        if code == SCAN_INSTANT_LOSS:
            return mover == 2
        if code == SCAN_FORCED_BLOCK:
            self._place(idx, mover)
            r = self._p1_can_win(self._limit_after(limit))
            g._undo_idx()
            if r != (mover == 1):
                self.backtracks[mover] += 1
            return r

        # free choice
        cand = self._candidates(mover)
        if mover == 1:
            for i in cand:
                self._place(i, 1)
                r = self._p1_can_win(self._limit_after(limit))
                g._undo_idx()
                if r:
                    return True
                self.backtracks[1] += 1
            return False
        for i in cand:
            self._place(i, 2)
            r = self._p1_can_win(self._limit_after(limit))
            g._undo_idx()
            if not r:
                return False
            self.backtracks[2] += 1
        # no candidate at all also means no player-1 win on this branch
        return bool(cand)

    def _candidates(self, mover: int) -> list[int]:
        g = self.g
        if self.table is not None and mover == self.table.side:
            from .strategy import lookup_move

            pos = lookup_move(self.table, g)
            if pos is not None:
                return [pos.r * g.n + pos.c]
        return candidate_indices(g, mover, self.cfg.rules)
