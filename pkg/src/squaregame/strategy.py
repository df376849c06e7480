"""Strategy tables: extraction from search, exhaustive verification, file IO.

A strategy table maps canonical board states (least state string over the 8
dihedral transforms) to the strategy player's move expressed in that
canonical frame.  Lookup canonicalizes the live position and pulls the
stored move back through the inverse transform, so one entry serves the
whole symmetry orbit and the table stays total no matter which symmetric
variant an opponent steers into.

File format (exact grammar, single-space separated tokens):

    line 1:     "squaregame-strategy v1"
    header:     "n <int>"
                "side <1|2>"
                "ordering <row-major|center-first>"
                "symmetry <on|off>"
                "diagonal <on|off>"
                "useful_vertex <none | n:p[ n:p ...]>"
                "max_moves_policy <none|paper-n5|int>"
                "proven_max_moves <int>"
    count:      "entries <int>"
    entries:    "<state> <r> <c>"  (exactly <count> lines, sorted by state)

States are the row-major '0'/'1'/'2' strings; <r> <c> is the move in the
canonical frame.  Sorted entries make the writer byte-deterministic.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .board import Grid, Position
from .rules import (
    RuleConfig,
    SCAN_DILEMMA_WIN,
    SCAN_FORCED_BLOCK,
    SCAN_INSTANT_LOSS,
    SCAN_INSTANT_WIN,
    _scan,
    candidate_indices,
)
from .search import POLICY_N5, POLICY_NONE, SearchConfig, max_moves_for

MAGIC = "squaregame-strategy v1"
ENV_STRATEGY_DIR = "SQUAREGAME_STRATEGY_DIR"


class StrategyFileError(ValueError):
    """A strategy file that does not follow the documented grammar."""


class ExtractionError(RuntimeError):
    """No candidate preserved the required aim at some node."""


@dataclass
class StrategyTable:
    n: int
    side: int
    entries: dict[str, tuple[int, int]]
    rules: RuleConfig
    max_moves_policy: int | str
    max_moves_proven: int
    version: str = "1"

    def __len__(self) -> int:
        return len(self.entries)


def lookup_move(table: StrategyTable, g: Grid) -> Position | None:
    """Table move for the live position, or None when uncovered."""
    enc, t = g.canonical_form()
    entry = table.entries.get(enc)
    if entry is None:
        return None
    return t.inverse.apply(Position(*entry), g.n)


# ---------------------------------------------------------------------------
# extraction
# ---------------------------------------------------------------------------


def extract_strategy(cfg: SearchConfig, side: int) -> StrategyTable:
    """Build a deterministic strategy for `side` by committing search choices.

    At each node where `side` moves freely, candidates are tried in order and
    the first whose subtree preserves the side's aim against every opponent
    reply is committed under the position's canonical form; opponent nodes
    branch over all their candidates.  Failed commitments are rolled back, so
    the construction is complete: it raises only if no strategy exists inside
    the configured restrictions and move limits.

    The result is verified exhaustively before it is returned; its proven
    move bound is the measured maximum game length over all verified lines.
    """
    if side not in (1, 2):
        raise ValueError(f"side must be P1 or P2, got {side!r}")
    if cfg.strategy is not None:
        raise ValueError("extraction starts from scratch; cfg.strategy must be None")
    entries = _Extractor(cfg, side).run()
    table = StrategyTable(
        n=cfg.n,
        side=side,
        entries=entries,
        rules=cfg.rules,
        max_moves_policy=cfg.max_moves_policy,
        max_moves_proven=cfg.n * cfg.n,
    )
    report = verify_strategy(table, cfg)
    if report.result is VerifyResult.COUNTEREXAMPLE:
        raise ExtractionError(f"extracted table failed verification: {report.reason}")
    table.max_moves_proven = report.max_depth
    return table


class _Extractor:
    """Depth-first commitment search with journalled rollback.

    Memoization distinguishes how a conclusion may depend on tentative
    table commitments:

    * success_memo (journalled): "the side's aim holds from this state,
      following the committed entries" tagged with the remaining move
      budget of the proof.  Entries are journalled together with the
      commitments they rely on; the journal unwinds last-in first-out, so
      a memo entry can never outlive a commitment it consulted.
    * fail_pure (permanent): "the side cannot achieve its aim from this
      state within this budget, even unconstrained by commitments".  Such
      refutations consult no committed entry, hold for the position alone,
      and survive every rollback - they do the heavy lifting when early
      candidate choices must be refuted over and over.
    * fail_ctx (journalled): failures whose proof replayed a committed
      entry somewhere; valid only while that context stands.

    Budgets are compared monotonically (a win within k moves is a win
    within more; a refutation under k moves refutes any tighter budget).
    Under the dynamic 5x5 limit policy, second moves are processed in
    ascending-limit order so committed subtrees are never revisited with
    a tighter budget than their recorded proof, and states before the
    limit locks in (fewer than two stones) are not memoized at all.
    """

    def __init__(self, cfg: SearchConfig, side: int):
        self.cfg = cfg
        self.side = side
        self.side_wants = side == 1  # the value of "player 1 wins" side aims for
        self.g = Grid(cfg.n)
        self.entries: dict[str, tuple[int, int]] = {}
        self.success_memo: dict[str, int] = {}
        self.fail_pure: dict[str, int] = {}
        self.fail_ctx: dict[str, int] = {}
        self.journal: list[tuple[dict, str, object]] = []
        self.dynamic_policy = cfg.max_moves_policy == POLICY_N5

    def run(self) -> dict[str, tuple[int, int]]:
        root_limit = max_moves_for(None, self.cfg.max_moves_policy, self.cfg.n)
        p1_wins, _ = self._prove(root_limit)
        assert not self.g.history
        if p1_wins != self.side_wants:
            raise ExtractionError(
                f"no strategy for side {self.side} exists within the configured "
                f"restrictions and move limits (n={self.cfg.n})"
            )
        return self.entries

    def _set(self, d: dict, key: str, value) -> None:
        self.journal.append((d, key, d.get(key)))
        d[key] = value

    def _rollback(self, mark: int) -> None:
        while len(self.journal) > mark:
            d, key, prev = self.journal.pop()
            if prev is None:
                del d[key]
            else:
                d[key] = prev

    # Budget comparisons point in opposite directions for the two sides:
    # player 1's aim (win) is easier with more budget, player 2's aim
    # (survive) is easier with less.  "Better" below means "covers rem".

    def _success_covers(self, proven: int, rem: int) -> bool:
        return rem >= proven if self.side_wants else rem <= proven

    def _success_improves(self, prev: int | None, rem: int) -> bool:
        if prev is None:
            return True
        return rem < prev if self.side_wants else rem > prev

    def _fail_covers(self, refuted: int, rem: int) -> bool:
        return rem <= refuted if self.side_wants else rem >= refuted

    def _fail_improves(self, prev: int | None, rem: int) -> bool:
        if prev is None:
            return True
        return rem > prev if self.side_wants else rem < prev

    def _record_success(self, enc: str, rem: int) -> None:
        if self._success_improves(self.success_memo.get(enc), rem):
            self._set(self.success_memo, enc, rem)

    def _record_fail(self, enc: str, rem: int, pure: bool) -> None:
        if pure:
            if self._fail_improves(self.fail_pure.get(enc), rem):
                self.fail_pure[enc] = rem  # permanent: position-only fact
        elif self._fail_improves(self.fail_ctx.get(enc), rem):
            self._set(self.fail_ctx, enc, rem)

    def _child_limit(self, limit: int) -> int:
        g = self.g
        if self.dynamic_policy and g.total1 + g.total2 == 2:
            i, _ = g.history[1]
            return max_moves_for((i // g.n, i % g.n), POLICY_N5, g.n)
        return limit

    def _prove(self, limit: int) -> tuple[bool, bool]:
        """("player 1 wins from here", purity) with the strategy side's free
        choices committed to or replayed from the table.

        The purity flag is meaningful only when the result goes against the
        side's aim: True means the refutation consulted no committed entry
        and is therefore a fact about the position alone.
        """
        g = self.g
        if g.live_p1 == 0:
            return False, True
        stones = g.total1 + g.total2
        if stones >= limit:
            return False, True
        mover = 1 if g.total1 == g.total2 else 2

        code, idx = _scan(g, mover)
        if code == SCAN_INSTANT_WIN or code == SCAN_DILEMMA_WIN:
            return mover == 1, True
        if code == SCAN_INSTANT_LOSS:
            return mover == 2, True
        if code == SCAN_FORCED_BLOCK:
            g._place_idx(idx, mover)
            r = self._prove(self._child_limit(limit))
            g._undo_idx()
            return r

        enc, t = g.canonical_form()
        rem = limit - stones
        memoizable = stones >= 2 or not self.dynamic_policy
        if memoizable:
            refuted = self.fail_pure.get(enc)
            if refuted is not None and self._fail_covers(refuted, rem):
                return not self.side_wants, True
            refuted = self.fail_ctx.get(enc)
            if refuted is not None and self._fail_covers(refuted, rem):
                return not self.side_wants, False
            proven = self.success_memo.get(enc)
            if proven is not None and self._success_covers(proven, rem):
                return self.side_wants, False

        n = g.n
        if mover == self.side:
            committed = self.entries.get(enc)
            if committed is not None:
                # the table is a function of the state: replay the committed
                # move (a re-walk under a different budget)
                move = t.inverse.apply(Position(*committed), n)
                g._place_idx(move.r * n + move.c, mover)
                r, _ = self._prove(self._child_limit(limit))
                g._undo_idx()
                if memoizable:
                    if r == self.side_wants:
                        self._record_success(enc, rem)
                    else:
                        self._record_fail(enc, rem, False)
                return r, False
            all_pure = True
            for i in candidate_indices(g, mover, self.cfg.rules):
                mark = len(self.journal)
                g._place_idx(i, mover)
                r, pure = self._prove(self._child_limit(limit))
                g._undo_idx()
                if r == self.side_wants:
                    move_here = Position(i // n, i % n)
                    self._set(self.entries, enc, tuple(t.apply(move_here, n)))
                    if memoizable:
                        self._record_success(enc, rem)
                    return r, False
                all_pure = all_pure and pure
                self._rollback(mark)
            if memoizable:
                self._record_fail(enc, rem, all_pure)
            return not self.side_wants, all_pure

        # opponent node: every candidate must preserve the side's aim
        cand = candidate_indices(g, mover, self.cfg.rules)
        if not cand:
            return False, True  # nobody moves: the game ends with no player-1 win
        if self.dynamic_policy and stones == 1:
            cand.sort(key=lambda i: max_moves_for((i // n, i % n), POLICY_N5, n))
        for i in cand:
            g._place_idx(i, mover)
            r, pure = self._prove(self._child_limit(limit))
            g._undo_idx()
            if r != self.side_wants:
                # one refuting reply settles this node; its purity carries
                if memoizable:
                    self._record_fail(enc, rem, pure)
                return r, pure
        if memoizable:
            self._record_success(enc, rem)
        return self.side_wants, False


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


class VerifyResult(Enum):
    ALL_LINES_WIN = "all-lines-win"
    ALL_LINES_NON_LOSS = "all-lines-non-loss"
    COUNTEREXAMPLE = "counterexample"


@dataclass
class VerificationReport:
    result: VerifyResult
    states_visited: int
    max_depth: int
    counterexample: tuple[Position, ...] | None = None
    reason: str | None = None


def verify_strategy(
    table: StrategyTable, cfg: SearchConfig | None = None
) -> VerificationReport:
    """Exhaustively check the table against all opponent play.

    The forced-move pipeline applies to both sides; the strategy side's free
    choices come from the table (a reachable state without an entry is a
    counterexample); opponent free nodes branch over every candidate.  The
    symmetry-based opponent restrictions are sound here because table lookup
    is symmetry-equivariant.

    For a player-1 table every line must end in a player-1 square, no deeper
    than the table's proven move bound and inside the table's move-limit
    policy; for a player-2 table no line may end in a player-1 square.  A
    counterexample carries the replayable move list.
    """
    if cfg is None:
        cfg = SearchConfig(n=table.n, rules=table.rules)
    verifier = _Verifier(table, cfg)
    verifier.walk(max_moves_for(None, table.max_moves_policy, table.n))
    assert not verifier.g.history
    if verifier.counterexample is not None:
        result = VerifyResult.COUNTEREXAMPLE
    elif table.side == 1:
        result = VerifyResult.ALL_LINES_WIN
    else:
        result = VerifyResult.ALL_LINES_NON_LOSS
    return VerificationReport(
        result=result,
        states_visited=verifier.states_visited,
        max_depth=verifier.max_depth,
        counterexample=verifier.counterexample,
        reason=verifier.reason,
    )


class _Verifier:
    def __init__(self, table: StrategyTable, cfg: SearchConfig):
        self.table = table
        self.cfg = cfg
        self.g = Grid(table.n)
        self.states_visited = 0
        self.max_depth = 0
        self.counterexample: tuple[Position, ...] | None = None
        self.reason: str | None = None

    def _fail(self, reason: str) -> None:
        if self.counterexample is None:
            n = self.g.n
            self.counterexample = tuple(
                Position(i // n, i % n) for i, _ in self.g.history
            )
            self.reason = reason

    def _leaf(self, literal_depth: int) -> None:
        if literal_depth > self.max_depth:
            self.max_depth = literal_depth

    def _child_limit(self, limit: int) -> int:
        g = self.g
        if g.total1 + g.total2 == 2 and self.table.max_moves_policy == POLICY_N5:
            i, _ = g.history[1]
            return max_moves_for((i // g.n, i % g.n), POLICY_N5, g.n)
        return limit

    def walk(self, limit: int) -> None:
        if self.counterexample is not None:
            return
        self.states_visited += 1
        g = self.g
        side = self.table.side
        stones = g.total1 + g.total2
        mover = 1 if g.total1 == g.total2 else 2

        if side == 1:
            if g.live_p1 == 0:
                self._fail("player 1 has no live square left")
                return
            if stones >= limit:
                self._fail("line exceeds the move limit")
                return
        elif g.live_p1 == 0:
            self._leaf(stones)  # player 1 can never complete a square
            return

        code, idx = _scan(g, mover)
        if code == SCAN_INSTANT_WIN:
            if mover == 1:
                self._ok_win(stones + 1, side)
            else:
                self._ok_loss(stones + 1, side, "player 2 completes a square")
            return
        if code == SCAN_INSTANT_LOSS:
            # the opponent of `mover` holds a dilemma: block + completion
            if mover == 2:
                self._ok_win(stones + 2, side)
            else:
                self._ok_loss(stones + 2, side, "player 2 holds a dilemma")
            return
        if code == SCAN_DILEMMA_WIN:
            if mover == 1:
                self._ok_win(stones + 3, side)
            else:
                self._ok_loss(stones + 3, side, "player 2 creates a dilemma")
            return
        if code == SCAN_FORCED_BLOCK:
            g._place_idx(idx, mover)
            self.walk(self._child_limit(limit))
            g._undo_idx()
            return

        if mover == side:
            pos = lookup_move(self.table, g)
            if pos is None:
                self._fail("reachable state missing from the table")
                return
            g._place_idx(pos.r * g.n + pos.c, mover)
            self.walk(self._child_limit(limit))
            g._undo_idx()
            return

        cand = candidate_indices(g, mover, self.cfg.rules)
        if not cand:
            if side == 1:
                self._fail("no reply left: the line ends without a player-1 square")
            else:
                self._leaf(stones)
            return
        for i in cand:
            g._place_idx(i, mover)
            self.walk(self._child_limit(limit))
            g._undo_idx()
            if self.counterexample is not None:
                return

    def _ok_win(self, literal_depth: int, side: int) -> None:
        """A line decided for player 1, completing at literal_depth moves."""
        if side == 1:
            if literal_depth > self.table.max_moves_proven:
                self._fail("player-1 win lands beyond the proven move bound")
            else:
                self._leaf(literal_depth)
        else:
            self._fail("player 1 forces a square")

    def _ok_loss(self, literal_depth: int, side: int, what: str) -> None:
        """A line decided for player 2 (or drawn into player-2 territory)."""
        if side == 1:
            self._fail(what)
        else:
            self._leaf(literal_depth)


# ---------------------------------------------------------------------------
# file IO
# ---------------------------------------------------------------------------


def _rules_to_fields(rules: RuleConfig) -> dict[str, str]:
    pairs = sorted(rules.useful_vertex_restriction_for)
    return {
        "ordering": rules.move_ordering,
        "symmetry": "on" if rules.use_symmetry_restriction else "off",
        "diagonal": "on" if rules.use_diagonal_first_move_restriction else "off",
        "useful_vertex": " ".join(f"{n}:{p}" for n, p in pairs) if pairs else "none",
    }


def dumps_strategy(table: StrategyTable) -> str:
    fields = _rules_to_fields(table.rules)
    lines = [
        MAGIC,
        f"n {table.n}",
        f"side {table.side}",
        f"ordering {fields['ordering']}",
        f"symmetry {fields['symmetry']}",
        f"diagonal {fields['diagonal']}",
        f"useful_vertex {fields['useful_vertex']}",
        f"max_moves_policy {table.max_moves_policy}",
        f"proven_max_moves {table.max_moves_proven}",
        f"entries {len(table.entries)}",
    ]
    for state in sorted(table.entries):
        r, c = table.entries[state]
        lines.append(f"{state} {r} {c}")
    return "\n".join(lines) + "\n"


def save_strategy(table: StrategyTable, path: str | Path) -> None:
    Path(path).write_text(dumps_strategy(table), encoding="ascii")


def _parse_header_value(lines: list[str], i: int, key: str) -> str:
    if i >= len(lines):
        raise StrategyFileError(f"unexpected end of file, expected '{key}'")
    parts = lines[i].split(" ", 1)
    if parts[0] != key or len(parts) != 2:
        raise StrategyFileError(f"line {i + 1}: expected '{key} <value>', got {lines[i]!r}")
    return parts[1]


def loads_strategy(text: str) -> StrategyTable:
    lines = text.splitlines()
    if not lines or lines[0] != MAGIC:
        raise StrategyFileError(f"not a strategy file (expected {MAGIC!r} first line)")
    try:
        n = int(_parse_header_value(lines, 1, "n"))
        side = int(_parse_header_value(lines, 2, "side"))
        ordering = _parse_header_value(lines, 3, "ordering")
        symmetry = _parse_header_value(lines, 4, "symmetry")
        diagonal = _parse_header_value(lines, 5, "diagonal")
        useful = _parse_header_value(lines, 6, "useful_vertex")
        policy_raw = _parse_header_value(lines, 7, "max_moves_policy")
        proven = int(_parse_header_value(lines, 8, "proven_max_moves"))
        count = int(_parse_header_value(lines, 9, "entries"))
    except ValueError as exc:
        raise StrategyFileError(f"malformed header: {exc}") from None

    if side not in (1, 2):
        raise StrategyFileError(f"side must be 1 or 2, got {side}")
    if n < 1:
        raise StrategyFileError(f"n must be >= 1, got {n}")
    if symmetry not in ("on", "off") or diagonal not in ("on", "off"):
        raise StrategyFileError("symmetry/diagonal must be 'on' or 'off'")
    pairs: set[tuple[int, int]] = set()
    if useful != "none":
        for token in useful.split(" "):
            try:
                a, b = token.split(":")
                pairs.add((int(a), int(b)))
            except ValueError:
                raise StrategyFileError(f"bad useful_vertex token {token!r}") from None
    try:
        rules = RuleConfig(
            use_symmetry_restriction=symmetry == "on",
            use_diagonal_first_move_restriction=diagonal == "on",
            useful_vertex_restriction_for=frozenset(pairs),
            move_ordering=ordering,
        )
    except ValueError as exc:
        raise StrategyFileError(str(exc)) from None
    policy: int | str = policy_raw
    if policy_raw not in (POLICY_NONE, POLICY_N5):
        try:
            policy = int(policy_raw)
        except ValueError:
            raise StrategyFileError(f"bad max_moves_policy {policy_raw!r}") from None

    body = lines[10:]
    if len(body) != count:
        raise StrategyFileError(f"expected {count} entries, found {len(body)}")
    entries: dict[str, tuple[int, int]] = {}
    size = n * n
    for k, line in enumerate(body):
        parts = line.split(" ")
        if len(parts) != 3:
            raise StrategyFileError(f"entry {k + 1}: expected '<state> <r> <c>'")
        state, r_s, c_s = parts
        if len(state) != size or any(ch not in "012" for ch in state):
            raise StrategyFileError(f"entry {k + 1}: bad state string")
        try:
            r, c = int(r_s), int(c_s)
        except ValueError:
            raise StrategyFileError(f"entry {k + 1}: bad move coordinates") from None
        if not (0 <= r < n and 0 <= c < n):
            raise StrategyFileError(f"entry {k + 1}: move ({r},{c}) off the board")
        if state[r * n + c] != "0":
            raise StrategyFileError(f"entry {k + 1}: move cell is not empty")
        ones = state.count("1")
        twos = state.count("2")
        if (side == 1 and ones != twos) or (side == 2 and ones != twos + 1):
            raise StrategyFileError(f"entry {k + 1}: it is not side {side}'s turn")
        if state in entries:
            raise StrategyFileError(f"entry {k + 1}: duplicate state")
        entries[state] = (r, c)
    return StrategyTable(
        n=n,
        side=side,
        entries=entries,
        rules=rules,
        max_moves_policy=policy,
        max_moves_proven=proven,
    )


def load_strategy(path: str | Path) -> StrategyTable:
    try:
        text = Path(path).read_text(encoding="ascii")
    except OSError as exc:
        raise StrategyFileError(f"cannot read strategy file {path}: {exc}") from None
    return loads_strategy(text)


# ---------------------------------------------------------------------------
# bundled tables
# ---------------------------------------------------------------------------

_BUNDLED = {(3, 2): "p2_n3.strategy", (4, 2): "p2_n4.strategy", (5, 1): "p1_n5.strategy"}


def default_strategy(n: int, side: int) -> StrategyTable | None:
    """Packaged (or SQUAREGAME_STRATEGY_DIR-overridden) table, if one exists."""
    name = _BUNDLED.get((n, side))
    if name is None:
        return None
    override = os.environ.get(ENV_STRATEGY_DIR)
    if override:
        candidate = Path(override) / name
        if candidate.exists():
            return load_strategy(candidate)
    packaged = Path(__file__).parent / "data" / name
    if packaged.exists():
        return load_strategy(packaged)
    return None
