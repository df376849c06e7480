import random

import pytest

from squaregame.board import Grid, P1, P2, Position, TRANSFORMS
from squaregame.engine import EngineProfile, engine_move, play_out
from squaregame.rules import StatusKind, game_status
from squaregame.strategy import default_strategy


@pytest.fixture(scope="module")
def n5_table():
    return default_strategy(5, 1)


@pytest.fixture(scope="module")
def n3_table():
    return default_strategy(3, 2)


def test_profile_validation(n3_table):
    with pytest.raises(ValueError):
        EngineProfile(n=3, engine_side=0)
    with pytest.raises(ValueError):
        EngineProfile(n=4, engine_side=2, table=n3_table)
    with pytest.raises(ValueError):
        EngineProfile(n=3, engine_side=1, table=n3_table)


def _play(n, moves):
    g = Grid(n)
    for k, pos in enumerate(moves):
        g.place(pos, 1 if k % 2 == 0 else 2)
    return g


def test_engine_takes_the_winning_cell():
    g = _play(3, [(0, 0), (2, 2), (0, 1), (2, 1), (1, 0), (1, 2)])
    assert g.completing_cells(P1) == {Position(1, 1)}
    prof = EngineProfile(n=3, engine_side=1)
    assert engine_move(g, prof) == Position(1, 1)


def test_engine_blocks_the_single_threat():
    g = _play(3, [(0, 0), (2, 2), (0, 1), (2, 1), (1, 0)])
    assert g.completing_cells(P1) == {Position(1, 1)}
    prof = EngineProfile(n=3, engine_side=2)
    assert engine_move(g, prof) == Position(1, 1)


def test_engine_opening_comes_from_table(n5_table):
    prof = EngineProfile(n=5, engine_side=1, table=n5_table)
    g = Grid(5)
    r, c = n5_table.entries["0" * 25]
    assert engine_move(g, prof) == Position(r, c) == Position(2, 2)


def test_engine_move_equivariant_under_transforms(n5_table):
    prof = EngineProfile(n=5, engine_side=1, table=n5_table)
    g = Grid(5)
    g.place((2, 2), P1)
    g.place((0, 1), P2)
    base = engine_move(g, prof)
    for t in TRANSFORMS:
        h = g.transformed(t)
        assert engine_move(h, prof) == t.apply(base, 5)


def test_engine_never_plays_occupied_and_never_declines_win(n3_table):
    rng = random.Random(2024)
    for _ in range(80):
        g = Grid(3)
        prof = EngineProfile(n=3, engine_side=2, table=n3_table)
        while game_status(g).kind is StatusKind.ONGOING:
            if g.to_move() == 2:
                pos = engine_move(g, prof)
                assert g.cell(pos) == 0
                wins = g.completing_cells(P2)
                if wins:
                    assert pos in wins
                g.place(pos, P2)
            else:
                choices = [p for p in g.empty_positions()]
                g.place(rng.choice(choices), P1)


def test_engine_rejects_wrong_turn_and_finished_games():
    with pytest.raises(ValueError):
        engine_move(Grid(3), EngineProfile(n=3, engine_side=2))  # player 1's turn
    g = _play(3, [(0, 0), (2, 2), (0, 1), (2, 1), (1, 0), (1, 2), (1, 1)])
    assert game_status(g).kind is StatusKind.WON
    with pytest.raises(ValueError):
        engine_move(g, EngineProfile(n=3, engine_side=2))


def test_play_out_p1_table_beats_fallback(n5_table):
    p1 = EngineProfile(n=5, engine_side=1, table=n5_table)
    p2 = EngineProfile(n=5, engine_side=2, fallback_depth=2)
    record = play_out(p1, p2)
    assert record.status.kind is StatusKind.WON
    assert record.status.winner == P1
    assert len(record.moves) <= n5_table.max_moves_proven


def test_play_out_n3_never_loses_for_p2(n3_table):
    p1 = EngineProfile(n=3, engine_side=1, fallback_depth=3)
    p2 = EngineProfile(n=3, engine_side=2, table=n3_table)
    record = play_out(p1, p2)
    assert record.status.kind is not StatusKind.WON or record.status.winner != P1


def test_play_out_terminates_within_board_capacity():
    a = EngineProfile(n=3, engine_side=1, fallback_depth=2)
    b = EngineProfile(n=3, engine_side=2, fallback_depth=2)
    record = play_out(a, b)
    assert len(record.moves) <= 9
    assert record.status.kind in (StatusKind.WON, StatusKind.DRAW)


def test_play_out_validates_profiles():
    a = EngineProfile(n=3, engine_side=1)
    with pytest.raises(ValueError):
        play_out(a, EngineProfile(n=4, engine_side=2))
    with pytest.raises(ValueError):
        play_out(a, EngineProfile(n=3, engine_side=1))


def test_table_lookup_total_for_arbitrary_legal_play(n5_table, n3_table):
    """Canonical storage keeps the table total even when the human ignores
    every search restriction: at engine turns with no forced move pending,
    the lookup must always hit."""
    from squaregame.rules import ForcedKind, forced_status
    from squaregame.strategy import default_strategy, lookup_move

    rng = random.Random(515)
    cases = [
        (5, 1, n5_table),
        (3, 2, n3_table),
        (4, 2, default_strategy(4, 2)),
    ]
    for n, side, table in cases:
        prof = EngineProfile(n=n, engine_side=side, table=table)
        for _ in range(25):
            g = Grid(n)
            while game_status(g).kind is StatusKind.ONGOING:
                mover = g.to_move()
                if mover == side:
                    # a survival table stops at the frontier where player 1
                    # goes dead; past it any engine move preserves the claim
                    relevant = side == 1 or g.has_live_square(P1)
                    if relevant and forced_status(g, mover).kind is ForcedKind.FREE:
                        assert lookup_move(table, g) is not None, (
                            f"n={n} side={side} uncovered: {g.state_string()}"
                        )
                    g.place(engine_move(g, prof), mover)
                else:
                    g.place(rng.choice(sorted(g.empty_positions())), mover)
            if side == 1:
                st = game_status(g)
                assert st.kind is StatusKind.WON and st.winner == P1
            else:
                st = game_status(g)
                assert st.kind is not StatusKind.WON or st.winner != P1


def test_scripted_p2_policies_all_lose_to_the_table(n5_table):
    """Every scripted player-2 policy goes down against the verified table."""
    p1 = EngineProfile(n=5, engine_side=1, table=n5_table)

    def first_empty(g):
        return next(iter(g.empty_positions()))

    def last_empty(g):
        return list(g.empty_positions())[-1]

    def mirror_p1(g):
        last = None
        for i, v in g.history:
            if v == 1:
                last = i
        mirrored = Position(last // 5, 4 - last % 5)
        if g.cell(mirrored) == 0:
            return mirrored
        return first_empty(g)

    def block_greedy(g):
        threats = sorted(g.completing_cells(P1))
        if threats:
            return threats[0]
        own = sorted(g.completing_cells(P2))
        if own:
            return own[0]
        return first_empty(g)

    def seeded(seed):
        def policy(g):
            rng = random.Random(seed * 1009 + g.stones())
            return rng.choice(sorted(g.empty_positions()))
        return policy

    policies = [first_empty, last_empty, mirror_p1, block_greedy] + [
        seeded(s) for s in range(6)
    ]
    for policy in policies:
        g = Grid(5)
        while game_status(g).kind is StatusKind.ONGOING:
            if g.to_move() == 1:
                g.place(engine_move(g, p1), P1)
            else:
                g.place(policy(g), P2)
        status = game_status(g)
        assert status.kind is StatusKind.WON and status.winner == P1
        assert g.stones() <= n5_table.max_moves_proven
