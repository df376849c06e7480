"""Shared test helpers: independent brute-force oracles.

Everything here recomputes results from the game definition alone (nested
loops over (r, c, d) triples, place-and-rescan completion checks) so the
package's incremental bookkeeping is always checked against a second,
dumber path.
"""
from __future__ import annotations

import random

from squaregame.board import Grid, Position


def brute_squares(n: int) -> list[tuple[int, int, int]]:
    """All (r, c, d) with d >= 1, r+d < n, c+d < n, by exhaustive triples."""
    out = []
    for r in range(n):
        for c in range(n):
            for d in range(1, n):
                if r + d < n and c + d < n:
                    out.append((r, c, d))
    return out


def vertices(r: int, c: int, d: int) -> list[tuple[int, int]]:
    return [(r, c), (r, c + d), (r + d, c), (r + d, c + d)]


def brute_counts(g: Grid) -> tuple[list[int], list[int]]:
    """Per-square stone counts recomputed from scratch."""
    cnt1, cnt2 = [], []
    for r, c, d in brute_squares(g.n):
        vals = [g.cells[vr * g.n + vc] for vr, vc in vertices(r, c, d)]
        cnt1.append(vals.count(1))
        cnt2.append(vals.count(2))
    return cnt1, cnt2


def brute_completed(g: Grid, v: int) -> tuple[int, int, int] | None:
    for r, c, d in brute_squares(g.n):
        if all(g.cells[vr * g.n + vc] == v for vr, vc in vertices(r, c, d)):
            return (r, c, d)
    return None


def brute_all_completed(g: Grid, v: int) -> set[frozenset[tuple[int, int]]]:
    """Vertex sets of every square fully occupied by v."""
    out = set()
    for r, c, d in brute_squares(g.n):
        verts = vertices(r, c, d)
        if all(g.cells[vr * g.n + vc] == v for vr, vc in verts):
            out.add(frozenset(verts))
    return out


def brute_completing_cells(g: Grid, v: int) -> set[Position]:
    """Empty cells whose occupation by v completes a square through them."""
    out = set()
    for i, val in enumerate(g.cells):
        if val != 0:
            continue
        here = (i // g.n, i % g.n)
        g.cells[i] = v
        for r, c, d in brute_squares(g.n):
            verts = vertices(r, c, d)
            if here in verts and all(g.cells[vr * g.n + vc] == v for vr, vc in verts):
                out.add(Position(*here))
                break
        g.cells[i] = 0
    return out


def brute_has_live(g: Grid, v: int) -> bool:
    opp = 3 - v
    for r, c, d in brute_squares(g.n):
        if all(g.cells[vr * g.n + vc] != opp for vr, vc in vertices(r, c, d)):
            return True
    return False


def random_filled_grid(n: int, moves: int, rng: random.Random) -> Grid:
    """Alternation-legal random position with `moves` stones, no history gaps."""
    g = Grid(n)
    cells = list(range(n * n))
    rng.shuffle(cells)
    for k in range(min(moves, n * n)):
        i = cells[k]
        g.place((i // n, i % n), 1 if k % 2 == 0 else 2)
    return g
