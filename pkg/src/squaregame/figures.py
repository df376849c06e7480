"""Matplotlib rendering of boards and search reports to image files."""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .board import Grid, Position, SquareSpec  # noqa: E402
from .report import RunReport  # noqa: E402

P1_COLOR = "#1f77b4"
P2_COLOR = "#d62728"


def save_board_figure(
    state: str | Grid,
    path: str | Path,
    *,
    threats_p1: set[Position] | None = None,
    threats_p2: set[Position] | None = None,
    winning: SquareSpec | None = None,
    last_move: Position | None = None,
    title: str | None = None,
) -> Path:
    """Draw the board with O/X stones and optional highlights; returns path."""
    g = Grid.from_state(state) if isinstance(state, str) else state
    n = g.n
    fig, ax = plt.subplots(figsize=(0.8 * n + 1, 0.8 * n + 1))
    for k in range(n + 1):
        ax.plot([0, n], [k, k], color="0.6", lw=0.8)
        ax.plot([k, k], [0, n], color="0.6", lw=0.8)
    for r in range(n):
        for c in range(n):
            v = g.cells[r * n + c]
            x, y = c + 0.5, n - r - 0.5
            if v == 1:
                ax.text(x, y, "O", ha="center", va="center",
                        fontsize=18, color=P1_COLOR, weight="bold")
            elif v == 2:
                ax.text(x, y, "X", ha="center", va="center",
                        fontsize=18, color=P2_COLOR, weight="bold")
    for cells, color in ((threats_p1, P1_COLOR), (threats_p2, P2_COLOR)):
        for pos in cells or ():
            ax.add_patch(plt.Rectangle((pos.c + 0.08, n - pos.r - 0.92), 0.84, 0.84,
                                       fill=False, edgecolor=color, lw=1.6, ls="--"))
    if winning is not None:
        for pos in winning.vertices():
            ax.add_patch(plt.Circle((pos.c + 0.5, n - pos.r - 0.5), 0.42,
                                    fill=False, edgecolor="#2ca02c", lw=2.4))
    if last_move is not None:
        ax.add_patch(plt.Rectangle((last_move.c + 0.04, n - last_move.r - 0.96), 0.92, 0.92,
                                   fill=False, edgecolor="0.2", lw=1.2))
    if title:
        ax.set_title(title)
    ax.set_xlim(-0.2, n + 0.2)
    ax.set_ylim(-0.2, n + 0.2)
    ax.set_aspect("equal")
    ax.axis("off")
    out = Path(path)
    fig.savefig(out, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return out


def save_report_figure(reports: list[RunReport], path: str | Path) -> Path:
    """Bar chart of moves and per-player backtracks for one or more runs."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.2))
    labels = [f"n={r.n}" for r in reports]
    xs = range(len(reports))
    ax1.bar(xs, [r.moves_total for r in reports], color="0.5")
    ax1.set_xticks(list(xs), labels)
    ax1.set_title("Moves searched")
    width = 0.38
    ax2.bar([x - width / 2 for x in xs], [r.backtracks_p1 for r in reports],
            width, color=P1_COLOR, label="player 1")
    ax2.bar([x + width / 2 for x in xs], [r.backtracks_p2 for r in reports],
            width, color=P2_COLOR, label="player 2")
    ax2.set_xticks(list(xs), labels)
    ax2.set_title("Backtracks")
    ax2.legend(fontsize=8)
    ax1.margins(y=0.15)
    ax2.margins(y=0.15)
    for x, r in zip(xs, reports):
        ax1.annotate(r.outcome, (x, r.moves_total), ha="center",
                     va="bottom", fontsize=8)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=120)
    plt.close(fig)
    return out
