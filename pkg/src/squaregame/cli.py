"""Command-line interface.

Subcommands: solve (search one or more board sizes), extract (derive a
strategy table), verify (exhaustively check a strategy file), oracle
(unrestricted minimax cross-check), play (terminal game against the
engine), serve (HTTP service for the web board).

Exit codes: 0 success / aim achieved, 1 aim missed or counterexample,
2 usage errors, 130 interrupted.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .board import Grid, P1, P2, Position
from .engine import EngineProfile, engine_move
from .oracle import oracle_minimax
from .report import RunReport, render_machine, render_text
from .rules import RuleConfig, StatusKind, game_status
from .search import (
    Outcome,
    POLICY_N5,
    POLICY_NONE,
    SearchConfig,
    SearchInterrupted,
    solve,
)
from .strategy import (
    ExtractionError,
    StrategyFileError,
    default_strategy,
    extract_strategy,
    load_strategy,
    save_strategy,
    verify_strategy,
)


def _build_rules(args) -> RuleConfig:
    useful = frozenset() if args.no_useful_vertex else RuleConfig().useful_vertex_restriction_for
    return RuleConfig(
        use_symmetry_restriction=not args.no_symmetry,
        use_diagonal_first_move_restriction=not args.no_diagonal,
        useful_vertex_restriction_for=useful,
        move_ordering=args.ordering,
    )


def _policy_flag(raw: str) -> str:
    if raw in ("auto", POLICY_NONE, POLICY_N5):
        return raw
    try:
        int(raw)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected auto, none, paper-n5, or an integer, got {raw!r}"
        ) from None
    return raw


def _parse_policy(raw: str, n: int) -> int | str:
    if raw == "auto":
        return POLICY_N5 if n == 5 else POLICY_NONE
    if raw in (POLICY_NONE, POLICY_N5):
        return raw
    return int(raw)


def _aim_outcome(n: int) -> Outcome:
    # what "success" means per board size: player 2 survives up to 4x4,
    # player 1 wins from 5x5 on
    return Outcome.NO_P1_WIN if n <= 4 else Outcome.P1_WIN


def cmd_solve(args) -> int:
    rules = _build_rules(args)
    reports: list[RunReport] = []
    ok = True
    text_mode = args.report == "text"
    if text_mode:
        print("=== Square achievement game search ===")
        print()
        print("Hints:")
        print("  After each 100000 moves a + will be emitted.")
        print("  To cancel the execution press Ctrl-C .")
        print("  (Move and backtrack counters depend on the candidate ordering.)")
    for n in args.n:
        policy = _parse_policy(args.max_moves, n)
        table = None
        if args.strategy == "auto":
            side = 1 if n >= 5 else 2
            table = default_strategy(n, side)
            if n == 5 and table is None and policy == POLICY_N5:
                policy = 25  # without table moves the dynamic limits prove little
        elif args.strategy not in (None, "none"):
            table = load_strategy(args.strategy)
        cfg = SearchConfig(
            n=n, rules=rules, max_moves_policy=policy, strategy=table
        )
        ticks = 0

        def on_tick(_moves: int) -> None:
            nonlocal ticks
            ticks += 1
            print("+", end="", flush=True)

        if text_mode:
            print()
            print(f"Starting search with n = {n}")
            print()
        try:
            sr = solve(cfg, on_progress=on_tick if text_mode else None)
        except SearchInterrupted as exc:
            partial = RunReport.from_search(exc.partial)
            if ticks:
                print()
            print("Execution cancelled; partial counters:")
            for line in partial.result_lines():
                print(line)
            return 130
        if ticks:
            print()
        rep = RunReport.from_search(sr)
        reports.append(rep)
        if text_mode:
            for line in rep.result_lines():
                print(line)
        ok = ok and sr.outcome == _aim_outcome(n)
    if text_mode:
        print()
        print("== Regular program stop ==")
    else:
        sys.stdout.write(render_machine(reports))
    if args.out:
        content = render_text(reports) if text_mode else render_machine(reports)
        Path(args.out).write_text(content, encoding="utf-8")
    if args.figures:
        from .figures import save_report_figure

        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        ns = "-".join(str(n) for n in args.n)
        save_report_figure(reports, fig_dir / f"search_n{ns}.png")
    return 0 if ok else 1


def cmd_extract(args) -> int:
    side = 1 if args.side == "p1" else 2
    rules = _build_rules(args)
    policy = _parse_policy(args.max_moves, args.n)
    cfg = SearchConfig(n=args.n, rules=rules, max_moves_policy=policy)
    table = extract_strategy(cfg, side)
    save_strategy(table, args.out)
    print(
        f"extracted side-{side} strategy for n={args.n}: {len(table)} entries, "
        f"proven move bound {table.max_moves_proven}"
    )
    print(f"written to {args.out}")
    if args.figures:
        from .figures import save_board_figure

        fig_dir = Path(args.figures)
        fig_dir.mkdir(parents=True, exist_ok=True)
        empty = "0" * (args.n * args.n)
        if empty in table.entries:
            g = Grid(args.n)
            r, c = table.entries[empty]
            g.place((r, c), 1)
            save_board_figure(
                g, fig_dir / f"opening_n{args.n}.png",
                last_move=Position(r, c), title=f"opening move, n={args.n}",
            )
    return 0


def cmd_verify(args) -> int:
    try:
        table = load_strategy(args.strategy)
    except StrategyFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report = verify_strategy(table)
    print(f"strategy: n={table.n} side={table.side} entries={len(table)}")
    print(
        f"verification: {report.result.value} "
        f"(states visited: {report.states_visited}, max depth: {report.max_depth})"
    )
    if report.counterexample is not None:
        line = " ".join(f"({p.r},{p.c})" for p in report.counterexample)
        print(f"counterexample: {report.reason}")
        print(f"line: {line}")
        return 1
    return 0


def cmd_oracle(args) -> int:
    value = oracle_minimax(args.n)
    print(f"Unrestricted minimax for n = {args.n}")
    label = {"p1-win": "win", "p2-win": "player 2 win", "draw": "draw"}[value.value]
    print(f"Result: {label}")
    return 0


def _render_play(g: Grid) -> str:
    marks = {}
    for pos in g.completing_cells(P1):
        marks[pos] = "!"
    for pos in g.completing_cells(P2):
        marks[pos] = "?" if pos not in marks else "*"
    return g.render(marks=marks)


def cmd_play(args) -> int:
    human = 1 if args.human == "p1" else 2
    engine_side = 3 - human
    table = None
    if args.strategy == "auto":
        table = default_strategy(args.n, engine_side)
    elif args.strategy not in (None, "none"):
        table = load_strategy(args.strategy)
    prof = EngineProfile(n=args.n, engine_side=engine_side, table=table)
    g = Grid(args.n)
    glyph = {1: "O", 2: "X"}
    print(f"You play {glyph[human]} on a {args.n}x{args.n} board.")
    if table is not None:
        print("The engine follows a verified strategy table.")
    print("Enter moves as: r c    (threat cells show as ! for O, ? for X)")
    while True:
        status = game_status(g)
        if status.kind is not StatusKind.ONGOING:
            break
        if g.to_move() == engine_side:
            pos = engine_move(g, prof)
            g.place(pos, engine_side)
            print(f"\nengine plays {pos.r} {pos.c}")
            print(_render_play(g))
            continue
        print()
        print(_render_play(g))
        try:
            raw = input(f"your move ({glyph[human]})> ").strip()
        except EOFError:
            print("\nbye")
            return 0
        if raw in ("q", "quit", "exit"):
            return 0
        parts = raw.split()
        if len(parts) != 2:
            print("  enter two numbers: row column")
            continue
        try:
            r, c = int(parts[0]), int(parts[1])
            g.place((r, c), human)
        except ValueError as exc:
            print(f"  {exc}")
            continue
    status = game_status(g)
    print()
    print(g.render())
    if status.kind is StatusKind.DRAW:
        print("Result: draw")
    else:
        sq = status.square
        who = "you win" if status.winner == human else "the engine wins"
        print(f"Result: {who} with the square at ({sq.r},{sq.c}) size {sq.d}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(snapshot_path=args.snapshot)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="squaregame",
        description="Solve, verify, and play the square achievement game.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_rule_flags(p):
        p.add_argument("--no-symmetry", action="store_true",
                       help="disable the column-symmetry restriction")
        p.add_argument("--no-diagonal", action="store_true",
                       help="disable the first/second-move diagonal restriction")
        p.add_argument("--no-useful-vertex", action="store_true",
                       help="disable the useful-vertex restriction")
        p.add_argument("--ordering", choices=("row-major", "center-first"),
                       default="row-major", help="candidate move ordering")
        p.add_argument("--max-moves", default="auto", type=_policy_flag,
                       help="move limit policy: auto, none, paper-n5, or an integer")

    p = sub.add_parser("solve", help="search whether player 1 can force a win")
    p.add_argument("--n", action="append", type=int, required=True,
                   help="board size (repeatable)")
    add_rule_flags(p)
    p.add_argument("--strategy", default="auto",
                   help="strategy file fixing one side's moves: auto, none, or a path")
    p.add_argument("--report", choices=("text", "machine"), default="text")
    p.add_argument("--out", help="also write the report to this file")
    p.add_argument("--figures", help="write report figures into this directory")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("extract", help="derive a strategy table and write it to a file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--side", choices=("p1", "p2"), required=True)
    p.add_argument("--out", required=True)
    add_rule_flags(p)
    p.add_argument("--figures", help="write the opening-board figure into this directory")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("verify", help="exhaustively verify a strategy file")
    p.add_argument("--strategy", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="unrestricted minimax value (n <= 4)")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("play", help="play against the engine in the terminal")
    p.add_argument("--n", type=int, default=5)
    p.add_argument("--human", choices=("p1", "p2"), default="p2")
    p.add_argument("--strategy", default="auto")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="run the HTTP game service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--snapshot", help="JSON file persisting sessions across restarts")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors already; pass that through
        return int(exc.code or 0)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        print("\nExecution cancelled.", file=sys.stderr)
        return 130
    except (ValueError, ExtractionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
