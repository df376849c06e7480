"""Search run reports: text rendering and the delimited machine format.

The text form mirrors the classic solver output line shapes ("Starting
search with n = 3", "The search has been completed. Result: draw", "Sum of
moves: ...") so runs can be eyeballed against historical output; counter
values depend on candidate ordering and are labelled as such.

The machine form is a tab-separated document with one header line and one
row per run; stable field names: n, outcome, moves_total, backtracks_p1,
backtracks_p2, elapsed_ms.  parse_machine inverts render_machine exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

from .search import SearchReport

MACHINE_FIELDS = ("n", "outcome", "moves_total", "backtracks_p1", "backtracks_p2", "elapsed_ms")


@dataclass(frozen=True)
class RunReport:
    n: int
    outcome: str  # "win" or "draw"
    moves_total: int
    backtracks_p1: int
    backtracks_p2: int
    elapsed_ms: int

    @classmethod
    def from_search(cls, sr: SearchReport) -> "RunReport":
        return cls(
            n=sr.n,
            outcome=sr.outcome.label,
            moves_total=sr.moves_total,
            backtracks_p1=sr.backtracks_p1,
            backtracks_p2=sr.backtracks_p2,
            elapsed_ms=int(sr.elapsed * 1000),
        )

    def result_lines(self) -> list[str]:
        return [
            f"The search has been completed. Result: {self.outcome}",
            f"Sum of moves: {self.moves_total}. N. of backtrack.: "
            f"Player 1: {self.backtracks_p1}, Player 2: {self.backtracks_p2}",
        ]


def render_text(reports: list[RunReport]) -> str:
    lines = [
        "=== Square achievement game search ===",
        "",
        "Hints:",
        "  After each 100000 moves a + will be emitted.",
        "  To cancel the execution press Ctrl-C .",
        "  (Move and backtrack counters depend on the candidate ordering.)",
    ]
    for rep in reports:
        lines.append("")
        lines.append(f"Starting search with n = {rep.n}")
        lines.append("")
        lines.extend(rep.result_lines())
    lines.append("")
    lines.append("== Regular program stop ==")
    return "\n".join(lines) + "\n"


def render_machine(reports: list[RunReport]) -> str:
    lines = ["\t".join(MACHINE_FIELDS)]
    for r in reports:
        lines.append(
            "\t".join(
                str(v)
                for v in (
                    r.n,
                    r.outcome,
                    r.moves_total,
                    r.backtracks_p1,
                    r.backtracks_p2,
                    r.elapsed_ms,
                )
            )
        )
    return "\n".join(lines) + "\n"


def parse_machine(text: str) -> list[RunReport]:
    lines = [ln for ln in text.splitlines() if ln]
    if not lines or tuple(lines[0].split("\t")) != MACHINE_FIELDS:
        raise ValueError(f"machine report must start with header {MACHINE_FIELDS}")
    out = []
    for ln in lines[1:]:
        parts = ln.split("\t")
        if len(parts) != len(MACHINE_FIELDS):
            raise ValueError(f"bad machine report row: {ln!r}")
        n, outcome, moves, b1, b2, ms = parts
        if outcome not in ("win", "draw"):
            raise ValueError(f"bad outcome {outcome!r}")
        out.append(
            RunReport(
                n=int(n),
                outcome=outcome,
                moves_total=int(moves),
                backtracks_p1=int(b1),
                backtracks_p2=int(b2),
                elapsed_ms=int(ms),
            )
        )
    return out
