/** Pure derivation of the board view from a service snapshot.
 *
 * The view is a function of the latest snapshot plus two bits of client
 * state (request in flight, the engine's last reply); no game rules are
 * re-implemented here beyond "only empty cells are clickable".
 */
import type { GameSnapshot, Side } from "./api.js";

export type ThreatMark = "p1" | "p2" | "both" | null;

export interface CellView {
  r: number;
  c: number;
  glyph: "" | "O" | "X";
  clickable: boolean;
  threat: ThreatMark;
  winning: boolean;
  lastEngineMove: boolean;
}

export interface BoardViewModel {
  n: number;
  cells: CellView[];
  banner: string;
  finished: boolean;
  guaranteeBadge: string | null;
  humanSide: Side;
}

export interface ClientFlags {
  busy?: boolean;
  lastEngineMove?: [number, number] | null;
}

function winningCells(snap: GameSnapshot): Set<number> {
  const out = new Set<number>();
  const sq = snap.winning_square;
  if (!sq) return out;
  const { r, c, d } = sq;
  for (const [vr, vc] of [[r, c], [r, c + d], [r + d, c], [r + d, c + d]]) {
    out.add(vr * snap.n + vc);
  }
  return out;
}

function banner(snap: GameSnapshot): string {
  if (snap.status === "draw") return "Draw - nobody can complete a square.";
  if (snap.status === "won") {
    return snap.winner === snap.human_side
      ? "You win!"
      : "The engine wins - square completed.";
  }
  return snap.to_move === snap.human_side ? "Your move." : "Engine is thinking...";
}

export function deriveViewModel(
  snap: GameSnapshot,
  flags: ClientFlags = {},
): BoardViewModel {
  const busy = flags.busy ?? false;
  const last = flags.lastEngineMove ?? null;
  const winners = winningCells(snap);
  const threats = new Map<number, ThreatMark>();
  for (const [r, c] of snap.threats.p1) threats.set(r * snap.n + c, "p1");
  for (const [r, c] of snap.threats.p2) {
    const i = r * snap.n + c;
    threats.set(i, threats.has(i) ? "both" : "p2");
  }
  const finished = snap.status !== "ongoing";
  const myTurn = snap.to_move === snap.human_side;
  const cells: CellView[] = [];
  for (let i = 0; i < snap.n * snap.n; i++) {
    const ch = snap.state[i];
    cells.push({
      r: Math.floor(i / snap.n),
      c: i % snap.n,
      glyph: ch === "1" ? "O" : ch === "2" ? "X" : "",
      clickable: !finished && !busy && myTurn && ch === "0",
      threat: finished ? null : (threats.get(i) ?? null),
      winning: winners.has(i),
      lastEngineMove:
        last !== null && last[0] === Math.floor(i / snap.n) && last[1] === i % snap.n,
    });
  }
  return {
    n: snap.n,
    cells,
    banner: banner(snap),
    finished,
    guaranteeBadge: snap.guarantee ? "engine plays a verified strategy" : null,
    humanSide: snap.human_side,
  };
}
