/** Game flow state machine, kept free of DOM concerns for headless testing.
 *
 * One in-flight request at a time; clicks that are illegal client-side
 * (no game, not your turn, occupied cell, game over, request pending) are
 * swallowed without touching the network, and a server rejection leaves
 * the snapshot untouched.
 */
import { ApiError, GameApi, GameSnapshot, Side } from "./api.js";
import { BoardViewModel, deriveViewModel } from "./model.js";

export interface ControllerState {
  snapshot: GameSnapshot | null;
  busy: boolean;
  error: string | null;
  lastEngineMove: [number, number] | null;
}

export type ClickResult = "ignored" | "rejected" | "accepted";

export class GameController {
  private state: ControllerState = {
    snapshot: null,
    busy: false,
    error: null,
    lastEngineMove: null,
  };

  onChange: ((state: ControllerState) => void) | null = null;

  constructor(private readonly api: GameApi) {}

  getState(): ControllerState {
    return this.state;
  }

  view(): BoardViewModel | null {
    if (!this.state.snapshot) return null;
    return deriveViewModel(this.state.snapshot, {
      busy: this.state.busy,
      lastEngineMove: this.state.lastEngineMove,
    });
  }

  private update(patch: Partial<ControllerState>): void {
    this.state = { ...this.state, ...patch };
    this.onChange?.(this.state);
  }

  async newGame(n: number, humanSide: Side): Promise<void> {
    this.update({ busy: true, error: null });
    try {
      const snap = await this.api.createGame(n, humanSide);
      this.update({
        snapshot: snap,
        busy: false,
        lastEngineMove: (snap.engine_reply as [number, number] | undefined) ?? null,
      });
    } catch (err) {
      this.update({
        snapshot: null,
        busy: false,
        error: err instanceof ApiError ? err.code : "service_unreachable",
      });
      throw err;
    }
  }

  /** Handle a board click; resolves to what happened to it. */
  async clickCell(r: number, c: number): Promise<ClickResult> {
    const snap = this.state.snapshot;
    if (!snap || this.state.busy || snap.status !== "ongoing") return "ignored";
    if (snap.to_move !== snap.human_side) return "ignored";
    if (r < 0 || r >= snap.n || c < 0 || c >= snap.n) return "ignored";
    if (snap.state[r * snap.n + c] !== "0") return "ignored";

    this.update({ busy: true, error: null });
    try {
      const next = await this.api.submitMove(snap.id, r, c);
      this.update({
        snapshot: next,
        busy: false,
        lastEngineMove: (next.engine_reply as [number, number] | undefined) ?? null,
      });
      return "accepted";
    } catch (err) {
      // the server said no: keep the old snapshot, surface the code
      this.update({
        busy: false,
        error: err instanceof ApiError ? err.code : "service_unreachable",
      });
      return "rejected";
    }
  }

  async rematch(): Promise<void> {
    const snap = this.state.snapshot;
    if (!snap) return;
    await this.newGame(snap.n, snap.human_side);
  }
}
