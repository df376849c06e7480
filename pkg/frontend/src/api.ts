/** Typed client for the game service HTTP API. */

export type Side = "p1" | "p2";
export type GameStatus = "ongoing" | "won" | "draw";

export interface WinningSquare {
  r: number;
  c: number;
  d: number;
}

export interface GameSnapshot {
  id: string;
  n: number;
  /** Row-major cell string: '0' empty, '1' player 1 (O), '2' player 2 (X). */
  state: string;
  human_side: Side;
  to_move: Side;
  status: GameStatus;
  winner: Side | null;
  winning_square: WinningSquare | null;
  threats: { p1: number[][]; p2: number[][] };
  move_log: number[][];
  guarantee: boolean;
  engine_reply?: number[];
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    public readonly code: string,
  ) {
    super(`${status}: ${code}`);
    this.name = "ApiError";
  }
}

async function parseError(resp: Response): Promise<never> {
  let code = "unknown_error";
  try {
    const body = (await resp.json()) as { error?: string };
    if (body && typeof body.error === "string") code = body.error;
  } catch {
    // non-JSON error body: keep the generic code
  }
  throw new ApiError(resp.status, code);
}

export class GameApi {
  constructor(private readonly baseUrl: string = "") {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async health(): Promise<{ ok: boolean; version: string }> {
    const resp = await fetch(this.url("/api/health"));
    if (!resp.ok) return parseError(resp);
    return resp.json();
  }

  async createGame(n: number, humanSide: Side): Promise<GameSnapshot> {
    const resp = await fetch(this.url("/api/games"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ n, human_side: humanSide }),
    });
    if (!resp.ok) return parseError(resp);
    return resp.json();
  }

  async getGame(id: string): Promise<GameSnapshot> {
    const resp = await fetch(this.url(`/api/games/${id}`));
    if (!resp.ok) return parseError(resp);
    return resp.json();
  }

  async submitMove(id: string, r: number, c: number): Promise<GameSnapshot> {
    const resp = await fetch(this.url(`/api/games/${id}/moves`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ r, c }),
    });
    if (!resp.ok) return parseError(resp);
    return resp.json();
  }

  async deleteGame(id: string): Promise<void> {
    const resp = await fetch(this.url(`/api/games/${id}`), { method: "DELETE" });
    if (!resp.ok) return parseError(resp);
  }
}
