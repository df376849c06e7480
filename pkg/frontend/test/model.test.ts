import { describe, expect, it } from "vitest";

import type { GameSnapshot } from "../src/api.js";
import { deriveViewModel } from "../src/model.js";

function snapshot(overrides: Partial<GameSnapshot> = {}): GameSnapshot {
  return {
    id: "abc",
    n: 3,
    state: "000000000",
    human_side: "p1",
    to_move: "p1",
    status: "ongoing",
    winner: null,
    winning_square: null,
    threats: { p1: [], p2: [] },
    move_log: [],
    guarantee: true,
    ...overrides,
  };
}

describe("deriveViewModel", () => {
  it("renders glyphs straight from the state string", () => {
    const view = deriveViewModel(snapshot({ state: "120000021" }));
    expect(view.cells[0].glyph).toBe("O");
    expect(view.cells[1].glyph).toBe("X");
    expect(view.cells[2].glyph).toBe("");
    expect(view.cells[8].glyph).toBe("O");
    expect(view.cells).toHaveLength(9);
  });

  it("marks only empty cells clickable on the human's turn", () => {
    const view = deriveViewModel(snapshot({ state: "100000002" }));
    expect(view.cells[0].clickable).toBe(false);
    expect(view.cells[1].clickable).toBe(true);
    expect(view.cells[8].clickable).toBe(false);
  });

  it("locks the board while a request is in flight", () => {
    const view = deriveViewModel(snapshot(), { busy: true });
    expect(view.cells.every((cell) => !cell.clickable)).toBe(true);
  });

  it("locks the board when it is the engine's turn", () => {
    const view = deriveViewModel(snapshot({ to_move: "p2" }));
    expect(view.cells.every((cell) => !cell.clickable)).toBe(true);
    expect(view.banner).toMatch(/engine/i);
  });

  it("marks threats per side including shared cells", () => {
    const view = deriveViewModel(
      snapshot({ threats: { p1: [[0, 1], [1, 1]], p2: [[1, 1]] } }),
    );
    expect(view.cells[1].threat).toBe("p1");
    expect(view.cells[4].threat).toBe("both");
    expect(view.cells[0].threat).toBeNull();
  });

  it("highlights the four winning vertices and disables the board", () => {
    const view = deriveViewModel(
      snapshot({
        status: "won",
        winner: "p2",
        state: "120120122",
        winning_square: { r: 0, c: 1, d: 1 },
        to_move: "p1",
      }),
    );
    const winning = view.cells.filter((cell) => cell.winning);
    expect(winning.map((cell) => [cell.r, cell.c])).toEqual([
      [0, 1], [0, 2], [1, 1], [1, 2],
    ]);
    expect(view.finished).toBe(true);
    expect(view.cells.every((cell) => !cell.clickable)).toBe(true);
    expect(view.banner).toMatch(/engine wins/i);
  });

  it("banners a human win and a draw", () => {
    expect(
      deriveViewModel(snapshot({ status: "won", winner: "p1" })).banner,
    ).toMatch(/you win/i);
    expect(deriveViewModel(snapshot({ status: "draw" })).banner).toMatch(/draw/i);
  });

  it("shows the guarantee badge only when the service grants it", () => {
    expect(deriveViewModel(snapshot()).guaranteeBadge).toMatch(/verified/);
    expect(deriveViewModel(snapshot({ guarantee: false })).guaranteeBadge).toBeNull();
  });

  it("marks the engine's last reply", () => {
    const view = deriveViewModel(snapshot({ state: "000010000" }), {
      lastEngineMove: [1, 1],
    });
    expect(view.cells[4].lastEngineMove).toBe(true);
    expect(view.cells.filter((cell) => cell.lastEngineMove)).toHaveLength(1);
  });

  it("renders all three supported sizes", () => {
    for (const n of [3, 4, 5]) {
      const view = deriveViewModel(
        snapshot({ n, state: "0".repeat(n * n) }),
      );
      expect(view.cells).toHaveLength(n * n);
      expect(view.n).toBe(n);
    }
  });
});
