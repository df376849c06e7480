/** Page entry point: wires the setup form, board, and controller together. */
import { GameApi, Side } from "./api.js";
import { GameController } from "./controller.js";
import { renderBanner, renderBoard } from "./dom.js";

const api = new GameApi("");
const controller = new GameController(api);

const boardEl = document.getElementById("board") as HTMLElement;
const bannerEl = document.getElementById("banner") as HTMLElement;
const badgeEl = document.getElementById("badge") as HTMLElement;
const form = document.getElementById("setup") as HTMLFormElement;
const rematchBtn = document.getElementById("rematch") as HTMLButtonElement;

function redraw(): void {
  const view = controller.view();
  const state = controller.getState();
  if (view) {
    renderBoard(boardEl, view, {
      onCellClick: (r, c) => {
        void controller.clickCell(r, c).then((result) => {
          if (result === "rejected") flashCell(r, c);
        });
      },
    });
    rematchBtn.hidden = !view.finished;
  }
  renderBanner(bannerEl, badgeEl, view, state.error);
}

function flashCell(r: number, c: number): void {
  const cell = boardEl.querySelector(`[data-r="${r}"][data-c="${c}"]`);
  if (cell) {
    cell.classList.add("flash");
    setTimeout(() => cell.classList.remove("flash"), 400);
  }
}

controller.onChange = redraw;

form.addEventListener("submit", (event) => {
  event.preventDefault();
  const data = new FormData(form);
  const n = Number(data.get("n"));
  const side = data.get("side") as Side;
  void controller.newGame(n, side).catch(() => {
    form.querySelectorAll("input,select,button").forEach((el) => {
      (el as HTMLInputElement).disabled = false;
    });
  });
});

rematchBtn.addEventListener("click", () => {
  void controller.rematch();
});

renderBanner(bannerEl, badgeEl, null, null);
