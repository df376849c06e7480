/** Thin DOM binding: renders a BoardViewModel into a container element. */
import type { BoardViewModel } from "./model.js";

export interface RenderHandlers {
  onCellClick: (r: number, c: number) => void;
}

export function renderBoard(
  container: HTMLElement,
  view: BoardViewModel,
  handlers: RenderHandlers,
): void {
  container.innerHTML = "";
  container.style.setProperty("--n", String(view.n));

  const board = document.createElement("div");
  board.className = "board";
  for (const cell of view.cells) {
    const button = document.createElement("button");
    button.className = "cell";
    button.dataset.r = String(cell.r);
    button.dataset.c = String(cell.c);
    button.textContent = cell.glyph;
    if (cell.glyph === "O") button.classList.add("p1");
    if (cell.glyph === "X") button.classList.add("p2");
    if (cell.threat) button.classList.add(`threat-${cell.threat}`);
    if (cell.winning) button.classList.add("winning");
    if (cell.lastEngineMove) button.classList.add("last-engine");
    button.disabled = !cell.clickable;
    button.addEventListener("click", () => handlers.onCellClick(cell.r, cell.c));
    board.appendChild(button);
  }
  container.appendChild(board);
}

export function renderBanner(
  bannerEl: HTMLElement,
  badgeEl: HTMLElement,
  view: BoardViewModel | null,
  error: string | null,
): void {
  if (error) {
    bannerEl.textContent = errorText(error);
    bannerEl.classList.add("error");
  } else {
    bannerEl.textContent = view ? view.banner : "Start a game.";
    bannerEl.classList.remove("error");
  }
  badgeEl.textContent = view?.guaranteeBadge ?? "";
  badgeEl.hidden = !view?.guaranteeBadge;
}

function errorText(code: string): string {
  switch (code) {
    case "service_unreachable":
      return "Cannot reach the game service - is `squaregame serve` running?";
    case "illegal_cell":
      return "That cell cannot be played.";
    case "not_your_turn":
      return "Not your turn.";
    case "game_over":
      return "The game is over - start a rematch.";
    default:
      return `Error: ${code}`;
  }
}
