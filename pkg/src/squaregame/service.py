"""HTTP facade for live games against the strategy engine.

Endpoints:

    POST   /api/games            {"n": 3|4|5, "human_side": "p1"|"p2"}
    GET    /api/games/{id}
    POST   /api/games/{id}/moves {"r": int, "c": int}
    DELETE /api/games/{id}
    GET    /api/health

Snapshots carry the row-major '0'/'1'/'2' state string, the side to move,
status, threat cells for both sides, the winning square when finished, and
a guarantee flag (true when the engine plays a side/size combination with a
verified table: player 2 on 3x3/4x4, player 1 on 5x5).  Errors come back as
{"error": <code>} with 400/404/409 status codes.

Sessions live in memory, serialized per session; an optional snapshot file
persists move logs across restarts.  The engine replies synchronously
inside the move request (table lookups are sub-millisecond).
"""
from __future__ import annotations

import json
import secrets
import threading
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import __version__
from .board import Grid, Position
from .engine import EngineProfile, engine_move
from .rules import StatusKind, game_status
from .strategy import default_strategy

SUPPORTED_N = (3, 4, 5)
GUARANTEED = {(3, 2), (4, 2), (5, 1)}


class ApiError(Exception):
    def __init__(self, status_code: int, code: str):
        super().__init__(code)
        self.status_code = status_code
        self.code = code


class CreateGameBody(BaseModel):
    n: int
    human_side: str


class MoveBody(BaseModel):
    r: int
    c: int


class GameSession:
    def __init__(self, session_id: str, n: int, human_side: int):
        self.id = session_id
        self.n = n
        self.human_side = human_side
        self.engine_side = 3 - human_side
        self.grid = Grid(n)
        self.lock = threading.Lock()
        table = default_strategy(n, self.engine_side)
        self.profile = EngineProfile(n=n, engine_side=self.engine_side, table=table)
        self.guarantee = table is not None and (n, self.engine_side) in GUARANTEED

    def engine_reply_if_due(self) -> Position | None:
        if game_status(self.grid).kind is not StatusKind.ONGOING:
            return None
        if self.grid.to_move() != self.engine_side:
            return None
        pos = engine_move(self.grid, self.profile)
        self.grid.place(pos, self.engine_side)
        return pos

    def snapshot(self, engine_reply: Position | None = None) -> dict:
        g = self.grid
        status = game_status(g)
        snap = {
            "id": self.id,
            "n": self.n,
            "state": g.state_string(),
            "human_side": "p1" if self.human_side == 1 else "p2",
            "to_move": "p1" if g.to_move() == 1 else "p2",
            "status": status.kind.value,
            "winner": None,
            "winning_square": None,
            "threats": {
                "p1": sorted([r, c] for r, c in g.completing_cells(1)),
                "p2": sorted([r, c] for r, c in g.completing_cells(2)),
            },
            "move_log": [[i // g.n, i % g.n, v] for i, v in g.history],
            "guarantee": self.guarantee,
        }
        if status.kind is StatusKind.WON:
            snap["winner"] = "p1" if status.winner == 1 else "p2"
            sq = status.square
            snap["winning_square"] = {"r": sq.r, "c": sq.c, "d": sq.d}
        if engine_reply is not None:
            snap["engine_reply"] = [engine_reply.r, engine_reply.c]
        return snap


class SessionStore:
    def __init__(self, snapshot_path: str | Path | None = None):
        self.sessions: dict[str, GameSession] = {}
        self.lock = threading.Lock()
        self.snapshot_path = Path(snapshot_path) if snapshot_path else None
        if self.snapshot_path and self.snapshot_path.exists():
            self._load()

    def create(self, n: int, human_side: int) -> GameSession:
        session = GameSession(secrets.token_hex(8), n, human_side)
        with self.lock:
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> GameSession:
        with self.lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise ApiError(404, "unknown_session")
        return session

    def delete(self, session_id: str) -> None:
        with self.lock:
            if self.sessions.pop(session_id, None) is None:
                raise ApiError(404, "unknown_session")
        self.persist()

    def persist(self) -> None:
        if self.snapshot_path is None:
            return
        with self.lock:
            payload = [
                {
                    "id": s.id,
                    "n": s.n,
                    "human_side": s.human_side,
                    "move_log": [[i, v] for i, v in s.grid.history],
                }
                for s in self.sessions.values()
            ]
        self.snapshot_path.write_text(json.dumps(payload), encoding="utf-8")

    def _load(self) -> None:
        payload = json.loads(self.snapshot_path.read_text(encoding="utf-8"))
        for item in payload:
            session = GameSession(item["id"], item["n"], item["human_side"])
            for i, v in item["move_log"]:
                session.grid._place_idx(i, v)
            self.sessions[session.id] = session


def create_app(snapshot_path: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="squaregame service", version=__version__)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = SessionStore(snapshot_path)
    app.state.store = store

    @app.exception_handler(ApiError)
    async def _api_error(request: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status_code, content={"error": exc.code})

    @app.get("/api/health")
    def health():
        return {"ok": True, "version": __version__}

    @app.post("/api/games", status_code=201)
    def create_game(body: CreateGameBody):
        if body.n not in SUPPORTED_N:
            raise ApiError(400, "unsupported_n")
        if body.human_side not in ("p1", "p2"):
            raise ApiError(400, "bad_side")
        session = store.create(body.n, 1 if body.human_side == "p1" else 2)
        with session.lock:
            reply = session.engine_reply_if_due()  # engine opens when human is p2
            snap = session.snapshot(reply)
        store.persist()
        return snap

    @app.get("/api/games/{session_id}")
    def get_game(session_id: str):
        session = store.get(session_id)
        with session.lock:
            return session.snapshot()

    @app.post("/api/games/{session_id}/moves")
    def submit_move(session_id: str, body: MoveBody):
        session = store.get(session_id)
        with session.lock:
            g = session.grid
            if game_status(g).kind is not StatusKind.ONGOING:
                raise ApiError(409, "game_over")
            if g.to_move() != session.human_side:
                raise ApiError(409, "not_your_turn")
            if not (0 <= body.r < g.n and 0 <= body.c < g.n):
                raise ApiError(400, "illegal_cell")
            if g.cells[body.r * g.n + body.c] != 0:
                raise ApiError(400, "illegal_cell")
            g.place((body.r, body.c), session.human_side)
            reply = session.engine_reply_if_due()
            snap = session.snapshot(reply)
        store.persist()
        return snap

    @app.delete("/api/games/{session_id}")
    def delete_game(session_id: str):
        store.get(session_id)
        store.delete(session_id)
        return {"ok": True}

    return app
