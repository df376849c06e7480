"""Square achievement game: solver, strategy extraction/verification, play.

Two players alternately claim cells of an n-by-n grid; the first to own all
four vertices of an axis-aligned square wins.  This package decides the
outcome under an optimal-play move discipline (draw on 3x3 and 4x4 with
player 2 never losing, a forced player-1 win on 5x5), extracts the winning
and non-losing strategies as verifiable tables, and plays them live over a
CLI or a small HTTP service.
"""

__version__ = "1.0.0"

from .board import (
    CellValue,
    EMPTY,
    Grid,
    IllegalMoveError,
    P1,
    P2,
    Position,
    SquareSpec,
    Transform,
    enumerate_squares,
    opponent,
)
from .rules import (
    DEFAULT_RULES,
    ForcedKind,
    ForcedStatus,
    GameStatus,
    RuleConfig,
    StatusKind,
    forced_status,
    game_status,
    legal_candidates,
)
from .search import (
    Outcome,
    SearchConfig,
    SearchInterrupted,
    SearchReport,
    max_moves_for,
    solve,
)
from .oracle import OracleValue, game_value, oracle_minimax
from .strategy import (
    ExtractionError,
    StrategyFileError,
    StrategyTable,
    VerificationReport,
    VerifyResult,
    default_strategy,
    extract_strategy,
    load_strategy,
    lookup_move,
    save_strategy,
    verify_strategy,
)
from .engine import EngineProfile, GameRecord, engine_move, play_out

__all__ = [
    "CellValue", "EMPTY", "P1", "P2", "Position", "SquareSpec", "Transform",
    "Grid", "IllegalMoveError", "enumerate_squares", "opponent",
    "ForcedKind", "ForcedStatus", "RuleConfig", "DEFAULT_RULES",
    "GameStatus", "StatusKind", "forced_status", "game_status", "legal_candidates",
    "Outcome", "SearchConfig", "SearchReport", "SearchInterrupted",
    "max_moves_for", "solve",
    "OracleValue", "game_value", "oracle_minimax",
    "StrategyTable", "VerificationReport", "VerifyResult",
    "ExtractionError", "StrategyFileError",
    "extract_strategy", "verify_strategy", "lookup_move",
    "load_strategy", "save_strategy", "default_strategy",
    "EngineProfile", "GameRecord", "engine_move", "play_out",
    "__version__",
]
