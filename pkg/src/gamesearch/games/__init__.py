from gamesearch.games.core import (
    GAME_IDS,
    HEURISTIC_LIMIT,
    INF,
    MAX,
    MIN,
    WIN_SCORE,
    Game,
    GameSpec,
    Position,
    is_terminal_score,
    loss_score,
    make_game,
    win_score,
)
from gamesearch.games.explicit import ExplicitGame
from gamesearch.games.minicheckers import MiniCheckers
from gamesearch.games.othello import Othello6
from gamesearch.games.synthetic import SyntheticGame

__all__ = [
    "GAME_IDS", "HEURISTIC_LIMIT", "INF", "MAX", "MIN", "WIN_SCORE",
    "Game", "GameSpec", "Position", "is_terminal_score", "loss_score", "make_game", "win_score",
    "ExplicitGame", "MiniCheckers", "Othello6", "SyntheticGame",
]
