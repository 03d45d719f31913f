"""Plain-text position format used by fixtures and the CLI.

::

    <game id>                 othello6 | minicheckers | synthetic
    <side to move>            max | min
    <board>

For ``othello6`` the board is six rows of six characters from ``.BW``
(black is MAX).  For ``minicheckers`` it is six rows from ``.xo`` (``x`` is
MAX, moving toward row 1); men may only stand on squares where
``row + column`` is odd, counting from zero.  For ``synthetic`` the board is a
single line of ``key=value`` tokens::

    seed=<int> w=<n>|<lo>..<hi> d=<n> [t=<float in [0,1]>] [v=<lo>..<hi>]

Blank lines and lines starting with ``#`` are ignored.  The position's
``ply`` is always 0 on load.
"""

from __future__ import annotations

from pathlib import Path
from typing import List, Tuple

from gamesearch.games.core import GAME_IDS, MAX, MIN, GameSpec, Position, make_game


class FixtureError(ValueError):
    def __init__(self, message: str, source: str = "<text>", line: int = 0, col: int = 0):
        self.source = source
        self.line = line
        self.col = col
        where = source
        if line:
            where += f":{line}"
            if col:
                where += f":{col}"
        super().__init__(f"{where}: {message}")


class UnknownGameError(FixtureError):
    pass


class GridError(FixtureError):
    pass


class SyntheticParamError(FixtureError):
    pass


def _content_lines(text: str) -> List[Tuple[int, str]]:
    out = []
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((no, line))
    return out


def _parse_range(value: str, cast=int):
    if ".." in value:
        lo, hi = value.split("..", 1)
        return cast(lo), cast(hi)
    v = cast(value)
    return v, v


def _parse_grid(rows, legal: str, source: str) -> List[str]:
    if len(rows) != 6:
        line = rows[-1][0] if rows else 0
        raise GridError(f"expected 6 board rows, found {len(rows)}", source, line)
    grid = []
    for no, row in rows:
        if len(row) != 6:
            raise GridError(f"expected 6 squares in row, found {len(row)}", source, no)
        for col, ch in enumerate(row, start=1):
            if ch not in legal:
                raise GridError(f"illegal character {ch!r} (expected one of {legal!r})", source, no, col)
        grid.append(row)
    return grid


def _parse_synthetic(rows, source: str) -> GameSpec:
    if len(rows) != 1:
        raise SyntheticParamError("synthetic board must be one line of key=value tokens",
                                  source, rows[0][0] if rows else 0)
    no, line = rows[0]
    params = {}
    col = 1
    for token in line.split():
        col = line.index(token, col - 1) + 1
        if "=" not in token:
            raise SyntheticParamError(f"malformed token {token!r}", source, no, col)
        key, value = token.split("=", 1)
        if key not in ("seed", "w", "d", "t", "v"):
            raise SyntheticParamError(f"unknown synthetic parameter {key!r}", source, no, col)
        try:
            if key in ("seed", "d"):
                params[key] = int(value, 0)
            elif key == "t":
                params[key] = float(value)
            else:
                params[key] = _parse_range(value)
        except ValueError:
            raise SyntheticParamError(f"bad value for {key}: {value!r}", source, no, col) from None
        col += len(token)
    for required in ("seed", "w", "d"):
        if required not in params:
            raise SyntheticParamError(f"missing synthetic parameter {required!r}", source, no)
    lo, hi = params["w"]
    if not 1 <= lo <= hi <= 64:
        raise SyntheticParamError(f"branching {lo}..{hi} out of range 1..64", source, no)
    if not 0 <= params["d"] <= 64:
        raise SyntheticParamError(f"depth bound {params['d']} out of range 0..64", source, no)
    t = params.get("t", 0.0)
    if not 0.0 <= t <= 1.0:
        raise SyntheticParamError(f"transposition density {t} out of range [0, 1]", source, no)
    if not 0 <= params["seed"] < 1 << 64:
        raise SyntheticParamError("seed must be a 64-bit unsigned integer", source, no)
    values = params.get("v", (-1000, 1000))
    try:
        return GameSpec("synthetic", seed=params["seed"], branching=(lo, hi), depth=params["d"],
                        density=t, values=values)
    except ValueError as exc:
        raise SyntheticParamError(str(exc), source, no) from None


def parse_position(text: str, source: str = "<text>") -> Tuple[GameSpec, Position]:
    lines = _content_lines(text)
    if not lines:
        raise FixtureError("empty fixture", source)
    no, game_id = lines[0]
    if game_id not in GAME_IDS:
        raise UnknownGameError(f"unknown game id {game_id!r}", source, no)
    if len(lines) < 2:
        raise FixtureError("missing side-to-move line", source, no)
    no, side_text = lines[1]
    if side_text not in ("max", "min"):
        raise FixtureError(f"side to move must be 'max' or 'min', got {side_text!r}", source, no)
    side = MAX if side_text == "max" else MIN
    rows = lines[2:]

    if game_id == "synthetic":
        spec = _parse_synthetic(rows, source)
        game = make_game(spec)
        root = game.root()
        return spec, game.with_side(root, side) if side != root.side else root

    spec = GameSpec(game_id)
    game = make_game(spec)
    if game_id == "othello6":
        grid = _parse_grid(rows, ".BW", source)
        black = white = 0
        for r, row in enumerate(grid):
            for c, ch in enumerate(row):
                if ch == "B":
                    black |= 1 << (r * 6 + c)
                elif ch == "W":
                    white |= 1 << (r * 6 + c)
        return spec, game.make(black, white, side=side)

    grid = _parse_grid(rows, ".xo", source)
    max_men = min_men = 0
    for (no, _), (r, row) in zip(rows, enumerate(grid)):
        for c, ch in enumerate(row):
            if ch != "." and (r + c) % 2 == 0:
                raise GridError(f"man on light square {ch!r}", source, no, c + 1)
            if ch == "x":
                max_men |= 1 << (r * 6 + c)
            elif ch == "o":
                min_men |= 1 << (r * 6 + c)
    return spec, game.make(max_men, min_men, side=side)


def format_position(spec: GameSpec, pos: Position) -> str:
    lines = [spec.game, pos.side_name]
    if spec.game == "synthetic":
        if pos.board:
            raise ValueError("only synthetic root positions have a text form")
        lo, hi = spec.branching
        w = str(lo) if lo == hi else f"{lo}..{hi}"
        lines.append(f"seed={spec.seed} w={w} d={spec.depth} t={spec.density:g} "
                     f"v={spec.values[0]}..{spec.values[1]}")
    else:
        a, b = pos.board
        marks = ("B", "W") if spec.game == "othello6" else ("x", "o")
        for r in range(6):
            row = []
            for c in range(6):
                bit = 1 << (r * 6 + c)
                row.append(marks[0] if a & bit else marks[1] if b & bit else ".")
            lines.append("".join(row))
    return "\n".join(lines) + "\n"


def read_fixture(path) -> Tuple[GameSpec, Position]:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise FixtureError(f"cannot read fixture: {exc.strerror}", str(path)) from None
    return parse_position(text, str(path))
