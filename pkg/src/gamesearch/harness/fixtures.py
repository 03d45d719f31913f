"""Bundled test positions: generation, loading and integrity checks.

Real-game fixtures come from seeded random playouts out of the initial
position, so ``generate`` is deterministic and ``check`` can verify that the
files on disk are exactly what the generator produces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from gamesearch.games.core import GAME_IDS, GameSpec, Position, make_game
from gamesearch.games.textio import FixtureError, format_position, parse_position, read_fixture

FIXTURES_PER_GAME = 20
FIXTURE_DIR = Path(__file__).resolve().parent.parent / "fixtures"

# (min plies, max plies) of the random opening for each real game
_PLAYOUT_PLIES = {"othello6": (4, 10), "minicheckers": (4, 12)}
# synthetic fixtures: first half transposition-rich and irregular, second half a strict uniform tree
_SYNTHETIC_RICH = dict(branching=(2, 4), depth=12, density=0.5)
_SYNTHETIC_TREE = dict(branching=(3, 3), depth=12, density=0.0)


@dataclass(frozen=True)
class Fixture:
    id: str
    spec: GameSpec
    pos: Position
    path: Optional[Path] = None


def _playout(game_id: str, index: int) -> str:
    spec = GameSpec(game_id)
    game = make_game(spec)
    rng = random.Random(f"{game_id}-fixture-{index}")
    lo, hi = _PLAYOUT_PLIES[game_id]
    while True:
        pos = game.root()
        for _ in range(rng.randint(lo, hi)):
            moves = game.moves(pos)
            if not moves:
                break
            pos = game.apply(pos, rng.choice(moves))
        # the text form drops the ply, so fixtures always start at ply 0
        if len(game.moves(pos)) >= 2:
            return format_position(spec, pos)


def _synthetic(index: int) -> str:
    params = _SYNTHETIC_RICH if index < FIXTURES_PER_GAME // 2 else _SYNTHETIC_TREE
    spec = GameSpec("synthetic", seed=1000 + index, **params)
    game = make_game(spec)
    return format_position(spec, game.root())


def generate(game_id: str, count: int = FIXTURES_PER_GAME) -> Dict[str, str]:
    """Fixture file name -> text, for ``count`` fixtures of ``game_id``."""
    if game_id not in GAME_IDS:
        raise ValueError(f"unknown game id {game_id!r}")
    out = {}
    for i in range(count):
        text = _synthetic(i) if game_id == "synthetic" else _playout(game_id, i)
        out[f"{game_id}_{i + 1:02d}.txt"] = text
    return out


def write_fixtures(directory: Path = FIXTURE_DIR, games: Sequence[str] = GAME_IDS) -> List[Path]:
    written = []
    for game_id in games:
        sub = Path(directory) / game_id
        sub.mkdir(parents=True, exist_ok=True)
        for name, text in generate(game_id).items():
            path = sub / name
            path.write_text(text)
            written.append(path)
    return written


def check_fixtures(directory: Path = FIXTURE_DIR, games: Sequence[str] = GAME_IDS) -> List[str]:
    """Problems found in ``directory``; an empty list means the fixtures are intact."""
    problems = []
    for game_id in games:
        expected = generate(game_id)
        sub = Path(directory) / game_id
        for name, text in expected.items():
            path = sub / name
            if not path.exists():
                problems.append(f"{path}: missing")
                continue
            on_disk = path.read_text()
            try:
                spec, pos = parse_position(on_disk, str(path))
            except FixtureError as exc:
                problems.append(str(exc))
                continue
            if on_disk != text:
                problems.append(f"{path}: differs from the generator output")
            elif format_position(spec, pos) != on_disk:
                problems.append(f"{path}: does not round-trip through the writer")
            elif not make_game(spec).moves(pos):
                problems.append(f"{path}: terminal position")
        if sub.exists():
            for extra in sorted(set(p.name for p in sub.glob("*.txt")) - set(expected)):
                problems.append(f"{sub / extra}: not produced by the generator")
    return problems


def fixture_paths(game_id: str, directory: Path = FIXTURE_DIR) -> List[Path]:
    return sorted((Path(directory) / game_id).glob(f"{game_id}_*.txt"))


def load_fixture(path) -> Fixture:
    path = Path(path)
    spec, pos = read_fixture(path)
    return Fixture(path.stem, spec, pos, path)


def load_bundled(game_id: str, indices: Optional[Sequence[int]] = None) -> List[Fixture]:
    """The bundled fixtures of ``game_id``; ``indices`` are 1-based."""
    paths = fixture_paths(game_id)
    if not paths:
        raise FixtureError(f"no bundled fixtures for {game_id!r}", str(FIXTURE_DIR / game_id))
    if indices is not None:
        paths = [paths[i - 1] for i in indices if 1 <= i <= len(paths)]
    return [load_fixture(p) for p in paths]


def synthetic_fixtures(seeds: Sequence[int], branching, depth: int, density: float,
                       values=(-1000, 1000)) -> List[Fixture]:
    out = []
    for seed in seeds:
        spec = GameSpec("synthetic", seed=seed, branching=tuple(branching), depth=depth,
                        density=density, values=tuple(values))
        out.append(Fixture(f"seed={seed}", spec, make_game(spec).root()))
    return out
