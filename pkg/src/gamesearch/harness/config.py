"""Experiment configuration: flat ``key = value`` files and a stable config hash.

Recognised keys (all optional except ``game``)::

    game            othello6 | minicheckers | synthetic
    fixtures        bundled | bundled:<a>..<b> | seeds=<a>..<b> | <path>[,<path>...]
    w, t, tree_depth, values     synthetic parameters for ``seeds=`` fixtures
    depths          <a>..<b> or a comma list
    engines         comma list from alphabeta, negascout, aspnegascout, mtdf, or ``all``
    tt_bits         table size exponent of the searches under test (default 21)
    etc             off | on | both
    etc_min_depth   default 3
    history         on | off
    metrology       comma list from ACTUAL, LFMT, LFMG, RMT, ARMG
    mm_d            comma list of ARMG depths (default 3)
    metrology_etc   on | off; ETC inside the LFMG and ARMG counting passes
    budget          node budget of every search and metrology pass
    jobs            worker processes (default 1)
    out             output CSV path

Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from gamesearch.errors import ConfigError
from gamesearch.games.core import GAME_IDS
from gamesearch.metrology import DEFAULT_BUDGET, QUANTITIES
from gamesearch.search import ENGINES
from gamesearch.ttable import DEFAULT_BITS

ETC_MODES = ("off", "on", "both")


def parse_int_list(text: str) -> List[int]:
    """``"3..6"`` -> ``[3, 4, 5, 6]``; ``"2,4,8"`` -> ``[2, 4, 8]``."""
    out: List[int] = []
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if ".." in part:
                lo, hi = part.split("..", 1)
                lo, hi = int(lo), int(hi)
                if lo > hi:
                    raise ConfigError(f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise ConfigError(f"expected integers or a..b ranges, got {text!r}") from None
    if not out:
        raise ConfigError("empty integer list")
    return out


def _int_pair(text: str) -> Tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        v = int(text)
        return v, v
    except ValueError:
        raise ConfigError(f"expected <n> or <lo>..<hi>, got {text!r}") from None


def _flag(text: str, key: str) -> bool:
    t = text.strip().lower()
    if t in ("on", "true", "yes", "1"):
        return True
    if t in ("off", "false", "no", "0"):
        return False
    raise ConfigError(f"{key} must be on or off, got {text!r}")


@dataclass
class ExperimentConfig:
    game: str
    fixtures: str = "bundled"
    depths: Tuple[int, ...] = (1, 2, 3, 4)
    engines: Tuple[str, ...] = ("aspnegascout",)
    tt_bits: int = DEFAULT_BITS
    etc: str = "off"
    etc_min_depth: int = 3
    history: bool = True
    metrology: Tuple[str, ...] = ("ACTUAL",)
    mm_d: Tuple[int, ...] = (3,)
    metrology_etc: bool = False
    budget: int = DEFAULT_BUDGET
    # synthetic parameters for seed-range fixtures
    w: Tuple[int, int] = (3, 3)
    t: float = 0.0
    tree_depth: Optional[int] = None
    values: Tuple[int, int] = (-1000, 1000)
    jobs: int = 1
    out: Optional[str] = None
    # where relative fixture paths are resolved
    base_dir: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if self.game not in GAME_IDS:
            raise ConfigError(f"unknown game {self.game!r}; expected one of {', '.join(GAME_IDS)}")
        self.depths = tuple(sorted(set(self.depths)))
        if not self.depths or self.depths[0] < 1:
            raise ConfigError("depths must be positive")
        for e in self.engines:
            if e not in ENGINES:
                raise ConfigError(f"unknown engine {e!r}; expected one of {', '.join(ENGINES)}")
        if not self.engines:
            raise ConfigError("no engines selected")
        if self.etc not in ETC_MODES:
            raise ConfigError(f"etc must be one of {', '.join(ETC_MODES)}")
        if self.etc_min_depth < 1:
            raise ConfigError("etc_min_depth must be >= 1")
        if not 1 <= self.tt_bits <= 32:
            raise ConfigError("tt_bits must be in 1..32")
        for q in self.metrology:
            if q not in QUANTITIES:
                raise ConfigError(f"unknown metrology quantity {q!r}; expected one of {', '.join(QUANTITIES)}")
        if not self.metrology:
            raise ConfigError("no metrology quantities selected")
        if any(m < 0 for m in self.mm_d):
            raise ConfigError("mm_d values must be >= 0")
        if self.budget < 1:
            raise ConfigError("budget must be positive")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    # -- derived -------------------------------------------------------------

    @property
    def etc_settings(self) -> Tuple[bool, ...]:
        return {"off": (False,), "on": (True,), "both": (False, True)}[self.etc]

    def canonical(self) -> str:
        """Every setting that can influence results, one ``key=value`` per line."""
        items = {
            "game": self.game,
            "fixtures": self.fixtures,
            "depths": ",".join(map(str, self.depths)),
            "engines": ",".join(self.engines),
            "tt_bits": str(self.tt_bits),
            "etc": self.etc,
            "etc_min_depth": str(self.etc_min_depth),
            "history": "on" if self.history else "off",
            "metrology": ",".join(self.metrology),
            "mm_d": ",".join(map(str, self.mm_d)),
            "metrology_etc": "on" if self.metrology_etc else "off",
            "budget": str(self.budget),
        }
        if self.fixtures.startswith("seeds="):
            items.update(w=f"{self.w[0]}..{self.w[1]}", t=f"{self.t:g}",
                         tree_depth=str(self.effective_tree_depth),
                         values=f"{self.values[0]}..{self.values[1]}")
        return "".join(f"{k}={v}\n" for k, v in sorted(items.items()))

    @property
    def effective_tree_depth(self) -> int:
        return self.tree_depth if self.tree_depth is not None else max(self.depths)

    @property
    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()[:16]


_LIST_KEYS = {"engines", "metrology"}


def config_from_mapping(raw: Dict[str, str], base_dir: Optional[str] = None) -> ExperimentConfig:
    known = {"game", "fixtures", "depths", "engines", "tt_bits", "etc", "etc_min_depth", "history",
             "metrology", "mm_d", "metrology_etc", "budget", "w", "t", "tree_depth", "values",
             "jobs", "out"}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
    if "game" not in raw:
        raise ConfigError("config needs a 'game' key")
    kw = {"game": raw["game"].strip(), "base_dir": base_dir}
    try:
        for key, value in raw.items():
            value = value.strip()
            if key == "game":
                continue
            if key in _LIST_KEYS:
                items = tuple(v.strip() for v in value.split(",") if v.strip())
                if key == "engines" and items == ("all",):
                    items = ENGINES
                if key == "metrology":
                    items = tuple(v.upper() for v in items)
                kw[key] = items
            elif key in ("depths", "mm_d"):
                kw[key] = tuple(parse_int_list(value))
            elif key in ("tt_bits", "etc_min_depth", "budget", "jobs"):
                kw[key] = int(value)
            elif key == "tree_depth":
                kw[key] = int(value)
            elif key in ("history", "metrology_etc"):
                kw[key] = _flag(value, key)
            elif key in ("w", "values"):
                kw[key] = _int_pair(value)
            elif key == "t":
                kw[key] = float(value)
            else:
                kw[key] = value
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad value for {key}: {value!r}") from None
    return ExperimentConfig(**kw)


def parse_config_text(text: str, source: str = "<config>", base_dir: Optional[str] = None) -> ExperimentConfig:
    raw: Dict[str, str] = {}
    for no, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{no}: expected key = value")
        key, value = line.split("=", 1)
        key = key.strip()
        if key in raw:
            raise ConfigError(f"{source}:{no}: duplicate key {key!r}")
        raw[key] = value
    try:
        return config_from_mapping(raw, base_dir)
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path) -> ExperimentConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config_text(text, str(path), str(path.parent))


def depth_parities(depths: Sequence[int]) -> Tuple[List[int], List[int]]:
    return [d for d in depths if d % 2], [d for d in depths if d % 2 == 0]
