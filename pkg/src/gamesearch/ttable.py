"""Transposition table with bound-typed entries and full-key verification.

Slots are indexed by ``key mod 2**bits`` and hold at most one entry; there is
no rehashing.  A probe only returns an entry whose stored 64-bit key matches
exactly, so a slot conflict shows up as a miss (and a ``collisions`` tick),
never as wrong data.

``bits=None`` gives an unbounded table keyed by the full key.  The metrology
procedures use that mode because they need every position of the minimal
tree to keep its best move.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Dict, Iterator, Optional

from gamesearch.games.core import TERMINAL_THRESHOLD

EXACT = 0
LOWER = 1
UPPER = 2
BOUND_NAMES = {EXACT: "EXACT", LOWER: "LOWER", UPPER: "UPPER"}

# depth sentinel for entries that only carry a best move
NO_DEPTH = -1

DEFAULT_BITS = 21


@dataclass(slots=True)
class TTEntry:
    full_key: int
    depth: int = NO_DEPTH
    value: Optional[int] = None
    bound: Optional[int] = None
    best_move: Any = None
    age: int = 0

    @property
    def has_value(self) -> bool:
        return self.bound is not None


def value_to_tt(value: int, ply: int) -> int:
    """Make a terminal score relative to the node storing it."""
    if value >= TERMINAL_THRESHOLD:
        return value + ply
    if value <= -TERMINAL_THRESHOLD:
        return value - ply
    return value


def value_from_tt(value: int, ply: int) -> int:
    if value >= TERMINAL_THRESHOLD:
        return value - ply
    if value <= -TERMINAL_THRESHOLD:
        return value + ply
    return value


def sufficient(entry: TTEntry, needed_depth: int, alpha: int, beta: int, ply: int = 0) -> Optional[int]:
    """Return the stored value if it settles a search of ``needed_depth`` in ``(alpha, beta)``.

    ``ply`` converts node-relative terminal scores back to root-relative ones.
    """
    bound = entry.bound
    if bound is None or entry.depth < needed_depth:
        return None
    value = entry.value
    if ply and (value >= TERMINAL_THRESHOLD or value <= -TERMINAL_THRESHOLD):
        value = value_from_tt(value, ply)
    if bound == EXACT:
        return value
    if bound == LOWER:
        return value if value >= beta else None
    return value if value <= alpha else None


class TTable:
    def __init__(self, bits: Optional[int] = DEFAULT_BITS):
        if bits is not None and not 1 <= bits <= 32:
            raise ValueError(f"table size exponent must be in 1..32, got {bits}")
        self.bits = bits
        self.mask = (1 << bits) - 1 if bits is not None else None
        self._slots: Dict[int, TTEntry] = {}
        self.age = 0
        self.probes = 0
        self.hits = 0
        self.collisions = 0
        self.stores = 0
        self.evictions = 0

    @property
    def capacity(self) -> Optional[int]:
        return None if self.bits is None else 1 << self.bits

    def _slot(self, key: int) -> int:
        return key if self.mask is None else key & self.mask

    def __len__(self) -> int:
        return len(self._slots)

    def __iter__(self) -> Iterator[TTEntry]:
        return iter(self._slots.values())

    def probe(self, key: int) -> Optional[TTEntry]:
        self.probes += 1
        entry = self._slots.get(key if self.mask is None else key & self.mask)
        if entry is None:
            return None
        if entry.full_key != key:
            self.collisions += 1
            return None
        self.hits += 1
        return entry

    def peek(self, key: int) -> Optional[TTEntry]:
        """Probe without touching the statistics counters."""
        entry = self._slots.get(key if self.mask is None else key & self.mask)
        if entry is not None and entry.full_key == key:
            return entry
        return None

    def store(self, entry: TTEntry) -> bool:
        """Insert ``entry``; returns False when the replacement policy keeps the old one.

        A resident entry from an older iteration is always replaced; within an
        iteration the deeper entry wins (ties go to the newcomer).
        """
        slot = self._slot(entry.full_key)
        old = self._slots.get(slot)
        if old is not None and old.age >= entry.age and old.depth > entry.depth:
            return False
        if old is not None and old.full_key != entry.full_key:
            self.evictions += 1
        self._slots[slot] = entry
        self.stores += 1
        return True

    def put(self, key: int, depth: int, value: int, bound: int, best_move=None) -> bool:
        return self.store(TTEntry(key, depth, value, bound, best_move, self.age))

    def new_iteration(self) -> int:
        self.age += 1
        return self.age

    def retain_best_moves_only(self) -> None:
        for entry in self._slots.values():
            entry.depth = NO_DEPTH
            entry.value = None
            entry.bound = None

    def best_move(self, key: int):
        entry = self.peek(key)
        return None if entry is None else entry.best_move

    def copy(self) -> "TTable":
        other = TTable(self.bits)
        other.age = self.age
        other._slots = {slot: TTEntry(e.full_key, e.depth, e.value, e.bound, e.best_move, e.age)
                        for slot, e in self._slots.items()}
        return other

    def clear(self) -> None:
        self._slots.clear()
