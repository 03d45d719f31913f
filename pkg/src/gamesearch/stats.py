"""Deterministic node accounting for a single search."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, List, Optional


@dataclass
class SearchStats:
    """Counters for one search (or one iteration of an iterative-deepening run).

    A transposition-table cutoff (including one found by ETC) is one node
    access; it is not an expansion and not a leaf evaluation.
    """

    interior_expansions: int = 0
    leaf_evaluations: int = 0
    tt_cutoffs: int = 0
    etc_probes: int = 0
    etc_cutoffs: int = 0
    # level -> rank -> count
    cutoff_ranks: Dict[int, Dict[int, int]] = field(default_factory=lambda: defaultdict(lambda: defaultdict(int)))

    @property
    def node_accesses(self) -> int:
        return self.interior_expansions + self.leaf_evaluations + self.tt_cutoffs

    def record_cutoff_rank(self, level: int, rank: int) -> None:
        self.cutoff_ranks[level][rank] += 1

    def cutoffs_at(self, level: int) -> int:
        return sum(self.cutoff_ranks.get(level, {}).values())

    def first_move_cutoff_rate(self, level: int) -> Optional[float]:
        """Share of cutoff nodes at ``level`` whose first ordered move caused the cutoff."""
        total = self.cutoffs_at(level)
        if not total:
            return None
        return self.cutoff_ranks[level].get(0, 0) / total

    def levels(self) -> List[int]:
        return sorted(self.cutoff_ranks)

    def add(self, other: "SearchStats") -> None:
        self.interior_expansions += other.interior_expansions
        self.leaf_evaluations += other.leaf_evaluations
        self.tt_cutoffs += other.tt_cutoffs
        self.etc_probes += other.etc_probes
        self.etc_cutoffs += other.etc_cutoffs
        for level, ranks in other.cutoff_ranks.items():
            for rank, n in ranks.items():
                self.cutoff_ranks[level][rank] += n

    def copy(self) -> "SearchStats":
        out = SearchStats()
        out.add(self)
        return out

    def as_dict(self) -> dict:
        return {
            "interior_expansions": self.interior_expansions,
            "leaf_evaluations": self.leaf_evaluations,
            "tt_cutoffs": self.tt_cutoffs,
            "node_accesses": self.node_accesses,
            "etc_probes": self.etc_probes,
            "etc_cutoffs": self.etc_cutoffs,
        }


def record_cutoff_rank(stats: SearchStats, level: int, rank: int) -> None:
    stats.record_cutoff_rank(level, rank)
