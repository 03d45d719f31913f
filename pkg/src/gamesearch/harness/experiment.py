"""Experiment runner: fixture x depth cells, CSV rows, odd/even summaries."""

from __future__ import annotations

import csv
import io
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, TextIO

from gamesearch.errors import BudgetExceeded, ConfigError, InvariantViolation
from gamesearch.etc import EtcConfig
from gamesearch.games.core import make_game
from gamesearch.harness.config import ExperimentConfig, depth_parities, parse_int_list
from gamesearch.harness.fixtures import Fixture, load_bundled, load_fixture, synthetic_fixtures
from gamesearch.metrology import (
    QUANTITIES,
    MetrologyConfig,
    NodeCountReport,
    best_move_oracle,
    compute_actual,
    compute_armg,
    compute_rmt,
    count_with_oracle,
)

BASE_COLUMNS = [
    "config_hash", "game", "fixture", "depth", "quantity", "engine", "mm_d", "roadmap", "status",
    "leaf_count", "interior_count", "total_node_accesses", "tt_hits", "etc_cutoffs",
    "oracle_misses", "f", "note",
]
SUMMARY_COLUMNS = ["scope", "depth", "parity", "n", "median_ratio", "mean_ratio", "pooled_ratio",
                   "median_leaf_ratio"]
_ORDER = {q: i for i, q in enumerate(QUANTITIES)}


def rate_columns(max_depth: int) -> List[str]:
    return [f"fmc_rate_L{level}" for level in range(max_depth)]


def _fmt_rate(x: Optional[float]) -> str:
    return "" if x is None else f"{x:.6f}"


def _fmt_ratio(x) -> str:
    return f"{float(x):.6f}"


# -- fixtures ------------------------------------------------------------------------

def resolve_fixtures(config: ExperimentConfig) -> List[Fixture]:
    spec = config.fixtures.strip()
    if spec == "bundled":
        return load_bundled(config.game)
    if spec.startswith("bundled:"):
        return load_bundled(config.game, parse_int_list(spec[len("bundled:"):]))
    if spec.startswith("seeds="):
        if config.game != "synthetic":
            raise ConfigError("seeds= fixtures need game = synthetic")
        seeds = parse_int_list(spec[len("seeds="):])
        return synthetic_fixtures(seeds, config.w, config.effective_tree_depth, config.t, config.values)
    out = []
    for item in spec.split(","):
        path = Path(item.strip())
        if not path.is_absolute() and config.base_dir:
            path = Path(config.base_dir) / path
        fx = load_fixture(path)
        if fx.spec.game != config.game:
            raise ConfigError(f"{path}: fixture is {fx.spec.game}, config says {config.game}")
        out.append(fx)
    return out


# -- one cell ---------------------------------------------------------------------

def _roadmap(quantity: str, *, history: bool = True, etc: bool = False, mm_d: Optional[int] = None) -> str:
    if quantity == "ACTUAL":
        label = "AB+TT+ID" + ("+HH" if history else "")
    elif quantity == "ARMG":
        label = f"ARMG+MM({mm_d})"
    else:
        label = quantity
    return label + ("+ETC" if etc else "")


def _row(config: ExperimentConfig, fixture: Fixture, depth: int, quantity: str, engine: str = "",
         mm_d: Optional[int] = None, roadmap: str = "", report: Optional[NodeCountReport] = None,
         note: str = "") -> Dict[str, object]:
    row: Dict[str, object] = {
        "config_hash": config.config_hash, "game": config.game, "fixture": fixture.id,
        "depth": depth, "quantity": quantity, "engine": engine,
        "mm_d": "" if mm_d is None else mm_d, "roadmap": roadmap,
    }
    if report is None:
        row.update(status="SKIPPED", note=note)
        for col in BASE_COLUMNS:
            row.setdefault(col, "")
        return row
    row.update(status="OK", leaf_count=report.leaf_count, interior_count=report.interior_count,
               total_node_accesses=report.total_node_accesses, tt_hits=report.tt_hits,
               etc_cutoffs=report.etc_cutoffs, oracle_misses=report.oracle_misses, f=report.f,
               note=note)
    if report.stats is not None:
        for level in range(depth):
            row[f"fmc_rate_L{level}"] = _fmt_rate(report.stats.first_move_cutoff_rate(level))
    return row


def run_cell(config: ExperimentConfig, fixture: Fixture, depth: int) -> List[Dict[str, object]]:
    """Every requested quantity for one (fixture, depth); checks that all agree on f."""
    game = make_game(fixture.spec)
    pos = fixture.pos
    rows: List[Dict[str, object]] = []
    wanted = set(config.metrology)

    if "ACTUAL" in wanted:
        for engine in config.engines:
            for etc_on in config.etc_settings:
                etc = EtcConfig(etc_on, config.etc_min_depth)
                name = engine + ("+etc" if etc_on else "")
                road = _roadmap("ACTUAL", history=config.history, etc=etc_on)
                try:
                    rep = compute_actual(game, pos, depth, engine, config.tt_bits, etc,
                                         config.history, config.budget)
                    rows.append(_row(config, fixture, depth, "ACTUAL", name, roadmap=road, report=rep))
                except BudgetExceeded as exc:
                    rows.append(_row(config, fixture, depth, "ACTUAL", name, roadmap=road, note=str(exc)))

    metro = MetrologyConfig(history=config.history, budget=config.budget,
                            etc=EtcConfig(config.metrology_etc, config.etc_min_depth))
    need_oracle = wanted & {"LFMT", "LFMG", "ARMG"}
    if need_oracle:
        mm_values = [m for m in config.mm_d if m <= depth] if "ARMG" in wanted else []
        try:
            oracle = best_move_oracle(game, pos, depth, metro)
        except BudgetExceeded as exc:
            oracle = None
            reason = str(exc)
        for quantity in ("LFMT", "LFMG"):
            if quantity not in wanted:
                continue
            road = _roadmap(quantity, etc=quantity == "LFMG" and config.metrology_etc)
            if oracle is None:
                rows.append(_row(config, fixture, depth, quantity, roadmap=road, note=reason))
                continue
            try:
                rep = count_with_oracle(game, pos, depth, oracle[0], oracle[1], quantity == "LFMG", metro)
                rows.append(_row(config, fixture, depth, quantity, roadmap=road, report=rep))
            except BudgetExceeded as exc:
                rows.append(_row(config, fixture, depth, quantity, roadmap=road, note=str(exc)))
        for mm_d in mm_values:
            road = _roadmap("ARMG", etc=config.metrology_etc, mm_d=mm_d)
            if oracle is None:
                rows.append(_row(config, fixture, depth, "ARMG", mm_d=mm_d, roadmap=road, note=reason))
                continue
            try:
                rep = compute_armg(game, pos, depth, mm_d, metro, oracle=oracle)
                rows.append(_row(config, fixture, depth, "ARMG", mm_d=mm_d, roadmap=road, report=rep))
            except BudgetExceeded as exc:
                rows.append(_row(config, fixture, depth, "ARMG", mm_d=mm_d, roadmap=road, note=str(exc)))

    if "RMT" in wanted:
        try:
            rep = compute_rmt(game, pos, depth, metro)
            rows.append(_row(config, fixture, depth, "RMT", roadmap="RMT", report=rep))
        except BudgetExceeded as exc:
            rows.append(_row(config, fixture, depth, "RMT", roadmap="RMT", note=str(exc)))

    values = {r["f"] for r in rows if r["status"] == "OK"}
    if len(values) > 1:
        detail = ", ".join(f"{r['quantity']}/{r['engine'] or r['mm_d']}={r['f']}"
                           for r in rows if r["status"] == "OK")
        raise InvariantViolation(f"{fixture.id} depth {depth}: minimax values disagree ({detail})")
    return rows


def _cell_task(args):
    return run_cell(*args)


# -- whole experiment ------------------------------------------------------------------

@dataclass
class ExperimentResult:
    config: ExperimentConfig
    rows: List[Dict[str, object]]
    started: str
    elapsed: float

    @property
    def columns(self) -> List[str]:
        return BASE_COLUMNS + rate_columns(max(self.config.depths))

    def header_line(self) -> str:
        return (f"# gamesearch config_hash={self.config.config_hash} "
                f"started={self.started} elapsed_s={self.elapsed:.3f}")

    def body(self) -> str:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=self.columns, restval="", lineterminator="\n")
        writer.writeheader()
        writer.writerows(self.rows)
        return buf.getvalue()

    def write(self, out) -> None:
        text = self.header_line() + "\n" + self.body()
        if hasattr(out, "write"):
            out.write(text)
        else:
            Path(out).write_text(text)


def _sort_key(row):
    return (str(row["fixture"]), int(row["depth"]), _ORDER[row["quantity"]], str(row["engine"]),
            -1 if row["mm_d"] == "" else int(row["mm_d"]))


def run_experiment(config: ExperimentConfig, out=None) -> ExperimentResult:
    """Run every (fixture, depth) cell and return (and optionally write) the CSV."""
    fixtures = resolve_fixtures(config)
    started = datetime.now(timezone.utc).isoformat(timespec="seconds")
    t0 = time.perf_counter()
    cells = [(config, fx, d) for fx in fixtures for d in config.depths]
    rows: List[Dict[str, object]] = []
    if config.jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            for cell_rows in pool.map(_cell_task, cells):
                rows.extend(cell_rows)
    else:
        for cell in cells:
            rows.extend(run_cell(*cell))
    rows.sort(key=_sort_key)
    result = ExperimentResult(config, rows, started, time.perf_counter() - t0)
    target = out if out is not None else config.out
    if target is not None:
        result.write(target)
    return result


def read_rows(source) -> List[Dict[str, str]]:
    """Rows of an experiment CSV (path, text stream or string); comment lines are skipped."""
    if hasattr(source, "read"):
        text = source.read()
    elif isinstance(source, str) and "\n" in source:
        text = source
    else:
        text = Path(source).read_text()
    lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
    return list(csv.DictReader(lines))


# -- odd/even summary --------------------------------------------------------------------

def _ok(row) -> bool:
    return row["status"] == "OK"


def efficiency_pairs(rows: Iterable[Dict[str, object]], engine: Optional[str] = None):
    """``{depth: [(actual_total, lfmg_total, actual_leaf, lfmg_leaf), ...]}``, one entry per fixture."""
    rows = list(rows)
    actual = [r for r in rows if r["quantity"] == "ACTUAL" and _ok(r)]
    if engine is None:
        names = sorted({str(r["engine"]) for r in actual})
        plain = [n for n in names if not n.endswith("+etc")]
        if not names:
            raise ConfigError("no ACTUAL rows: run with metrology including ACTUAL")
        engine = (plain or names)[0]
    lfmg = {(r["fixture"], int(r["depth"])): r for r in rows if r["quantity"] == "LFMG" and _ok(r)}
    if not lfmg:
        raise ConfigError("no LFMG rows: run with metrology including LFMG")
    pairs: Dict[int, list] = {}
    for r in actual:
        if r["engine"] != engine:
            continue
        key = (r["fixture"], int(r["depth"]))
        base = lfmg.get(key)
        if base is None:
            continue
        if int(r["f"]) != int(base["f"]):
            raise InvariantViolation(f"{key}: ACTUAL and LFMG disagree on f")
        pairs.setdefault(key[1], []).append((int(r["total_node_accesses"]), int(base["total_node_accesses"]),
                                             int(r["leaf_count"]), int(base["leaf_count"])))
    return pairs


def summarize_odd_even(rows: Iterable[Dict[str, object]], engine: Optional[str] = None) -> List[Dict[str, str]]:
    pairs = efficiency_pairs(rows, engine)
    odd, even = depth_parities(sorted(pairs))
    if len(odd) < 2 or len(even) < 2:
        raise ConfigError(f"need at least two odd and two even depths with data, got {sorted(pairs)}")

    def stats(items):
        ratios = [Fraction(a, b) for a, b, _, _ in items]
        leaf = [Fraction(a, max(1, b)) for _, _, a, b in items]
        pooled = Fraction(sum(a for a, _, _, _ in items), sum(b for _, b, _, _ in items))
        return dict(n=str(len(items)), median_ratio=_fmt_ratio(statistics.median(ratios)),
                    mean_ratio=_fmt_ratio(sum(ratios) / len(ratios)), pooled_ratio=_fmt_ratio(pooled),
                    median_leaf_ratio=_fmt_ratio(statistics.median(leaf)))

    out = []
    for d in sorted(pairs):
        out.append(dict(scope="depth", depth=str(d), parity="odd" if d % 2 else "even", **stats(pairs[d])))
    for parity, depths in (("odd", odd), ("even", even)):
        per_depth = [statistics.median(Fraction(a, b) for a, b, _, _ in pairs[d]) for d in depths]
        merged = [item for d in depths for item in pairs[d]]
        s = stats(merged)
        # the parity median is taken over the per-depth medians
        s["median_ratio"] = _fmt_ratio(statistics.median(per_depth))
        out.append(dict(scope="parity", depth="", parity=parity, **s))
    return out


def write_summary(summary: Sequence[Dict[str, str]], out) -> None:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=SUMMARY_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(summary)
    if hasattr(out, "write"):
        out.write(buf.getvalue())
    else:
        Path(out).write_text(buf.getvalue())


def sweep_odd_even(config: ExperimentConfig, out=None, summary_out=None):
    """Run ACTUAL and LFMG over the configured depths and summarise by parity."""
    odd, even = depth_parities(config.depths)
    if len(odd) < 2 or len(even) < 2:
        raise ConfigError(f"depth range {list(config.depths)} needs at least two odd and two even depths")
    metrology = tuple(q for q in QUANTITIES if q in set(config.metrology) | {"ACTUAL", "LFMG"})
    if metrology != config.metrology:
        config = ExperimentConfig(**{**config.__dict__, "metrology": metrology})
    result = run_experiment(config, out)
    summary = summarize_odd_even(result.rows, config.engines[0])
    if summary_out is not None:
        write_summary(summary, summary_out)
    return result, summary
