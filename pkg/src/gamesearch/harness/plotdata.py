"""Whitespace-separated plot tables derived from experiment CSVs.

Counts are averaged over fixtures (sum divided by the number of fixtures);
ratios are medians over fixtures.
"""

from __future__ import annotations

import statistics
from collections import defaultdict
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Sequence

from gamesearch.errors import ConfigError
from gamesearch.harness.experiment import efficiency_pairs

FIGURES = ("fig1", "fig2", "fig3", "fig5_6", "fig7_8_9")


def _ok(rows, quantity):
    return [r for r in rows if r["quantity"] == quantity and r["status"] == "OK"]


def _require(rows, quantity, figure):
    got = _ok(rows, quantity)
    if not got:
        raise ConfigError(f"{figure} needs {quantity} rows; rerun with --metrology including {quantity}")
    return got


def _mean_total_by_depth(rows) -> Dict[int, float]:
    acc = defaultdict(list)
    for r in rows:
        acc[int(r["depth"])].append(int(r["total_node_accesses"]))
    return {d: sum(v) / len(v) for d, v in acc.items()}


def _table(header: Sequence[str], lines: List[Sequence]) -> str:
    out = ["# " + " ".join(header)]
    for line in lines:
        out.append(" ".join(f"{x:.6f}" if isinstance(x, float) else str(x) for x in line))
    return "\n".join(out) + "\n"


def fig1(rows) -> str:
    """First-move cutoff rate by level, for the deepest search of the first plain engine."""
    actual = _require(rows, "ACTUAL", "fig1")
    engines = sorted({r["engine"] for r in actual})
    engine = next((e for e in engines if not e.endswith("+etc")), engines[0])
    chosen = [r for r in actual if r["engine"] == engine]
    depth = max(int(r["depth"]) for r in chosen)
    chosen = [r for r in chosen if int(r["depth"]) == depth]
    lines = []
    for level in range(depth):
        rates = [float(r[f"fmc_rate_L{level}"]) for r in chosen
                 if r.get(f"fmc_rate_L{level}") not in ("", None)]
        if rates:
            lines.append((level, sum(rates) / len(rates)))
    return _table(("level", "first_move_cutoff_rate"), lines)


def fig2(rows) -> str:
    lfmt = _mean_total_by_depth(_require(rows, "LFMT", "fig2"))
    lfmg = _mean_total_by_depth(_require(rows, "LFMG", "fig2"))
    return _table(("depth", "LFMT_total", "LFMG_total"),
                  [(d, lfmt[d], lfmg[d]) for d in sorted(set(lfmt) & set(lfmg))])


def fig3(rows) -> str:
    _require(rows, "ACTUAL", "fig3")
    _require(rows, "LFMG", "fig3")
    engines = sorted({r["engine"] for r in _ok(rows, "ACTUAL")})
    per_engine = {e: efficiency_pairs(rows, e) for e in engines}
    depths = sorted(set().union(*(p.keys() for p in per_engine.values())))
    lines = []
    for d in depths:
        line = [d]
        for e in engines:
            items = per_engine[e].get(d)
            line.append(float(statistics.median(Fraction(a, b) for a, b, _, _ in items)) if items else "nan")
        lines.append(line)
    return _table(["depth"] + [f"ratio_{e}" for e in engines], lines)


def fig5_6(rows) -> str:
    actual = _require(rows, "ACTUAL", "fig5_6")
    on = [r for r in actual if r["engine"].endswith("+etc")]
    off = [r for r in actual if not r["engine"].endswith("+etc")]
    if not off:
        raise ConfigError("fig5_6 needs an ETC-off baseline; rerun with --etc both")
    if not on:
        raise ConfigError("fig5_6 needs ETC-on rows; rerun with --etc both")
    engine = sorted({r["engine"] for r in off})[0]
    base = _mean_total_by_depth([r for r in off if r["engine"] == engine])
    with_etc = _mean_total_by_depth([r for r in on if r["engine"] == engine + "+etc"])
    depths = sorted(set(base) & set(with_etc))
    if not depths:
        raise ConfigError(f"fig5_6: no ETC-on rows for engine {engine}")
    return _table(("depth", "total_without_etc", "total_with_etc"),
                  [(d, base[d], with_etc[d]) for d in depths])


def fig7_8_9(rows) -> str:
    lfmg = _mean_total_by_depth(_require(rows, "LFMG", "fig7_8_9"))
    armg_rows = _require(rows, "ARMG", "fig7_8_9")
    mm = max(int(r["mm_d"]) for r in armg_rows)
    armg = _mean_total_by_depth([r for r in armg_rows if int(r["mm_d"]) == mm])
    return _table(("depth", "LFMG_total", f"ARMG_MM{mm}_total"),
                  [(d, lfmg[d], armg[d]) for d in sorted(set(lfmg) & set(armg))])


_BUILDERS = {"fig1": fig1, "fig2": fig2, "fig3": fig3, "fig5_6": fig5_6, "fig7_8_9": fig7_8_9}


def emit_plotdata(rows, figure: str, out=None) -> str:
    if figure not in _BUILDERS:
        raise ConfigError(f"unknown figure {figure!r}; expected one of {', '.join(FIGURES)}")
    text = _BUILDERS[figure](list(rows))
    if out is not None:
        if hasattr(out, "write"):
            out.write(text)
        else:
            Path(out).write_text(text)
    return text
