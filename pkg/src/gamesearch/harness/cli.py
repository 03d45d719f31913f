"""Command line interface.

Exit codes: 0 success, 1 usage or configuration error, 2 data error
(unreadable or malformed fixture, CSV lacking a required quantity),
3 internal invariant violation (engines disagreeing on a minimax value).
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from gamesearch.errors import ConfigError, InvariantViolation
from gamesearch.games.core import GAME_IDS
from gamesearch.games.textio import FixtureError
from gamesearch.harness import fixtures as fixture_mod
from gamesearch.harness.config import ExperimentConfig, load_config, parse_int_list
from gamesearch.harness.experiment import read_rows, run_experiment, sweep_odd_even
from gamesearch.harness.plotdata import FIGURES, emit_plotdata
from gamesearch.metrology import QUANTITIES
from gamesearch.search import ENGINES

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INVARIANT = 0, 1, 2, 3

log = logging.getLogger("gamesearch")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _metrology_list(text: str):
    items = tuple(x.strip().upper() for x in text.split(",") if x.strip())
    bad = [x for x in items if x not in QUANTITIES]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"metrology must be a comma list from {', '.join(QUANTITIES)}")
    return items


def _engine_list(text: str):
    if text == "all":
        return ENGINES
    items = tuple(x.strip() for x in text.split(",") if x.strip())
    bad = [x for x in items if x not in ENGINES]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"engine must be 'all' or a comma list from {', '.join(ENGINES)}")
    return items


def _int_list(text: str):
    try:
        return tuple(parse_int_list(text))
    except ConfigError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gamesearch", description="Game-tree search experiments and minimal-graph metrology.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    run = sub.add_parser("run", help="run an experiment described by a key=value config file")
    run.add_argument("--config", required=True, type=Path)
    run.add_argument("--out", type=Path, help="output CSV (overrides the config's out key)")

    sw = sub.add_parser("sweep", help="depth sweep over one game's fixtures")
    sw.add_argument("--game", required=True, choices=GAME_IDS)
    sw.add_argument("--depths", required=True, type=_int_list, help="a..b or a comma list")
    sw.add_argument("--engine", default=("aspnegascout",), type=_engine_list,
                    help="engine, comma list, or 'all' (default aspnegascout)")
    sw.add_argument("--etc", choices=("on", "off", "both"), default="off")
    sw.add_argument("--etc-min-depth", type=int, default=3)
    sw.add_argument("--tt-bits", type=int, default=21)
    sw.add_argument("--metrology", type=_metrology_list, default=("ACTUAL",))
    sw.add_argument("--mm-d", type=_int_list, default=(3,))
    sw.add_argument("--fixtures", default="bundled",
                    help="bundled, bundled:a..b, seeds=a..b (synthetic) or comma-separated paths")
    sw.add_argument("--w", default="3", help="synthetic branching for seeds= fixtures: n or lo..hi")
    sw.add_argument("--t", type=float, default=0.0, help="synthetic transposition density")
    sw.add_argument("--no-history", action="store_true")
    sw.add_argument("--budget", type=int, default=None)
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--out", required=True, type=Path)
    sw.add_argument("--summary", type=Path, help="also write the odd/even efficiency summary here")

    pl = sub.add_parser("plot", help="project an experiment CSV onto one figure's axes")
    pl.add_argument("--figure", required=True, choices=FIGURES)
    pl.add_argument("--in", dest="inp", required=True, type=Path)
    pl.add_argument("--out", required=True, type=Path)

    fx = sub.add_parser("fixture", help="regenerate or verify the bundled fixtures")
    fx.add_argument("action", choices=("gen", "check"))
    fx.add_argument("--dir", type=Path, default=fixture_mod.FIXTURE_DIR)
    fx.add_argument("--game", choices=GAME_IDS, action="append",
                    help="restrict to one game (repeatable)")
    return p


def _sweep_config(args) -> ExperimentConfig:
    w = args.w
    lo, _, hi = w.partition("..")
    try:
        branching = (int(lo), int(hi or lo))
    except ValueError:
        raise ConfigError(f"--w expects n or lo..hi, got {w!r}") from None
    kw = dict(game=args.game, fixtures=args.fixtures, depths=args.depths, engines=args.engine,
              tt_bits=args.tt_bits, etc=args.etc, etc_min_depth=args.etc_min_depth,
              history=not args.no_history, metrology=args.metrology, mm_d=args.mm_d,
              w=branching, t=args.t, jobs=args.jobs, out=str(args.out), base_dir=str(Path.cwd()))
    if args.budget is not None:
        kw["budget"] = args.budget
    return ExperimentConfig(**kw)


def _cmd_run(args) -> int:
    config = load_config(args.config)
    out = args.out or config.out
    if out is None:
        raise ConfigError("no output path: give --out or an 'out' key in the config")
    if not Path(out).is_absolute() and args.out is None:
        out = Path(config.base_dir) / out
    result = run_experiment(config, out)
    log.info("wrote %d rows to %s", len(result.rows), out)
    return EXIT_OK


def _cmd_sweep(args) -> int:
    config = _sweep_config(args)
    if args.summary is not None:
        result, _ = sweep_odd_even(config, args.out, args.summary)
    else:
        result = run_experiment(config, args.out)
    log.info("wrote %d rows to %s", len(result.rows), args.out)
    return EXIT_OK


def _cmd_plot(args) -> int:
    try:
        rows = read_rows(args.inp)
    except OSError as exc:
        raise FixtureError(f"cannot read CSV: {exc.strerror}", str(args.inp)) from None
    try:
        emit_plotdata(rows, args.figure, args.out)
    except ConfigError as exc:
        print(f"gamesearch: {args.inp}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (KeyError, ValueError) as exc:
        print(f"gamesearch: {args.inp}: malformed experiment CSV ({exc})", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


def _cmd_fixture(args) -> int:
    games = tuple(args.game) if args.game else GAME_IDS
    if args.action == "gen":
        paths = fixture_mod.write_fixtures(args.dir, games)
        print(f"wrote {len(paths)} fixtures under {args.dir}")
        return EXIT_OK
    problems = fixture_mod.check_fixtures(args.dir, games)
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        return EXIT_DATA
    print(f"{len(games) * fixture_mod.FIXTURES_PER_GAME} fixtures ok")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    handlers = {"run": _cmd_run, "sweep": _cmd_sweep, "plot": _cmd_plot, "fixture": _cmd_fixture}
    try:
        return handlers[args.command](args)
    except FixtureError as exc:
        print(f"gamesearch: {exc}", file=sys.stderr)
        return EXIT_DATA
    except ConfigError as exc:
        print(f"gamesearch: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InvariantViolation as exc:
        print(f"gamesearch: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
