"""Experiment harness: configs, fixture management, CSV output and plot data."""

from gamesearch.harness.config import ExperimentConfig, load_config, parse_config_text
from gamesearch.harness.experiment import (
    ExperimentResult,
    read_rows,
    run_cell,
    run_experiment,
    summarize_odd_even,
    sweep_odd_even,
)
from gamesearch.harness.fixtures import Fixture, check_fixtures, load_bundled, load_fixture
from gamesearch.harness.plotdata import FIGURES, emit_plotdata

__all__ = [
    "ExperimentConfig", "ExperimentResult", "FIGURES", "Fixture", "check_fixtures", "emit_plotdata",
    "load_bundled", "load_config", "load_fixture", "parse_config_text", "read_rows", "run_cell",
    "run_experiment", "summarize_odd_even", "sweep_odd_even",
]
