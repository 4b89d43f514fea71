"""Command-line interface: ``wabc simulate|distance|smc|mh|evaluate|bench``."""

__all__ = (
    "main",
    "build_parser",
    "RunConfig",
    "ConfigError",
    "cmd_simulate",
    "cmd_distance",
    "cmd_smc",
    "cmd_mh",
    "cmd_evaluate",
    "cmd_bench",
)

from wabc.cli._commands import (
    cmd_bench,
    cmd_distance,
    cmd_evaluate,
    cmd_mh,
    cmd_simulate,
    cmd_smc,
)
from wabc.cli._config import ConfigError, RunConfig
from wabc.cli._main import build_parser, main
