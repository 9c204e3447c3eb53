"""CLI subcommands; each module exposes add_parser(subparsers, parent) and run(args)."""

from backend.app.commands import benchmark, example, identify, inspect, simulate

COMMANDS = [simulate, identify, benchmark, inspect, example]

__all__ = ["COMMANDS"]
