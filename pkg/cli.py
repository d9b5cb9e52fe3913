#!/usr/bin/env python
""" Single entry point for the simulator scripts: python cli.py <command> [flags] """

import argparse
import sys

from analytic import budget, find_zeros, sweep_errors
from qubits import ghz, swap, teleport
from shared.utils import parse_with_config

COMMANDS = {
    "sweep": (sweep_errors, sweep_errors.cmd_sweep, "Intrinsic interferometer errors against N theta as CSV"),
    "teleport": (teleport, teleport.cmd_teleport, "Monte Carlo teleportation with JSON transcripts"),
    "budget": (budget, budget.run_budget, "Cavity pass and photon number budgets"),
    "zeros": (find_zeros, find_zeros.cmd_zeros, "Zeros of the twin-Fock false-null amplitude"),
    "ghz": (ghz, ghz.cmd_ghz, "Three-atom GHZ preparation"),
    "swap": (swap, swap.cmd_swap, "Entanglement swapping"),
}


def main(argv=None) -> int:
    """ Dispatches to the command named by the first argument; --config files apply to that command's flags
    :param argv: Arguments without the program name, sys.argv[1:] if not provided
    :return: Exit code of the command, 2 on argument errors
    """
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = argparse.ArgumentParser(description='Interferometric entanglement and teleportation of atomic qubits')
    subparsers = parser.add_subparsers(dest="command", metavar="command")
    for name, (module, _, help_text) in COMMANDS.items():
        module.add_arguments(subparsers.add_parser(name, help=help_text, description=help_text))

    if not argv or argv[0] not in COMMANDS:
        try:
            parser.parse_args(argv)
        except SystemExit as e:
            return e.code
        parser.print_usage(sys.stderr)
        return 2

    module, command, help_text = COMMANDS[argv[0]]
    sub = module.add_arguments(argparse.ArgumentParser(prog="cli.py " + argv[0], description=help_text))
    try:
        args = parse_with_config(sub, argv[1:])
    except SystemExit as e:
        return e.code
    return command(**args)


if __name__ == '__main__':
    sys.exit(main())
