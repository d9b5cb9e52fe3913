#!/usr/bin/env python
""" Lists the zeros of chi_0(N, theta), the settings at which a twin-Fock input has no false null """

import argparse
import os
import sys

# Allow relative import from shared folder as per PEP 366
if __name__ == "__main__" and __package__ is None:
    parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    sys.path.insert(1, parent_dir)
    __package__ = "mz-teleport"

from analytic.formulas import bessel_zero_limit, chi0_zeros
from shared.errors import EXIT_OK, ValidationError, exit_code_for
from shared.utils import format_number, parse_with_config, write_output


def cmd_zeros(photons=None, count=1, out=None):
    """ Prints a table of the first zeros of chi_0 with their N theta values
    :param photons: Twin-Fock photon number N
    :param count: Number of zeros to list
    :param out: Output path, stdout if not provided
    :return: 0 if the process ran successfully
    """
    try:
        if photons is None or int(photons) != photons or photons < 1:
            raise ValidationError("Photon number must be an integer >= 1, got {}".format(photons))
        if count < 1:
            raise ValidationError("Zero count must be >= 1, got {}".format(count))
        zeros = chi0_zeros(int(photons), count)
    except ValidationError as e:
        print("Error - " + str(e), file=sys.stderr)
        return exit_code_for(e)

    lines = ["index,theta,Ntheta"]
    for i, theta in enumerate(zeros):
        lines.append("{},{},{}".format(i + 1, format_number(theta), format_number(photons * theta)))
    write_output("\n".join(lines) + "\n", out)
    print("Large-N limit of the first N theta: {}".format(format_number(bessel_zero_limit(), 6)), file=sys.stderr)
    return EXIT_OK


def add_arguments(parser):
    parser.add_argument('--photons', type=int, default=None, help='Twin-Fock photon number N (required)')
    parser.add_argument('--count', type=int, default=1, help='Number of zeros to list')
    parser.add_argument('--out', type=str, default=None, help='Output path of the table')
    return parser


if __name__ == '__main__':
    parser = add_arguments(argparse.ArgumentParser(description='Zeros of the twin-Fock false-null amplitude'))
    sys.exit(cmd_zeros(**parse_with_config(parser)))
