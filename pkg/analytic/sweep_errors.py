#!/usr/bin/env python
""" Writes the intrinsic interferometer errors against N theta as CSV: the twin-Fock false-null probability
    eta = chi_0^2 at a reference photon number, and the coherent false-null probability exp(-(N theta)^2 / N)
    for a list of coherent photon numbers.
"""

import argparse
import math
import os
import sys

import numpy as np

# Allow relative import from shared folder as per PEP 366
if __name__ == "__main__" and __package__ is None:
    parent_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    sys.path.insert(1, parent_dir)
    __package__ = "mz-teleport"

from analytic.formulas import chi0
from shared.errors import EXIT_OK, EXIT_VALIDATION
from shared.utils import format_number, parse_with_config, print_progress, write_output

NTHETA_MAX = 3.0


def sweep_rows(ntheta, ref_n=100, coherent_n=(100, 1000)) -> list:
    """ One row per grid point: [N theta, eta, eps for each coherent N] """
    ntheta = np.asarray(ntheta, dtype=float)
    eta = chi0(ref_n, ntheta / ref_n) ** 2
    columns = [ntheta, eta] + [np.exp(-ntheta ** 2 / n) for n in coherent_n]
    return [list(row) for row in zip(*columns)]


def sweep_csv(ntheta, ref_n=100, coherent_n=(100, 1000)) -> str:
    header = ["Ntheta", "eta"] + ["eps_N{}".format(format_number(n)) for n in coherent_n]
    lines = [",".join(header)]
    for row in sweep_rows(ntheta, ref_n, coherent_n):
        lines.append(",".join(format_number(v) for v in row))
    return "\n".join(lines) + "\n"


def cmd_sweep(ntheta_min=0.0, ntheta_max=NTHETA_MAX, steps=301, ref_n=100, coherent_n=(100, 1000), out=None):
    """ Computes the error curves on an evenly spaced N theta grid and writes them as CSV
    :param ntheta_min: First grid point, >= 0
    :param ntheta_max: Last grid point, <= 3
    :param steps: Number of grid points, endpoints included
    :param ref_n: Twin-Fock photon number used for the eta column
    :param coherent_n: Mean photon numbers of the coherent columns
    :param out: Output CSV path, stdout if not provided
    :return: 0 if the process ran successfully
    """
    # Check the input variables
    if steps < 1:
        print("Error - The N theta grid is empty (steps = {})".format(steps), file=sys.stderr)
        return EXIT_VALIDATION
    if not 0 <= ntheta_min <= ntheta_max <= NTHETA_MAX:
        print("Error - N theta grid [{}, {}] must lie within [0, {}]".format(ntheta_min, ntheta_max, NTHETA_MAX),
              file=sys.stderr)
        return EXIT_VALIDATION
    if steps == 1 and ntheta_min != ntheta_max:
        print("Error - A single grid point needs ntheta-min = ntheta-max", file=sys.stderr)
        return EXIT_VALIDATION
    if int(ref_n) != ref_n or ref_n < 1 or not coherent_n or any(not n >= 1 for n in coherent_n):
        print("Error - Photon numbers must be >= 1 (reference N must be an integer)", file=sys.stderr)
        return EXIT_VALIDATION
    if ntheta_max / ref_n >= math.pi / 2:
        print("Error - Reference N = {} is too small for N theta up to {}".format(ref_n, ntheta_max), file=sys.stderr)
        return EXIT_VALIDATION

    print_progress("Sweeping {} points of N theta in [{}, {}]", steps, ntheta_min, ntheta_max, init=True)
    text = sweep_csv(np.linspace(ntheta_min, ntheta_max, steps), int(ref_n), list(coherent_n))
    write_output(text, out)
    print_progress("Wrote {} rows{}", steps, " to " + out if out else "", final=True)
    return EXIT_OK


def add_arguments(parser):
    parser.add_argument('--ntheta-min', type=float, default=0.0, help='First N theta grid point')
    parser.add_argument('--ntheta-max', type=float, default=NTHETA_MAX, help='Last N theta grid point')
    parser.add_argument('--steps', type=int, default=301, help='Number of grid points, endpoints included')
    parser.add_argument('--ref-N', dest='ref_n', type=int, default=100,
                        help='Twin-Fock photon number used for the eta column')
    parser.add_argument('--coherent-N', dest='coherent_n', type=float, nargs='+', default=[100, 1000],
                        help='Mean photon numbers of the coherent columns')
    parser.add_argument('--out', type=str, default=None, help='Output CSV path')
    return parser


if __name__ == '__main__':
    parser = add_arguments(argparse.ArgumentParser(description='Intrinsic interferometer errors as CSV'))
    sys.exit(cmd_sweep(**parse_with_config(parser)))
